#pragma once

#include <utility>

#include "cvnf/matrix.hpp"

namespace cvnf {

/// A finite commutative von Neumann algebra in its atomic model: an ordered
/// list of atom labels.  The algebra is C^n with the coordinatewise product;
/// all structure below is expressed against this fixed ordered basis.
struct Algebra {
  std::vector<std::string> atoms;

  Algebra() = default;
  explicit Algebra(std::vector<std::string> atoms_);

  int size() const { return static_cast<int>(atoms.size()); }
  bool operator==(const Algebra& o) const { return atoms == o.atoms; }
};

/// Numbered atoms "a0".."a{n-1}".
Algebra numbered_algebra(int n, const std::string& prefix = "a");
/// The one-atom algebra C (unit for fibre products).
Algebra scalar_algebra();

struct AlgebraElement {
  Algebra alg;
  std::vector<cd> values;  // one per atom

  AlgebraElement(Algebra a, std::vector<cd> v);

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement star() const;  // coordinatewise conjugate
  bool is_positive(double eps = 1e-12) const;
};

AlgebraElement unit_element(const Algebra& a);

/// A unital *-homomorphism B -> A between atomic commutative algebras.  Such
/// a map is determined by a function spec : atoms(A) -> atoms(B) (the dual map
/// of spectra); spec[i] is the atom of B that atom i of A sits over.
struct Hom {
  Algebra source;  // B
  Algebra target;  // A
  std::vector<int> spec;  // size target.size(), values into source atoms

  Hom() = default;
  Hom(Algebra src, Algebra tgt, std::vector<int> spec_);

  /// Pull an element of the source algebra forward into the target.
  AlgebraElement apply(const AlgebraElement& b) const;

  bool is_identity() const;
  /// Atoms of the target lying over source atom j, in ascending order.
  std::vector<int> fibre(int j) const;
};

Hom identity_hom(const Algebra& a);
/// f after g: for g : C -> B and f : B -> A, returns f∘g : C -> A.
Hom compose(const Hom& f, const Hom& g);
/// The unique hom C -> A from the scalars.
Hom unital_inclusion(const Algebra& a);

/// A (not necessarily normalised) positive functional, as a weight per atom.
struct State {
  Algebra alg;
  std::vector<double> weights;

  State(Algebra a, std::vector<double> w);
  bool faithful(double eps = 0.0) const;  // all weights strictly positive
};

/// A conditional expectation phi : A -> B over a hom f : B -> A, stored as a
/// nonnegative weight per atom of A.  phi(a)_j = sum over atoms i of A above
/// j of w_i * a_i.
struct CondExp {
  Hom hom;                     // f : B -> A
  std::vector<double> weights; // per atom of A

  CondExp(Hom f, std::vector<double> w);

  AlgebraElement apply(const AlgebraElement& a) const;
  /// phi is faithful iff every fibre carries some strictly positive weight.
  bool faithful(double eps = 0.0) const;
};

/// Composite state mu∘phi on A, for mu a state on B and phi over f : B -> A.
State compose_state(const State& mu, const CondExp& phi);

/// The matrix of sqrt(phi) : L^2(A, mu∘phi) -> L^2(B, mu) in atom bases:
/// entry (spec(i), i) = sqrt(w_i), everything else zero.  Its defining
/// property sqrt(phi)* pi(a) sqrt(phi) = pi(phi(a)) is what tests verify.
ComplexMatrix sqrt_ce(const CondExp& phi);

/// Recover a conditional expectation from an atom-indexed positive map given
/// as per-atom coefficients; validates positivity and unitality on fibres is
/// NOT required (non-normalised expectations are allowed), only positivity.
CondExp ce_from_positive_map(const Hom& f, const std::vector<double>& coeffs);

/// Residual of sqrt(phi)* pi(a) sqrt(phi) = pi(phi(a)) over a sample element.
double ce_identity_residual(const CondExp& phi, const AlgebraElement& a);

/// Residual of mu-independence: the operator sqrt(phi)*sqrt(phi) computed
/// from two different faithful base states must coincide.
double mu_independence_residual(const CondExp& phi, const State& mu1, const State& mu2);

/// Fibre product A *_C B of f : C -> A and g : C -> B.  Atoms are the matched
/// pairs {(i,j) : spec_f(i) = spec_g(j)} in lexicographic order; fbar and
/// gbar are the two coprojections dual to the projections of spectra.
struct FibreSquare {
  Hom f;  // C -> A
  Hom g;  // C -> B
  Algebra product;                    // A *_C B
  std::vector<std::pair<int, int>> pairs;  // atom (i of A, j of B) per product atom
  Hom gbar;  // A -> product  (dual to first projection)
  Hom fbar;  // B -> product  (dual to second projection)

  int pair_index(int i, int j) const;  // -1 when (i,j) is not matched
};

FibreSquare fibre_product(const Hom& f, const Hom& g);

/// Expectation onto the product: weights multiply, (phi ⊗_C psi)_(i,j) = w_i v_j,
/// over the hom C -> A *_C B.
CondExp tensor_ce(const FibreSquare& sq, const CondExp& phi, const CondExp& psi);

/// For g = id_C the square degenerates and A *_C C is canonically A; returns
/// that iso as a hom (A *_C C) -> A.  Throws StructureError otherwise.
Hom fibre_unitor(const FibreSquare& sq);

/// Canonical bijection (B1 *_A1 B2) *_A2 B3  ->  B1 *_A1 (B2 *_A2 B3) for a
/// zig-zag B1 <- A1 -> B2 <- A2 -> B3 (a : A1->B1, b : A1->B2, c : A2->B2,
/// d : A2->B3), returned as the permutation of matched triples together with
/// the two iterated squares.
struct FibreAssociator {
  FibreSquare left_inner;   // B1 *_A1 B2
  FibreSquare left_outer;   // (B1 *_A1 B2) *_A2 B3
  FibreSquare right_inner;  // B2 *_A2 B3
  FibreSquare right_outer;  // B1 *_A1 (B2 *_A2 B3)
  std::vector<int> perm;    // left_outer atom -> right_outer atom
};

FibreAssociator fibre_associator(const Hom& a, const Hom& b, const Hom& c, const Hom& d);

}  // namespace cvnf
