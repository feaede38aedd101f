#include "cvnf/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cvnf {

Algebra::Algebra(std::vector<std::string> atoms_) : atoms(std::move(atoms_)) {
  if (atoms.empty()) throw ValidationError("algebra needs at least one atom");
  std::set<std::string> seen(atoms.begin(), atoms.end());
  if (seen.size() != atoms.size()) throw ValidationError("duplicate atom labels");
}

Algebra numbered_algebra(int n, const std::string& prefix) {
  std::vector<std::string> atoms;
  atoms.reserve(n);
  for (int i = 0; i < n; ++i) atoms.push_back(prefix + std::to_string(i));
  return Algebra(std::move(atoms));
}

Algebra scalar_algebra() { return Algebra({"*"}); }

AlgebraElement::AlgebraElement(Algebra a, std::vector<cd> v)
    : alg(std::move(a)), values(std::move(v)) {
  if (static_cast<int>(values.size()) != alg.size())
    throw DimensionError("element/atom count mismatch");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (!(alg == o.alg)) throw DimensionError("element add: different algebras");
  std::vector<cd> v(values);
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.values[i];
  return AlgebraElement(alg, std::move(v));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  if (!(alg == o.alg)) throw DimensionError("element mul: different algebras");
  std::vector<cd> v(values);
  for (size_t i = 0; i < v.size(); ++i) v[i] *= o.values[i];
  return AlgebraElement(alg, std::move(v));
}

AlgebraElement AlgebraElement::star() const {
  std::vector<cd> v(values);
  for (auto& x : v) x = std::conj(x);
  return AlgebraElement(alg, std::move(v));
}

bool AlgebraElement::is_positive(double eps) const {
  for (const cd& x : values)
    if (std::abs(x.imag()) > eps || x.real() < -eps) return false;
  return true;
}

AlgebraElement unit_element(const Algebra& a) {
  return AlgebraElement(a, std::vector<cd>(a.size(), 1.0));
}

Hom::Hom(Algebra src, Algebra tgt, std::vector<int> spec_)
    : source(std::move(src)), target(std::move(tgt)), spec(std::move(spec_)) {
  if (static_cast<int>(spec.size()) != target.size())
    throw ValidationError("hom: spec size must match target atom count");
  for (int j : spec)
    if (j < 0 || j >= source.size()) throw ValidationError("hom: spec index out of range");
}

AlgebraElement Hom::apply(const AlgebraElement& b) const {
  if (!(b.alg == source)) throw DimensionError("hom apply: wrong algebra");
  std::vector<cd> v(target.size());
  for (int i = 0; i < target.size(); ++i) v[i] = b.values[spec[i]];
  return AlgebraElement(target, std::move(v));
}

bool Hom::is_identity() const {
  if (!(source == target)) return false;
  for (int i = 0; i < target.size(); ++i)
    if (spec[i] != i) return false;
  return true;
}

std::vector<int> Hom::fibre(int j) const {
  std::vector<int> out;
  for (int i = 0; i < target.size(); ++i)
    if (spec[i] == j) out.push_back(i);
  return out;
}

Hom identity_hom(const Algebra& a) {
  std::vector<int> spec(a.size());
  for (int i = 0; i < a.size(); ++i) spec[i] = i;
  return Hom(a, a, std::move(spec));
}

Hom compose(const Hom& f, const Hom& g) {
  if (!(g.target == f.source)) throw DimensionError("hom compose: mismatched algebras");
  std::vector<int> spec(f.target.size());
  for (int i = 0; i < f.target.size(); ++i) spec[i] = g.spec[f.spec[i]];
  return Hom(g.source, f.target, std::move(spec));
}

Hom unital_inclusion(const Algebra& a) {
  return Hom(scalar_algebra(), a, std::vector<int>(a.size(), 0));
}

State::State(Algebra a, std::vector<double> w) : alg(std::move(a)), weights(std::move(w)) {
  if (static_cast<int>(weights.size()) != alg.size())
    throw ValidationError("state/atom count mismatch");
  for (double x : weights)
    if (!(x >= 0.0)) throw ValidationError("state weights must be nonnegative");
}

bool State::faithful(double eps) const {
  for (double x : weights)
    if (!(x > eps)) return false;
  return true;
}

CondExp::CondExp(Hom f, std::vector<double> w) : hom(std::move(f)), weights(std::move(w)) {
  if (static_cast<int>(weights.size()) != hom.target.size())
    throw ValidationError("expectation weights must match target atom count");
  for (double x : weights)
    if (!(x >= 0.0)) throw ValidationError("expectation weights must be nonnegative");
}

AlgebraElement CondExp::apply(const AlgebraElement& a) const {
  if (!(a.alg == hom.target)) throw DimensionError("expectation: wrong algebra");
  std::vector<cd> v(hom.source.size(), 0.0);
  for (int i = 0; i < hom.target.size(); ++i) v[hom.spec[i]] += weights[i] * a.values[i];
  return AlgebraElement(hom.source, std::move(v));
}

bool CondExp::faithful(double eps) const {
  std::vector<double> mass(hom.source.size(), 0.0);
  for (int i = 0; i < hom.target.size(); ++i) mass[hom.spec[i]] += weights[i];
  for (int j = 0; j < hom.source.size(); ++j) {
    // Empty fibres carry no positivity requirement.
    if (!hom.fibre(j).empty() && !(mass[j] > eps)) return false;
  }
  return true;
}

State compose_state(const State& mu, const CondExp& phi) {
  if (!(mu.alg == phi.hom.source)) throw DimensionError("compose_state: wrong base algebra");
  std::vector<double> w(phi.hom.target.size());
  for (int i = 0; i < phi.hom.target.size(); ++i)
    w[i] = mu.weights[phi.hom.spec[i]] * phi.weights[i];
  return State(phi.hom.target, std::move(w));
}

ComplexMatrix sqrt_ce(const CondExp& phi) {
  // sqrt(phi) : L^2(B, mu) -> L^2(A, mu.phi), b*xi_mu -> b*xi_{mu.phi}.  In
  // the normalised atom bases its entries are sqrt(w_i), independent of mu.
  ComplexMatrix m(phi.hom.target.size(), phi.hom.source.size());
  for (int i = 0; i < phi.hom.target.size(); ++i)
    m.at(i, phi.hom.spec[i]) = std::sqrt(phi.weights[i]);
  return m;
}

/// Matrix of sqrt(phi) computed the slow way from an explicit base state:
/// entry (i, spec(i)) = sqrt((mu.phi)_i / mu_spec(i)).
static ComplexMatrix sqrt_ce_from_state(const CondExp& phi, const State& mu) {
  State muphi = compose_state(mu, phi);
  ComplexMatrix m(phi.hom.target.size(), phi.hom.source.size());
  for (int i = 0; i < phi.hom.target.size(); ++i) {
    int j = phi.hom.spec[i];
    m.at(i, j) = std::sqrt(muphi.weights[i] / mu.weights[j]);
  }
  return m;
}

CondExp ce_from_positive_map(const Hom& f, const std::vector<double>& coeffs) {
  for (double c : coeffs)
    if (!(c >= 0.0)) throw ValidationError("positive map has a negative coefficient");
  return CondExp(f, coeffs);
}

double ce_identity_residual(const CondExp& phi, const AlgebraElement& a) {
  // pi(a) acts diagonally on L^2 of the target algebra's atoms.
  int nA = phi.hom.target.size(), nB = phi.hom.source.size();
  ComplexMatrix pia(nA, nA);
  for (int i = 0; i < nA; ++i) pia.at(i, i) = a.values[i];
  ComplexMatrix s = sqrt_ce(phi);
  ComplexMatrix lhs = s.adjoint() * pia * s;
  AlgebraElement ea = phi.apply(a);
  ComplexMatrix rhs(nB, nB);
  for (int j = 0; j < nB; ++j) rhs.at(j, j) = ea.values[j];
  return (lhs - rhs).frobenius_norm();
}

double mu_independence_residual(const CondExp& phi, const State& mu1, const State& mu2) {
  if (!mu1.faithful() || !mu2.faithful())
    throw ValidationError("mu-independence needs faithful base states");
  ComplexMatrix s1 = sqrt_ce_from_state(phi, mu1);
  ComplexMatrix s2 = sqrt_ce_from_state(phi, mu2);
  double r = (s1 - s2).frobenius_norm();
  // Both must also agree with the state-free form.
  return std::max(r, (s1 - sqrt_ce(phi)).frobenius_norm());
}

int FibreSquare::pair_index(int i, int j) const {
  for (size_t k = 0; k < pairs.size(); ++k)
    if (pairs[k].first == i && pairs[k].second == j) return static_cast<int>(k);
  return -1;
}

FibreSquare fibre_product(const Hom& f, const Hom& g) {
  if (!(f.source == g.source)) throw DimensionError("fibre product: different base algebras");
  FibreSquare sq;
  sq.f = f;
  sq.g = g;
  std::vector<std::string> atoms;
  for (int i = 0; i < f.target.size(); ++i)
    for (int j = 0; j < g.target.size(); ++j)
      if (f.spec[i] == g.spec[j]) {
        sq.pairs.emplace_back(i, j);
        atoms.push_back(f.target.atoms[i] + "|" + g.target.atoms[j]);
      }
  if (atoms.empty())
    throw StructureError("fibre product is empty: spectra miss each other");
  sq.product = Algebra(std::move(atoms));
  std::vector<int> spec_gbar, spec_fbar;
  for (auto& [i, j] : sq.pairs) {
    spec_gbar.push_back(i);
    spec_fbar.push_back(j);
  }
  sq.gbar = Hom(f.target, sq.product, std::move(spec_gbar));
  sq.fbar = Hom(g.target, sq.product, std::move(spec_fbar));
  return sq;
}

CondExp tensor_ce(const FibreSquare& sq, const CondExp& phi, const CondExp& psi) {
  if (!(phi.hom.target == sq.f.target) || !(phi.hom.source == sq.f.source) ||
      !(psi.hom.target == sq.g.target) || !(psi.hom.source == sq.g.source))
    throw DimensionError("tensor_ce: expectations do not sit over this square");
  std::vector<double> w;
  w.reserve(sq.pairs.size());
  for (auto& [i, j] : sq.pairs) w.push_back(phi.weights[i] * psi.weights[j]);
  Hom into = compose(sq.gbar, sq.f);  // C -> A *_C B (equals compose(fbar, g))
  return CondExp(into, std::move(w));
}

Hom fibre_unitor(const FibreSquare& sq) {
  if (!sq.g.is_identity()) throw StructureError("fibre_unitor: right leg is not the identity");
  // Product atoms are (i, spec_f(i)); the bijection onto atoms of A is i.
  std::vector<int> spec(sq.f.target.size());
  for (size_t k = 0; k < sq.pairs.size(); ++k) spec[sq.pairs[k].first] = static_cast<int>(k);
  return Hom(sq.product, sq.f.target, std::move(spec));
}

FibreAssociator fibre_associator(const Hom& a, const Hom& b, const Hom& c, const Hom& d) {
  FibreAssociator out;
  out.left_inner = fibre_product(a, b);                        // B1 *_A1 B2
  // (B1 * B2) is an algebra over A2 through the B2 leg.
  Hom left_leg = compose(out.left_inner.fbar, c);              // A2 -> B1*B2
  out.left_outer = fibre_product(left_leg, d);
  out.right_inner = fibre_product(c, d);                       // B2 *_A2 B3
  Hom right_leg = compose(out.right_inner.gbar, b);            // A1 -> B2*B3
  out.right_outer = fibre_product(a, right_leg);
  out.perm.resize(out.left_outer.product.size());
  if (out.left_outer.product.size() != out.right_outer.product.size())
    throw StructureError("fibre associator: products have different sizes");
  for (size_t k = 0; k < out.left_outer.pairs.size(); ++k) {
    auto [ij, m] = out.left_outer.pairs[k];
    auto [i, j] = out.left_inner.pairs[ij];
    int jm = out.right_inner.pair_index(j, m);
    int tgt = out.right_outer.pair_index(i, jm);
    if (jm < 0 || tgt < 0) throw StructureError("fibre associator: unmatched triple");
    out.perm[k] = tgt;
  }
  return out;
}

}  // namespace cvnf
