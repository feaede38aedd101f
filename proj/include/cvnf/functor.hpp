#pragma once

#include <memory>

#include "cvnf/module.hpp"

namespace cvnf {

/// A module together with an auxiliary grading: every basis vector of every
/// fibre carries an atom of a second algebra.  Functor kernels live here —
/// applying a functor to L^2 of its domain, while remembering which atom each
/// basis vector came from, is exactly the data needed to extend a generator
/// map to a natural transformation.
struct Bimodule {
  Module mod;
  Algebra grading;
  std::vector<std::vector<int>> labels;  // per atom of mod.alg, one grading atom per basis vector

  Bimodule() = default;
  Bimodule(Module m, Algebra g, std::vector<std::vector<int>> l);
};

Bimodule unit_bimodule(const Algebra& a);          // L^2(A) graded by itself
Bimodule trivial_bimodule(const Module& m);        // graded by the scalars

/// Kernel fusion: replace each basis vector of K by a copy of the fibre of M
/// over its grading label.  kfuse(kernel(F), M) is naturally F(M).
Module kfuse(const Bimodule& k, const Module& m);

/// A functor between module categories over atomic algebras, given by its
/// action on (bi)modules and maps plus the interchange isomorphism
/// kfuse(F(K), M) -> F(kfuse(K, M)) that witnesses compatibility of the
/// kernel calculus with composition.
class Functor {
 public:
  Functor(Algebra dom, Algebra cod) : dom_(std::move(dom)), cod_(std::move(cod)) {}
  virtual ~Functor() = default;

  const Algebra& dom() const { return dom_; }
  const Algebra& cod() const { return cod_; }

  virtual Bimodule apply(const Bimodule& k) const = 0;
  virtual ModuleMap apply_map(const ModuleMap& h) const = 0;
  virtual ModuleMap interchange(const Bimodule& k, const Module& m) const = 0;

  Module apply_module(const Module& m) const;
  Bimodule kernel() const { return apply(unit_bimodule(dom_)); }
  /// Expansion iso e_M : kfuse(kernel(), M) -> F(M); the degenerate case of
  /// interchange at the unit bimodule.
  ModuleMap expansion(const Module& m) const;

 protected:
  Algebra dom_, cod_;
};

using FunctorPtr = std::shared_ptr<const Functor>;

FunctorPtr F_id(const Algebra& a);
FunctorPtr F_res(const Hom& f);                  // lmod(target) -> lmod(source)
FunctorPtr F_ind(const Hom& f);                  // lmod(source) -> lmod(target)
FunctorPtr F_fuse_left(const Module& x);         // M -> X ⊠ M
FunctorPtr F_fuse_right(const Module& x);        // M -> M ⊠ X
FunctorPtr F_compose(FunctorPtr outer, FunctorPtr inner);

/// A natural isomorphism determined by its value on the generator L^2(dom).
/// component(M) is the unique extension gen ⊠ id, computed through the kernel
/// calculus; construction checks that gen respects the kernel gradings.
struct NatIso {
  FunctorPtr F, G;
  ModuleMap gen;  // F(L^2 dom) -> G(L^2 dom)

  NatIso(FunctorPtr f, FunctorPtr g, ModuleMap generator);

  ModuleMap component(const Module& m) const;
  /// || G(h) ∘ comp(src) - comp(dst) ∘ F(h) || for a test map h.
  double naturality_residual(const ModuleMap& h) const;
};

/// Extend a generator value to the component at M (Lemma-style extension).
ModuleMap extend_by_generator(const FunctorPtr& F, const FunctorPtr& G, const ModuleMap& gen,
                              const Module& m);

Module restrict_module(const Hom& f, const Module& m);
ModuleMap restrict_map(const Hom& f, const ModuleMap& h);
Module induce_module(const Hom& f, const Module& m);
ModuleMap induce_map(const Hom& f, const ModuleMap& h);

/// Total-space permutation M -> res_f(M) (stable regrading by spec).
ComplexMatrix restrict_perm(const Hom& f, const Module& m);

/// res_a ∘ res_b => res_{b∘a} for a : X -> Y, b : Y -> Z (a permutation).
ModuleMap res_compositor(const Hom& a, const Hom& b, const Module& m);
/// ind_f ∘ ind_g => ind_{f∘g} (the identity under these conventions).
ModuleMap ind_compositor(const Hom& f, const Hom& g, const Module& m);
/// ind_f(L^2 B) -> L^2 A.
ModuleMap ind_unit_iso(const Hom& f);
/// ind_f(M ⊠ N) -> ind_f(M) ⊠ ind_f(N).
ModuleMap ind_mult_iso(const Hom& f, const Module& m, const Module& n);

/// The projection formula natural iso  res_f(M) ⊠ N  =>  res_f(M ⊠ ind_f N),
/// natural in N; the generator value is the composite of unitors.
NatIso projection_nat(const Hom& f, const Module& m);
ModuleMap projection_iso(const Hom& f, const Module& m, const Module& n);

/// Base change over a fibre square: ind_f ∘ res_g => res_gbar ∘ ind_fbar.
/// The generator value routes through Lambda; lambda_override substitutes a
/// (possibly corrupted) Lambda matrix, used by the mutation tests.
NatIso base_change_nat(const FibreSquare& sq, const ComplexMatrix* lambda_override = nullptr);
ModuleMap base_change_iso(const FibreSquare& sq, const Module& m);

/// The same square read in the transposed orientation:
/// ind_g ∘ res_f => res_fbar ∘ ind_gbar.
ModuleMap base_change_iso_transposed(const FibreSquare& sq, const Module& m);

/// Duality structure maps for res and ind.  With the real-basis
/// identification of conjugates these are identities on the nose; they are
/// kept as named maps so the axiom checks read like the axioms.
ModuleMap xi_iso(const Hom& f, const Module& m);    // res_f(DM) -> D(res_f M)
ModuleMap zeta_iso(const Hom& f, const Module& m);  // ind_f(DM) -> D(ind_f M)

}  // namespace cvnf
