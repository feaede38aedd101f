#pragma once

#include <functional>
#include <map>

#include "cvnf/algebra.hpp"

namespace cvnf {

/// A left Hilbert module over an atomic algebra: one finite-dimensional fibre
/// per atom.  The concrete basis is ordered atom-major: all vectors of fibre
/// 0, then fibre 1, and so on.
struct Module {
  Algebra alg;
  std::vector<int> dims;

  Module() = default;
  Module(Algebra a, std::vector<int> d);

  int total() const;
  int offset(int atom) const;  // first basis index of the given fibre
  bool operator==(const Module& o) const { return alg == o.alg && dims == o.dims; }
};

/// L^2(A): the standard form, one-dimensional fibre per atom.
Module l2(const Algebra& a);

/// A module map as one block per atom.  Blocks may be non-square and the map
/// need not be unitary; all canonical isos constructed below happen to be.
struct ModuleMap {
  Module src, dst;
  std::vector<ComplexMatrix> blocks;

  ModuleMap() = default;
  ModuleMap(Module s, Module d, std::vector<ComplexMatrix> b);

  static ModuleMap identity(const Module& m);

  ModuleMap dagger() const;
  ComplexMatrix full() const;  // block-diagonal matrix on the total space
  double residual(const ModuleMap& o) const;  // Frobenius distance, blockwise
  double unitarity() const;
};

/// a∘b (apply b first).
ModuleMap mcompose(const ModuleMap& a, const ModuleMap& b);
/// Cut a total-space matrix into blocks; off-block mass above eps is a
/// StructureError, which is how mis-specified gradings get caught.
ModuleMap module_map_from_full(const Module& src, const Module& dst, const ComplexMatrix& m,
                               double eps = 1e-9);

/// Fusion over the common base: fibrewise Kronecker products, row-major, left
/// factor major.
Module fuse(const Module& m, const Module& n);
ModuleMap fuse_maps(const ModuleMap& h, const ModuleMap& k);

ModuleMap left_unitor(const Module& m);    // L^2(A) ⊠ M -> M
ModuleMap right_unitor(const Module& m);   // M ⊠ L^2(A) -> M
ModuleMap associator(const Module& m, const Module& n, const Module& p);  // (M⊠N)⊠P -> M⊠(N⊠P)
ModuleMap symmetry(const Module& m, const Module& n);  // M⊠N -> N⊠M, fibrewise swap

/// Duality.  Fibres carry a distinguished real basis, so the conjugate module
/// is identified with the module itself; on maps duality is the blockwise
/// transpose (conjugate of the adjoint), making it a contravariant functor
/// that is the identity on objects.
Module dual_module(const Module& m);
ModuleMap dual_map(const ModuleMap& h);

/// An ordered basis whose vectors are tuples of atom indices of some leaf
/// algebras.  Iterated fusions, fibre products and inductions of L^2 spaces
/// are all enumerations of one and the same matched-tuple set, so the
/// canonical unitaries between them are the permutations matching tuples.
struct TupleSpace {
  std::vector<std::vector<int>> tuples;

  int dim() const { return static_cast<int>(tuples.size()); }
  int index_of(const std::vector<int>& t) const;
};

using TupleKey = std::function<int(const std::vector<int>&)>;

TupleSpace ts_leaf(int n_atoms);
/// Fusion ordering: base atoms ascending, then left factor order, then right.
TupleSpace ts_fuse(const TupleSpace& x, const TupleSpace& y, const TupleKey& kx,
                   const TupleKey& ky, int n_base);
/// Fibre-product (matched pair) ordering: left order major, right order minor.
TupleSpace ts_star(const TupleSpace& x, const TupleSpace& y, const TupleKey& kx,
                   const TupleKey& ky);
/// Stable re-sort by a grading key (the matrix of res-regrading).
TupleSpace ts_regrade(const TupleSpace& x, const TupleKey& key);
/// Permutation matrix sending the basis of `from` to the equal-tuple basis of `to`.
ComplexMatrix ts_perm(const TupleSpace& from, const TupleSpace& to);

/// The fusion L^2(A) ⊠_C L^2(B) over a square, as a module over C: fibre over
/// an atom k of C is spanned by the matched pairs above k.
Module fusion_of_l2(const FibreSquare& sq);

/// Lambda: L^2(A) ⊠_C L^2(B) -> L^2(A *_C B).  A permutation: the fusion
/// basis is grouped by base atom, the fibre-product basis is lexicographic.
ComplexMatrix lambda_matrix(const FibreSquare& sq);

/// A vector sqrt(phi) ⊠ sqrt(psi) in the fusion space, with coordinates
/// induced by the expectations' weights; used to check the spanning formula
/// <phi2* phi1 n1, n2> for inner products of such vectors.
struct FusionVector {
  FibreSquare sq;
  Module space;          // fusion_of_l2(sq)
  std::vector<cd> coords;
};

FusionVector span_vector(const FibreSquare& sq, const CondExp& phi, const CondExp& psi);

}  // namespace cvnf
