#pragma once

#include "cvnf/coherence.hpp"

namespace cvnf {

/// A finite groupoid on finitely many objects, with an explicit composition
/// table.  comp[a][b] is the arrow a∘b when s(a) = t(b), and -1 otherwise.
/// Weights are carried along as a measure class but never enter any of the
/// structure maps; a test pins that down.
struct FiniteGroupoid {
  int n_objects = 0;
  std::vector<int> src, tgt;           // per arrow
  std::vector<std::vector<int>> comp;  // comp[a][b] = a∘b or -1
  std::vector<int> identity;           // per object
  std::vector<int> inverse;            // per arrow
  std::vector<double> object_weights, arrow_weights;

  int n_arrows() const { return static_cast<int>(src.size()); }
  void validate() const;  // throws ValidationError with a reason
};

/// Small multiplication table of a finite group (element 0.. n-1, unit e).
struct GroupTable {
  int n = 0, e = 0;
  std::vector<std::vector<int>> mult;
  std::vector<int> inv;
};

GroupTable cyclic_table(int n);
GroupTable klein_table();
GroupTable s3_table();

FiniteGroupoid group_groupoid(const GroupTable& t);
FiniteGroupoid cyclic_groupoid(int n);
FiniteGroupoid pair_groupoid(int n_points);
/// Action groupoid of a left action: act[g][x] is g.x; arrows are (g, x).
FiniteGroupoid action_groupoid(const GroupTable& t, const std::vector<std::vector<int>>& act);
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);

/// The truncated nerve: functions on objects, arrows and composable pairs,
/// with the simplicial homs between them.  The composable pairs are, by
/// construction, the fibre product of (source, target).
struct NerveHoms {
  Algebra a0, a1, a2;
  Hom hs, ht;        // A0 -> A1, dual to source / target
  Hom hp, hq, hm;    // A1 -> A2, dual to the two projections and composition
  FibreSquare square1;  // (hs, ht): its product is A2 on the nose
};

NerveHoms nerve_homs(const FiniteGroupoid& g);

/// A unitary representation: a bundle over the objects plus one unitary per
/// arrow, alphas[a] : fibre(s(a)) -> fibre(t(a)).
struct GRepresentation {
  Module bundle;  // over A0
  std::vector<ComplexMatrix> alphas;
};

GRepresentation trivial_rep(const FiniteGroupoid& g, int rank);
/// Pull a single fibre back along the map to the point: the constant bundle
/// with identity cocycle.
GRepresentation pullback_rep(const FiniteGroupoid& g, int rank);
/// The regular representation bundle t_! with its translation cocycle; the
/// cocycle is constructed purely from two base-change isomorphisms over the
/// nerve squares, never from the composition table directly.
GRepresentation regular_rep(const FiniteGroupoid& g);
GRepresentation tensor_reps(const FiniteGroupoid& g, const GRepresentation& r1,
                            const GRepresentation& r2);
GRepresentation direct_sum_reps(const FiniteGroupoid& g, const GRepresentation& r1,
                                const GRepresentation& r2);
GRepresentation coboundary_twist(const FiniteGroupoid& g, const GRepresentation& r, Rng& rng);
GRepresentation cyclic_character_rep(int n, int k);
GRepresentation s3_two_dim_rep();

double rep_cocycle_residual(const FiniteGroupoid& g, const GRepresentation& r);
double rep_unitarity(const FiniteGroupoid& g, const GRepresentation& r);
/// Character at an endo-arrow; throws DimensionError on non-endo arrows.
cd rep_character(const FiniteGroupoid& g, const GRepresentation& r, int arrow);

/// Fell absorption: tensoring with the regular representation trivialises the
/// cocycle.  u conjugates rep ⊗ regular into triv(rank) ⊗ regular and is
/// built from the projection and unitor isos only.
struct FellResult {
  ModuleMap u;          // endomorphism of the underlying bundle of rep ⊗ reg
  double unitarity;
  double intertwine;    // residual of the intertwining relation over all arrows
};

FellResult fell_iso(const FiniteGroupoid& g, const GRepresentation& r);

/// Partition of the objects by fibre rank; ranks are constant on orbits.
struct RankPart {
  int rank;
  std::vector<int> objects;
};

std::vector<RankPart> decompose_by_rank(const FiniteGroupoid& g, const GRepresentation& r);

std::vector<CheckResult> run_groupoid_suite(const SuiteConfig& cfg);

}  // namespace cvnf
