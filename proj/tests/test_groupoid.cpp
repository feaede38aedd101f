#include "doctest.h"

#include "cvnf/groupoid.hpp"

using namespace cvnf;

TEST_CASE("generator tables validate") {
  cyclic_groupoid(1).validate();
  cyclic_groupoid(8).validate();
  group_groupoid(s3_table()).validate();
  group_groupoid(klein_table()).validate();
  pair_groupoid(5).validate();
}

TEST_CASE("broken composition table is rejected") {
  FiniteGroupoid g = cyclic_groupoid(3);
  g.comp[1][1] = 0;  // 1+1 is 2, not 0
  CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("nerve of a group: composable pairs are all pairs") {
  FiniteGroupoid g = cyclic_groupoid(4);
  NerveHoms n = nerve_homs(g);
  CHECK(n.a0.size() == 1);
  CHECK(n.a1.size() == 4);
  CHECK(n.a2.size() == 16);
  // Composition hom sends the pair atom (a,b) to a+b mod 4.
  CHECK(n.hm.spec[1 * 4 + 3] == 0);
}

TEST_CASE("regular representation of Z/3, frozen") {
  FiniteGroupoid g = cyclic_groupoid(3);
  GRepresentation r = regular_rep(g);
  CHECK(r.bundle.dims == std::vector<int>{3});
  CHECK(rep_cocycle_residual(g, r) == 0.0);
  CHECK(rep_unitarity(g, r) == 0.0);
  // Character oracle: |G| at the identity, zero elsewhere.
  CHECK(rep_character(g, r, 0) == cd(3.0));
  CHECK(rep_character(g, r, 1) == cd(0.0));
  CHECK(rep_character(g, r, 2) == cd(0.0));
  // The cocycle consists of permutation matrices (translations).
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 3; ++i) {
      double rowsum = 0.0;
      for (int j = 0; j < 3; ++j) rowsum += std::abs(r.alphas[a].at(i, j));
      CHECK(rowsum == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("regular character of the pair groupoid counts incoming arrows") {
  FiniteGroupoid g = pair_groupoid(3);
  GRepresentation r = regular_rep(g);
  for (int x = 0; x < 3; ++x) CHECK(rep_character(g, r, g.identity[x]) == cd(3.0));
}

TEST_CASE("characters multiply under the fusion of representations") {
  FiniteGroupoid g = cyclic_groupoid(6);
  GRepresentation c1 = cyclic_character_rep(6, 1), c2 = cyclic_character_rep(6, 2);
  GRepresentation t = tensor_reps(g, c1, c2);
  GRepresentation c3 = cyclic_character_rep(6, 3);
  for (int a = 0; a < 6; ++a)
    CHECK(std::abs(rep_character(g, t, a) - rep_character(g, c3, a)) < 1e-12);
}

TEST_CASE("sign representation of Z/2 absorbs exactly") {
  FiniteGroupoid g = cyclic_groupoid(2);
  GRepresentation sign = cyclic_character_rep(2, 1);
  FellResult fr = fell_iso(g, sign);
  CHECK(fr.unitarity < 1e-14);
  CHECK(fr.intertwine < 1e-14);
  // Characters: both sides are the regular character (2 at e, 0 at g).
  GRepresentation tw = tensor_reps(g, sign, regular_rep(g));
  CHECK(std::abs(rep_character(g, tw, 0) - cd(2.0)) < 1e-14);
  CHECK(std::abs(rep_character(g, tw, 1)) < 1e-14);
}

TEST_CASE("the two-dimensional representation of S3 absorbs") {
  FiniteGroupoid g = group_groupoid(s3_table());
  GRepresentation r = s3_two_dim_rep();
  CHECK(rep_cocycle_residual(g, r) < 1e-12);
  CHECK(rep_unitarity(g, r) < 1e-12);
  CHECK(std::abs(rep_character(g, r, 0) - cd(2.0)) < 1e-12);  // dim at identity
  FellResult fr = fell_iso(g, r);
  CHECK(fr.unitarity < 1e-12);
  CHECK(fr.intertwine < 1e-12);
}

TEST_CASE("absorption over a genuine multi-object groupoid") {
  GroupTable t = cyclic_table(3);
  std::vector<std::vector<int>> act(3, std::vector<int>(3));
  for (int a = 0; a < 3; ++a)
    for (int x = 0; x < 3; ++x) act[a][x] = t.mult[a][x];
  FiniteGroupoid g = action_groupoid(t, act);
  Rng rng(31);
  GRepresentation r = coboundary_twist(g, trivial_rep(g, 2), rng);
  FellResult fr = fell_iso(g, r);
  CHECK(fr.unitarity < 1e-12);
  CHECK(fr.intertwine < 1e-12);
}

TEST_CASE("fell rejects non-constant rank bundles") {
  FiniteGroupoid g = pair_groupoid(2);
  GRepresentation r = trivial_rep(g, 1);
  r.bundle = Module(r.bundle.alg, {1, 2});
  CHECK_THROWS_AS(fell_iso(g, r), ValidationError);
}

TEST_CASE("rank decomposition over orbits") {
  FiniteGroupoid g = disjoint_union(pair_groupoid(2), cyclic_groupoid(3));
  GRepresentation r = trivial_rep(g, 1);
  r.bundle = Module(r.bundle.alg, {2, 2, 3});
  r.alphas.clear();
  for (int a = 0; a < g.n_arrows(); ++a)
    r.alphas.push_back(ComplexMatrix::identity(a < 4 ? 2 : 3));
  auto parts = decompose_by_rank(g, r);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].rank == 2);
  CHECK(parts[0].objects == std::vector<int>{0, 1});
  CHECK(parts[1].rank == 3);
  CHECK(parts[1].objects == std::vector<int>{2});
}

TEST_CASE("groupoid suite passes clean and fails under the cocycle mutation") {
  SuiteConfig cfg;
  cfg.seed = 9;
  cfg.trials = 8;
  auto clean = run_groupoid_suite(cfg);
  CHECK(!clean.empty());
  for (const auto& r : clean) CHECK(r.passed);
  cfg.mutate = Mutation::Cocycle;
  auto broken = run_groupoid_suite(cfg);
  double worst = 0.0;
  int failures = 0;
  for (const auto& r : broken) {
    if (!r.passed) ++failures;
    worst = std::max(worst, r.residual);
  }
  CHECK(failures > 0);
  CHECK(worst > 1e-3);
}
