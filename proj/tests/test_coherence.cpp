#include "doctest.h"

#include "cvnf/coherence.hpp"

using namespace cvnf;

namespace {

SuiteConfig small_cfg(Mutation m = Mutation::None) {
  SuiteConfig cfg;
  cfg.seed = 17;
  cfg.trials = 8;
  cfg.mutate = m;
  return cfg;
}

double family_max(const CoherenceReport& rep, const std::string& family) {
  for (const auto& f : rep.families)
    if (f.family == family) return f.max_residual;
  FAIL("no such family: ", family);
  return 0.0;
}

int family_failures(const CoherenceReport& rep, const std::string& family) {
  for (const auto& f : rep.families)
    if (f.family == family) return f.failures;
  FAIL("no such family: ", family);
  return 0;
}

}  // namespace

TEST_CASE("clean run passes every family") {
  CoherenceReport rep = run_all(small_cfg());
  CHECK(rep.all_passed());
  for (const auto& f : rep.families) {
    CHECK(f.checks > 0);
    CHECK(f.max_residual < 1e-10);
    for (const auto& r : f.results) CHECK(r.generator_consistent);
  }
}

TEST_CASE("report is a pure function of seed and config") {
  CoherenceReport r1 = run_all(small_cfg());
  CoherenceReport r2 = run_all(small_cfg());
  REQUIRE(r1.families.size() == r2.families.size());
  for (size_t i = 0; i < r1.families.size(); ++i) {
    REQUIRE(r1.families[i].results.size() == r2.families[i].results.size());
    for (size_t k = 0; k < r1.families[i].results.size(); ++k) {
      CHECK(r1.families[i].results[k].residual == r2.families[i].results[k].residual);
      CHECK(r1.families[i].results[k].residual_gen == r2.families[i].results[k].residual_gen);
    }
  }
}

TEST_CASE("serial and parallel suites agree bitwise") {
  SuiteConfig ser = small_cfg();
  ser.parallel = false;
  CoherenceReport r1 = run_all(small_cfg());
  CoherenceReport r2 = run_all(ser);
  for (size_t i = 0; i < r1.families.size(); ++i)
    for (size_t k = 0; k < r1.families[i].results.size(); ++k)
      CHECK(r1.families[i].results[k].residual == r2.families[i].results[k].residual);
}

TEST_CASE("mutation: corrupted associator breaks exactly the projection family") {
  CoherenceReport rep = run_all(small_cfg(Mutation::Associator));
  CHECK(family_failures(rep, "projection") > 0);
  CHECK(family_max(rep, "projection") > 1e-3);
  CHECK(family_failures(rep, "involutive") == 0);
}

TEST_CASE("mutation: mis-ordered Lambda breaks base change and fusion") {
  CoherenceReport rep = run_all(small_cfg(Mutation::Lambda));
  CHECK(family_failures(rep, "base-change") > 0);
  CHECK(family_max(rep, "base-change") > 1e-3);
  CHECK(family_failures(rep, "fusion") > 0);
  CHECK(family_failures(rep, "projection") == 0);
}

TEST_CASE("mutation: dropped conjugation breaks the involutive family") {
  CoherenceReport rep = run_all(small_cfg(Mutation::Conjugation));
  CHECK(family_failures(rep, "involutive") > 0);
  CHECK(family_max(rep, "involutive") > 1e-3);
  CHECK(family_failures(rep, "base-change") == 0);
  CHECK(family_failures(rep, "fusion") == 0);
}

TEST_CASE("mutation parsing") {
  CHECK(mutation_from_string("lambda") == Mutation::Lambda);
  CHECK(to_string(Mutation::Cocycle) == "cocycle");
  CHECK_THROWS_AS(mutation_from_string("frobnicate"), ParseError);
}

TEST_CASE("random generators respect their bounds") {
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    Algebra a = random_algebra(rng, 4, "a");
    CHECK(a.size() >= 1);
    CHECK(a.size() <= 4);
    Algebra b = random_algebra(rng, 3, "b");
    Hom f = random_hom(rng, b, a);
    for (int s : f.spec) {
      CHECK(s >= 0);
      CHECK(s < b.size());
    }
    Module m = random_module(rng, a, 3);
    CHECK(m.total() >= 1);
    CondExp phi = random_ce(rng, f);
    for (double w : phi.weights) CHECK(w > 0.0);
    FibreSquare sq = random_square(rng, 4);
    CHECK(!sq.pairs.empty());
  }
}
