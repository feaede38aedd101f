#pragma once

#include "cvnf/functor.hpp"

namespace cvnf {

enum class Mutation {
  None,
  Associator,    // swap two basis vectors inside a fusion associator
  Lambda,        // mis-order Lambda and twist a phase
  Conjugation,   // drop the conjugation in duality (transpose -> adjoint)
  Cocycle,       // perturb the phase of one groupoid cocycle value
};

Mutation mutation_from_string(const std::string& s);  // throws ParseError on unknown ids
std::string to_string(Mutation m);

struct SuiteConfig {
  uint64_t seed = 1;
  int trials = 50;
  int max_atoms = 5;
  int max_fiber_dim = 3;
  Tolerance tol{1e-10, false};
  Mutation mutate = Mutation::None;
  bool parallel = true;
};

struct CheckResult {
  std::string id;
  uint64_t trial = 0;
  /// Residual with the naturality arguments taken at random modules.
  double residual = 0.0;
  /// Residual with the arguments at the L^2 generators.
  double residual_gen = 0.0;
  bool passed = false;
  /// Generator-level and extended-level verdicts must agree; a disagreement
  /// means the generator-extension principle itself is broken.
  bool generator_consistent = true;
  std::string note;
};

std::vector<CheckResult> check_projection_coherences(const SuiteConfig& cfg);
std::vector<CheckResult> check_base_change_coherences(const SuiteConfig& cfg);
std::vector<CheckResult> check_mixed_coherences(const SuiteConfig& cfg);
std::vector<CheckResult> check_fusion_lemmas(const SuiteConfig& cfg);
std::vector<CheckResult> check_involutive(const SuiteConfig& cfg);

struct FamilyReport {
  std::string family;
  int checks = 0;
  int failures = 0;
  double max_residual = 0.0;
  std::vector<CheckResult> results;
};

struct CoherenceReport {
  SuiteConfig cfg;
  std::vector<FamilyReport> families;
  bool all_passed() const;
};

CoherenceReport run_all(const SuiteConfig& cfg);

/// Random instance generators shared by the suites and the CLI fuzzer.
Algebra random_algebra(Rng& rng, int max_atoms, const std::string& prefix);
Hom random_hom(Rng& rng, const Algebra& source, const Algebra& target);
Module random_module(Rng& rng, const Algebra& a, int max_dim);
ModuleMap random_module_map(Rng& rng, const Module& src, const Module& dst);
CondExp random_ce(Rng& rng, const Hom& f);
State random_state(Rng& rng, const Algebra& a);
FibreSquare random_square(Rng& rng, int max_atoms);

}  // namespace cvnf
