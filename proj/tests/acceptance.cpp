// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "cvnf/coherence.hpp"
#include "cvnf/document.hpp"
#include "cvnf/groupoid.hpp"

using namespace cvnf;

namespace {

int g_failures = 0;

void report(int n, const char* what, bool ok, double seconds) {
  std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", n, what, seconds);
  if (!ok) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// --- criterion 1: square roots of conditional expectations -----------------

bool criterion1(double& elapsed) {
  Timer t;
  Rng rng(101);
  bool ok = true;
  for (int trial = 0; trial < 500; ++trial) {
    Algebra b = random_algebra(rng, 6, "b");
    Algebra a = random_algebra(rng, 6, "a");
    Hom f = random_hom(rng, b, a);
    CondExp phi = random_ce(rng, f);
    ComplexMatrix s = sqrt_ce(phi);

    // Roundtrip sqrt -> positive map -> sqrt.
    std::vector<double> w(a.size());
    for (int i = 0; i < a.size(); ++i) w[i] = std::norm(s.at(i, f.spec[i]));
    CondExp phi2 = ce_from_positive_map(f, w);
    double round = 0.0;
    for (int i = 0; i < a.size(); ++i)
      round = std::max(round, std::abs(phi2.weights[i] - phi.weights[i]));
    ok &= round <= 1e-12;
    ok &= (sqrt_ce(phi2) - s).max_abs() <= 1e-12;

    // s* pi(a) s = pi(phi(a)).
    std::vector<cd> vals(a.size());
    for (auto& v : vals) v = rng.gaussian_complex();
    ok &= ce_identity_residual(phi, AlgebraElement(a, std::move(vals))) <= 1e-12;

    // Independence of the base state.
    std::vector<double> w1(b.size()), w2(b.size());
    for (auto& x : w1) x = rng.uniform(0.1, 3.0);
    for (auto& x : w2) x = rng.uniform(0.1, 3.0);
    ok &= mu_independence_residual(phi, State(b, w1), State(b, w2)) <= 1e-12;
  }
  elapsed = t.seconds();
  return ok && elapsed < 5.0;
}

// --- criterion 2: the canonical fusion unitary ------------------------------

bool criterion2(double& elapsed) {
  Timer t;
  Rng rng(202);
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    FibreSquare sq = random_square(rng, 6);
    ComplexMatrix lam = lambda_matrix(sq);
    ok &= unitarity_residual(lam) <= 1e-12;
    for (int v = 0; v < 20; ++v) {
      CondExp phi = random_ce(rng, sq.f), psi = random_ce(rng, sq.g);
      FusionVector vec = span_vector(sq, phi, psi);
      CondExp tens = tensor_ce(sq, phi, psi);
      for (int p = 0; p < sq.product.size(); ++p) {
        cd got = 0.0;
        for (int k = 0; k < vec.space.total(); ++k) got += lam.at(p, k) * vec.coords[k];
        ok &= std::abs(got - cd(std::sqrt(tens.weights[p]))) <= 1e-12;
      }
    }
  }
  // Unitor reduction and the two compatibility diagrams, at suite scale.
  SuiteConfig cfg;
  cfg.seed = 2;
  cfg.trials = 200;
  cfg.tol.eps = 1e-10;
  for (const auto& r : check_fusion_lemmas(cfg))
    ok &= r.passed && r.generator_consistent;
  elapsed = t.seconds();
  return ok && elapsed < 10.0;
}

// --- criterion 3: the ten coherence diagrams --------------------------------

bool criterion3(double& elapsed) {
  Timer t;
  SuiteConfig cfg;
  cfg.seed = 3;
  cfg.trials = 200;
  cfg.max_atoms = 5;
  cfg.max_fiber_dim = 3;
  cfg.tol.eps = 1e-9;
  bool ok = true;
  for (auto* fam : {&check_projection_coherences, &check_base_change_coherences,
                    &check_mixed_coherences}) {
    for (const auto& r : (*fam)(cfg)) {
      ok &= r.passed;
      ok &= r.generator_consistent;  // generator pass iff extended pass
    }
  }
  elapsed = t.seconds();
  return ok && elapsed < 40.0;
}

// --- criterion 4: involutivity ----------------------------------------------

bool criterion4(double& elapsed) {
  Timer t;
  SuiteConfig cfg;
  cfg.seed = 4;
  cfg.trials = 100;
  cfg.tol.eps = 1e-10;
  bool ok = true;
  for (const auto& r : check_involutive(cfg)) ok &= r.passed && r.generator_consistent;
  elapsed = t.seconds();
  return ok && elapsed < 10.0;
}

// --- criterion 5: absorption over the groupoid corpus -----------------------

bool criterion5(double& elapsed) {
  Timer t;
  SuiteConfig cfg;
  cfg.seed = 5;
  cfg.trials = 40;  // yields >= 5 random cocycle twists per groupoid
  cfg.tol.eps = 1e-9;
  bool ok = true;
  bool saw_fell = false, saw_char = false;
  for (const auto& r : run_groupoid_suite(cfg)) {
    ok &= r.passed;
    if (r.id == "fell-unitary") {
      saw_fell = true;
      ok &= r.residual <= 1e-10;
    }
    if (r.id == "fell-intertwine") ok &= r.residual <= 1e-9;
    if (r.id == "fell-character" || r.id == "gpd-regular-char") {
      saw_char = true;
      ok &= r.residual <= 1e-6;  // integer-valued oracle, rounded
    }
  }
  elapsed = t.seconds();
  return ok && saw_fell && saw_char && elapsed < 20.0;
}

// --- criterion 6: non-vacuity -----------------------------------------------

bool criterion6(double& elapsed) {
  Timer t;
  SuiteConfig cfg;
  cfg.seed = 6;
  cfg.trials = 10;
  bool ok = true;
  auto worst_of = [](const std::vector<CheckResult>& rs) {
    double w = 0.0;
    for (const auto& r : rs) w = std::max(w, std::max(r.residual, r.residual_gen));
    return w;
  };
  cfg.mutate = Mutation::Associator;
  ok &= worst_of(check_projection_coherences(cfg)) > 1e-3;
  cfg.mutate = Mutation::Lambda;
  ok &= worst_of(check_base_change_coherences(cfg)) > 1e-3;
  cfg.mutate = Mutation::Conjugation;
  ok &= worst_of(check_involutive(cfg)) > 1e-3;
  cfg.mutate = Mutation::Cocycle;
  ok &= worst_of(run_groupoid_suite(cfg)) > 1e-3;
  elapsed = t.seconds();
  return ok;
}

// --- criterion 7: determinism and the command-line contract -----------------

int run_cli(const std::string& args) {
  std::string cmd = std::string(CVNF_CLI_PATH) + " " + args + " > /dev/null 2> /dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool criterion7(double& elapsed) {
  Timer t;
  bool ok = true;

  SuiteConfig cfg;
  cfg.seed = 42;
  cfg.trials = 25;
  CoherenceReport r1 = run_all(cfg), r2 = run_all(cfg);
  for (size_t i = 0; i < r1.families.size() && ok; ++i)
    for (size_t k = 0; k < r1.families[i].results.size(); ++k) {
      ok &= r1.families[i].results[k].residual == r2.families[i].results[k].residual;
      ok &= r1.families[i].results[k].residual_gen == r2.families[i].results[k].residual_gen;
    }

  std::string docs = CVNF_DOCS_DIR;
  ok &= run_cli("verify " + docs + "/z2_sign.json") == 0;
  ok &= run_cli("verify " + docs + "/bad_alpha.json") == 3;
  ok &= run_cli("verify " + docs + "/no_such_file.json") == 2;
  ok &= run_cli("explain fell-intertwine") == 0;
  ok &= run_cli("explain unknown-check") == 2;

  Timer fuzz_t;
  ok &= run_cli("fuzz") == 0;  // full default run
  double fuzz_s = fuzz_t.seconds();
  ok &= fuzz_s < 60.0;

  elapsed = t.seconds();
  return ok;
}

}  // namespace

int main() {
  double s = 0.0;
  bool ok;

  ok = criterion1(s);
  report(1, "square-root bijection, expectation identity, state independence", ok, s);
  ok = criterion2(s);
  report(2, "fusion unitary: unitarity, spanning vectors, compatibility diagrams", ok, s);
  ok = criterion3(s);
  report(3, "ten coherence diagrams at generators and random modules", ok, s);
  ok = criterion4(s);
  report(4, "involutive structure equations and dagger conditions", ok, s);
  ok = criterion5(s);
  report(5, "absorption over the groupoid corpus with character oracles", ok, s);
  ok = criterion6(s);
  report(6, "every built-in mutation is detected by its target family", ok, s);
  ok = criterion7(s);
  report(7, "deterministic reports and command-line exit codes", ok, s);

  return g_failures == 0 ? 0 : 1;
}
