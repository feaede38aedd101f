// Command-line front end: verify instance documents, fuzz the structure-map
// suites, explain check ids.  Exit codes: 0 all checks pass, 1 a check
// failed, 2 parse/usage error, 3 validation error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"

#include "cvnf/document.hpp"
#include "cvnf/groupoid.hpp"

using namespace cvnf;
using nlohmann::json;

namespace {

const std::map<std::string, std::string>& explain_table() {
  static const std::map<std::string, std::string> t = {
      {"proj-1",
       "Projection isomorphism at an identity arrow: the canonical map "
       "res(M) # N -> res(M # ind N) collapses to the identity."},
      {"proj-2",
       "Projection isomorphisms compose: along a composite arrow, pasting the "
       "two projection maps equals the projection map of the composite, up to "
       "the compositor of restriction."},
      {"proj-3",
       "Unit triangle: the projection isomorphism against the standard module "
       "reduces to the right unitor of fusion."},
      {"proj-4",
       "Pentagon for the projection isomorphism against a fused pair: both "
       "bracketings of res(M) # N # P agree through the associator."},
      {"proj-nat", "Naturality of the projection isomorphism in its module argument."},
      {"bc-5",
       "Degenerate base change, identity right leg: the base-change "
       "isomorphism is the identity map."},
      {"bc-6",
       "Degenerate base change, identity left leg: the base-change "
       "isomorphism is the identity map."},
      {"bc-7",
       "Horizontal composition of distinguished squares: pasting two pullback "
       "squares side by side, the two base-change isomorphisms compose to the "
       "base-change isomorphism of the pasted square."},
      {"bc-8",
       "Vertical composition of distinguished squares: stacking two pullback "
       "squares, the composite of base-change isomorphisms equals that of the "
       "outer square."},
      {"bc-nat", "Naturality of the base-change isomorphism in its module argument."},
      {"mixed-9",
       "Compatibility of base change with the projection isomorphism and the "
       "multiplicativity of induction (first mixed diagram)."},
      {"mixed-10",
       "Compatibility of base change with the projection isomorphism read "
       "through the symmetry (second mixed diagram)."},
      {"lambda-unitary",
       "The canonical map Lambda from the fusion of standard modules to the "
       "standard module of the fibre product is an isometric isomorphism; "
       "checked as a unitarity residual plus equivariance for the base action."},
      {"lambda-span",
       "Lambda on spanning vectors: it carries sqrt(phi) # sqrt(psi) to "
       "sqrt(phi x psi), and inner products of such vectors match the "
       "expectation-composition formula."},
      {"lambda-unitor",
       "For a degenerate square Lambda reduces to the unitor of fusion "
       "composed with the relabelling of atoms."},
      {"fibre-assoc",
       "Associativity of the fibre product of algebras with expectations: "
       "matched-triple relabelling intertwines the two iterated products."},
      {"fibre-pentagon",
       "Pentagon for the fibre-product associator: the two routes between "
       "extreme bracketings of a quadruple product agree."},
      {"lambda-compose",
       "Compatibility of Lambda with composing one leg by a further arrow: "
       "inserting the intermediate standard module and applying Lambda twice "
       "matches the Lambda of the composed square."},
      {"lambda-assoc",
       "Compatibility of Lambda with the associator: Lambda computed through "
       "either bracketing of a triple fusion agrees with the matched-triple "
       "permutation."},
      {"sqrt-ce",
       "The square root of a conditional expectation: s* pi(a) s = pi(phi(a)), "
       "and eta -> eta^2 is a bijection on the positive cone."},
      {"mu-independence",
       "The square-root map is independent of the faithful base state used to "
       "build the two standard forms."},
      {"dual-involution", "Duality is involutive: applying it twice is the identity."},
      {"dual-linear",
       "Duality is conjugate-linear on maps: scaling a map by z scales its "
       "dual by z as well (blockwise transpose, not adjoint)."},
      {"dual-monoidal", "Duality exchanges and preserves fusion up to the symmetry."},
      {"dual-dagger", "Duality commutes with the dagger."},
      {"xi-natural", "The duality structure map for restriction is natural."},
      {"zeta-monoidal", "The duality structure map for induction respects fusion."},
      {"proj-duality", "The projection isomorphism is self-dual: dual of its "
                       "dagger equals its entrywise conjugate."},
      {"bc-duality", "The base-change isomorphism over the transposed square "
                     "is self-dual in the same sense."},
      {"iso-unitary",
       "Every canonical structure map (base change, projection, symmetry, "
       "associator) is unitary."},
      {"gpd-cocycle", "The regular-representation cocycle, built from two "
                      "base-change isomorphisms, satisfies the cocycle law."},
      {"gpd-unitary", "The regular-representation cocycle is unitary."},
      {"gpd-regular-char",
       "Character oracle for the regular representation: |t^{-1}(x)| at the "
       "identity of x, zero at every other endomorphism."},
      {"gpd-rep-cocycle", "Corpus representations satisfy the cocycle law."},
      {"fell-unitary", "The absorption unitary u is unitary."},
      {"fell-intertwine",
       "Absorption: tensoring any unitary representation with the regular one "
       "is isomorphic to the multiple of the regular one of the same rank, "
       "with isomorphism u provided by the projection and base-change "
       "structure maps; checked as the intertwiner residual of u."},
      {"fell-character",
       "Characters of the two sides of absorption agree at every "
       "endomorphism arrow."},
      {"gpd-measure-class",
       "Changing the weights on objects and arrows leaves every structure map "
       "bit-for-bit unchanged: the construction only uses the measure class."},
      {"gpd-rank-decompose",
       "A representation splits over the orbit decomposition into "
       "constant-rank parts; checked against a two-component example."},
  };
  return t;
}

int severity(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.passed || !r.generator_consistent) return 1;
  return 0;
}

json results_json(const std::vector<CheckResult>& rs) {
  json out = json::array();
  for (const auto& r : rs) {
    json e = {{"id", r.id},
              {"trial", r.trial},
              {"residual", r.residual},
              {"residual_gen", r.residual_gen},
              {"passed", r.passed},
              {"generator_consistent", r.generator_consistent}};
    if (!r.note.empty()) e["note"] = r.note;
    out.push_back(std::move(e));
  }
  return out;
}

struct FamilySummary {
  std::string family;
  int checks = 0, failures = 0;
  double max_residual = 0.0;
};

FamilySummary summarize(const std::string& name, const std::vector<CheckResult>& rs) {
  FamilySummary s;
  s.family = name;
  s.checks = static_cast<int>(rs.size());
  for (const auto& r : rs) {
    if (!r.passed || !r.generator_consistent) ++s.failures;
    s.max_residual = std::max(s.max_residual, std::max(r.residual, r.residual_gen));
  }
  return s;
}

void print_text_report(const SuiteConfig& cfg,
                       const std::vector<std::pair<FamilySummary, const std::vector<CheckResult>*>>& fams) {
  std::cout << "seed=" << cfg.seed << " trials=" << cfg.trials << " tol=" << cfg.tol.eps
            << " mutate=" << to_string(cfg.mutate) << "\n";
  bool ok = true;
  for (auto& [s, rs] : fams) {
    std::cout << s.family << ": " << (s.checks - s.failures) << "/" << s.checks
              << " passed, max residual " << s.max_residual << "\n";
    if (s.failures) {
      ok = false;
      for (const auto& r : *rs)
        if (!r.passed || !r.generator_consistent)
          std::cout << "  FAIL " << r.id << " trial=" << r.trial << " residual=" << r.residual
                    << " residual_gen=" << r.residual_gen
                    << (r.generator_consistent ? "" : " (generator-inconsistent)")
                    << (r.note.empty() ? "" : " note=" + r.note) << "\n";
    }
  }
  std::cout << (ok ? "ALL PASS" : "FAILURES PRESENT") << "\n";
}

void print_json_report(const SuiteConfig& cfg,
                       const std::vector<std::pair<FamilySummary, const std::vector<CheckResult>*>>& fams) {
  json doc;
  doc["seed"] = cfg.seed;
  doc["trials"] = cfg.trials;
  doc["tol"] = cfg.tol.eps;
  doc["mutate"] = to_string(cfg.mutate);
  doc["families"] = json::array();
  bool ok = true;
  for (auto& [s, rs] : fams) {
    ok &= (s.failures == 0);
    doc["families"].push_back({{"family", s.family},
                               {"checks", s.checks},
                               {"failures", s.failures},
                               {"max_residual", s.max_residual},
                               {"results", results_json(*rs)}});
  }
  doc["all_passed"] = ok;
  std::cout << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structure-map verifier for finite commutative operator algebras"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  if (const char* env = std::getenv("CVNF_TOL")) cfg.tol.eps = std::atof(env);
  std::string format = "text";
  std::string mutate_id = "none";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--trials", cfg.trials, "trials per check");
    sub->add_option("--tol", cfg.tol.eps, "residual tolerance");
    sub->add_option("--max-atoms", cfg.max_atoms, "max atoms per random algebra");
    sub->add_option("--max-fiber-dim", cfg.max_fiber_dim, "max fibre dimension");
    sub->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--mutate", mutate_id, "inject a known defect (see explain)");
    sub->add_flag("--serial", [&](int64_t) { cfg.parallel = false; }, "disable parallelism");
  };

  std::string doc_path, check_id;
  CLI::App* verify = app.add_subcommand("verify", "check a bundled instance document");
  verify->add_option("path", doc_path, "document path")->required();
  add_common(verify);

  CLI::App* fuzz = app.add_subcommand("fuzz", "randomized structure-map suites");
  add_common(fuzz);

  CLI::App* explain = app.add_subcommand("explain", "describe a check id");
  explain->add_option("check-id", check_id, "check identifier")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.mutate = mutation_from_string(mutate_id);

    if (explain->parsed()) {
      auto it = explain_table().find(check_id);
      if (it == explain_table().end()) {
        std::cerr << "unknown check id '" << check_id << "'\n";
        return 2;
      }
      std::cout << it->first << ": " << it->second << "\n";
      return 0;
    }

    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<FamilySummary, const std::vector<CheckResult>*>> fams;
    CoherenceReport rep;
    std::vector<CheckResult> gpd, doc_results;

    if (fuzz->parsed()) {
      rep = run_all(cfg);
      for (const auto& f : rep.families) fams.emplace_back(summarize(f.family, f.results), &f.results);
      gpd = run_groupoid_suite(cfg);
      fams.emplace_back(summarize("groupoid", gpd), &gpd);
    } else {
      InstanceDocument doc = load_document(doc_path);
      doc_results = verify_document(doc, cfg);
      fams.emplace_back(summarize("document", doc_results), &doc_results);
    }

    if (format == "json")
      print_json_report(cfg, fams);
    else
      print_text_report(cfg, fams);
    auto t1 = std::chrono::steady_clock::now();
    std::cerr << "elapsed "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
              << " ms\n";

    for (auto& [s, rs] : fams)
      if (severity(*rs)) return 1;
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
