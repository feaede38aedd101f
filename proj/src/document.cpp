#include "cvnf/document.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cvnf {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok |= (it.key() == k);
    if (!ok) parse_fail(where, "unknown field '" + it.key() + "'");
  }
}

const json& field(const json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) parse_fail(where, "expected an integer");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<double> double_list(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) parse_fail(where, "expected a number");
    out.push_back(v.get<double>());
  }
  return out;
}

cd complex_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_fail(where, "complex scalars are [re, im]");
  return cd(j[0].get<double>(), j[1].get<double>());
}

ComplexMatrix matrix_of(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected a matrix (array of rows)");
  int rows = static_cast<int>(j.size());
  int cols = rows == 0 ? 0 : static_cast<int>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      parse_fail(where, "ragged matrix rows");
    for (int k = 0; k < cols; ++k) m.at(i, k) = complex_of(j[i][k], where);
  }
  return m;
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k)
      row.push_back(json::array({m.at(i, k).real(), m.at(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
const T& resolve(const std::map<std::string, T>& pool, const std::string& name,
                 const std::string& where, const char* kind) {
  auto it = pool.find(name);
  if (it == pool.end())
    parse_fail(where, std::string("unresolved ") + kind + " reference '" + name + "'");
  return it->second;
}

std::string str_of(const json& j, const std::string& where, const char* key) {
  const json& v = field(j, where, key);
  if (!v.is_string()) parse_fail(where, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

// Validation tolerance for load-time structural checks (unitarity of a
// document-supplied cocycle and the like); looser than check tolerances
// because hand-written fixtures carry decimal literals.
constexpr double kLoadEps = 1e-8;

}  // namespace

InstanceDocument parse_document(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("document: ") + e.what());
  }
  check_keys(j, "document",
             {"version", "algebras", "homs", "states", "cond_exps", "modules",
              "module_maps", "squares", "groupoids", "representations"});
  InstanceDocument doc;
  const json& ver = field(j, "document", "version");
  if (!ver.is_string()) parse_fail("document", "version must be a string");
  doc.version = ver.get<std::string>();
  if (doc.version != "1") parse_fail("document", "unsupported version '" + doc.version + "'");

  auto each = [&](const char* section, auto fn) {
    auto it = j.find(section);
    if (it == j.end()) return;
    if (!it->is_object()) parse_fail(section, "expected an object of named entries");
    for (auto e = it->begin(); e != it->end(); ++e)
      fn(e.key(), e.value(), std::string(section) + "." + e.key());
  };

  each("algebras", [&](const std::string& name, const json& v, const std::string& where) {
    check_keys(v, where, {"atoms"});
    const json& at = field(v, where, "atoms");
    if (!at.is_array()) parse_fail(where, "atoms must be an array of strings");
    std::vector<std::string> atoms;
    for (const auto& a : at) {
      if (!a.is_string()) parse_fail(where, "atoms must be strings");
      atoms.push_back(a.get<std::string>());
    }
    try {
      doc.algebras.emplace(name, Algebra(std::move(atoms)));
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
  });

  each("homs", [&](const std::string& name, const json& v, const std::string& where) {
    check_keys(v, where, {"source", "target", "spec"});
    const Algebra& src = resolve(doc.algebras, str_of(v, where, "source"), where, "algebra");
    const Algebra& tgt = resolve(doc.algebras, str_of(v, where, "target"), where, "algebra");
    try {
      doc.homs.emplace(name, Hom(src, tgt, int_list(field(v, where, "spec"), where)));
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
  });

  each("states", [&](const std::string& name, const json& v, const std::string& where) {
    check_keys(v, where, {"algebra", "weights"});
    const Algebra& a = resolve(doc.algebras, str_of(v, where, "algebra"), where, "algebra");
    try {
      doc.states.emplace(name, State(a, double_list(field(v, where, "weights"), where)));
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
  });

  each("cond_exps", [&](const std::string& name, const json& v, const std::string& where) {
    check_keys(v, where, {"hom", "weights"});
    const Hom& f = resolve(doc.homs, str_of(v, where, "hom"), where, "hom");
    try {
      doc.cond_exps.emplace(name, CondExp(f, double_list(field(v, where, "weights"), where)));
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
  });

  each("modules", [&](const std::string& name, const json& v, const std::string& where) {
    check_keys(v, where, {"algebra", "dims"});
    const Algebra& a = resolve(doc.algebras, str_of(v, where, "algebra"), where, "algebra");
    try {
      doc.modules.emplace(name, Module(a, int_list(field(v, where, "dims"), where)));
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
  });

  each("module_maps", [&](const std::string& name, const json& v, const std::string& where) {
    check_keys(v, where, {"source", "target", "blocks"});
    const Module& src = resolve(doc.modules, str_of(v, where, "source"), where, "module");
    const Module& dst = resolve(doc.modules, str_of(v, where, "target"), where, "module");
    const json& bl = field(v, where, "blocks");
    if (!bl.is_array()) parse_fail(where, "blocks must be an array of matrices");
    std::vector<ComplexMatrix> blocks;
    for (const auto& b : bl) blocks.push_back(matrix_of(b, where));
    try {
      doc.module_maps.emplace(name, ModuleMap(src, dst, std::move(blocks)));
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
  });

  each("squares", [&](const std::string& name, const json& v, const std::string& where) {
    check_keys(v, where, {"f", "g"});
    const Hom& f = resolve(doc.homs, str_of(v, where, "f"), where, "hom");
    const Hom& g = resolve(doc.homs, str_of(v, where, "g"), where, "hom");
    try {
      doc.squares.emplace(name, fibre_product(f, g));
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
  });

  each("groupoids", [&](const std::string& name, const json& v, const std::string& where) {
    check_keys(v, where, {"objects", "src", "tgt", "comp", "identity", "inverse",
                          "object_weights", "arrow_weights"});
    FiniteGroupoid g;
    const json& no = field(v, where, "objects");
    if (!no.is_number_integer()) parse_fail(where, "objects must be an integer");
    g.n_objects = no.get<int>();
    g.src = int_list(field(v, where, "src"), where);
    g.tgt = int_list(field(v, where, "tgt"), where);
    const json& cj = field(v, where, "comp");
    if (!cj.is_array()) parse_fail(where, "comp must be a table");
    for (const auto& row : cj) g.comp.push_back(int_list(row, where));
    g.identity = int_list(field(v, where, "identity"), where);
    g.inverse = int_list(field(v, where, "inverse"), where);
    if (v.contains("object_weights"))
      g.object_weights = double_list(v["object_weights"], where);
    if (v.contains("arrow_weights")) g.arrow_weights = double_list(v["arrow_weights"], where);
    try {
      g.validate();
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
    doc.groupoids.emplace(name, std::move(g));
  });

  each("representations", [&](const std::string& name, const json& v, const std::string& where) {
    check_keys(v, where, {"groupoid", "dims", "alphas"});
    std::string gname = str_of(v, where, "groupoid");
    const FiniteGroupoid& g = resolve(doc.groupoids, gname, where, "groupoid");
    GRepresentation r;
    std::vector<int> dims = int_list(field(v, where, "dims"), where);
    const json& al = field(v, where, "alphas");
    if (!al.is_array() || static_cast<int>(al.size()) != g.n_arrows())
      parse_fail(where, "alphas must hold one matrix per arrow");
    for (const auto& m : al) r.alphas.push_back(matrix_of(m, where));
    try {
      r.bundle = Module(numbered_algebra(g.n_objects, "x"), std::move(dims));
      if (rep_unitarity(g, r) > kLoadEps)
        throw ValidationError("cocycle is not unitary");
      if (rep_cocycle_residual(g, r) > kLoadEps)
        throw ValidationError("cocycle does not respect composition");
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
    doc.representations.emplace(name, std::make_pair(std::move(r), std::move(gname)));
  });

  return doc;
}

InstanceDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string serialize_document(const InstanceDocument& doc) {
  json j;
  j["version"] = doc.version;
  for (auto& [name, a] : doc.algebras) j["algebras"][name] = {{"atoms", a.atoms}};
  auto algebra_name = [&](const Algebra& a) -> std::string {
    for (auto& [name, cand] : doc.algebras)
      if (cand == a) return name;
    throw ValidationError("serialize: algebra is not a named entry");
  };
  auto hom_name = [&](const Hom& h) -> std::string {
    for (auto& [name, cand] : doc.homs)
      if (cand.source == h.source && cand.target == h.target && cand.spec == h.spec)
        return name;
    throw ValidationError("serialize: hom is not a named entry");
  };
  auto module_name = [&](const Module& m) -> std::string {
    for (auto& [name, cand] : doc.modules)
      if (cand == m) return name;
    throw ValidationError("serialize: module is not a named entry");
  };
  for (auto& [name, h] : doc.homs)
    j["homs"][name] = {{"source", algebra_name(h.source)},
                       {"target", algebra_name(h.target)},
                       {"spec", h.spec}};
  for (auto& [name, s] : doc.states)
    j["states"][name] = {{"algebra", algebra_name(s.alg)}, {"weights", s.weights}};
  for (auto& [name, p] : doc.cond_exps)
    j["cond_exps"][name] = {{"hom", hom_name(p.hom)}, {"weights", p.weights}};
  for (auto& [name, m] : doc.modules)
    j["modules"][name] = {{"algebra", algebra_name(m.alg)}, {"dims", m.dims}};
  for (auto& [name, mm] : doc.module_maps) {
    json blocks = json::array();
    for (const auto& b : mm.blocks) blocks.push_back(matrix_json(b));
    j["module_maps"][name] = {{"source", module_name(mm.src)},
                              {"target", module_name(mm.dst)},
                              {"blocks", std::move(blocks)}};
  }
  for (auto& [name, sq] : doc.squares)
    j["squares"][name] = {{"f", hom_name(sq.f)}, {"g", hom_name(sq.g)}};
  for (auto& [name, g] : doc.groupoids) {
    json e = {{"objects", g.n_objects}, {"src", g.src},      {"tgt", g.tgt},
              {"comp", g.comp},         {"identity", g.identity}, {"inverse", g.inverse}};
    if (!g.object_weights.empty()) e["object_weights"] = g.object_weights;
    if (!g.arrow_weights.empty()) e["arrow_weights"] = g.arrow_weights;
    j["groupoids"][name] = std::move(e);
  }
  for (auto& [name, pr] : doc.representations) {
    json alphas = json::array();
    for (const auto& a : pr.first.alphas) alphas.push_back(matrix_json(a));
    j["representations"][name] = {{"groupoid", pr.second},
                                  {"dims", pr.first.bundle.dims},
                                  {"alphas", std::move(alphas)}};
  }
  return j.dump(2);
}

std::vector<CheckResult> verify_document(const InstanceDocument& doc, const SuiteConfig& cfg) {
  std::vector<CheckResult> out;
  uint64_t trial = 0;
  auto push = [&](const std::string& id, const std::string& note, double residual) {
    CheckResult r;
    r.id = id;
    r.trial = trial++;
    r.residual = residual;
    r.residual_gen = residual;
    r.passed = residual <= cfg.tol.eps;
    r.note = note;
    out.push_back(std::move(r));
  };
  Rng base(cfg.seed);

  for (auto& [name, phi] : doc.cond_exps) {
    Rng rng = base.split(std::hash<std::string>{}("ce-" + name));
    double res = 0.0;
    const Algebra& a = phi.hom.target;
    for (int t = 0; t < 5; ++t) {
      std::vector<cd> vals(a.size());
      for (auto& v : vals) v = rng.gaussian_complex();
      res = std::max(res, ce_identity_residual(phi, AlgebraElement(a, std::move(vals))));
    }
    push("doc-ce-identity", name, res);
    if (phi.faithful()) {
      std::vector<double> w1(phi.hom.source.size()), w2(w1.size());
      for (auto& w : w1) w = rng.uniform(0.2, 2.0);
      for (auto& w : w2) w = rng.uniform(0.2, 2.0);
      push("doc-ce-mu-independence", name,
           mu_independence_residual(phi, State(phi.hom.source, w1),
                                    State(phi.hom.source, w2)));
    }
  }

  for (auto& [name, sq] : doc.squares) {
    ComplexMatrix lam = lambda_matrix(sq);
    push("doc-lambda-unitary", name, unitarity_residual(lam));
    push("doc-base-change-unitary", name, base_change_iso(sq, l2(sq.g.target)).unitarity());
    push("doc-projection-unitary", name,
         projection_iso(sq.f, l2(sq.f.target), l2(sq.f.source)).unitarity());
  }

  for (auto& [name, pr] : doc.representations) {
    const FiniteGroupoid& g = doc.groupoids.at(pr.second);
    const GRepresentation& r = pr.first;
    push("doc-rep-cocycle", name, rep_cocycle_residual(g, r));
    push("doc-rep-unitary", name, rep_unitarity(g, r));
    bool const_rank = true;
    for (int d : r.bundle.dims) const_rank &= (d == r.bundle.dims[0]);
    if (!const_rank || r.bundle.dims.empty()) continue;
    FellResult fr = fell_iso(g, r);
    push("doc-fell-unitary", name, fr.unitarity);
    push("doc-fell-intertwine", name, fr.intertwine);
    if (g.n_objects == 1) {
      // Character oracle at the group level: after tensoring with the regular
      // representation both sides have character rank * |G| * delta_identity.
      GRepresentation tw = tensor_reps(g, r, regular_rep(g));
      double cres = 0.0;
      for (int a = 0; a < g.n_arrows(); ++a) {
        double expect = a == g.identity[0] ? double(r.bundle.dims[0]) * g.n_arrows() : 0.0;
        cres = std::max(cres, std::abs(rep_character(g, tw, a) - cd(expect)));
      }
      push("doc-fell-character", name, cres);
    }
  }

  return out;
}

}  // namespace cvnf
