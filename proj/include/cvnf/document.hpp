#pragma once

#include <map>

#include "cvnf/coherence.hpp"
#include "cvnf/groupoid.hpp"

namespace cvnf {

/// A named bundle of instances loaded from a structured document.  Every
/// cross-reference is by name; resolution failures and unknown fields are
/// ParseError, violated structural invariants are ValidationError.
struct InstanceDocument {
  std::string version;
  std::map<std::string, Algebra> algebras;
  std::map<std::string, Hom> homs;
  std::map<std::string, State> states;
  std::map<std::string, CondExp> cond_exps;
  std::map<std::string, Module> modules;
  std::map<std::string, ModuleMap> module_maps;
  std::map<std::string, FibreSquare> squares;
  std::map<std::string, FiniteGroupoid> groupoids;
  /// second = name of the underlying groupoid.
  std::map<std::string, std::pair<GRepresentation, std::string>> representations;
};

InstanceDocument parse_document(const std::string& json_text);
InstanceDocument load_document(const std::string& path);
std::string serialize_document(const InstanceDocument& doc);

/// Runs every check the document supports: square isomorphisms, expectation
/// identities, representation cocycles and absorption.  Structural defects
/// already threw during load; what remains are numerical residuals.
std::vector<CheckResult> verify_document(const InstanceDocument& doc, const SuiteConfig& cfg);

}  // namespace cvnf
