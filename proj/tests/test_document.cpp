#include "doctest.h"

#include <fstream>
#include <sstream>

#include "cvnf/document.hpp"

using namespace cvnf;

#ifndef CVNF_DOCS_DIR
#define CVNF_DOCS_DIR "docs/examples"
#endif

namespace {

std::string minimal_doc(const std::string& extra = "") {
  return std::string(R"({
    "version": "1",
    "algebras": {"A": {"atoms": ["x", "y"]}, "B": {"atoms": ["z"]}},
    "homs": {"f": {"source": "B", "target": "A", "spec": [0, 0]}},
    "cond_exps": {"phi": {"hom": "f", "weights": [0.5, 0.5]}}
  )") + extra + "}";
}

}  // namespace

TEST_CASE("bundled example loads, verifies and round-trips") {
  InstanceDocument doc = load_document(std::string(CVNF_DOCS_DIR) + "/z2_sign.json");
  CHECK(doc.groupoids.count("Z2") == 1);
  CHECK(doc.representations.count("sign") == 1);

  SuiteConfig cfg;
  auto results = verify_document(doc, cfg);
  CHECK(!results.empty());
  for (const auto& r : results) CHECK(r.passed);

  std::string s1 = serialize_document(doc);
  std::string s2 = serialize_document(parse_document(s1));
  CHECK(s1 == s2);
}

TEST_CASE("strict mode rejects unknown fields") {
  CHECK_THROWS_AS(parse_document(R"({"version": "1", "bogus": {}})"), ParseError);
  CHECK_THROWS_AS(
      parse_document(R"({"version": "1", "algebras": {"A": {"atoms": ["x"], "rank": 2}}})"),
      ParseError);
}

TEST_CASE("version is mandatory and checked") {
  CHECK_THROWS_AS(parse_document(R"({"algebras": {}})"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"version": "2"})"), ParseError);
}

TEST_CASE("dangling references are parse errors") {
  CHECK_THROWS_AS(
      parse_document(
          R"({"version": "1", "homs": {"f": {"source": "A", "target": "A", "spec": []}}})"),
      ParseError);
}

TEST_CASE("structural defects are validation errors naming the entry") {
  // Negative expectation weight.
  try {
    parse_document(minimal_doc(
        R"(, "states": {"bad": {"algebra": "A", "weights": [1.0, -1.0]}})"));
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("bad") != std::string::npos);
  }
  // Spec value out of range.
  CHECK_THROWS_AS(
      parse_document(
          R"({"version": "1", "algebras": {"A": {"atoms": ["x"]}},
              "homs": {"f": {"source": "A", "target": "A", "spec": [5]}}})"),
      ValidationError);
  // Empty fibre product.
  CHECK_THROWS_AS(
      parse_document(
          R"({"version": "1", "algebras": {"C": {"atoms": ["c0", "c1"]}, "A": {"atoms": ["x"]}, "B": {"atoms": ["y"]}},
              "homs": {"f": {"source": "C", "target": "A", "spec": [0]},
                       "g": {"source": "C", "target": "B", "spec": [1]}},
              "squares": {"S": {"f": "f", "g": "g"}}})"),
      ValidationError);
}

TEST_CASE("non-unitary cocycle is a validation error naming the representation") {
  try {
    load_document(std::string(CVNF_DOCS_DIR) + "/bad_alpha.json");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("stretched") != std::string::npos);
  }
}

TEST_CASE("malformed json is a parse error") {
  CHECK_THROWS_AS(parse_document("{"), ParseError);
  CHECK_THROWS_AS(load_document("/no/such/file.json"), ParseError);
}

TEST_CASE("complex scalars are [re, im] pairs") {
  CHECK_THROWS_AS(
      parse_document(
          R"({"version": "1", "algebras": {"A": {"atoms": ["x"]}},
              "modules": {"M": {"algebra": "A", "dims": [1]}},
              "module_maps": {"T": {"source": "M", "target": "M", "blocks": [[[1.0]]]}}})"),
      ParseError);
}
