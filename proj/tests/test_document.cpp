#include <doctest.h>

#include <cstring>

#include "noisyor/document.hpp"
#include "noisyor/error.hpp"
#include "noisyor/inference.hpp"
#include "test_support.hpp"

using namespace noisyor;

namespace {

const char* kTwoNode = R"({
  "variables": [
    {"name": "A", "states": ["false", "true"]},
    {"name": "X", "states": ["false", "true"]}
  ],
  "nodes": [
    {"variable": "A", "parents": [], "backing": {"cpt": [0.7, 0.3]}},
    {"variable": "X", "parents": ["A"], "backing": {"noisy_gate": {
      "function": {"kind": "or"},
      "inhibitors": [[0.5, 0.0]]
    }}}
  ]
})";

}  // namespace

TEST_SUITE_BEGIN("document");

TEST_CASE("parsing a network document") {
  const Document doc = parse_document(kTwoNode);
  REQUIRE(doc.network.size() == 2);
  CHECK(doc.network.node("A").is_explicit());
  CHECK_FALSE(doc.network.node("X").is_explicit());
  CHECK(doc.network.node("X").gate().function->kind() == "or");
  CHECK(validate_network(doc.network).ok());
}

TEST_CASE("round-trip is stable byte for byte") {
  const Document first = parse_document(kTwoNode);
  const std::string once = serialize_document(first);
  const Document second = parse_document(once);
  const std::string twice = serialize_document(second);
  CHECK(once == twice);
}

TEST_CASE("17-digit probabilities survive the round trip exactly") {
  Document doc = parse_document(kTwoNode);
  const Variable a = doc.network.node("A").variable;
  doc.network.replace_backing("A", Factor({a}, {1.0 / 3.0, 2.0 / 3.0}));
  const Document back = parse_document(serialize_document(doc));
  CHECK(back.network.node("A").cpt().table()[0] == 1.0 / 3.0);
  CHECK(back.network.node("A").cpt().table()[1] == 2.0 / 3.0);
}

TEST_CASE("parse errors carry position information") {
  try {
    parse_document("{\n  \"variables\": [\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("schema violations name the offending element") {
  SUBCASE("undeclared parent") {
    CHECK_THROWS_WITH_AS(
        parse_document(R"({
          "variables": [{"name": "X", "states": ["false", "true"]}],
          "nodes": [{"variable": "X", "parents": ["GHOST"],
                     "backing": {"cpt": [1, 0, 0, 1]}}]
        })"),
        doctest::Contains("GHOST"), ParseError);
  }
  SUBCASE("variable without a node") {
    CHECK_THROWS_AS(
        parse_document(R"({
          "variables": [{"name": "X", "states": ["false", "true"]}],
          "nodes": []
        })"),
        ParseError);
  }
  SUBCASE("wrong table size") {
    CHECK_THROWS_AS(
        parse_document(R"({
          "variables": [{"name": "X", "states": ["false", "true"]}],
          "nodes": [{"variable": "X", "parents": [], "backing": {"cpt": [1]}}]
        })"),
        ParseError);
  }
  SUBCASE("inhibitors must respect the unit interval") {
    CHECK_THROWS_AS(
        parse_document(R"({
          "variables": [
            {"name": "A", "states": ["false", "true"]},
            {"name": "X", "states": ["false", "true"]}
          ],
          "nodes": [
            {"variable": "A", "parents": [], "backing": {"cpt": [0.5, 0.5]}},
            {"variable": "X", "parents": ["A"], "backing": {"noisy_gate": {
              "function": {"kind": "or"},
              "inhibitors": [[0.9, 0.9]]
            }}}
          ]
        })"),
        ParseError);
  }
}

TEST_CASE("graph and circuit sections") {
  const Document doc = parse_document(R"({
    "graph": {
      "links": [{"from": "A", "to": "B", "failure": 0.25}],
      "source": "A",
      "target": "B"
    },
    "circuit": {
      "inputs": ["P"],
      "gates": [{"name": "Q", "kind": "not", "inputs": ["P"]}],
      "line_failure": {"default": 0.05, "P": 0.125},
      "device_failure": {"Q": {"probability": 0.5, "failed_state": "true"}}
    }
  })");
  REQUIRE(doc.graph.has_value());
  CHECK(doc.graph->nodes == std::vector<std::string>{"A", "B"});
  CHECK(doc.graph->links[0].failure == 0.25);
  REQUIRE(doc.circuit.has_value());
  CHECK(doc.circuit->circuit.line_failure_for("P") == 0.125);
  CHECK(doc.circuit->circuit.line_failure_for("Q") == 0.05);
  CHECK(doc.circuit->fault_model.device_failure.at("Q").failed_state == 1);

  const std::string once = serialize_document(doc);
  const std::string twice = serialize_document(parse_document(once));
  CHECK(once == twice);
}

TEST_CASE("every function kind survives parse, compile, and reserialize") {
  const char* text = R"({
    "variables": [
      {"name": "A", "states": ["low", "mid", "high"]},
      {"name": "B", "states": ["low", "mid", "high"]},
      {"name": "AVG", "states": ["false", "true"]},
      {"name": "SUM", "states": ["0", "1", "2", "3", "4"]},
      {"name": "TT", "states": ["false", "true"]}
    ],
    "nodes": [
      {"variable": "A", "parents": [], "backing": {"cpt": [0.2, 0.3, 0.5]}},
      {"variable": "B", "parents": [], "backing": {"cpt": [0.6, 0.3, 0.1]}},
      {"variable": "AVG", "parents": ["A", "B"], "backing": {"noisy_gate": {
        "function": {"kind": "weighted_average"},
        "inhibitors": [[0.1, 0.0, 0.0], [0.2, 0.0, 0.0]]
      }}},
      {"variable": "SUM", "parents": ["A", "B"], "backing": {"noisy_gate": {
        "function": {"kind": "add"},
        "inhibitors": [[0.05, 0.0, 0.05], [0.0, 0.0, 0.0]]
      }}},
      {"variable": "TT", "parents": ["A"], "backing": {"noisy_gate": {
        "function": {"kind": "truth_table", "table": [1, 0, 1]},
        "inhibitors": [[0.0, 0.1, 0.0]]
      }}}
    ]
  })";
  const Document doc = parse_document(text);
  CHECK(validate_network(doc.network).ok());
  CHECK(doc.network.node("AVG").gate().function->kind() == "weighted_average");
  CHECK(doc.network.node("SUM").gate().function->kind() == "add");
  CHECK(doc.network.node("TT").gate().function->kind() == "truth_table");

  // Compiles cleanly and the marginals exist for every variable.
  const Network compiled = compile_network(doc.network);
  const auto marginals = eliminate(compiled, Evidence{});
  CHECK(marginals.at("SUM").size() == 5);

  // The truth table is emitted back out and the round trip is stable.
  const std::string once = serialize_document(doc);
  CHECK(once.find("\"table\": [1, 0, 1]") != std::string::npos);
  CHECK(serialize_document(parse_document(once)) == once);

  SUBCASE("add must size its output to fit every sum") {
    std::string bad = text;
    const auto pos = bad.find("\"0\", \"1\", \"2\", \"3\", \"4\"");
    bad.replace(pos, std::strlen("\"0\", \"1\", \"2\", \"3\", \"4\""),
                "\"0\", \"1\", \"2\", \"3\"");
    CHECK_THROWS_AS(parse_document(bad), ParseError);
  }
}

TEST_CASE("compiled documents answer queries identically") {
  const Document doc = parse_document(kTwoNode);
  const Network compiled = compile_network(doc.network);
  Evidence e;
  e.set("X", 1);
  const auto a = eliminate(doc.network, e, {"A"});
  const auto b = eliminate(compiled, e, {"A"});
  CHECK(testsupport::max_abs_diff(a.at("A"), b.at("A")) <= 1e-12);
}

TEST_SUITE_END();
