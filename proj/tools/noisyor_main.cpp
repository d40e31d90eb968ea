// Command-line front end: compile gates to tables, query marginals, answer
// reliability questions, diagnose circuits, and cross-check against the
// brute-force oracles. All input comes from document files; results go to
// standard output. Exit codes: 0 success, 1 domain error, 2 usage or parse
// error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noisyor/document.hpp"
#include "noisyor/error.hpp"
#include "noisyor/inference.hpp"
#include "noisyor/oracle.hpp"
#include "noisyor/verify.hpp"

namespace {

using namespace noisyor;

std::string format_number(double value, int significant_digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
  return buffer;
}

void require_valid(const Network& net) {
  const auto report = validate_network(net);
  if (!report.ok()) throw Error("invalid network:\n" + report.to_string());
}

Evidence parse_evidence(const Network& net,
                        const std::vector<std::string>& pairs) {
  Evidence evidence;
  for (const auto& pair : pairs) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
      throw CLI::ValidationError("--evidence", "expected VAR=STATE, got '" +
                                                   pair + "'");
    const std::string name = pair.substr(0, eq);
    const std::string state = pair.substr(eq + 1);
    const NodeSpec* node = net.find(name);
    if (!node) throw Error("unknown variable '" + name + "'");
    auto index = node->variable.state_index(state);
    if (!index) {
      try {
        const int numeric = std::stoi(state);
        if (numeric >= 0 && numeric < node->variable.cardinality())
          index = numeric;
      } catch (...) {
      }
    }
    if (!index)
      throw Error("variable '" + name + "' has no state '" + state + "'");
    evidence.set(name, *index);
  }
  return evidence;
}

void print_marginals(const std::vector<std::string>& order,
                     const MarginalSet& marginals) {
  std::string out = "{\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    out += "  \"" + order[i] + "\": [";
    const auto& values = marginals.at(order[i]);
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j) out += ", ";
      out += format_number(values[j], 12);
    }
    out += "]";
    if (i + 1 < order.size()) out += ",";
    out += "\n";
  }
  out += "}\n";
  std::fputs(out.c_str(), stdout);
}

struct GlobalOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  double tolerance = -1.0;  // negative = per-check defaults
};

int cmd_compile(const std::string& path, const std::string& node,
                const GlobalOptions& global) {
  Document doc = load_document(path);
  require_valid(doc.network);
  const CompileOptions opts{global.budget, false};
  doc.network = node.empty() ? compile_network(doc.network, opts)
                             : compile_network(doc.network, opts, &node);
  std::fputs(serialize_document(doc).c_str(), stdout);
  return 0;
}

int cmd_query(const std::string& path,
              const std::vector<std::string>& evidence_pairs,
              const std::vector<std::string>& targets,
              const GlobalOptions& global) {
  const Document doc = load_document(path);
  require_valid(doc.network);
  const Evidence evidence = parse_evidence(doc.network, evidence_pairs);
  const CompileOptions opts{global.budget, false};
  const auto marginals = eliminate(doc.network, evidence, targets, opts);

  std::vector<std::string> order = targets;
  if (order.empty())
    for (const auto& n : doc.network.nodes()) order.push_back(n.variable.name);
  print_marginals(order, marginals);
  return 0;
}

int cmd_reliability(const std::string& path, const std::string& mode,
                    const GlobalOptions& global) {
  const Document doc = load_document(path);
  if (!doc.graph) throw Error("document has no graph section");
  const LinkGraph& g = *doc.graph;
  const CompileOptions opts{global.budget, false};

  if (mode == "connect") {
    double probability = 0.0;
    try {
      const Network net = build_connectivity_model(g, opts);
      probability = query_connectivity(net, g.source, g.target);
    } catch (const Error& e) {
      // An unreachable target simply has no live path.
      if (std::string(e.what()).find("not a descendant") == std::string::npos)
        throw;
    }
    std::printf("%s\n", format_number(probability, 12).c_str());
    return 0;
  }

  std::vector<double> distribution{1.0};  // unreachable: zero paths for sure
  try {
    const Network net = build_path_count_model(g, 1024, opts);
    distribution = query_path_distribution(net, g.source, g.target);
  } catch (const Error& e) {
    if (std::string(e.what()).find("not a descendant") == std::string::npos)
      throw;
  }
  std::string out = "[";
  for (std::size_t i = 0; i < distribution.size(); ++i) {
    if (i) out += ", ";
    out += format_number(distribution[i], 12);
  }
  out += "]\n";
  std::fputs(out.c_str(), stdout);
  return 0;
}

int cmd_diagnose(const std::string& path,
                 const std::vector<std::string>& evidence_pairs,
                 const std::vector<std::string>& targets,
                 const GlobalOptions& global) {
  const Document doc = load_document(path);
  if (!doc.circuit) throw Error("document has no circuit section");
  const CompileOptions opts{global.budget, false};
  const Network net = build_circuit_model(doc.circuit->circuit,
                                          doc.circuit->fault_model, opts);
  const Evidence evidence = parse_evidence(net, evidence_pairs);
  const auto marginals = diagnose(net, evidence, targets, opts);

  std::vector<std::string> order = targets;
  if (order.empty())
    for (const auto& n : net.nodes()) order.push_back(n.variable.name);
  print_marginals(order, marginals);
  return 0;
}

int cmd_verify(const std::string& path, int trials, std::uint64_t seed,
               const GlobalOptions& global) {
  const Document doc = load_document(path);
  VerifyOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  opts.budget = global.budget;
  opts.tolerance_override = global.tolerance;
  const VerifyReport report = run_verification(doc, opts);

  for (const auto& check : report.checks) {
    std::string line = check.passed ? "ok   " : "FAIL ";
    line += check.name;
    line += ": max deviation " + format_number(check.max_deviation, 3);
    if (!check.detail.empty()) line += " (" + check.detail + ")";
    std::printf("%s\n", line.c_str());
  }
  std::printf("%zu checks, %s\n", report.checks.size(),
              report.ok() ? "all passed" : "FAILURES above");
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Bayesian networks with noisy gates"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--budget", global.budget,
                 "Joint-state budget per gate (default 1000000)");
  app.add_option("--tolerance", global.tolerance,
                 "Override comparison tolerances in verify");

  std::string file;
  std::string node;
  std::string mode = "connect";
  std::vector<std::string> evidence;
  std::vector<std::string> targets;
  int trials = 200;
  std::uint64_t seed = 12345;

  auto* compile = app.add_subcommand(
      "compile", "Replace noisy gates with explicit tables");
  compile->add_option("file", file)->required();
  compile->add_option("--node", node, "Compile only the named node");

  auto* query =
      app.add_subcommand("query", "Posterior marginals given evidence");
  query->add_option("file", file)->required();
  query->add_option("--evidence", evidence, "VAR=STATE, repeatable");
  query->add_option("--target", targets, "Variable to report, repeatable");

  auto* reliability =
      app.add_subcommand("reliability", "Two-terminal reliability queries");
  reliability->add_option("file", file)->required();
  reliability->add_option("--mode", mode, "connect or paths")
      ->check(CLI::IsMember({"connect", "paths"}));

  auto* diagnose_cmd =
      app.add_subcommand("diagnose", "Posteriors over a circuit's wires");
  diagnose_cmd->add_option("file", file)->required();
  diagnose_cmd->add_option("--evidence", evidence, "VAR=STATE, repeatable");
  diagnose_cmd->add_option("--target", targets,
                           "Variable to report, repeatable");

  auto* verify =
      app.add_subcommand("verify", "Cross-check against brute-force oracles");
  verify->add_option("file", file)->required();
  verify->add_option("--trials", trials, "Random gates to check");
  verify->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*compile) return cmd_compile(file, node, global);
    if (*query) return cmd_query(file, evidence, targets, global);
    if (*reliability) return cmd_reliability(file, mode, global);
    if (*diagnose_cmd) return cmd_diagnose(file, evidence, targets, global);
    if (*verify) return cmd_verify(file, trials, seed, global);
  } catch (const noisyor::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
