#include "noisyor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "noisyor/error.hpp"
#include "noisyor/inference.hpp"
#include "noisyor/oracle.hpp"
#include "noisyor/random_models.hpp"

namespace noisyor {

namespace {

double max_abs_difference(const std::vector<double>& a,
                          const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

VerifyReport run_verification(const Document& doc, const VerifyOptions& opts) {
  VerifyReport report;
  const double cpt_tol = opts.tolerance_override >= 0.0
                             ? opts.tolerance_override
                             : opts.cpt_tolerance;
  const double inf_tol = opts.tolerance_override >= 0.0
                             ? opts.tolerance_override
                             : opts.inference_tolerance;
  const CompileOptions compile_opts{opts.budget, false};

  auto add = [&](VerifyCheck check) { report.checks.push_back(std::move(check)); };
  auto guarded = [&](const std::string& name, auto&& body) {
    VerifyCheck check;
    check.name = name;
    try {
      body(check);
    } catch (const std::exception& e) {
      check.passed = false;
      check.detail = e.what();
    }
    add(std::move(check));
  };

  if (!doc.network.empty()) {
    guarded("network validation", [&](VerifyCheck& check) {
      const auto validation = validate_network(doc.network);
      check.passed = validation.ok();
      if (!validation.ok()) {
        check.detail = validation.violations.front().subject + ": " +
                       validation.violations.front().message;
        if (validation.violations.size() > 1)
          check.detail += " (+" +
                          std::to_string(validation.violations.size() - 1) +
                          " more)";
      }
    });

    if (report.checks.back().passed) {
      for (const auto& node : doc.network.nodes()) {
        if (node.is_explicit()) continue;
        guarded("gate '" + node.variable.name + "' vs naive table",
                [&](VerifyCheck& check) {
                  const Factor fast = choose_compiler(node.gate(), compile_opts);
                  const Factor naive =
                      oracle::brute_force_cpt(node.gate(), opts.budget);
                  check.max_deviation =
                      max_abs_difference(fast.table(), naive.table());
                  check.passed = check.max_deviation <= cpt_tol;
                });
      }

      guarded("inference vs joint enumeration", [&](VerifyCheck& check) {
        std::uint64_t joint = 1;
        for (const auto& n : doc.network.nodes()) {
          joint *= static_cast<std::uint64_t>(n.variable.cardinality());
          if (joint > opts.budget) break;
        }
        if (joint > opts.budget) {
          check.passed = true;
          check.detail = "skipped: joint state space exceeds budget";
          return;
        }
        const auto marginals =
            eliminate(doc.network, Evidence{}, {}, compile_opts);
        for (const auto& [name, values] : marginals) {
          const auto reference = oracle::brute_force_marginal(
              doc.network, Evidence{}, name, opts.budget);
          check.max_deviation = std::max(
              check.max_deviation, max_abs_difference(values, reference));
        }
        check.passed = check.max_deviation <= inf_tol;
      });
    }
  }

  if (doc.graph) {
    guarded("reliability vs link-state enumeration", [&](VerifyCheck& check) {
      if (doc.graph->links.size() > 24) {
        check.passed = true;
        check.detail = "skipped: more than 24 links";
        return;
      }
      const auto summary = oracle::enumerate_link_states(*doc.graph);
      const Network connectivity =
          build_connectivity_model(*doc.graph, compile_opts);
      const double live = query_connectivity(connectivity, doc.graph->source,
                                             doc.graph->target);
      check.max_deviation = std::abs(live - summary.connectivity);

      const Network counts =
          build_path_count_model(*doc.graph, 1024, compile_opts);
      const auto distribution = query_path_distribution(
          counts, doc.graph->source, doc.graph->target);
      check.max_deviation =
          std::max(check.max_deviation,
                   max_abs_difference(distribution, summary.histogram));
      check.passed = check.max_deviation <= inf_tol;
    });
  }

  if (doc.circuit) {
    guarded("circuit model vs joint enumeration", [&](VerifyCheck& check) {
      const Network net = build_circuit_model(
          doc.circuit->circuit, doc.circuit->fault_model, compile_opts);
      std::uint64_t joint = 1;
      for (const auto& n : net.nodes()) {
        joint *= static_cast<std::uint64_t>(n.variable.cardinality());
        if (joint > opts.budget) break;
      }
      if (joint > opts.budget) {
        check.passed = true;
        check.detail = "skipped: joint state space exceeds budget";
        return;
      }
      const auto marginals = eliminate(net, Evidence{}, {}, compile_opts);
      for (const auto& [name, values] : marginals) {
        const auto reference =
            oracle::brute_force_marginal(net, Evidence{}, name, opts.budget);
        check.max_deviation = std::max(check.max_deviation,
                                       max_abs_difference(values, reference));
      }
      check.passed = check.max_deviation <= inf_tol;
    });
  }

  guarded("random gates vs naive table", [&](VerifyCheck& check) {
    Rng rng(opts.seed);
    for (int trial = 0; trial < opts.trials; ++trial) {
      const NoisyGateSpec spec = random_truth_table_spec(rng);
      const Factor fast = compile_general(spec, compile_opts);
      const Factor chosen = choose_compiler(spec, compile_opts);
      const Factor naive = oracle::brute_force_cpt(spec, opts.budget);
      check.max_deviation =
          std::max(check.max_deviation,
                   max_abs_difference(fast.table(), naive.table()));
      check.max_deviation =
          std::max(check.max_deviation,
                   max_abs_difference(chosen.table(), naive.table()));
    }
    check.passed = check.max_deviation <= cpt_tol;
    check.detail = std::to_string(opts.trials) + " trials, seed " +
                   std::to_string(opts.seed);
  });

  return report;
}

}  // namespace noisyor
