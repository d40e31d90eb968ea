#pragma once

#include <cstdint>
#include <random>

#include "noisyor/network.hpp"
#include "noisyor/noisy_gate.hpp"
#include "noisyor/reliability.hpp"

namespace noisyor {

// Seeded generators shared by the test suites and the `verify` command.
// mt19937_64 is fully specified by the standard; the derived draws below
// avoid <random> distributions, which are not bit-stable across standard
// libraries, so a seed reproduces the same models everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform over [lo, hi], inclusive.
  int uniform_int(int lo, int hi);
  /// Uniform over [0, 1).
  double uniform();
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

struct RandomSpecOptions {
  int max_inputs = 4;
  int max_input_cardinality = 4;
  int max_output_cardinality = 5;
  /// Force every inhibitor probability strictly positive.
  bool strictly_positive_inhibitors = false;
};

/// Random truth-table function with unconstrained random inhibitors.
NoisyGateSpec random_truth_table_spec(Rng& rng,
                                      const RandomSpecOptions& opts = {});

/// All-Boolean OR gate with inhibitors (q_i, 0).
NoisyGateSpec random_boolean_or_spec(Rng& rng, int max_inputs = 6);

/// Weighted-average gate, Boolean output, inhibitors concentrated on state 0.
NoisyGateSpec random_nary_boolean_spec(Rng& rng, int max_inputs = 6,
                                       int max_input_cardinality = 4);

/// Varies the function kind and inhibitor style; exercises every compiler.
NoisyGateSpec random_mixed_spec(Rng& rng);

/// Random DAG of explicit-CPT and noisy-gate nodes, parents drawn from the
/// nodes added earlier.
Network random_network(Rng& rng, int max_nodes = 10, int max_cardinality = 3);

/// Random link DAG whose target is reachable from the source.
LinkGraph random_link_graph(Rng& rng, int max_links = 12);

}  // namespace noisyor
