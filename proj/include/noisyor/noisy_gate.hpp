#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "noisyor/factor.hpp"
#include "noisyor/gate_function.hpp"
#include "noisyor/variable.hpp"

namespace noisyor {

/// Per-state failure probabilities for one input line. probs[j] is the
/// chance the line fails "in state j", delivering state j downstream
/// regardless of the input. The remaining mass, nofail(), passes the input
/// through unchanged, so the entries must sum to at most 1.
class InhibitorVector {
 public:
  InhibitorVector() = default;
  explicit InhibitorVector(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  int size() const { return static_cast<int>(probs_.size()); }
  double nofail() const { return nofail_; }

 private:
  std::vector<double> probs_;
  double nofail_ = 1.0;
};

/// The conditional distribution a line induces between its input and its
/// transmitted value: a Factor over [input, transmitted] where the
/// transmitted variable carries the same states under the name "name'".
/// Row u holds nofail + probs[u] on the diagonal and probs[v] elsewhere.
Factor line_distribution(const InhibitorVector& inh, const Variable& input);

/// Compile-time description of one noisy gate: inputs feeding independent
/// failure-prone lines into a deterministic function. The transmitted values
/// are never materialized as network variables; compilation sums them out.
struct NoisyGateSpec {
  std::vector<Variable> inputs;
  std::vector<InhibitorVector> inhibitors;  // one per input, same length as its states
  GateFunctionPtr function;
  Variable output;

  /// Shape violations (empty when well-formed): inhibitor counts/lengths,
  /// function arity and cardinalities against inputs and output.
  std::vector<std::string> validate() const;
  std::uint64_t joint_input_size() const;
  std::vector<int> input_cardinalities() const;
};

}  // namespace noisyor
