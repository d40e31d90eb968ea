#include "noisyor/noisy_gate.hpp"

#include <cmath>
#include <stdexcept>

#include "noisyor/indexing.hpp"

namespace noisyor {

namespace {
// Slack for sums assembled from decimal literals (0.1 + 0.9 lands a few ulps
// above 1).
constexpr double kSumTolerance = 1e-9;
}  // namespace

InhibitorVector::InhibitorVector(std::vector<double> probs)
    : probs_(std::move(probs)) {
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw std::invalid_argument(
          "inhibitor probabilities must lie in [0, 1]");
    sum += p;
  }
  if (sum > 1.0 + kSumTolerance)
    throw std::invalid_argument(
        "inhibitor probabilities sum to more than 1 (no mass left for the "
        "no-failure event)");
  nofail_ = std::max(0.0, 1.0 - sum);
}

Factor line_distribution(const InhibitorVector& inh, const Variable& input) {
  if (inh.size() != input.cardinality())
    throw std::invalid_argument("inhibitor vector length " +
                                std::to_string(inh.size()) +
                                " does not match cardinality of '" +
                                input.name + "'");
  const int m = input.cardinality();
  Variable transmitted(input.name + "'", input.states);
  std::vector<double> table(static_cast<std::size_t>(m) *
                            static_cast<std::size_t>(m));
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      table[static_cast<std::size_t>(u * m + v)] =
          (u == v) ? inh.nofail() + inh.probs()[static_cast<std::size_t>(v)]
                   : inh.probs()[static_cast<std::size_t>(v)];
  return Factor({input, std::move(transmitted)}, std::move(table));
}

std::vector<std::string> NoisyGateSpec::validate() const {
  std::vector<std::string> problems;
  if (inputs.empty()) problems.push_back("gate has no inputs");
  if (inhibitors.size() != inputs.size())
    problems.push_back("gate has " + std::to_string(inhibitors.size()) +
                       " inhibitor vectors for " +
                       std::to_string(inputs.size()) + " inputs");
  for (std::size_t i = 0; i < inputs.size() && i < inhibitors.size(); ++i)
    if (inhibitors[i].size() != inputs[i].cardinality())
      problems.push_back("inhibitor vector for '" + inputs[i].name +
                         "' has length " +
                         std::to_string(inhibitors[i].size()) + ", expected " +
                         std::to_string(inputs[i].cardinality()));
  if (!function) {
    problems.push_back("gate has no function");
    return problems;
  }
  if (function->input_count() != static_cast<int>(inputs.size()))
    problems.push_back("function takes " +
                       std::to_string(function->input_count()) +
                       " inputs, gate has " + std::to_string(inputs.size()));
  else
    for (std::size_t i = 0; i < inputs.size(); ++i)
      if (function->input_cardinalities()[i] != inputs[i].cardinality())
        problems.push_back("function input " + std::to_string(i) +
                           " cardinality does not match '" + inputs[i].name +
                           "'");
  if (function->output_cardinality() != output.cardinality())
    problems.push_back("function output cardinality " +
                       std::to_string(function->output_cardinality()) +
                       " does not match '" + output.name + "'");
  return problems;
}

std::uint64_t NoisyGateSpec::joint_input_size() const {
  const auto cards = input_cardinalities();
  return joint_size(cards);
}

std::vector<int> NoisyGateSpec::input_cardinalities() const {
  std::vector<int> cards;
  cards.reserve(inputs.size());
  for (const auto& v : inputs) cards.push_back(v.cardinality());
  return cards;
}

}  // namespace noisyor
