#include "noisyor/gate_function.hpp"

#include <numeric>
#include <stdexcept>

#include "noisyor/error.hpp"
#include "noisyor/indexing.hpp"

namespace noisyor {

GateFunction::GateFunction(std::vector<int> input_cardinalities,
                           int output_cardinality)
    : input_cards_(std::move(input_cardinalities)),
      output_card_(output_cardinality) {
  if (input_cards_.empty())
    throw std::invalid_argument("gate function needs at least one input");
  for (int m : input_cards_)
    if (m < 1)
      throw std::invalid_argument("gate function input cardinality must be >= 1");
  if (output_card_ < 1)
    throw std::invalid_argument("gate function output cardinality must be >= 1");
}

std::uint64_t GateFunction::joint_input_size() const {
  return joint_size(input_cards_);
}

std::optional<std::vector<std::vector<int>>> GateFunction::invert(int) const {
  return std::nullopt;
}

void GateFunction::check_indices(std::span<const int> indices) const {
  if (indices.size() != input_cards_.size())
    throw std::out_of_range("gate function: wrong number of input indices");
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i] < 0 || indices[i] >= input_cards_[i])
      throw std::out_of_range("gate function: input index out of range");
}

BooleanOrFunction::BooleanOrFunction(int input_count)
    : GateFunction(std::vector<int>(static_cast<std::size_t>(
                       input_count > 0 ? input_count : 0), 2), 2) {}

int BooleanOrFunction::eval(std::span<const int> indices) const {
  check_indices(indices);
  for (int j : indices)
    if (j == 1) return 1;
  return 0;
}

WeightedAverageFunction::WeightedAverageFunction(
    std::vector<int> input_cardinalities, int output_cardinality)
    : GateFunction(std::move(input_cardinalities), output_cardinality) {
  for (int m : this->input_cardinalities())
    if (m < 2)
      throw std::invalid_argument(
          "weighted-average undefined for single-state input");
  if (output_cardinality < 2)
    throw std::invalid_argument(
        "weighted-average needs an output with at least two states");
}

int WeightedAverageFunction::eval(std::span<const int> indices) const {
  check_indices(indices);
  const auto& cards = input_cardinalities();
  const int n = input_count();

  // ceil((m_x - 1) * (1/n) * sum_i j_i / (m_i - 1)), as one exact fraction:
  //   numerator   = (m_x - 1) * sum_i j_i * prod_{k != i} (m_k - 1)
  //   denominator = n * prod_i (m_i - 1)
  std::uint64_t total = 1;
  for (int m : cards) {
    const auto span = static_cast<std::uint64_t>(m - 1);
    if (total > kJointSizeSaturated / span)
      throw std::invalid_argument("weighted-average input space too large");
    total *= span;
  }
  unsigned __int128 numerator = 0;
  for (int i = 0; i < n; ++i) {
    const auto span = static_cast<std::uint64_t>(cards[static_cast<std::size_t>(i)] - 1);
    numerator += static_cast<unsigned __int128>(indices[static_cast<std::size_t>(i)]) *
                 (total / span);
  }
  numerator *= static_cast<std::uint64_t>(output_cardinality() - 1);
  const unsigned __int128 denominator =
      static_cast<unsigned __int128>(n) * total;
  const auto ceiling = (numerator + denominator - 1) / denominator;
  return static_cast<int>(ceiling);
}

IntegerAddFunction::IntegerAddFunction(std::vector<int> input_cardinalities,
                                       int output_cardinality)
    : GateFunction(std::move(input_cardinalities), output_cardinality) {
  long long expected = 1;
  for (int m : this->input_cardinalities()) expected += m - 1;
  if (expected != output_cardinality)
    throw std::invalid_argument(
        "integer-add output cardinality must be 1 + sum(m_i - 1) = " +
        std::to_string(expected));
}

int IntegerAddFunction::eval(std::span<const int> indices) const {
  check_indices(indices);
  return std::accumulate(indices.begin(), indices.end(), 0);
}

TruthTableFunction::TruthTableFunction(std::vector<int> input_cardinalities,
                                       int output_cardinality,
                                       std::vector<int> table)
    : GateFunction(std::move(input_cardinalities), output_cardinality),
      table_(std::move(table)) {
  const std::uint64_t size = joint_input_size();
  if (size == kJointSizeSaturated || table_.size() != size)
    throw std::invalid_argument("truth table has " +
                                std::to_string(table_.size()) +
                                " entries, expected " + std::to_string(size));
  preimage_flat_.resize(static_cast<std::size_t>(output_cardinality));
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    const int x = table_[flat];
    if (x < 0 || x >= output_cardinality)
      throw std::invalid_argument("truth table entry out of output range");
    preimage_flat_[static_cast<std::size_t>(x)].push_back(flat);
  }
}

int TruthTableFunction::eval(std::span<const int> indices) const {
  check_indices(indices);
  return table_[mixed_radix_index(indices, input_cardinalities())];
}

std::optional<std::vector<std::vector<int>>> TruthTableFunction::invert(
    int output) const {
  if (output < 0 || output >= output_cardinality())
    throw std::out_of_range("invert: output index out of range");
  std::vector<std::vector<int>> tuples;
  tuples.reserve(preimage_flat_[static_cast<std::size_t>(output)].size());
  for (std::size_t flat : preimage_flat_[static_cast<std::size_t>(output)])
    tuples.push_back(mixed_radix_decode(flat, input_cardinalities()));
  return tuples;
}

bool check_onto(const GateFunction& f, std::uint64_t budget) {
  if (f.joint_input_size() > budget)
    throw BudgetExceededError("onto-check infeasible: joint input space " +
                              std::to_string(f.joint_input_size()) +
                              " exceeds budget " + std::to_string(budget));
  std::vector<bool> hit(static_cast<std::size_t>(f.output_cardinality()), false);
  const auto& cards = f.input_cardinalities();
  std::vector<int> u(cards.size(), 0);
  do {
    hit[static_cast<std::size_t>(f.eval(u))] = true;
  } while (next_assignment(u, cards));
  for (bool h : hit)
    if (!h) return false;
  return true;
}

std::vector<std::vector<int>> invert_default(const GateFunction& f, int output,
                                             std::uint64_t budget) {
  if (output < 0 || output >= f.output_cardinality())
    throw std::out_of_range("invert: output index out of range");
  if (f.joint_input_size() > budget)
    throw BudgetExceededError("invert infeasible: joint input space " +
                              std::to_string(f.joint_input_size()) +
                              " exceeds budget " + std::to_string(budget));
  std::vector<std::vector<int>> tuples;
  const auto& cards = f.input_cardinalities();
  std::vector<int> u(cards.size(), 0);
  do {
    if (f.eval(u) == output) tuples.emplace_back(u.begin(), u.end());
  } while (next_assignment(u, cards));
  return tuples;
}

std::vector<std::vector<int>> invert_preimages(const GateFunction& f,
                                               int output,
                                               std::uint64_t budget) {
  if (auto specialized = f.invert(output)) return std::move(*specialized);
  return invert_default(f, output, budget);
}

}  // namespace noisyor
