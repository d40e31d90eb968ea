#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace noisyor {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

/// A total deterministic map from joint input states to an output state.
/// States are identified by index throughout.
class GateFunction {
 public:
  GateFunction(std::vector<int> input_cardinalities, int output_cardinality);
  virtual ~GateFunction() = default;

  const std::vector<int>& input_cardinalities() const { return input_cards_; }
  int output_cardinality() const { return output_card_; }
  int input_count() const { return static_cast<int>(input_cards_.size()); }
  /// Product of the input cardinalities, saturating at 2^62.
  std::uint64_t joint_input_size() const;

  virtual int eval(std::span<const int> indices) const = 0;
  virtual std::string kind() const = 0;

  // Specialized inverse: the exact preimage {u | eval(u) = output} when an
  // efficient algorithm is known for this function. nullopt means callers
  // fall back to invert_default's exhaustive enumeration.
  virtual std::optional<std::vector<std::vector<int>>> invert(
      int output) const;

 protected:
  /// Throws std::out_of_range unless every index is within its cardinality.
  void check_indices(std::span<const int> indices) const;

 private:
  std::vector<int> input_cards_;
  int output_card_;
};

using GateFunctionPtr = std::shared_ptr<const GateFunction>;

/// Boolean OR. Every input and the output must be Boolean.
class BooleanOrFunction final : public GateFunction {
 public:
  explicit BooleanOrFunction(int input_count);
  int eval(std::span<const int> indices) const override;
  std::string kind() const override { return "or"; }
};

// The equally-weighted index average: each input's index is taken as a
// fraction of its maximum index, the fractions are averaged, scaled to the
// maximum output index, and mapped back with a ceiling. Evaluated in exact
// integer arithmetic so boundary values cannot be misclassified by rounding.
// Collapses to Boolean OR when everything is Boolean; the output is 0 iff
// every input is 0.
class WeightedAverageFunction final : public GateFunction {
 public:
  WeightedAverageFunction(std::vector<int> input_cardinalities,
                          int output_cardinality);
  int eval(std::span<const int> indices) const override;
  std::string kind() const override { return "weighted_average"; }
};

/// Integer addition of state indices. The output cardinality must be
/// 1 + sum_i(m_i - 1) so every sum is representable.
class IntegerAddFunction final : public GateFunction {
 public:
  IntegerAddFunction(std::vector<int> input_cardinalities,
                     int output_cardinality);
  int eval(std::span<const int> indices) const override;
  std::string kind() const override { return "add"; }
};

/// Arbitrary function given by a flat output-index array in the canonical
/// layout. Keeps a precomputed inverse index, so invert() is always
/// available.
class TruthTableFunction final : public GateFunction {
 public:
  TruthTableFunction(std::vector<int> input_cardinalities,
                     int output_cardinality, std::vector<int> table);
  int eval(std::span<const int> indices) const override;
  std::string kind() const override { return "truth_table"; }
  std::optional<std::vector<std::vector<int>>> invert(int output) const override;
  const std::vector<int>& table() const { return table_; }

 private:
  std::vector<int> table_;
  std::vector<std::vector<std::size_t>> preimage_flat_;  // per output state
};

/// True iff every output state has a nonempty preimage. Throws
/// BudgetExceededError when the joint input space exceeds `budget`.
bool check_onto(const GateFunction& f,
                std::uint64_t budget = kDefaultEnumerationBudget);

/// The preimage {u | f.eval(u) = output} by exhaustive enumeration, in
/// canonical order. Budget-gated like check_onto.
std::vector<std::vector<int>> invert_default(
    const GateFunction& f, int output,
    std::uint64_t budget = kDefaultEnumerationBudget);

/// The function's own inverse when it has one, else invert_default.
std::vector<std::vector<int>> invert_preimages(
    const GateFunction& f, int output,
    std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace noisyor
