#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "noisyor/factor.hpp"
#include "noisyor/noisy_gate.hpp"

namespace testsupport {

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  if (a.size() != b.size()) return HUGE_VAL;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double max_abs_diff(const noisyor::Factor& a, const noisyor::Factor& b) {
  return max_abs_diff(a.table(), b.table());
}

inline noisyor::Variable var(const std::string& name, int card) {
  std::vector<std::string> states;
  for (int j = 0; j < card; ++j) states.push_back("s" + std::to_string(j));
  return noisyor::Variable(name, states);
}

/// Gate over freshly named inputs u1..un with the given inhibitor vectors.
inline noisyor::NoisyGateSpec make_spec(
    const std::vector<int>& cards,
    const std::vector<std::vector<double>>& inhibitors,
    noisyor::GateFunctionPtr function, int output_card) {
  noisyor::NoisyGateSpec spec;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    spec.inputs.push_back(var("u" + std::to_string(i + 1), cards[i]));
    spec.inhibitors.push_back(noisyor::InhibitorVector(inhibitors[i]));
  }
  spec.function = std::move(function);
  spec.output = var("x", output_card);
  return spec;
}

}  // namespace testsupport
