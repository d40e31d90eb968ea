#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "noisyor/document.hpp"

namespace noisyor {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  std::string detail;  // failure context or skip note
};

struct VerifyOptions {
  int trials = 200;
  std::uint64_t seed = 12345;
  std::uint64_t budget = kDefaultEnumerationBudget;
  double cpt_tolerance = 1e-12;
  double inference_tolerance = 1e-9;
  /// When >= 0, replaces both tolerances above.
  double tolerance_override = -1.0;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

// Cross-checks the document against the brute-force oracles (network
// validation, per-gate compilation, inference, reliability queries), then
// `trials` seeded random gates against the naive table builder. Deterministic
// given the seed.
VerifyReport run_verification(const Document& doc,
                              const VerifyOptions& opts = {});

}  // namespace noisyor
