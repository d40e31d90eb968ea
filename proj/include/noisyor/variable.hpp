#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noisyor {

/// A named discrete random variable. State j is identified by its position in
/// `states`; the label is only a display name. Boolean variables put "false"
/// at index 0 and "true" at index 1.
struct Variable {
  std::string name;
  std::vector<std::string> states;

  Variable() = default;
  Variable(std::string name, std::vector<std::string> states);

  static Variable boolean(std::string name);
  /// States "0".."max_count" (max_count + 1 of them).
  static Variable counting(std::string name, int max_count);

  int cardinality() const { return static_cast<int>(states.size()); }
  std::optional<int> state_index(std::string_view label) const;
};

bool operator==(const Variable& a, const Variable& b);

/// Observed state indices, at most one per variable.
struct Evidence {
  std::map<std::string, int> assignments;

  Evidence() = default;
  explicit Evidence(std::map<std::string, int> assignments)
      : assignments(std::move(assignments)) {}

  bool empty() const { return assignments.empty(); }
  bool contains(const std::string& var) const {
    return assignments.count(var) != 0;
  }
  void set(const std::string& var, int state_index) {
    assignments[var] = state_index;
  }
};

}  // namespace noisyor
