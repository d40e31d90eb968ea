#include "noisyor/variable.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace noisyor {

Variable::Variable(std::string name_, std::vector<std::string> states_)
    : name(std::move(name_)), states(std::move(states_)) {
  if (name.empty()) throw std::invalid_argument("variable name is empty");
  if (states.empty())
    throw std::invalid_argument("variable '" + name + "' has no states");
  std::unordered_set<std::string_view> seen;
  for (const auto& s : states) {
    if (!seen.insert(s).second)
      throw std::invalid_argument("variable '" + name +
                                  "' has duplicate state label '" + s + "'");
  }
}

Variable Variable::boolean(std::string name) {
  return Variable(std::move(name), {"false", "true"});
}

Variable Variable::counting(std::string name, int max_count) {
  if (max_count < 0)
    throw std::invalid_argument("counting variable needs max_count >= 0");
  std::vector<std::string> states;
  states.reserve(static_cast<std::size_t>(max_count) + 1);
  for (int i = 0; i <= max_count; ++i) states.push_back(std::to_string(i));
  return Variable(std::move(name), std::move(states));
}

std::optional<int> Variable::state_index(std::string_view label) const {
  const auto it = std::find(states.begin(), states.end(), label);
  if (it == states.end()) return std::nullopt;
  return static_cast<int>(it - states.begin());
}

bool operator==(const Variable& a, const Variable& b) {
  return a.name == b.name && a.states == b.states;
}

}  // namespace noisyor
