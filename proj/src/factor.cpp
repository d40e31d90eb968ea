#include "noisyor/factor.hpp"

#include <cmath>
#include <stdexcept>

#include "noisyor/indexing.hpp"

namespace noisyor {

namespace {

// Strides of each variable within a factor's flat layout, last fastest.
std::vector<std::size_t> strides_of(const std::vector<int>& cards) {
  std::vector<std::size_t> strides(cards.size(), 1);
  for (std::size_t d = cards.size(); d-- > 1;)
    strides[d - 1] = strides[d] * static_cast<std::size_t>(cards[d]);
  return strides;
}

}  // namespace

Factor::Factor(std::vector<Variable> variables, std::vector<double> table)
    : variables_(std::move(variables)), table_(std::move(table)) {
  std::size_t expected = 1;
  for (const auto& v : variables_) {
    if (v.cardinality() < 1)
      throw std::invalid_argument("factor variable '" + v.name +
                                  "' has no states");
    expected *= static_cast<std::size_t>(v.cardinality());
  }
  if (table_.size() != expected)
    throw std::invalid_argument("factor table has " +
                                std::to_string(table_.size()) +
                                " entries, expected " +
                                std::to_string(expected));
  for (std::size_t d = 0; d < variables_.size(); ++d)
    for (std::size_t e = d + 1; e < variables_.size(); ++e)
      if (variables_[d].name == variables_[e].name)
        throw std::invalid_argument("factor scope repeats variable '" +
                                    variables_[d].name + "'");
  for (double p : table_)
    if (!(p >= 0.0) || !std::isfinite(p))
      throw std::invalid_argument("factor entries must be finite and >= 0");
}

std::vector<int> Factor::cardinalities() const {
  std::vector<int> cards;
  cards.reserve(variables_.size());
  for (const auto& v : variables_) cards.push_back(v.cardinality());
  return cards;
}

double Factor::at(std::span<const int> indices) const {
  const auto cards = cardinalities();
  return table_[mixed_radix_index(indices, cards)];
}

int Factor::index_of(const std::string& variable_name) const {
  for (std::size_t d = 0; d < variables_.size(); ++d)
    if (variables_[d].name == variable_name) return static_cast<int>(d);
  return -1;
}

Factor factor_product(const Factor& a, const Factor& b) {
  std::vector<Variable> vars = a.variables();
  for (const auto& v : b.variables()) {
    bool found = false;
    for (const auto& existing : vars) {
      if (existing.name != v.name) continue;
      if (existing.cardinality() != v.cardinality())
        throw std::invalid_argument("factor product: variable '" + v.name +
                                    "' has mismatched cardinalities");
      found = true;
      break;
    }
    if (!found) vars.push_back(v);
  }

  std::vector<int> cards;
  cards.reserve(vars.size());
  for (const auto& v : vars) cards.push_back(v.cardinality());

  const auto strides_a = strides_of(a.cardinalities());
  const auto strides_b = strides_of(b.cardinalities());
  // Stride of each result dimension inside a and b (0 when absent there).
  std::vector<std::size_t> map_a(vars.size(), 0), map_b(vars.size(), 0);
  for (std::size_t d = 0; d < vars.size(); ++d) {
    if (int pos = a.index_of(vars[d].name); pos >= 0)
      map_a[d] = strides_a[static_cast<std::size_t>(pos)];
    if (int pos = b.index_of(vars[d].name); pos >= 0)
      map_b[d] = strides_b[static_cast<std::size_t>(pos)];
  }

  std::size_t total = 1;
  for (int c : cards) total *= static_cast<std::size_t>(c);
  std::vector<double> out(total);

  std::vector<int> assign(vars.size(), 0);
  std::size_t flat = 0;
  do {
    std::size_t off_a = 0, off_b = 0;
    for (std::size_t d = 0; d < assign.size(); ++d) {
      off_a += map_a[d] * static_cast<std::size_t>(assign[d]);
      off_b += map_b[d] * static_cast<std::size_t>(assign[d]);
    }
    out[flat++] = a.table()[off_a] * b.table()[off_b];
  } while (next_assignment(assign, cards));

  return Factor(std::move(vars), std::move(out));
}

Factor factor_marginalize(const Factor& f, const std::string& variable_name) {
  const int pos = f.index_of(variable_name);
  if (pos < 0)
    throw std::invalid_argument("marginalize: variable '" + variable_name +
                                "' not in factor scope");

  std::vector<Variable> vars;
  for (std::size_t d = 0; d < f.variables().size(); ++d)
    if (static_cast<int>(d) != pos) vars.push_back(f.variables()[d]);

  std::vector<int> out_cards;
  out_cards.reserve(vars.size());
  for (const auto& v : vars) out_cards.push_back(v.cardinality());
  const auto out_strides = strides_of(out_cards);

  const auto cards = f.cardinalities();
  // Stride of each source dimension inside the result (0 for the summed one).
  std::vector<std::size_t> map_out(cards.size(), 0);
  for (std::size_t d = 0, o = 0; d < cards.size(); ++d) {
    if (static_cast<int>(d) == pos) continue;
    map_out[d] = out_strides[o++];
  }

  std::size_t total = 1;
  for (int c : out_cards) total *= static_cast<std::size_t>(c);
  std::vector<double> out(total, 0.0);

  std::vector<int> assign(cards.size(), 0);
  std::size_t flat = 0;
  do {
    std::size_t off = 0;
    for (std::size_t d = 0; d < assign.size(); ++d)
      off += map_out[d] * static_cast<std::size_t>(assign[d]);
    out[off] += f.table()[flat++];
  } while (next_assignment(assign, cards));

  return Factor(std::move(vars), std::move(out));
}

Factor apply_evidence(const Factor& f, const Evidence& evidence) {
  std::vector<std::pair<std::size_t, int>> clamped;  // dimension -> state
  for (std::size_t d = 0; d < f.variables().size(); ++d) {
    const auto it = evidence.assignments.find(f.variables()[d].name);
    if (it == evidence.assignments.end()) continue;
    if (it->second < 0 || it->second >= f.variables()[d].cardinality())
      throw std::invalid_argument("evidence state for '" +
                                  f.variables()[d].name + "' out of range");
    clamped.emplace_back(d, it->second);
  }
  if (clamped.empty()) return f;

  const auto cards = f.cardinalities();
  std::vector<double> out = f.table();
  std::vector<int> assign(cards.size(), 0);
  std::size_t flat = 0;
  do {
    for (const auto& [dim, state] : clamped) {
      if (assign[dim] != state) {
        out[flat] = 0.0;
        break;
      }
    }
    ++flat;
  } while (next_assignment(assign, cards));

  return Factor(f.variables(), std::move(out));
}

bool is_normalized_cpt(const Factor& f, double tol) {
  if (f.variables().empty()) return false;
  const auto child_card =
      static_cast<std::size_t>(f.variables().back().cardinality());
  for (std::size_t base = 0; base < f.size(); base += child_card) {
    double sum = 0.0;
    for (std::size_t j = 0; j < child_card; ++j) sum += f.table()[base + j];
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace noisyor
