#pragma once

#include <span>
#include <string>
#include <vector>

#include "noisyor/variable.hpp"

namespace noisyor {

/// A nonnegative table over an ordered list of discrete variables, stored
/// flat in the canonical mixed-radix layout (last variable fastest). A CPT
/// for X given parents U is a Factor over [U..., X]. A factor with no
/// variables is a scalar.
class Factor {
 public:
  Factor() : table_{1.0} {}
  explicit Factor(double scalar) : table_{scalar} {}
  Factor(std::vector<Variable> variables, std::vector<double> table);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<double>& table() const { return table_; }
  std::size_t size() const { return table_.size(); }
  std::vector<int> cardinalities() const;

  double at(std::span<const int> indices) const;
  /// Position of the named variable in the scope, or -1 when absent.
  int index_of(const std::string& variable_name) const;

 private:
  std::vector<Variable> variables_;
  std::vector<double> table_;
};

/// Pointwise product over the union of the scopes; a's variables come first,
/// then b's new ones. Shared variables must agree in cardinality.
Factor factor_product(const Factor& a, const Factor& b);

/// Sums the named variable out of the scope; total mass is preserved.
Factor factor_marginalize(const Factor& f, const std::string& variable_name);

/// Zeroes every entry inconsistent with the evidence. The scope is unchanged;
/// evidence on variables outside the scope is ignored.
Factor apply_evidence(const Factor& f, const Evidence& evidence);

/// True when every parent configuration's slice over the last variable sums
/// to 1 within tol.
bool is_normalized_cpt(const Factor& f, double tol);

}  // namespace noisyor
