#pragma once

#include <map>
#include <string>
#include <vector>

#include "noisyor/network.hpp"

namespace noisyor {

/// Posterior marginals keyed by variable name; each vector is normalized.
using MarginalSet = std::map<std::string, std::vector<double>>;

enum class EliminationOrdering { MinDegree, ReverseTopological };

// Exact conditional marginals P(target | evidence) by variable elimination.
// Gates are compiled first; evidence zeroes inconsistent entries; non-target
// variables are summed out (min-degree order, ties by name); a single
// renormalization at the end divides by P(evidence). Empty `targets` means
// every variable. Throws ImpossibleEvidenceError when P(evidence) is zero or
// below 1e-300.
MarginalSet eliminate(const Network& net, const Evidence& evidence,
                      const std::vector<std::string>& targets = {},
                      const CompileOptions& opts = {},
                      EliminationOrdering ordering =
                          EliminationOrdering::MinDegree);

}  // namespace noisyor
