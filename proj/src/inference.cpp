#include "noisyor/inference.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "noisyor/error.hpp"

namespace noisyor {

namespace {

constexpr double kEvidenceUnderflow = 1e-300;

// Greedy min-degree order over the interaction graph of the factor scopes.
// The kept variable participates in degrees but is never selected.
std::vector<std::string> min_degree_order(const std::vector<Factor>& factors,
                                          const std::string& kept) {
  std::map<std::string, std::set<std::string>> adjacency;
  for (const auto& f : factors) {
    for (const auto& a : f.variables()) {
      adjacency[a.name];
      for (const auto& b : f.variables())
        if (a.name != b.name) adjacency[a.name].insert(b.name);
    }
  }

  std::vector<std::string> order;
  std::set<std::string> remaining;
  for (const auto& [name, _] : adjacency)
    if (name != kept) remaining.insert(name);

  while (!remaining.empty()) {
    // Ordered set iteration makes the tie-break by name automatic.
    std::string best;
    std::size_t best_degree = 0;
    for (const auto& name : remaining) {
      const std::size_t degree = adjacency[name].size();
      if (best.empty() || degree < best_degree) {
        best = name;
        best_degree = degree;
      }
    }
    order.push_back(best);
    remaining.erase(best);

    auto neighbors = adjacency[best];
    for (const auto& a : neighbors) {
      adjacency[a].erase(best);
      for (const auto& b : neighbors)
        if (a != b) adjacency[a].insert(b);
    }
    adjacency.erase(best);
  }
  return order;
}

std::vector<double> eliminate_single(const std::vector<Factor>& cpts,
                                     const std::vector<std::string>& var_order,
                                     const std::string& target,
                                     EliminationOrdering ordering) {
  std::vector<Factor> work = cpts;

  std::vector<std::string> order;
  if (ordering == EliminationOrdering::MinDegree) {
    order = min_degree_order(work, target);
  } else {
    order.assign(var_order.rbegin(), var_order.rend());
    std::erase(order, target);
  }

  for (const auto& name : order) {
    Factor merged;
    bool any = false;
    std::vector<Factor> next;
    for (auto& f : work) {
      if (f.index_of(name) >= 0) {
        merged = any ? factor_product(merged, f) : std::move(f);
        any = true;
      } else {
        next.push_back(std::move(f));
      }
    }
    if (any) next.push_back(factor_marginalize(merged, name));
    work = std::move(next);
  }

  Factor result;
  for (const auto& f : work) result = factor_product(result, f);
  if (result.index_of(target) < 0)
    throw std::logic_error("elimination lost the target variable");

  double z = 0.0;
  for (double p : result.table()) z += p;
  if (!(z > kEvidenceUnderflow)) throw ImpossibleEvidenceError();

  std::vector<double> marginal = result.table();
  for (double& p : marginal) p /= z;
  return marginal;
}

}  // namespace

MarginalSet eliminate(const Network& net, const Evidence& evidence,
                      const std::vector<std::string>& targets,
                      const CompileOptions& opts,
                      EliminationOrdering ordering) {
  for (const auto& [name, state] : evidence.assignments) {
    const NodeSpec* node = net.find(name);
    if (!node)
      throw std::invalid_argument("evidence names unknown variable '" + name +
                                  "'");
    if (state < 0 || state >= node->variable.cardinality())
      throw std::invalid_argument("evidence state for '" + name +
                                  "' out of range");
  }

  std::vector<std::string> wanted = targets;
  if (wanted.empty())
    for (const auto& n : net.nodes()) wanted.push_back(n.variable.name);
  for (const auto& t : wanted)
    if (!net.contains(t))
      throw std::invalid_argument("target names unknown variable '" + t + "'");

  const auto var_order = topological_order(net);

  std::vector<Factor> cpts;
  cpts.reserve(net.size());
  for (const auto& n : net.nodes())
    cpts.push_back(apply_evidence(node_cpt(n, opts), evidence));

  MarginalSet result;
  for (const auto& t : wanted)
    result[t] = eliminate_single(cpts, var_order, t, ordering);
  return result;
}

}  // namespace noisyor
