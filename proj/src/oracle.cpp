#include "noisyor/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "noisyor/error.hpp"

namespace noisyor::oracle {

namespace {

// Local odometer so the oracle does not lean on the library's enumeration
// helpers.
bool bump(std::vector<int>& digits, const std::vector<int>& radices) {
  for (std::size_t d = digits.size(); d-- > 0;) {
    if (++digits[d] < radices[d]) return true;
    digits[d] = 0;
  }
  return false;
}

}  // namespace

Factor brute_force_cpt(const NoisyGateSpec& spec, std::uint64_t budget) {
  const auto problems = spec.validate();
  if (!problems.empty())
    throw std::invalid_argument("invalid gate for '" + spec.output.name +
                                "': " + problems.front());

  std::vector<int> cards;
  for (const auto& v : spec.inputs) cards.push_back(v.cardinality());
  std::uint64_t s = 1;
  for (int m : cards) s *= static_cast<std::uint64_t>(m);
  if (s > budget)
    throw BudgetExceededError("oracle: joint input space " + std::to_string(s) +
                              " exceeds budget " + std::to_string(budget));

  const int n = static_cast<int>(cards.size());
  const int mx = spec.output.cardinality();
  std::vector<double> table(static_cast<std::size_t>(s) *
                            static_cast<std::size_t>(mx));

  std::vector<int> u(cards.size(), 0);
  std::size_t cell = 0;
  do {
    for (int x = 0; x < mx; ++x, ++cell) {
      double total = 0.0;
      std::vector<int> t(cards.size(), 0);
      do {
        if (spec.function->eval(t) != x) continue;
        double p = 1.0;
        for (int i = 0; i < n; ++i) {
          const auto& inh = spec.inhibitors[static_cast<std::size_t>(i)];
          const int ui = u[static_cast<std::size_t>(i)];
          const int ti = t[static_cast<std::size_t>(i)];
          const double fail = inh.probs()[static_cast<std::size_t>(ti)];
          p *= (ui == ti) ? inh.nofail() + fail : fail;
        }
        total += p;
      } while (bump(t, cards));
      table[cell] = total;
    }
  } while (bump(u, cards));

  std::vector<Variable> scope = spec.inputs;
  scope.push_back(spec.output);
  return Factor(std::move(scope), std::move(table));
}

std::vector<double> brute_force_marginal(const Network& net,
                                         const Evidence& evidence,
                                         const std::string& target,
                                         std::uint64_t max_joint_states) {
  const NodeSpec* target_node = net.find(target);
  if (!target_node)
    throw std::invalid_argument("unknown target '" + target + "'");

  std::vector<std::string> names;
  std::vector<int> cards;
  std::map<std::string, std::size_t> position;
  for (const auto& n : net.nodes()) {
    position[n.variable.name] = names.size();
    names.push_back(n.variable.name);
    cards.push_back(n.variable.cardinality());
  }
  std::uint64_t joint = 1;
  for (int m : cards) {
    joint *= static_cast<std::uint64_t>(m);
    if (joint > max_joint_states)
      throw Error("oracle: joint state space exceeds " +
                  std::to_string(max_joint_states));
  }

  for (const auto& [name, state] : evidence.assignments) {
    const auto it = position.find(name);
    if (it == position.end())
      throw std::invalid_argument("evidence names unknown variable '" + name +
                                  "'");
    if (state < 0 || state >= cards[it->second])
      throw std::invalid_argument("evidence state for '" + name +
                                  "' out of range");
  }

  // Per node: the CPT table plus the joint-assignment positions of its scope.
  struct NodeTable {
    std::vector<double> table;
    std::vector<std::size_t> scope_positions;
    std::vector<int> scope_cards;
  };
  std::vector<NodeTable> tables;
  for (const auto& n : net.nodes()) {
    NodeTable nt;
    const Factor cpt = n.is_explicit() ? n.cpt() : brute_force_cpt(n.gate());
    nt.table = cpt.table();
    for (const auto& v : cpt.variables()) {
      nt.scope_positions.push_back(position.at(v.name));
      nt.scope_cards.push_back(v.cardinality());
    }
    tables.push_back(std::move(nt));
  }

  // Full joint, then condition and sum onto the target.
  std::vector<double> joint_table(static_cast<std::size_t>(joint));
  std::vector<int> assign(cards.size(), 0);
  std::size_t flat = 0;
  do {
    double p = 1.0;
    for (const auto& nt : tables) {
      std::size_t offset = 0;
      for (std::size_t d = 0; d < nt.scope_positions.size(); ++d)
        offset = offset * static_cast<std::size_t>(nt.scope_cards[d]) +
                 static_cast<std::size_t>(assign[nt.scope_positions[d]]);
      p *= nt.table[offset];
    }
    joint_table[flat++] = p;
  } while (bump(assign, cards));

  const std::size_t target_pos = position.at(target);
  std::vector<double> marginal(
      static_cast<std::size_t>(cards[target_pos]), 0.0);
  std::fill(assign.begin(), assign.end(), 0);
  flat = 0;
  do {
    bool consistent = true;
    for (const auto& [name, state] : evidence.assignments)
      if (assign[position.at(name)] != state) {
        consistent = false;
        break;
      }
    if (consistent)
      marginal[static_cast<std::size_t>(assign[target_pos])] +=
          joint_table[flat];
    ++flat;
  } while (bump(assign, cards));

  double z = 0.0;
  for (double p : marginal) z += p;
  if (!(z > 0.0)) throw ImpossibleEvidenceError();
  for (double& p : marginal) p /= z;
  return marginal;
}

namespace {

// Paths from `node` to the target over live links only, memoized. Saturates
// far below overflow because test graphs stay small.
std::uint64_t count_paths(std::size_t node, std::size_t target,
                          const std::vector<std::vector<std::size_t>>& out_links,
                          const std::vector<std::size_t>& link_to,
                          const std::vector<bool>& live,
                          std::vector<std::int64_t>& memo) {
  if (node == target) return 1;
  if (memo[node] >= 0) return static_cast<std::uint64_t>(memo[node]);
  std::uint64_t total = 0;
  for (std::size_t l : out_links[node])
    if (live[l])
      total += count_paths(link_to[l], target, out_links, link_to, live, memo);
  memo[node] = static_cast<std::int64_t>(total);
  return total;
}

LinkStateSummary enumerate_impl(const LinkGraph& g,
                                const std::vector<std::string>& sources,
                                int max_links) {
  if (static_cast<int>(g.links.size()) > max_links)
    throw Error("link-state enumeration: " + std::to_string(g.links.size()) +
                " links exceed the limit of " + std::to_string(max_links));

  std::map<std::string, std::size_t> index;
  auto intern = [&](const std::string& name) {
    return index.emplace(name, index.size()).first->second;
  };
  for (const auto& name : g.nodes) intern(name);
  for (const auto& link : g.links) {
    intern(link.from);
    intern(link.to);
  }
  const std::size_t target = intern(g.target);
  std::vector<std::size_t> source_ids;
  for (const auto& s : sources) {
    const std::size_t id = intern(s);
    if (std::find(source_ids.begin(), source_ids.end(), id) ==
        source_ids.end())
      source_ids.push_back(id);
  }

  const std::size_t node_count = index.size();
  const std::size_t link_count = g.links.size();
  std::vector<std::vector<std::size_t>> out_links(node_count);
  std::vector<std::size_t> link_to(link_count);
  for (std::size_t l = 0; l < link_count; ++l) {
    out_links[index.at(g.links[l].from)].push_back(l);
    link_to[l] = index.at(g.links[l].to);
  }

  auto total_paths = [&](const std::vector<bool>& live) {
    std::uint64_t total = 0;
    for (std::size_t s : source_ids) {
      std::vector<std::int64_t> memo(node_count, -1);
      total += count_paths(s, target, out_links, link_to, live, memo);
    }
    return total;
  };

  const std::uint64_t max_count = total_paths(
      std::vector<bool>(link_count, true));

  LinkStateSummary summary;
  summary.histogram.assign(static_cast<std::size_t>(max_count) + 1, 0.0);

  std::vector<bool> live(link_count);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << link_count);
       ++mask) {
    double prob = 1.0;
    for (std::size_t l = 0; l < link_count; ++l) {
      const bool up = (mask >> l) & 1;
      live[l] = up;
      prob *= up ? 1.0 - g.links[l].failure : g.links[l].failure;
    }
    const std::uint64_t paths = total_paths(live);
    summary.histogram[static_cast<std::size_t>(paths)] += prob;
    if (paths > 0) summary.connectivity += prob;
  }
  return summary;
}

}  // namespace

LinkStateSummary enumerate_link_states(const LinkGraph& g, int max_links) {
  return enumerate_impl(g, {g.source}, max_links);
}

LinkStateSummary enumerate_link_states(const LinkGraph& g,
                                       const std::vector<std::string>& sources,
                                       int max_links) {
  return enumerate_impl(g, sources, max_links);
}

}  // namespace noisyor::oracle
