#include "noisyor/network.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "noisyor/error.hpp"

namespace noisyor {

void Network::add_node(NodeSpec node) {
  if (contains(node.variable.name))
    throw std::invalid_argument("network already has a node named '" +
                                node.variable.name + "'");
  nodes_.push_back(std::move(node));
}

void Network::remove_node(const std::string& name) {
  const auto it = std::find_if(
      nodes_.begin(), nodes_.end(),
      [&](const NodeSpec& n) { return n.variable.name == name; });
  if (it == nodes_.end())
    throw std::invalid_argument("no node named '" + name + "'");
  for (const auto& other : nodes_)
    if (other.variable.name != name)
      for (const auto& p : other.parents)
        if (p == name)
          throw std::invalid_argument("cannot remove '" + name +
                                      "': it is a parent of '" +
                                      other.variable.name + "'");
  nodes_.erase(it);
}

void Network::replace_backing(const std::string& name, NodeBacking backing) {
  const auto it = std::find_if(
      nodes_.begin(), nodes_.end(),
      [&](const NodeSpec& n) { return n.variable.name == name; });
  if (it == nodes_.end())
    throw std::invalid_argument("no node named '" + name + "'");
  it->backing = std::move(backing);
}

const NodeSpec* Network::find(const std::string& name) const {
  for (const auto& n : nodes_)
    if (n.variable.name == name) return &n;
  return nullptr;
}

const NodeSpec& Network::node(const std::string& name) const {
  if (const NodeSpec* n = find(name)) return *n;
  throw std::invalid_argument("no node named '" + name + "'");
}

std::vector<std::string> topological_order(const Network& net) {
  std::map<std::string, std::vector<std::string>> children;
  std::map<std::string, int> pending;  // unprocessed parents per node
  for (const auto& n : net.nodes()) {
    pending.emplace(n.variable.name, 0);
    children.emplace(n.variable.name, std::vector<std::string>{});
  }
  for (const auto& n : net.nodes()) {
    for (const auto& p : n.parents) {
      if (!pending.count(p))
        throw std::invalid_argument("node '" + n.variable.name +
                                    "' references unknown parent '" + p + "'");
      ++pending[n.variable.name];
      children[p].push_back(n.variable.name);
    }
  }

  std::set<std::string> ready;  // ordered, so ties resolve by name
  for (const auto& [name, count] : pending)
    if (count == 0) ready.insert(name);

  std::vector<std::string> order;
  order.reserve(net.size());
  while (!ready.empty()) {
    const std::string name = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(name);
    for (const auto& child : children[name])
      if (--pending[child] == 0) ready.insert(child);
  }

  if (order.size() != net.size()) {
    // Some node is stuck on a cycle. Walking parent links through the stuck
    // set must revisit a node; that node lies on a cycle.
    std::set<std::string> stuck;
    for (const auto& [name, count] : pending)
      if (count > 0) stuck.insert(name);
    std::string cursor = *stuck.begin();
    std::set<std::string> seen;
    while (seen.insert(cursor).second) {
      for (const auto& p : net.node(cursor).parents)
        if (stuck.count(p)) {
          cursor = p;
          break;
        }
    }
    throw CycleError(cursor);
  }
  return order;
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& v : violations) {
    out += v.subject;
    out += ": ";
    out += v.message;
    out += '\n';
  }
  return out;
}

ValidationReport validate_network(const Network& net) {
  constexpr double kNormalizationTolerance = 1e-9;
  ValidationReport report;
  auto add = [&](const std::string& subject, std::string message) {
    report.violations.push_back({subject, std::move(message)});
  };

  bool parents_resolve = true;
  for (const auto& n : net.nodes()) {
    for (const auto& p : n.parents) {
      if (!net.contains(p)) {
        add(n.variable.name, "dangling parent '" + p + "'");
        parents_resolve = false;
      }
    }
  }

  if (parents_resolve) {
    try {
      topological_order(net);
    } catch (const CycleError& e) {
      add(e.member(), "cycle through this node");
    }
  }

  for (const auto& n : net.nodes()) {
    if (n.parents.empty() && !n.is_explicit())
      add(n.variable.name, "root node must carry an explicit marginal");

    if (n.is_explicit()) {
      const Factor& cpt = n.cpt();
      const auto& vars = cpt.variables();
      bool scope_ok = vars.size() == n.parents.size() + 1;
      if (scope_ok) {
        for (std::size_t i = 0; i < n.parents.size(); ++i)
          if (vars[i].name != n.parents[i]) scope_ok = false;
        if (vars.back().name != n.variable.name ||
            vars.back().cardinality() != n.variable.cardinality())
          scope_ok = false;
      }
      if (!scope_ok) {
        add(n.variable.name, "CPT scope is not [parents..., variable]");
        continue;
      }
      bool cards_ok = true;
      for (std::size_t i = 0; i < n.parents.size(); ++i) {
        const NodeSpec* parent = net.find(n.parents[i]);
        if (parent &&
            vars[i].cardinality() != parent->variable.cardinality()) {
          add(n.variable.name, "CPT cardinality for parent '" + n.parents[i] +
                                   "' does not match its variable");
          cards_ok = false;
        }
      }
      if (cards_ok && !is_normalized_cpt(cpt, kNormalizationTolerance))
        add(n.variable.name, "unnormalized CPT");
    } else {
      const NoisyGateSpec& gate = n.gate();
      bool wiring_ok = gate.inputs.size() == n.parents.size();
      if (wiring_ok)
        for (std::size_t i = 0; i < n.parents.size(); ++i)
          if (gate.inputs[i].name != n.parents[i]) wiring_ok = false;
      if (!wiring_ok)
        add(n.variable.name, "gate inputs do not equal parents in order");
      if (!(gate.output == n.variable))
        add(n.variable.name, "gate output variable does not match the node");
      for (auto& problem : gate.validate()) add(n.variable.name, problem);
    }
  }
  return report;
}

Factor node_cpt(const NodeSpec& node, const CompileOptions& opts) {
  if (node.is_explicit()) return node.cpt();
  return choose_compiler(node.gate(), opts);
}

Network compile_network(const Network& net, const CompileOptions& opts,
                        const std::string* only) {
  Network out;
  for (const auto& n : net.nodes()) {
    NodeSpec copy = n;
    if (!n.is_explicit() && (!only || *only == n.variable.name))
      copy.backing = choose_compiler(n.gate(), opts);
    out.add_node(std::move(copy));
  }
  if (only && !net.contains(*only))
    throw std::invalid_argument("no node named '" + *only + "'");
  return out;
}

}  // namespace noisyor
