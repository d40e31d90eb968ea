#pragma once

#include <string>
#include <variant>
#include <vector>

#include "noisyor/compile.hpp"
#include "noisyor/factor.hpp"
#include "noisyor/noisy_gate.hpp"

namespace noisyor {

/// Either an explicit CPT over [parents..., variable] or a noisy gate whose
/// inputs equal the parents in order.
using NodeBacking = std::variant<Factor, NoisyGateSpec>;

struct NodeSpec {
  Variable variable;
  std::vector<std::string> parents;
  NodeBacking backing;

  bool is_explicit() const { return backing.index() == 0; }
  const Factor& cpt() const { return std::get<Factor>(backing); }
  const NoisyGateSpec& gate() const { return std::get<NoisyGateSpec>(backing); }
};

/// A DAG of nodes in insertion order, keyed by variable name. Values are
/// plain copies; edits never touch a network shared with another owner.
class Network {
 public:
  void add_node(NodeSpec node);
  /// Removes a node nothing else depends on.
  void remove_node(const std::string& name);
  void replace_backing(const std::string& name, NodeBacking backing);

  bool contains(const std::string& name) const { return find(name) != nullptr; }
  const NodeSpec* find(const std::string& name) const;
  const NodeSpec& node(const std::string& name) const;
  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<NodeSpec> nodes_;
};

/// Parents before children, ties broken by name. Throws CycleError naming a
/// variable on some cycle.
std::vector<std::string> topological_order(const Network& net);

struct Violation {
  std::string subject;  // node name, or "network" for global problems
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Structural checks reported as data: dangling parents, cycles, root nodes
// without explicit marginals, CPT scope/normalization problems (tolerance
// 1e-9), and per-gate shape violations.
ValidationReport validate_network(const Network& net);

/// The node's explicit CPT: a copy for explicit backings, a compilation
/// (via choose_compiler) for gates.
Factor node_cpt(const NodeSpec& node, const CompileOptions& opts = {});

/// Replaces every noisy-gate backing (or just `only`, when given) with its
/// compiled CPT. Already-explicit nodes pass through untouched.
Network compile_network(const Network& net, const CompileOptions& opts = {},
                        const std::string* only = nullptr);

}  // namespace noisyor
