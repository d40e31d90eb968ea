#include "noisyor/reliability.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "noisyor/error.hpp"
#include "noisyor/indexing.hpp"
#include "noisyor/inference.hpp"

namespace noisyor {

namespace {

std::vector<std::string> all_node_names(const LinkGraph& g) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  auto intern = [&](const std::string& name) {
    if (seen.insert(name).second) names.push_back(name);
  };
  for (const auto& n : g.nodes) intern(n);
  for (const auto& link : g.links) {
    intern(link.from);
    intern(link.to);
  }
  intern(g.source);
  intern(g.target);
  return names;
}

void check_links(const LinkGraph& g) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& link : g.links) {
    if (link.from == link.to)
      throw std::invalid_argument("self-loop link on '" + link.from + "'");
    if (!(link.failure >= 0.0 && link.failure <= 1.0))
      throw std::invalid_argument("link " + link.from + "->" + link.to +
                                  " has failure probability outside [0, 1]");
    if (!seen.emplace(link.from, link.to).second)
      throw std::invalid_argument("duplicate link " + link.from + "->" +
                                  link.to);
  }
}

// Link-graph analogue of topological_order; throws CycleError.
std::vector<std::string> graph_order(const LinkGraph& g) {
  const auto names = all_node_names(g);
  std::map<std::string, int> pending;
  std::map<std::string, std::vector<std::string>> children;
  for (const auto& n : names) pending.emplace(n, 0);
  for (const auto& link : g.links) {
    ++pending[link.to];
    children[link.from].push_back(link.to);
  }
  std::set<std::string> ready;
  for (const auto& [name, count] : pending)
    if (count == 0) ready.insert(name);
  std::vector<std::string> order;
  while (!ready.empty()) {
    const std::string name = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(name);
    for (const auto& child : children[name])
      if (--pending[child] == 0) ready.insert(child);
  }
  if (order.size() != names.size()) {
    for (const auto& [name, count] : pending)
      if (count > 0) throw CycleError(name);
  }
  return order;
}

// Reachability from any of `sources`, following links forward.
std::set<std::string> descendants_of(const LinkGraph& g,
                                     const std::vector<std::string>& sources) {
  std::map<std::string, std::vector<std::string>> children;
  for (const auto& link : g.links) children[link.from].push_back(link.to);
  std::set<std::string> reached;
  std::vector<std::string> frontier;
  for (const auto& s : sources)
    if (reached.insert(s).second) frontier.push_back(s);
  while (!frontier.empty()) {
    const std::string name = frontier.back();
    frontier.pop_back();
    for (const auto& child : children[name])
      if (reached.insert(child).second) frontier.push_back(child);
  }
  return reached;
}

std::map<std::string, std::uint64_t> path_counts_from(
    const LinkGraph& g, const std::vector<std::string>& sources) {
  check_links(g);
  const auto order = graph_order(g);
  const std::set<std::string> roots(sources.begin(), sources.end());

  std::map<std::string, std::vector<std::string>> parents;
  for (const auto& link : g.links) parents[link.to].push_back(link.from);

  auto saturating_add = [](std::uint64_t a, std::uint64_t b) {
    return (a > kJointSizeSaturated - b) ? kJointSizeSaturated : a + b;
  };

  std::map<std::string, std::uint64_t> counts;
  for (const auto& name : order) {
    if (roots.count(name)) {
      counts[name] = 1;  // a root has the single path to itself
      continue;
    }
    std::uint64_t total = 0;
    for (const auto& p : parents[name])
      total = saturating_add(total, counts[p]);
    counts[name] = total;
  }
  return counts;
}

struct BuilderInput {
  LinkGraph graph;             // possibly extended with the super source
  std::vector<std::string> roots;
  std::string clamp;           // the variable evidence is declared on
};

BuilderInput single_source_input(const LinkGraph& g) {
  return {g, {g.source}, g.source};
}

BuilderInput multi_source_input(const LinkGraph& g,
                                const std::vector<std::string>& sources) {
  if (sources.empty())
    throw std::invalid_argument("multi-source query needs at least one source");
  const auto names = all_node_names(g);
  const std::set<std::string> known(names.begin(), names.end());
  std::vector<std::string> unique;
  for (const auto& s : sources) {
    if (!known.count(s))
      throw std::invalid_argument("unknown source node '" + s + "'");
    if (std::find(unique.begin(), unique.end(), s) == unique.end())
      unique.push_back(s);
  }

  std::string super = "super_source";
  while (known.count(super)) super += "_";

  BuilderInput input;
  input.graph = g;
  input.graph.nodes = names;
  input.graph.nodes.push_back(super);
  for (const auto& s : unique)
    input.graph.links.push_back({super, s, 0.0});  // failure-free feeds
  input.graph.source = super;
  input.roots = {super};
  input.clamp = super;
  return input;
}

Network build_connectivity(const BuilderInput& input,
                           const CompileOptions& opts) {
  const LinkGraph& g = input.graph;
  check_links(g);
  graph_order(g);  // reject cycles before any construction
  const auto reached = descendants_of(g, input.roots);
  if (!reached.count(g.target))
    throw Error("target '" + g.target + "' is not a descendant of the source");

  std::map<std::string, std::vector<const Link*>> in_links;
  for (const auto& link : g.links)
    if (reached.count(link.from)) in_links[link.to].push_back(&link);

  Network net;
  const auto order = graph_order(g);
  for (const auto& name : order) {
    if (!reached.count(name)) continue;
    Variable var = Variable::boolean(name);
    if (name == input.clamp) {
      net.add_node({var, {}, Factor({var}, {0.5, 0.5})});
      continue;
    }
    const auto& links = in_links[name];
    NoisyGateSpec gate;
    std::vector<std::string> parent_names;
    for (const Link* link : links) {
      gate.inputs.push_back(Variable::boolean(link->from));
      gate.inhibitors.push_back(InhibitorVector({link->failure, 0.0}));
      parent_names.push_back(link->from);
    }
    gate.function =
        std::make_shared<BooleanOrFunction>(static_cast<int>(links.size()));
    gate.output = var;
    NodeSpec node{var, std::move(parent_names), std::move(gate)};
    node.backing = choose_compiler(std::get<NoisyGateSpec>(node.backing), opts);
    net.add_node(std::move(node));
  }
  return net;
}

Network build_path_counts(const BuilderInput& input, int cardinality_cap,
                          const CompileOptions& opts) {
  const LinkGraph& g = input.graph;
  check_links(g);
  graph_order(g);
  const auto reached = descendants_of(g, input.roots);
  if (!reached.count(g.target))
    throw Error("target '" + g.target + "' is not a descendant of the source");

  const auto counts = path_counts_from(g, input.roots);
  for (const auto& name : reached) {
    const std::uint64_t states = counts.at(name) + 1;
    if (states > static_cast<std::uint64_t>(cardinality_cap))
      throw Error("path-count state space too large: node '" + name +
                  "' needs " + std::to_string(states) +
                  " states, cap is " + std::to_string(cardinality_cap));
  }

  std::map<std::string, std::vector<const Link*>> in_links;
  for (const auto& link : g.links)
    if (reached.count(link.from)) in_links[link.to].push_back(&link);

  auto variable_for = [&](const std::string& name) {
    return Variable::counting(name, static_cast<int>(counts.at(name)));
  };

  Network net;
  const auto order = graph_order(g);
  for (const auto& name : order) {
    if (!reached.count(name)) continue;
    Variable var = variable_for(name);
    if (name == input.clamp) {
      net.add_node({var, {}, Factor({var}, {0.5, 0.5})});
      continue;
    }
    const auto& links = in_links[name];
    NoisyGateSpec gate;
    std::vector<std::string> parent_names;
    std::vector<int> input_cards;
    for (const Link* link : links) {
      Variable parent = variable_for(link->from);
      input_cards.push_back(parent.cardinality());
      std::vector<double> inh(parent.states.size(), 0.0);
      inh[0] = link->failure;  // a failed link delivers zero paths
      gate.inputs.push_back(std::move(parent));
      gate.inhibitors.push_back(InhibitorVector(std::move(inh)));
      parent_names.push_back(link->from);
    }
    gate.function = std::make_shared<IntegerAddFunction>(
        std::move(input_cards), var.cardinality());
    gate.output = var;
    NodeSpec node{var, std::move(parent_names), std::move(gate)};
    node.backing = choose_compiler(std::get<NoisyGateSpec>(node.backing), opts);
    net.add_node(std::move(node));
  }
  return net;
}

}  // namespace

std::map<std::string, std::uint64_t> annotate_path_counts(const LinkGraph& g) {
  return path_counts_from(g, {g.source});
}

Network build_connectivity_model(const LinkGraph& g,
                                 const CompileOptions& opts) {
  return build_connectivity(single_source_input(g), opts);
}

double query_connectivity(const Network& net, const std::string& source,
                          const std::string& target) {
  Evidence evidence;
  evidence.set(source, 1);
  const auto marginals = eliminate(net, evidence, {target});
  return marginals.at(target)[1];
}

Network build_path_count_model(const LinkGraph& g, int cardinality_cap,
                               const CompileOptions& opts) {
  return build_path_counts(single_source_input(g), cardinality_cap, opts);
}

std::vector<double> query_path_distribution(const Network& net,
                                            const std::string& source,
                                            const std::string& target) {
  Evidence evidence;
  evidence.set(source, 1);
  const auto marginals = eliminate(net, evidence, {target});
  return marginals.at(target);
}

MultiSourceModel build_connectivity_model_multi(
    const LinkGraph& g, const std::vector<std::string>& sources,
    const CompileOptions& opts) {
  const auto input = multi_source_input(g, sources);
  return {build_connectivity(input, opts), input.clamp};
}

MultiSourceModel build_path_count_model_multi(
    const LinkGraph& g, const std::vector<std::string>& sources,
    int cardinality_cap, const CompileOptions& opts) {
  const auto input = multi_source_input(g, sources);
  return {build_path_counts(input, cardinality_cap, opts), input.clamp};
}

}  // namespace noisyor
