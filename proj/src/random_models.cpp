#include "noisyor/random_models.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "noisyor/indexing.hpp"

namespace noisyor {

int Rng::uniform_int(int lo, int hi) {
  const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % range);
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

namespace {

Variable numbered_variable(const std::string& prefix, int index, int card) {
  std::vector<std::string> states;
  states.reserve(static_cast<std::size_t>(card));
  for (int j = 0; j < card; ++j) states.push_back("s" + std::to_string(j));
  return Variable(prefix + std::to_string(index), std::move(states));
}

// Random inhibitor vector with total mass <= mass_cap; entries may be zero
// unless strictly_positive is set.
InhibitorVector random_inhibitors(Rng& rng, int card, bool strictly_positive) {
  std::vector<double> probs(static_cast<std::size_t>(card), 0.0);
  const double mass = rng.uniform(strictly_positive ? 0.05 : 0.0, 0.9);
  double weight_total = 0.0;
  std::vector<double> weights(probs.size());
  for (auto& w : weights) {
    w = strictly_positive ? rng.uniform(0.1, 1.0) : rng.uniform();
    if (!strictly_positive && rng.uniform() < 0.3) w = 0.0;  // sprinkle zeros
    weight_total += w;
  }
  if (weight_total > 0.0)
    for (std::size_t j = 0; j < probs.size(); ++j)
      probs[j] = mass * weights[j] / weight_total;
  if (strictly_positive)
    for (double& p : probs) p = std::max(p, 1e-6);
  return InhibitorVector(std::move(probs));
}

std::vector<int> random_cards(Rng& rng, int n, int lo, int hi) {
  std::vector<int> cards(static_cast<std::size_t>(n));
  for (auto& c : cards) c = rng.uniform_int(lo, hi);
  return cards;
}

NoisyGateSpec assemble(Rng& rng, const std::vector<int>& cards,
                       GateFunctionPtr function, int output_card,
                       bool strictly_positive) {
  NoisyGateSpec spec;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    spec.inputs.push_back(
        numbered_variable("u", static_cast<int>(i + 1), cards[i]));
    spec.inhibitors.push_back(
        random_inhibitors(rng, cards[i], strictly_positive));
  }
  spec.function = std::move(function);
  spec.output = numbered_variable("x", 0, output_card);
  return spec;
}

}  // namespace

NoisyGateSpec random_truth_table_spec(Rng& rng,
                                      const RandomSpecOptions& opts) {
  const int n = rng.uniform_int(1, opts.max_inputs);
  const auto cards = random_cards(rng, n, 2, opts.max_input_cardinality);
  const int output_card = rng.uniform_int(2, opts.max_output_cardinality);
  const auto size = static_cast<std::size_t>(joint_size(cards));
  std::vector<int> table(size);
  for (auto& x : table) x = rng.uniform_int(0, output_card - 1);
  auto function =
      std::make_shared<TruthTableFunction>(cards, output_card, std::move(table));
  return assemble(rng, cards, std::move(function), output_card,
                  opts.strictly_positive_inhibitors);
}

NoisyGateSpec random_boolean_or_spec(Rng& rng, int max_inputs) {
  const int n = rng.uniform_int(1, max_inputs);
  const std::vector<int> cards(static_cast<std::size_t>(n), 2);
  NoisyGateSpec spec;
  for (int i = 0; i < n; ++i) {
    spec.inputs.push_back(numbered_variable("u", i + 1, 2));
    spec.inhibitors.push_back(
        InhibitorVector({rng.uniform(0.0, 0.95), 0.0}));
  }
  spec.function = std::make_shared<BooleanOrFunction>(n);
  spec.output = numbered_variable("x", 0, 2);
  return spec;
}

NoisyGateSpec random_nary_boolean_spec(Rng& rng, int max_inputs,
                                       int max_input_cardinality) {
  const int n = rng.uniform_int(1, max_inputs);
  const auto cards = random_cards(rng, n, 2, max_input_cardinality);
  NoisyGateSpec spec;
  for (int i = 0; i < n; ++i) {
    spec.inputs.push_back(
        numbered_variable("u", i + 1, cards[static_cast<std::size_t>(i)]));
    std::vector<double> probs(
        static_cast<std::size_t>(cards[static_cast<std::size_t>(i)]), 0.0);
    probs[0] = rng.uniform(0.0, 0.95);
    spec.inhibitors.push_back(InhibitorVector(std::move(probs)));
  }
  spec.function = std::make_shared<WeightedAverageFunction>(cards, 2);
  spec.output = numbered_variable("x", 0, 2);
  return spec;
}

NoisyGateSpec random_mixed_spec(Rng& rng) {
  switch (rng.uniform_int(0, 3)) {
    case 0:
      return random_boolean_or_spec(rng, 4);
    case 1:
      return random_nary_boolean_spec(rng, 3, 3);
    case 2: {
      // Weighted average with free-form inhibitors and a wider output.
      const int n = rng.uniform_int(1, 3);
      const auto cards = random_cards(rng, n, 2, 4);
      const int output_card = rng.uniform_int(2, 4);
      const bool positive = rng.uniform() < 0.5;
      return assemble(
          rng, cards,
          std::make_shared<WeightedAverageFunction>(cards, output_card),
          output_card, positive);
    }
    default: {
      RandomSpecOptions opts;
      opts.max_inputs = 3;
      opts.max_input_cardinality = 3;
      opts.max_output_cardinality = 4;
      opts.strictly_positive_inhibitors = rng.uniform() < 0.5;
      return random_truth_table_spec(rng, opts);
    }
  }
}

Network random_network(Rng& rng, int max_nodes, int max_cardinality) {
  const int count = rng.uniform_int(2, max_nodes);
  Network net;
  std::vector<Variable> added;
  for (int i = 0; i < count; ++i) {
    const int card = rng.uniform_int(2, max_cardinality);
    Variable var = numbered_variable("v", i, card);

    // Parents drawn from earlier nodes keeps the graph acyclic.
    std::vector<Variable> parents;
    if (!added.empty()) {
      const int want =
          rng.uniform_int(0, std::min<int>(3, static_cast<int>(added.size())));
      std::vector<int> pool(added.size());
      for (std::size_t k = 0; k < pool.size(); ++k)
        pool[k] = static_cast<int>(k);
      for (int k = 0; k < want; ++k) {
        const int pick = rng.uniform_int(k, static_cast<int>(pool.size()) - 1);
        std::swap(pool[static_cast<std::size_t>(k)],
                  pool[static_cast<std::size_t>(pick)]);
        parents.push_back(added[static_cast<std::size_t>(
            pool[static_cast<std::size_t>(k)])]);
      }
      std::sort(parents.begin(), parents.end(),
                [](const Variable& a, const Variable& b) {
                  return a.name < b.name;
                });
    }

    std::vector<std::string> parent_names;
    for (const auto& p : parents) parent_names.push_back(p.name);

    NodeSpec node{var, parent_names, Factor()};
    const bool use_gate = !parents.empty() && rng.uniform() < 0.5;
    if (use_gate) {
      NoisyGateSpec spec;
      spec.inputs = parents;
      std::vector<int> cards;
      for (const auto& p : parents) {
        cards.push_back(p.cardinality());
        spec.inhibitors.push_back(random_inhibitors(rng, p.cardinality(), false));
      }
      const auto size = static_cast<std::size_t>(joint_size(cards));
      std::vector<int> table(size);
      for (auto& x : table) x = rng.uniform_int(0, card - 1);
      spec.function =
          std::make_shared<TruthTableFunction>(cards, card, std::move(table));
      spec.output = var;
      node.backing = std::move(spec);
    } else {
      std::vector<Variable> scope = parents;
      scope.push_back(var);
      std::vector<int> cards;
      for (const auto& v : scope) cards.push_back(v.cardinality());
      const auto size = static_cast<std::size_t>(joint_size(cards));
      std::vector<double> table(size);
      for (std::size_t base = 0; base < size;
           base += static_cast<std::size_t>(card)) {
        double total = 0.0;
        for (int j = 0; j < card; ++j) {
          const double w = rng.uniform(0.05, 1.0);
          table[base + static_cast<std::size_t>(j)] = w;
          total += w;
        }
        for (int j = 0; j < card; ++j)
          table[base + static_cast<std::size_t>(j)] /= total;
      }
      node.backing = Factor(std::move(scope), std::move(table));
    }
    net.add_node(std::move(node));
    added.push_back(std::move(var));
  }
  return net;
}

LinkGraph random_link_graph(Rng& rng, int max_links) {
  // Nodes in a fixed order; links only go forward, so the graph is acyclic.
  const int node_count = rng.uniform_int(3, std::min(7, max_links + 1));
  LinkGraph g;
  for (int i = 0; i < node_count; ++i)
    g.nodes.push_back("n" + std::to_string(i));
  g.source = g.nodes.front();

  const int want = rng.uniform_int(node_count - 1, max_links);
  std::set<std::pair<int, int>> used;
  // A spine guarantees the last node is reachable from the source.
  for (int i = 0; i + 1 < node_count; ++i) used.emplace(i, i + 1);
  int attempts = 0;
  while (static_cast<int>(used.size()) < want && attempts < 200) {
    ++attempts;
    const int a = rng.uniform_int(0, node_count - 2);
    const int b = rng.uniform_int(a + 1, node_count - 1);
    used.emplace(a, b);
  }
  for (const auto& [a, b] : used)
    g.links.push_back({g.nodes[static_cast<std::size_t>(a)],
                       g.nodes[static_cast<std::size_t>(b)],
                       rng.uniform(0.0, 1.0)});
  g.target = g.nodes.back();
  return g;
}

}  // namespace noisyor
