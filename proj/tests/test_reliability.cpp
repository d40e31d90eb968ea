#include <doctest.h>

#include <map>

#include "noisyor/error.hpp"
#include "noisyor/oracle.hpp"
#include "noisyor/random_models.hpp"
#include "noisyor/reliability.hpp"
#include "test_support.hpp"

using namespace noisyor;
using testsupport::max_abs_diff;

namespace {

LinkGraph series() {
  LinkGraph g;
  g.nodes = {"A", "B", "C"};
  g.links = {{"A", "B", 0.1}, {"B", "C", 0.2}};
  g.source = "A";
  g.target = "C";
  return g;
}

LinkGraph diamond(double failure) {
  LinkGraph g;
  g.nodes = {"A", "B", "C", "D"};
  g.links = {{"A", "B", failure},
             {"A", "C", failure},
             {"B", "D", failure},
             {"C", "D", failure}};
  g.source = "A";
  g.target = "D";
  return g;
}

// The shipped stand-in demo: 7 nodes, 8 links, four A-to-G paths.
LinkGraph standin() {
  LinkGraph g;
  g.nodes = {"A", "B", "C", "D", "E", "F", "G"};
  g.links = {{"A", "B", 0.1},  {"A", "C", 0.2},  {"B", "D", 0.05},
             {"C", "D", 0.15}, {"D", "E", 0.1},  {"D", "F", 0.2},
             {"E", "G", 0.25}, {"F", "G", 0.05}};
  g.source = "A";
  g.target = "G";
  return g;
}

// All simple source-target paths as link-probability products (used by the
// expected-count identity).
double sum_of_path_products(const LinkGraph& g) {
  std::map<std::string, std::vector<const Link*>> out;
  for (const auto& link : g.links) out[link.from].push_back(&link);
  double total = 0.0;
  auto walk = [&](auto&& self, const std::string& node, double product) -> void {
    if (node == g.target) {
      total += product;
      return;
    }
    for (const Link* link : out[node])
      self(self, link->to, product * (1.0 - link->failure));
  };
  walk(walk, g.source, 1.0);
  return total;
}

}  // namespace

TEST_SUITE_BEGIN("reliability");

TEST_CASE("annotate_path_counts") {
  CHECK(annotate_path_counts(series()).at("C") == 1);
  CHECK(annotate_path_counts(diamond(0.5)).at("D") == 2);
  CHECK(annotate_path_counts(standin()).at("G") == 4);

  SUBCASE("unreachable nodes count zero") {
    LinkGraph g = series();
    g.nodes.push_back("LONER");
    g.links.push_back({"LONER", "C", 0.5});
    const auto counts = annotate_path_counts(g);
    CHECK(counts.at("LONER") == 0);
    CHECK(counts.at("C") == 1);  // the loner contributes nothing
  }

  SUBCASE("cycles are rejected") {
    LinkGraph g = series();
    g.links.push_back({"C", "A", 0.5});
    CHECK_THROWS_AS(annotate_path_counts(g), CycleError);
  }
}

TEST_CASE("connectivity model") {
  SUBCASE("single link") {
    LinkGraph g;
    g.nodes = {"A", "B"};
    g.links = {{"A", "B", 0.1}};
    g.source = "A";
    g.target = "B";
    const Network net = build_connectivity_model(g);
    CHECK(query_connectivity(net, "A", "B") == doctest::Approx(0.9));
  }

  SUBCASE("series matches the product of survivals") {
    const Network net = build_connectivity_model(series());
    CHECK(query_connectivity(net, "A", "C") == doctest::Approx(0.72));
  }

  SUBCASE("parallel routes combine") {
    const Network net = build_connectivity_model(diamond(0.5));
    CHECK(query_connectivity(net, "A", "D") == doctest::Approx(0.4375));
  }

  SUBCASE("perfect links always connect") {
    const Network net = build_connectivity_model(diamond(0.0));
    CHECK(query_connectivity(net, "A", "D") == doctest::Approx(1.0));
  }

  SUBCASE("dead links never connect") {
    const Network net = build_connectivity_model(diamond(1.0));
    CHECK(query_connectivity(net, "A", "D") == doctest::Approx(0.0));
  }

  SUBCASE("unreachable targets are rejected at build time") {
    LinkGraph g = series();
    g.links.pop_back();  // drop B->C
    CHECK_THROWS_AS(build_connectivity_model(g), Error);
  }
}

TEST_CASE("path-count model") {
  SUBCASE("a two-link chain stays Boolean-sized") {
    const Network net = build_path_count_model(series());
    for (const auto& node : net.nodes())
      CHECK(node.variable.cardinality() == 2);
    const auto distribution = query_path_distribution(net, "A", "C");
    REQUIRE(distribution.size() == 2);
    CHECK(distribution[1] == doctest::Approx(0.72));
  }

  SUBCASE("perfect diamond forces the exact count") {
    const Network net = build_path_count_model(diamond(0.0));
    const auto distribution = query_path_distribution(net, "A", "D");
    REQUIRE(distribution.size() == 3);
    CHECK(distribution[2] == doctest::Approx(1.0));
  }

  SUBCASE("half-reliable diamond matches the hand histogram") {
    const Network net = build_path_count_model(diamond(0.5));
    const auto distribution = query_path_distribution(net, "A", "D");
    CHECK(max_abs_diff(distribution, {0.5625, 0.375, 0.0625}) <= 1e-12);
  }

  SUBCASE("state-space cap") {
    CHECK_THROWS_WITH_AS(build_path_count_model(diamond(0.5), 2),
                         doctest::Contains("path-count state space too large"),
                         Error);
  }
}

TEST_CASE("reliability queries match link-state enumeration") {
  Rng rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const LinkGraph g = random_link_graph(rng, 10);
    const auto summary = oracle::enumerate_link_states(g);

    const Network connectivity = build_connectivity_model(g);
    const double live = query_connectivity(connectivity, g.source, g.target);
    CHECK(live == doctest::Approx(summary.connectivity).epsilon(1e-9));

    const Network counts = build_path_count_model(g);
    const auto distribution = query_path_distribution(counts, g.source, g.target);
    CHECK(max_abs_diff(distribution, summary.histogram) <= 1e-9);

    // Zero live paths is exactly the complement of connectivity.
    CHECK(distribution[0] == doctest::Approx(1.0 - live).epsilon(1e-9));

    // Expected live paths equal the sum of per-path survival products.
    double expected = 0.0;
    for (std::size_t k = 0; k < distribution.size(); ++k)
      expected += static_cast<double>(k) * distribution[k];
    CHECK(expected == doctest::Approx(sum_of_path_products(g)).epsilon(1e-9));
  }
}

TEST_CASE("the root marginal is irrelevant once the root is observed") {
  const LinkGraph g = standin();
  const Network net = build_connectivity_model(g);
  const double reference = query_connectivity(net, "A", "G");

  for (double p : {0.12, 0.5, 0.999}) {
    Network skewed = net;
    const Variable root = net.node("A").variable;
    skewed.replace_backing("A", Factor({root}, {1.0 - p, p}));
    CHECK(query_connectivity(skewed, "A", "G") ==
          doctest::Approx(reference).epsilon(1e-12));
  }

  const Network counts = build_path_count_model(g);
  const auto reference_hist = query_path_distribution(counts, "A", "G");
  Network skewed = counts;
  const Variable root = counts.node("A").variable;
  skewed.replace_backing("A", Factor({root}, {0.9, 0.1}));
  CHECK(max_abs_diff(query_path_distribution(skewed, "A", "G"),
                     reference_hist) <= 1e-12);
}

TEST_CASE("multi-source queries agree with the enumeration oracle") {
  Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    LinkGraph g = random_link_graph(rng, 9);
    // Pick two sources: the designated one plus some other node.
    std::vector<std::string> sources{g.nodes[0], g.nodes[1]};
    const auto summary = oracle::enumerate_link_states(g, sources);

    const auto connectivity = build_connectivity_model_multi(g, sources);
    const double live = query_connectivity(connectivity.network,
                                           connectivity.super_source, g.target);
    CHECK(live == doctest::Approx(summary.connectivity).epsilon(1e-9));

    const auto counts = build_path_count_model_multi(g, sources);
    const auto distribution = query_path_distribution(
        counts.network, counts.super_source, g.target);
    CHECK(max_abs_diff(distribution, summary.histogram) <= 1e-9);
  }
}

TEST_SUITE_END();
