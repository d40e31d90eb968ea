#include <doctest.h>

#include "noisyor/error.hpp"
#include "noisyor/inference.hpp"
#include "noisyor/oracle.hpp"
#include "noisyor/random_models.hpp"
#include "test_support.hpp"

using namespace noisyor;
using testsupport::max_abs_diff;
using testsupport::var;

TEST_SUITE_BEGIN("inference");

TEST_CASE("factor product") {
  const Variable a = Variable::boolean("A");
  const Factor f({a}, {0.3, 0.7});
  const Factor g({a}, {0.5, 0.5});

  SUBCASE("shared variable multiplies pointwise") {
    const Factor fg = factor_product(f, g);
    CHECK(fg.variables().size() == 1);
    CHECK(fg.table()[0] == doctest::Approx(0.15));
    CHECK(fg.table()[1] == doctest::Approx(0.35));
  }

  SUBCASE("the empty factor is the identity") {
    const Factor fg = factor_product(f, Factor());
    CHECK(fg.table() == f.table());
    const Factor gf = factor_product(Factor(), f);
    CHECK(gf.table() == f.table());
  }

  SUBCASE("disjoint scopes give the outer product") {
    const Variable b = Variable::boolean("B");
    const Factor h({b}, {0.4, 0.6});
    const Factor fh = factor_product(f, h);
    REQUIRE(fh.size() == 4);
    CHECK(fh.table()[0] == doctest::Approx(0.12));
    CHECK(fh.table()[1] == doctest::Approx(0.18));
    CHECK(fh.table()[2] == doctest::Approx(0.28));
    CHECK(fh.table()[3] == doctest::Approx(0.42));
  }

  SUBCASE("cardinality clashes are rejected") {
    const Factor wrong({Variable("A", {"x", "y", "z"})}, {0.2, 0.3, 0.5});
    CHECK_THROWS_AS(factor_product(f, wrong), std::invalid_argument);
  }
}

TEST_CASE("factor marginalize") {
  const Variable a = Variable::boolean("A");
  const Variable b = Variable::boolean("B");

  SUBCASE("summing the child out of a CPT leaves ones") {
    const Factor cpt({a, b}, {0.9, 0.1, 0.2, 0.8});
    const Factor summed = factor_marginalize(cpt, "B");
    CHECK(summed.table()[0] == doctest::Approx(1.0));
    CHECK(summed.table()[1] == doctest::Approx(1.0));
  }

  SUBCASE("pairwise sums") {
    const Factor joint({a, b}, {0.1, 0.2, 0.3, 0.4});
    const Factor onto_a = factor_marginalize(joint, "B");
    CHECK(onto_a.table()[0] == doctest::Approx(0.3));
    CHECK(onto_a.table()[1] == doctest::Approx(0.7));
  }

  SUBCASE("marginalizing the only variable leaves the total mass") {
    const Factor f({a}, {0.3, 0.7});
    const Factor scalar = factor_marginalize(f, "A");
    CHECK(scalar.variables().empty());
    CHECK(scalar.table()[0] == doctest::Approx(1.0));
  }

  SUBCASE("absent variables are an error") {
    const Factor f({a}, {0.3, 0.7});
    CHECK_THROWS_AS(factor_marginalize(f, "Z"), std::invalid_argument);
  }
}

TEST_CASE("apply evidence") {
  const Variable a = Variable::boolean("A");
  const Variable x = Variable::boolean("X");
  const Factor cpt({a, x}, {0.9, 0.1, 0.2, 0.8});

  SUBCASE("clamps the observed column") {
    Evidence e;
    e.set("X", 1);
    const Factor clamped = apply_evidence(cpt, e);
    CHECK(clamped.table() == std::vector<double>{0, 0.1, 0, 0.8});
  }

  SUBCASE("evidence outside the scope changes nothing") {
    Evidence e;
    e.set("Z", 0);
    CHECK(apply_evidence(cpt, e).table() == cpt.table());
  }

  SUBCASE("evidence on the whole scope keeps one entry") {
    Evidence e;
    e.set("A", 1);
    e.set("X", 0);
    const Factor clamped = apply_evidence(cpt, e);
    CHECK(clamped.table() == std::vector<double>{0, 0, 0.2, 0});
  }
}

namespace {

// A Boolean root with P(A=1) = 0.3 feeding a noisy-or with inhibitor 0.5.
Network two_node_noisy_or() {
  Network net;
  const Variable a = Variable::boolean("A");
  const Variable x = Variable::boolean("X");
  net.add_node({a, {}, Factor({a}, {0.7, 0.3})});
  NoisyGateSpec gate;
  gate.inputs = {a};
  gate.inhibitors = {InhibitorVector({0.5, 0.0})};
  gate.function = std::make_shared<BooleanOrFunction>(1);
  gate.output = x;
  net.add_node({x, {"A"}, gate});
  return net;
}

}  // namespace

TEST_CASE("eliminate") {
  const Network net = two_node_noisy_or();

  SUBCASE("observing the effect pins the only possible cause") {
    Evidence e;
    e.set("X", 1);
    const auto marginals = eliminate(net, e, {"A"});
    CHECK(marginals.at("A")[1] == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("no evidence returns the prior") {
    const auto marginals = eliminate(net, Evidence{}, {"A"});
    CHECK(marginals.at("A")[0] == doctest::Approx(0.7));
    CHECK(marginals.at("A")[1] == doctest::Approx(0.3));
  }

  SUBCASE("evidence on the target gives a point mass") {
    Evidence e;
    e.set("A", 1);
    const auto marginals = eliminate(net, e, {"A"});
    CHECK(marginals.at("A") == std::vector<double>{0.0, 1.0});
  }

  SUBCASE("empty target list reports every variable") {
    const auto marginals = eliminate(net, Evidence{});
    CHECK(marginals.size() == 2);
    CHECK(marginals.count("A") == 1);
    CHECK(marginals.count("X") == 1);
  }

  SUBCASE("impossible evidence raises") {
    Network impossible;
    const Variable a = Variable::boolean("A");
    const Variable x = Variable::boolean("X");
    impossible.add_node({a, {}, Factor({a}, {1.0, 0.0})});
    impossible.add_node({x, {"A"}, Factor({a, x}, {1, 0, 0, 1})});
    Evidence e;
    e.set("X", 1);
    CHECK_THROWS_AS(eliminate(impossible, e, {"A"}), ImpossibleEvidenceError);
  }

  SUBCASE("unknown names are rejected") {
    CHECK_THROWS_AS(eliminate(net, Evidence{}, {"NOPE"}),
                    std::invalid_argument);
    Evidence e;
    e.set("NOPE", 0);
    CHECK_THROWS_AS(eliminate(net, e), std::invalid_argument);
  }
}

TEST_CASE("eliminate matches joint enumeration on random networks") {
  Rng rng(61);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Network net = random_network(rng, 8, 3);

    Evidence evidence;
    for (const auto& node : net.nodes())
      if (rng.uniform() < 0.25)
        evidence.set(node.variable.name,
                     rng.uniform_int(0, node.variable.cardinality() - 1));

    MarginalSet fast;
    bool fast_impossible = false;
    try {
      fast = eliminate(net, evidence);
    } catch (const ImpossibleEvidenceError&) {
      fast_impossible = true;
    }

    for (const auto& node : net.nodes()) {
      std::vector<double> reference;
      bool reference_impossible = false;
      try {
        reference =
            oracle::brute_force_marginal(net, evidence, node.variable.name);
      } catch (const ImpossibleEvidenceError&) {
        reference_impossible = true;
      }
      REQUIRE(fast_impossible == reference_impossible);
      if (!fast_impossible) {
        CHECK(max_abs_diff(fast.at(node.variable.name), reference) <= 1e-9);
        ++checked;
      }
      if (fast_impossible) break;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("marginals do not depend on the elimination order") {
  Rng rng(67);
  for (int trial = 0; trial < 15; ++trial) {
    const Network net = random_network(rng, 8, 3);
    Evidence evidence;
    for (const auto& node : net.nodes())
      if (rng.uniform() < 0.2)
        evidence.set(node.variable.name,
                     rng.uniform_int(0, node.variable.cardinality() - 1));
    MarginalSet a, b;
    try {
      a = eliminate(net, evidence, {}, {}, EliminationOrdering::MinDegree);
      b = eliminate(net, evidence, {}, {},
                    EliminationOrdering::ReverseTopological);
    } catch (const ImpossibleEvidenceError&) {
      continue;
    }
    for (const auto& [name, values] : a)
      CHECK(max_abs_diff(values, b.at(name)) <= 1e-9);
  }
}

TEST_SUITE_END();
