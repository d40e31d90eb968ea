#include <doctest.h>

#include <set>

#include "noisyor/error.hpp"
#include "noisyor/gate_function.hpp"
#include "noisyor/indexing.hpp"
#include "noisyor/random_models.hpp"
#include "test_support.hpp"

using namespace noisyor;

TEST_SUITE_BEGIN("gates");

TEST_CASE("boolean or") {
  const BooleanOrFunction f3(3);
  CHECK(f3.eval(std::vector<int>{0, 0, 0}) == 0);
  CHECK(f3.eval(std::vector<int>{0, 1, 0}) == 1);
  const BooleanOrFunction f2(2);
  CHECK(f2.eval(std::vector<int>{1, 1}) == 1);
  CHECK_THROWS_AS(f2.eval(std::vector<int>{0, 2}), std::out_of_range);
  CHECK_THROWS_AS(BooleanOrFunction(0), std::invalid_argument);
}

TEST_CASE("weighted average") {
  SUBCASE("mixed arities") {
    const WeightedAverageFunction f({2, 6}, 3);
    CHECK(f.eval(std::vector<int>{1, 5}) == 2);
    CHECK(f.eval(std::vector<int>{0, 0}) == 0);
  }
  SUBCASE("collapses to or when everything is Boolean") {
    const WeightedAverageFunction f({2, 2}, 2);
    CHECK(f.eval(std::vector<int>{0, 1}) == 1);
    const BooleanOrFunction reference(2);
    std::vector<int> u{0, 0};
    const std::vector<int> cards{2, 2};
    do {
      CHECK(f.eval(u) == reference.eval(u));
    } while (next_assignment(u, cards));
  }
  SUBCASE("single-state inputs are rejected") {
    CHECK_THROWS_WITH_AS(WeightedAverageFunction({2, 1}, 3),
                         "weighted-average undefined for single-state input",
                         std::invalid_argument);
  }
}

TEST_CASE("weighted average properties, exhaustive over small shapes") {
  const std::vector<std::vector<int>> shapes{
      {2}, {5}, {2, 2}, {2, 3}, {4, 7}, {2, 2, 2}, {3, 4, 5}, {2, 6, 3, 2}};
  for (const auto& cards : shapes) {
    for (int mx : {2, 3, 6}) {
      const WeightedAverageFunction f(cards, mx);
      std::vector<int> u(cards.size(), 0);
      std::vector<int> prev;
      do {
        const int x = f.eval(u);
        CHECK(x >= 0);
        CHECK(x < mx);
        // Output 0 exactly on the all-zero input.
        const bool all_zero =
            std::all_of(u.begin(), u.end(), [](int j) { return j == 0; });
        CHECK((x == 0) == all_zero);
      } while (next_assignment(u, cards));

      // Nondecreasing in each coordinate with the others fixed.
      std::fill(u.begin(), u.end(), 0);
      do {
        const int here = f.eval(u);
        for (std::size_t i = 0; i < cards.size(); ++i) {
          if (u[i] + 1 >= cards[i]) continue;
          std::vector<int> up = u;
          ++up[i];
          CHECK(f.eval(up) >= here);
        }
      } while (next_assignment(u, cards));
    }
  }
}

TEST_CASE("integer add") {
  const IntegerAddFunction f({3, 4}, 6);
  CHECK(f.eval(std::vector<int>{2, 3}) == 5);
  CHECK(f.eval(std::vector<int>{0, 0}) == 0);
  const IntegerAddFunction g({2, 2, 5}, 7);
  CHECK(g.eval(std::vector<int>{1, 0, 4}) == 5);
  CHECK_THROWS_AS(IntegerAddFunction({3, 4}, 7), std::invalid_argument);
}

TEST_CASE("truth tables") {
  // Exclusive-or as an explicit table.
  const TruthTableFunction f({2, 2}, 2, {0, 1, 1, 0});
  CHECK(f.eval(std::vector<int>{1, 1}) == 0);
  CHECK(f.eval(std::vector<int>{1, 0}) == 1);
  CHECK_THROWS_AS(TruthTableFunction({2, 2}, 2, {0, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(TruthTableFunction({2, 2}, 2, {0, 1, 1, 2}),
                  std::invalid_argument);
}

TEST_CASE("check_onto") {
  CHECK(check_onto(BooleanOrFunction(2)));
  CHECK_FALSE(check_onto(TruthTableFunction({2, 2}, 2, {0, 0, 0, 0})));
  // Reachable outputs of the 2x2 average into 4 states are {0, 2, 3}.
  CHECK_FALSE(check_onto(WeightedAverageFunction({2, 2}, 4)));
  CHECK(check_onto(WeightedAverageFunction({2, 2}, 2)));
  CHECK_THROWS_AS(check_onto(BooleanOrFunction(2), 3), BudgetExceededError);
}

TEST_CASE("invert") {
  const BooleanOrFunction f(2);
  CHECK(invert_default(f, 0) ==
        std::vector<std::vector<int>>{{0, 0}});
  CHECK(invert_default(f, 1) ==
        std::vector<std::vector<int>>{{0, 1}, {1, 0}, {1, 1}});
  const IntegerAddFunction add({2, 2}, 3);
  CHECK(invert_default(add, 1) ==
        std::vector<std::vector<int>>{{0, 1}, {1, 0}});

  SUBCASE("truth tables answer without enumeration budget") {
    const TruthTableFunction tt({2, 2}, 2, {0, 1, 1, 0});
    const auto preimage = tt.invert(1);
    REQUIRE(preimage.has_value());
    CHECK(*preimage == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    // Dispatcher ignores the budget when a specialized inverse exists.
    CHECK(invert_preimages(tt, 1, 1) == *preimage);
  }

  SUBCASE("budget applies to the fallback") {
    CHECK_THROWS_AS(invert_default(f, 0, 2), BudgetExceededError);
  }
}

TEST_CASE("invert partitions the joint input space") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const NoisyGateSpec spec = random_mixed_spec(rng);
    const GateFunction& f = *spec.function;
    if (f.joint_input_size() > 10000) continue;

    std::set<std::vector<int>> seen;
    std::size_t total = 0;
    for (int x = 0; x < f.output_cardinality(); ++x) {
      for (auto& tuple : invert_preimages(f, x)) {
        CHECK(f.eval(tuple) == x);
        CHECK(seen.insert(tuple).second);  // disjoint
        ++total;
      }
    }
    CHECK(total == f.joint_input_size());  // exhaustive
  }
}

TEST_SUITE_END();
