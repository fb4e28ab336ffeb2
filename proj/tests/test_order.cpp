#include "comlearn/order.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace comlearn;

TEST_CASE("preorder from nested choices") {
  auto d = testing::binary({"i", "j", "k"}, {{"x", "y", "y"}, {"x", "x", "y"}});
  auto p = build_preorder(d);
  CHECK(p.classes == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
  CHECK(p.strictly_above(2, 1));
  CHECK(p.strictly_above(1, 0));
  CHECK(p.strict_edges.size() == 3);
}

TEST_CASE("identical columns share a class") {
  auto d = testing::binary({"a", "b", "c"}, {{"x", "x", "y"}, {"y", "y", "y"}});
  auto p = build_preorder(d);
  CHECK(p.classes == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
  CHECK(p.weakly_above(0, 1));
  CHECK(p.weakly_above(1, 0));
  CHECK_FALSE(p.strictly_above(0, 1));
}

TEST_CASE("preorder refuses cyclic data") {
  auto d = testing::binary({"i", "j"}, {{"x", "y"}, {"y", "x"}});
  CHECK_THROWS_AS(build_preorder(d), CycleError);
}

TEST_CASE("pair relation for Example 3 orders every cutoff") {
  auto d = testing::binary({"i", "j", "k"}, {{"x", "y", "y"}, {"x", "x", "y"}});
  auto rel = build_pair_relation(d);
  CHECK(rel.has_edge({1, 2}, {0, 2}));
  CHECK(rel.has_edge({2, 2}, {1, 2}));
  CHECK(rel.has_edge({2, 2}, {0, 2}));
  CHECK_FALSE(rel.has_edge({0, 2}, {1, 2}));
  auto c = assign_cutoffs(rel);
  CHECK(c.at(0, 2) == Rational(1, 4));
  CHECK(c.at(1, 2) == Rational(1, 2));
  CHECK(c.at(2, 2) == Rational(3, 4));
  CHECK(c.at(0, 1) == 0);
  CHECK(c.at(0, 3) == 1);
}

TEST_CASE("cyclic data give a cyclic relation with a certificate") {
  auto d = testing::binary({"i", "j"}, {{"x", "y"}, {"y", "x"}});
  auto rel = build_pair_relation(d);
  auto cycle = rel.find_cycle();
  REQUIRE(cycle.size() >= 2);
  CHECK(cycle.front() == cycle.back());
  for (std::size_t k = 0; k + 1 < cycle.size(); ++k) CHECK(rel.has_edge(cycle[k], cycle[k + 1]));
  try {
    assign_cutoffs(rel);
    FAIL("no error");
  } catch (const AcyclicityError& e) {
    CHECK(e.cycle() == cycle);
  }
}

TEST_CASE("relation is acyclic exactly when the data are cycle free") {
  std::mt19937 rng(5);
  for (int k = 0; k < 2000; ++k) {
    auto d = testing::random_dataset(rng, 1 + k % 4, k % 6, 2 + k % 3);
    auto rel = build_pair_relation(d);
    CHECK(rel.is_acyclic() == !testing::oracle_has_cycle(d));
  }
}

TEST_CASE("assigned cutoffs respect every edge") {
  std::mt19937 rng(9);
  for (int k = 0; k < 500; ++k) {
    auto d = testing::random_cycle_free(rng, 1 + k % 6, 1 + k % 8, 2 + k % 4);
    auto rel = build_pair_relation(d);
    auto c = assign_cutoffs(rel);
    for (std::size_t u = 0; u < rel.node_count(); ++u)
      for (auto v : rel.below(u)) {
        auto a = rel.slot_of(u);
        auto b = rel.slot_of(v);
        CHECK(c.at(a.agent, a.index) > c.at(b.agent, b.index));
      }
  }
}
