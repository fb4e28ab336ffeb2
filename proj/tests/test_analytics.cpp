#include "comlearn/analytics.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace comlearn;

namespace {

ChoiceDataset with_groups(const std::vector<std::string>& agents, const std::vector<std::vector<std::string>>& rows,
                          const std::vector<std::string>& groups) {
  std::vector<CovariateRecord> cov;
  for (const auto& g : groups) cov.push_back({{"g", g}});
  return ChoiceDataset::from_labels(agents, testing::names("t", rows.size()), {"x", "y"}, rows, cov);
}

ChoiceDataset table1() {
  std::vector<CovariateRecord> cov{{{"sex", "m"}}, {{"sex", "m"}}, {{"sex", "m"}},
                                   {{"sex", "f"}}, {{"sex", "f"}}, {{"sex", "f"}}};
  return ChoiceDataset::from_labels({"E1", "E2"}, {"m1", "m2", "m3", "f1", "f2", "f3"}, {"x", "y"},
                                    {{"x", "x"}, {"x", "y"}, {"y", "y"}, {"y", "y"}, {"y", "x"}, {"x", "x"}}, cov);
}

std::vector<std::vector<Level>> brute_force_profiles(const ChoiceDataset& d) {
  const auto I = d.agent_count();
  const auto N = d.alternative_count();
  std::vector<std::vector<Level>> out;
  std::vector<Level> pos(I, 0);  // declared positions
  while (true) {
    std::vector<Level> p(I);
    for (std::size_t i = 0; i < I; ++i) p[i] = static_cast<Level>(N - 1 - pos[i]);
    if (!testing::oracle_has_cycle(d.with_period("next", p))) out.push_back(p);
    std::size_t k = I;
    while (k > 0 && pos[k - 1] == N - 1) pos[--k] = 0;
    if (k == 0) break;
    ++pos[k - 1];
  }
  return out;
}

std::vector<std::vector<Level>> profiles_of(const ChoiceDataset& d, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Level>> out;
  for (const auto& r : rows) {
    std::vector<Level> p;
    for (const auto& c : r) p.push_back(*d.level_of(c));
    out.push_back(p);
  }
  return out;
}

} // namespace

TEST_CASE("Table 1 audit") {
  auto d = table1();
  auto r = audit_discrimination(d, "sex", "m");
  REQUIRE(r.full_sample_cycle);
  CHECK(d.periods()[r.full_sample_cycle->period_t1] == "m2");
  CHECK(d.periods()[r.full_sample_cycle->period_t2] == "f2");
  CHECK(r.favored.rationalizable());
  CHECK(r.other.rationalizable());
  // males: E2 above E1; females: E1 above E2
  CHECK(r.favored.preorder->strictly_above(1, 0));
  CHECK(r.other.preorder->strictly_above(0, 1));
  CHECK_FALSE(r.statistical_flag);
  CHECK(r.taste_flag);
  REQUIRE(r.taste_pair);
  CHECK(r.taste_pair->agent_i == 1);
  CHECK(r.taste_pair->agent_j == 0);
  CHECK_FALSE(r.caveat);
}

TEST_CASE("identical behaviour in both groups") {
  auto d = with_groups({"a", "b"}, {{"x", "y"}, {"x", "y"}, {"y", "y"}, {"y", "y"}}, {"u", "v", "u", "v"});
  auto r = audit_discrimination(d, "g", "u");
  CHECK_FALSE(r.statistical_flag);
  CHECK_FALSE(r.taste_flag);
  CHECK(r.caveat);
}

TEST_CASE("statistical flag with the co-monotone strengthening") {
  // Example 1 inside the other group, adjacent periods.
  auto d = with_groups({"i", "j"}, {{"x", "x"}, {"x", "y"}, {"y", "x"}, {"y", "y"}}, {"u", "v", "v", "u"});
  auto r = audit_discrimination(d, "g", "u");
  CHECK(r.statistical_flag);
  CHECK(r.comonotone_strengthening);
  CHECK_FALSE(r.taste_flag);
  CHECK(r.statistical_explanation.find("t2") != std::string::npos);

  // Same pattern but the opposed moves are not adjacent within the group.
  auto e = with_groups({"i", "j"}, {{"x", "y"}, {"x", "x"}, {"y", "x"}}, {"v", "v", "v"});
  auto f = with_groups({"i", "j"}, {{"x", "y"}, {"x", "x"}, {"y", "x"}, {"x", "x"}}, {"v", "v", "v", "u"});
  auto s = audit_discrimination(f, "g", "u");
  CHECK(s.statistical_flag);
  CHECK_FALSE(s.comonotone_strengthening);
  CHECK_FALSE(find_consecutive_cycle(e));
}

TEST_CASE("covariate requirements") {
  auto three = with_groups({"a"}, {{"x"}, {"y"}, {"x"}}, {"u", "v", "w"});
  CHECK_THROWS_AS(audit_discrimination(three, "g", "u"), SelectionError);
  auto one = with_groups({"a"}, {{"x"}, {"y"}}, {"u", "u"});
  CHECK_THROWS_AS(audit_discrimination(one, "g", "u"), SelectionError);
  auto two = with_groups({"a"}, {{"x"}, {"y"}}, {"u", "v"});
  CHECK_THROWS_AS(audit_discrimination(two, "h", "u"), SelectionError);
  CHECK_THROWS_AS(audit_discrimination(two, "g", "w"), SelectionError);
}

TEST_CASE("swapping the group labels mirrors the report") {
  std::mt19937 rng(41);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 400; ++k) {
    auto base = testing::random_dataset(rng, 2 + k % 3, 2 + k % 6, 2);
    std::vector<std::string> g, swapped;
    for (std::size_t t = 0; t < base.period_count(); ++t) g.push_back(t < 2 ? (t ? "v" : "u") : (coin(rng) ? "u" : "v"));
    for (const auto& v : g) swapped.push_back(v == "u" ? "v" : "u");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t < base.period_count(); ++t) {
      rows.emplace_back();
      for (std::size_t i = 0; i < base.agent_count(); ++i) rows.back().push_back(base.choice(i, t));
    }
    auto a = with_groups(base.agents(), rows, g);
    auto b = with_groups(base.agents(), rows, swapped);
    auto ra = audit_discrimination(a, "g", "u");
    auto rb = audit_discrimination(b, "g", "v");
    CHECK(ra.statistical_flag == rb.statistical_flag);
    CHECK(ra.comonotone_strengthening == rb.comonotone_strengthening);
    CHECK(ra.taste_flag == rb.taste_flag);
    CHECK(ra.favored.data.periods() == rb.favored.data.periods());
    CHECK(ra.other.cycle == rb.other.cycle);
    if (ra.taste_flag) CHECK(ra.full_sample_cycle);
  }
}

TEST_CASE("Example 3 counterfactuals") {
  auto d = testing::binary({"i", "j", "k"}, {{"x", "y", "y"}, {"x", "x", "y"}});
  auto r = predict_counterfactuals(d);
  CHECK(r.total_possible == 8);
  CHECK(r.admissible_count == 4);
  CHECK(r.profiles == profiles_of(d, {{"x", "x", "x"}, {"x", "x", "y"}, {"x", "y", "y"}, {"y", "y", "y"}}));

  auto fixed = predict_counterfactuals(d, {{{"j", "y"}}, {}});
  CHECK(fixed.profiles == profiles_of(d, {{"x", "y", "y"}, {"y", "y", "y"}}));
  auto either = predict_counterfactuals(d, {{}, {{"i", "y"}, {"j", "y"}}});
  CHECK(either.profiles == fixed.profiles);
  for (const auto& p : either.profiles) CHECK(std::count(p.begin(), p.end(), Level{1}) < 2);
  auto only_i = predict_counterfactuals(d, {{{"i", "y"}}, {}});
  CHECK(only_i.profiles == profiles_of(d, {{"y", "y", "y"}}));

  CHECK_THROWS_AS(predict_counterfactuals(d, {{{"q", "y"}}, {}}), SelectionError);
  CHECK_THROWS_AS(predict_counterfactuals(d, {{{"i", "z"}}, {}}), SelectionError);
  CHECK_THROWS_AS(predict_counterfactuals(testing::binary({"i", "j"}, {{"x", "y"}, {"y", "x"}})), CycleError);
}

TEST_CASE("one class leaves every profile open") {
  auto d = testing::binary({"a", "b", "c"}, {{"x", "x", "x"}, {"y", "y", "y"}});
  CHECK(predict_counterfactuals(d).admissible_count == 8);
}

TEST_CASE("order characterization equals brute force") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int k = 0; k < 1500; ++k) {
    std::size_t I = 1 + k % 6, T = k % 7;
    auto d = testing::random_cycle_free(rng, I, T, 2);
    auto r = predict_counterfactuals(d);
    auto expected = brute_force_profiles(d);
    CHECK(r.profiles == expected);
    // unanimity is never ruled out
    CHECK(std::count(r.profiles.begin(), r.profiles.end(), std::vector<Level>(I, 0)) == 1);
    CHECK(std::count(r.profiles.begin(), r.profiles.end(), std::vector<Level>(I, 1)) == 1);
    // counting identity
    Integer count = 1 - static_cast<long>(r.classes.size());
    for (const auto& c : r.classes) count += Integer(1) << c.size();
    CHECK(r.admissible_count == count);

    // random constraints filter the same set
    CounterfactualConstraints c;
    for (std::size_t i = 0; i < I; ++i) {
      int roll = pick(rng);
      if (roll == 0) c.fixed.emplace_back(d.agents()[i], "x");
      if (roll == 1) c.fixed.emplace_back(d.agents()[i], "y");
      if (roll == 2) c.any_of.emplace_back(d.agents()[i], "x");
      if (roll == 3) c.any_of.emplace_back(d.agents()[i], "y");
    }
    auto filtered = predict_counterfactuals(d, c);
    std::vector<std::vector<Level>> want;
    for (const auto& p : expected) {
      bool ok = true;
      for (const auto& [a, alt] : c.fixed) ok = ok && p[*d.agent_index(a)] == *d.level_of(alt);
      if (!c.any_of.empty()) {
        bool any = false;
        for (const auto& [a, alt] : c.any_of) any = any || p[*d.agent_index(a)] == *d.level_of(alt);
        ok = ok && any;
      }
      if (ok) want.push_back(p);
    }
    CHECK(filtered.profiles == want);
  }
}

TEST_CASE("more alternatives by brute force") {
  std::mt19937 rng(47);
  for (int k = 0; k < 300; ++k) {
    auto d = testing::random_cycle_free(rng, 1 + k % 4, k % 5, 3 + k % 2);
    auto r = predict_counterfactuals(d);
    CHECK(r.profiles == brute_force_profiles(d));
  }
}

TEST_CASE("large panels are counted, not listed") {
  std::vector<std::string> agents = testing::names("a", 22);
  std::vector<std::string> ones(22, "x"), zeros(22, "y");
  auto d = testing::binary(agents, {ones, zeros});
  auto r = predict_counterfactuals(d);
  CHECK_FALSE(r.enumerated);
  CHECK(r.profiles.empty());
  CHECK(r.admissible_count == Integer(1) << 22);
  CHECK(r.total_possible == Integer(1) << 22);
  CHECK(predict_counterfactuals(d, {{{"a1", "x"}}, {}}).admissible_count == Integer(1) << 21);
  CHECK(predict_counterfactuals(d, {{}, {{"a1", "y"}, {"a2", "y"}}}).admissible_count ==
        (Integer(1) << 22) - (Integer(1) << 20));

  // a staircase: every agent in its own class
  std::vector<std::vector<std::string>> rows;
  for (std::size_t t = 0; t <= 22; ++t) {
    rows.emplace_back();
    for (std::size_t i = 0; i < 22; ++i) rows.back().push_back(i < t ? "x" : "y");
  }
  auto stairs = testing::binary(agents, rows);
  CHECK(predict_counterfactuals(stairs).admissible_count == 23);
  CHECK(predict_counterfactuals(stairs, {{{"a3", "x"}}, {}}).admissible_count == 20);
  CHECK(predict_counterfactuals(stairs, {{}, {{"a3", "x"}, {"a10", "y"}}}).admissible_count == 23);
}
