#include "comlearn/witness.hpp"

#include "support.hpp"

#include <doctest.h>

#include <functional>

using namespace comlearn;

namespace {

// Independent oracle: try every strictly increasing cutoff tuple on a small
// integer grid and look for a belief strictly inside each period's interval.
bool grid_rationalizable(const ChoiceDataset& d) {
  const auto I = d.agent_count();
  const auto N = d.alternative_count();
  const int G = static_cast<int>(I * (N - 1));  // enough room for any strict order
  std::vector<std::vector<int>> cut(I, std::vector<int>(N + 1));
  std::function<bool(std::size_t, std::size_t)> place = [&](std::size_t i, std::size_t n) -> bool {
    if (i == I) {
      for (std::size_t t = 0; t < d.period_count(); ++t) {
        int lo = 0, hi = 2 * (G + 1);
        for (std::size_t a = 0; a < I; ++a) {
          lo = std::max(lo, 2 * cut[a][d.level(a, t)]);
          hi = std::min(hi, 2 * cut[a][d.level(a, t) + 1]);
        }
        if (hi - lo < 2) return false;  // no half-step belief strictly between
      }
      return true;
    }
    if (n == 0) {
      cut[i][0] = 0;
      cut[i][N] = G + 1;
      return place(i, 1);
    }
    if (n == N) return place(i + 1, 0);
    for (int v = cut[i][n - 1] + 1; v <= G; ++v) {
      cut[i][n] = v;
      if (place(i, n + 1)) return true;
    }
    return false;
  };
  return place(0, 0);
}

} // namespace

TEST_CASE("Example 3 witness") {
  auto d = testing::binary({"i", "j", "k"}, {{"x", "y", "y"}, {"x", "x", "y"}});
  auto w = construct_witness(d);
  CHECK(w.cutoffs.at(0, 2) < w.cutoffs.at(1, 2));
  CHECK(w.cutoffs.at(1, 2) < w.cutoffs.at(2, 2));
  CHECK(w.beliefs.beliefs[0] > w.cutoffs.at(0, 2));
  CHECK(w.beliefs.beliefs[0] < w.cutoffs.at(1, 2));
  CHECK(w.beliefs.beliefs[1] > w.cutoffs.at(1, 2));
  CHECK(w.beliefs.beliefs[1] < w.cutoffs.at(2, 2));
  CHECK(w.time_invariant());
  CHECK(verify_witness(d, w));
  CHECK(brute_force_rationalizable(d));
}

TEST_CASE("Example 1 has no witness") {
  auto d = testing::binary({"i", "j"}, {{"x", "y"}, {"y", "x"}});
  CHECK_THROWS_AS(construct_witness(d), CycleError);
  CHECK_FALSE(brute_force_rationalizable(d));
}

TEST_CASE("binary utilities") {
  CutoffProfile c(1, 2);
  c.at(0, 2) = Rational(3, 4);
  auto u = utilities_for(c);
  CHECK(u.values[0][1] == UtilityTable::Entry{1, Rational(1, 2)});
  CHECK(u.values[0][0] == UtilityTable::Entry{Rational(5, 6), 1});
  CHECK(induced_threshold(u.values[0][1], u.values[0][0]) == Rational(3, 4));
}

TEST_CASE("signal with ratio") {
  for (auto r : {Rational(1, 7), Rational(1), Rational(9, 2)}) {
    auto s = signal_with_ratio(r);
    CHECK(s.given_x / s.given_y == r);
    CHECK(s.given_x > 0);
    CHECK(s.given_x < 1);
    CHECK(s.given_y > 0);
    CHECK(s.given_y < 1);
  }
  CHECK_THROWS_AS(signal_with_ratio(0), DomainError);
}

TEST_CASE("constructed witnesses verify") {
  std::mt19937 rng(21);
  for (int k = 0; k < 1000; ++k) {
    auto d = testing::random_cycle_free(rng, 1 + k % 7, k % 9, 2 + k % 4);
    auto w = construct_witness(d);
    auto v = verify_witness(d, w);
    CHECK_MESSAGE(v.accepted, v.detail);
  }
}

TEST_CASE("tampering is caught by the right clause") {
  auto d = testing::binary({"i", "j", "k"}, {{"x", "y", "y"}, {"x", "x", "y"}});
  auto good = construct_witness(d);

  auto w = good;
  w.beliefs.beliefs[1] += Rational(1, 100);
  CHECK(verify_witness(d, w).clause == Clause::bayes);

  w = good;
  w.cutoffs.at(0, 2) = Rational(9, 10);
  w.utilities = utilities_for(w.cutoffs);
  auto v = verify_witness(d, w);
  CHECK(v.clause == Clause::optimality);
  CHECK(v.agent == 0u);

  w = good;
  w.utilities.values[2][0].in_x += 1;
  CHECK(verify_witness(d, w).clause == Clause::utilities);

  w = good;
  w.transitions[0] = {Rational(1, 2), Rational(1, 3), 0, 1};
  CHECK(verify_witness(d, w).clause == Clause::well_formed);

  w = good;
  w.cutoffs.at(1, 1) = Rational(1, 10);
  CHECK(verify_witness(d, w).clause == Clause::well_formed);

  w = good;
  w.experiments.pop_back();
  CHECK_THROWS_AS(verify_witness(d, w), DimensionMismatch);
}

TEST_CASE("moving states are fine if Bayes' rule holds") {
  auto d = testing::binary({"i"}, {{"x"}, {"x"}});
  auto w = construct_witness(d);
  w.transitions[1] = Transition::memoryless(Rational(1, 3));
  Rational q = predict(w.beliefs.beliefs[0], w.transitions[1]);
  w.experiments[1] = signal_with_ratio(required_likelihood_ratio(q, w.beliefs.beliefs[1]));
  CHECK(verify_witness(d, w));
  CHECK_FALSE(w.time_invariant());
}

TEST_CASE("brute force agrees with the grid search and with find_cycle") {
  std::mt19937 rng(13);
  for (int k = 0; k < 800; ++k) {
    std::size_t I = 1 + k % 3, T = k % 5, N = 2 + k % 2;
    auto d = k % 2 ? testing::random_dataset(rng, I, T, N) : testing::random_cycle_free(rng, I, T, N);
    bool expected = !testing::oracle_has_cycle(d);
    CHECK(brute_force_rationalizable(d) == expected);
    CHECK(grid_rationalizable(d) == expected);
  }
  std::mt19937 big(2);
  CHECK_THROWS_AS(brute_force_rationalizable(testing::random_dataset(big, 7, 2, 2)), SizeGuardError);
}
