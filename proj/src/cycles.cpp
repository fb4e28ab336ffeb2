#include "comlearn/cycles.hpp"

#include <algorithm>
#include <numeric>

namespace comlearn {

bool is_valid_witness(const ChoiceDataset& data, const CycleWitness& w) {
  const auto I = data.agent_count();
  const auto T = data.period_count();
  if (w.agent_i >= I || w.agent_j >= I || w.period_t1 >= T || w.period_t2 >= T) return false;
  if (w.period_t1 == w.period_t2) return false;
  if (w.kind == CycleKind::consecutive && w.period_t2 != w.period_t1 + 1) return false;
  return data.level(w.agent_i, w.period_t1) > data.level(w.agent_i, w.period_t2) &&
         data.level(w.agent_j, w.period_t1) < data.level(w.agent_j, w.period_t2);
}

namespace {

// First agents dropping and rising between two periods, if both exist.
std::optional<CycleWitness> opposed_pair(const ChoiceDataset& data, std::size_t t1, std::size_t t2) {
  auto a = data.row(t1);
  auto b = data.row(t2);
  std::optional<std::size_t> down, up;
  for (std::size_t i = 0; i < a.size() && !(down && up); ++i) {
    if (!down && a[i] > b[i]) down = i;
    if (!up && a[i] < b[i]) up = i;
  }
  if (!down || !up) return std::nullopt;
  return CycleWitness{*down, *up, t1, t2, CycleKind::general};
}

bool row_leq(std::span<const Level> a, std::span<const Level> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

} // namespace

bool is_cycle_free(const ChoiceDataset& data) {
  const auto T = data.period_count();
  if (T < 2) return true;
  std::vector<std::uint64_t> sums(T, 0);
  for (std::size_t t = 0; t < T; ++t) {
    auto r = data.row(t);
    sums[t] = std::accumulate(r.begin(), r.end(), std::uint64_t{0});
  }
  std::vector<std::size_t> order(T);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sums[a] < sums[b]; });
  for (std::size_t k = 1; k < T; ++k)
    if (!row_leq(data.row(order[k - 1]), data.row(order[k]))) return false;
  return true;
}

std::optional<CycleWitness> find_cycle(const ChoiceDataset& data) {
  if (is_cycle_free(data)) return std::nullopt;
  const auto T = data.period_count();
  for (std::size_t t1 = 0; t1 < T; ++t1)
    for (std::size_t t2 = 0; t2 < T; ++t2) {
      if (t1 == t2) continue;
      if (auto w = opposed_pair(data, t1, t2)) return w;
    }
  return std::nullopt;  // unreachable: a non-chain has an incomparable pair
}

std::optional<CycleWitness> find_consecutive_cycle(const ChoiceDataset& data) {
  const auto T = data.period_count();
  for (std::size_t t = 0; t + 1 < T; ++t)
    if (auto w = opposed_pair(data, t, t + 1)) {
      w->kind = CycleKind::consecutive;
      return w;
    }
  return std::nullopt;
}

PatternSet PatternSet::transposed() const {
  PatternSet out;
  for (bool a : {true, false})
    for (bool b : {true, false})
      if (contains(pattern_of(a, b))) out.insert(pattern_of(b, a));
  return out;
}

PatternSet PatternSet::flipped(bool flip_first, bool flip_second) const {
  PatternSet out;
  for (bool a : {true, false})
    for (bool b : {true, false})
      if (contains(pattern_of(a, b))) out.insert(pattern_of(a != flip_first, b != flip_second));
  return out;
}

PairPatternTable pair_pattern_table(const ChoiceDataset& data) {
  if (data.alternative_count() != 2)
    throw UnsupportedShape("pair pattern table needs exactly two alternatives");
  const auto I = data.agent_count();
  PairPatternTable table(I);
  for (std::size_t t = 0; t < data.period_count(); ++t) {
    auto r = data.row(t);
    for (std::size_t i = 0; i < I; ++i)
      for (std::size_t j = 0; j < I; ++j) table.at(i, j).insert(PatternSet::pattern_of(r[i] == 1, r[j] == 1));
  }
  return table;
}

} // namespace comlearn
