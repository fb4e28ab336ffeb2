#include "comlearn/order.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace comlearn {

AgentPreorder build_preorder(const ChoiceDataset& data) {
  if (data.alternative_count() != 2) throw UnsupportedShape("the agent preorder needs exactly two alternatives");
  if (auto w = find_cycle(data)) throw CycleError("choice data has a cycle; the threshold relation is incomplete", *w);

  const auto I = data.agent_count();
  // Group identical columns; without cycles the x-sets are nested, so a
  // larger x-count means a lower threshold.
  std::map<std::vector<Level>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < I; ++i) groups[data.column(i)].push_back(i);

  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> ranked;
  for (auto& [column, agents] : groups) {
    auto x_count = static_cast<std::size_t>(std::count(column.begin(), column.end(), Level{1}));
    ranked.emplace_back(x_count, std::move(agents));
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second.front() < b.second.front();
  });

  AgentPreorder out;
  out.class_of.resize(I);
  for (auto& [count, agents] : ranked) {
    for (auto a : agents) out.class_of[a] = out.classes.size();
    out.classes.push_back(std::move(agents));
  }
  for (std::size_t lo = 0; lo < I; ++lo)
    for (std::size_t hi = 0; hi < I; ++hi)
      if (out.class_of[hi] > out.class_of[lo]) out.strict_edges.emplace_back(lo, hi);
  return out;
}

PairRelation::PairRelation(std::size_t agents, std::size_t alternatives)
    : agents_(agents), alternatives_(alternatives), below_(agents * (alternatives - 1)) {
  if (alternatives < 2) throw DimensionMismatch("need at least two alternatives");
}

void PairRelation::add_edge(CutoffSlot above, CutoffSlot below) {
  auto& list = below_[node_of(above)];
  auto v = node_of(below);
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it == list.end() || *it != v) list.insert(it, v);
}

bool PairRelation::has_edge(CutoffSlot above, CutoffSlot below) const {
  const auto& list = below_[node_of(above)];
  return std::binary_search(list.begin(), list.end(), node_of(below));
}

std::vector<CutoffSlot> PairRelation::find_cycle() const {
  const auto R = node_count();
  enum : std::uint8_t { white, grey, black };
  std::vector<std::uint8_t> colour(R, white);
  std::vector<std::size_t> parent(R, R);
  for (std::size_t root = 0; root < R; ++root) {
    if (colour[root] != white) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = grey;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next == below_[u].size()) {
        colour[u] = black;
        stack.pop_back();
        continue;
      }
      auto v = below_[u][next++];
      if (colour[v] == white) {
        colour[v] = grey;
        parent[v] = u;
        stack.emplace_back(v, 0);
      } else if (colour[v] == grey) {
        std::vector<CutoffSlot> cycle{slot_of(v)};
        std::vector<std::size_t> path;
        for (auto w = u; w != v; w = parent[w]) path.push_back(w);
        for (auto it = path.rbegin(); it != path.rend(); ++it) cycle.push_back(slot_of(*it));
        cycle.push_back(slot_of(v));
        return cycle;
      }
    }
  }
  return {};
}

PairRelation build_pair_relation(const ChoiceDataset& data) {
  const auto I = data.agent_count();
  const auto N = data.alternative_count();
  PairRelation rel(I, N);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t n = 3; n <= N; ++n) rel.add_edge({i, n}, {i, n - 1});
  for (std::size_t t = 0; t < data.period_count(); ++t) {
    auto r = data.row(t);
    for (std::size_t i = 0; i < I; ++i) {
      // Agent i picks alternative r[i]+1 (1-based), so its cutoff r[i]+2 lies above p_t.
      const std::size_t upper = r[i] + 2;
      if (upper > N) continue;
      for (std::size_t j = 0; j < I; ++j) {
        if (j == i || r[j] == 0) continue;
        rel.add_edge({i, upper}, {j, static_cast<std::size_t>(r[j]) + 1});
      }
    }
  }
  return rel;
}

CutoffProfile::CutoffProfile(std::size_t agents, std::size_t alternatives)
    : values_(agents, std::vector<Rational>(alternatives + 1)) {
  for (auto& row : values_) row.back() = 1;
}

CutoffProfile assign_cutoffs(const PairRelation& relation) {
  const auto R = relation.node_count();
  std::vector<std::vector<std::size_t>> above(R);
  std::vector<std::size_t> pending(R, 0);
  for (std::size_t u = 0; u < R; ++u) {
    pending[u] = relation.below(u).size();
    for (auto v : relation.below(u)) above[v].push_back(u);
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t u = 0; u < R; ++u)
    if (pending[u] == 0) ready.push(u);

  CutoffProfile out(relation.agent_count(), relation.alternative_count());
  std::size_t rank = 0;
  while (!ready.empty()) {
    auto u = ready.top();
    ready.pop();
    ++rank;
    auto slot = relation.slot_of(u);
    Rational value(static_cast<unsigned long>(rank), static_cast<unsigned long>(R + 1));
    value.canonicalize();
    out.at(slot.agent, slot.index) = value;
    for (auto w : above[u])
      if (--pending[w] == 0) ready.push(w);
  }
  if (rank != R) throw AcyclicityError("cutoff relation has a directed cycle", relation.find_cycle());
  return out;
}

} // namespace comlearn
