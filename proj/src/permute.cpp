#include "comlearn/permute.hpp"

#include "comlearn/two_sat.hpp"

#include <algorithm>
#include <numeric>

namespace comlearn {

PermutationAssignment::PermutationAssignment(std::vector<std::vector<Level>> maps) : maps_(std::move(maps)) {
  for (const auto& m : maps_) {
    if (m.size() != maps_.front().size()) throw DomainError("all agents must permute the same alternatives");
    std::vector<bool> hit(m.size(), false);
    for (Level l : m) {
      if (l >= m.size() || hit[l]) throw DomainError("permutation is not a bijection");
      hit[l] = true;
    }
  }
}

PermutationAssignment PermutationAssignment::identity(std::size_t agents, std::size_t alternatives) {
  std::vector<Level> id(alternatives);
  std::iota(id.begin(), id.end(), Level{0});
  return PermutationAssignment(std::vector<std::vector<Level>>(agents, id));
}

PermutationAssignment PermutationAssignment::from_flips(const std::vector<bool>& flips) {
  std::vector<std::vector<Level>> maps;
  for (bool f : flips) maps.push_back(f ? std::vector<Level>{1, 0} : std::vector<Level>{0, 1});
  return PermutationAssignment(std::move(maps));
}

std::vector<bool> PermutationAssignment::flips() const {
  if (alternative_count() != 2) throw UnsupportedShape("flip flags exist only for two alternatives");
  std::vector<bool> out;
  for (const auto& m : maps_) out.push_back(m[0] == 1);
  return out;
}

std::vector<int> PermutationAssignment::eta() const {
  std::vector<int> out;
  for (bool f : flips()) out.push_back(f ? -1 : 1);
  return out;
}

ChoiceDataset apply_permutation(const ChoiceDataset& data, const PermutationAssignment& kappa) {
  if (kappa.agent_count() != data.agent_count() || kappa.alternative_count() != data.alternative_count())
    throw DimensionMismatch("permutation does not match the dataset");
  return data.relabeled(kappa.maps());
}

namespace {

Level flip_if(Level l, bool flip) { return flip ? 1 - l : l; }

std::optional<CycleWitness> pair_cycle(const ChoiceDataset& data, std::size_t i, std::size_t j, bool fi, bool fj) {
  const auto T = data.period_count();
  for (std::size_t t1 = 0; t1 < T; ++t1)
    for (std::size_t t2 = 0; t2 < T; ++t2) {
      if (t1 == t2) continue;
      int di = int(flip_if(data.level(i, t2), fi)) - int(flip_if(data.level(i, t1), fi));
      int dj = int(flip_if(data.level(j, t2), fj)) - int(flip_if(data.level(j, t1), fj));
      if (di < 0 && dj > 0) return CycleWitness{i, j, t1, t2, CycleKind::general};
      if (dj < 0 && di > 0) return CycleWitness{j, i, t1, t2, CycleKind::general};
    }
  return std::nullopt;
}

// Two columns avoid a cycle iff their joint values form a chain.
bool columns_compatible(const std::vector<Level>& a, const std::vector<Level>& b) {
  std::vector<std::pair<Level, Level>> points(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) points[t] = {a[t], b[t]};
  std::sort(points.begin(), points.end());
  for (std::size_t t = 1; t < points.size(); ++t)
    if (points[t].second < points[t - 1].second) return false;
  return true;
}

} // namespace

std::vector<BlockedCombination> blocked_combinations(const ChoiceDataset& data) {
  auto table = pair_pattern_table(data);
  const auto I = data.agent_count();
  std::vector<BlockedCombination> out;
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t j = i + 1; j < I; ++j)
      for (auto [fi, fj] : {std::pair{false, false}, {true, false}, {false, true}, {true, true}})
        if (table.at(i, j).flipped(fi, fj).has_cycle())
          out.push_back({i, j, fi, fj, *pair_cycle(data, i, j, fi, fj)});
  return out;
}

std::optional<PermutationAssignment> solve_general_preferences_binary(const ChoiceDataset& data) {
  if (data.alternative_count() != 2)
    throw UnsupportedShape("the 2-SAT search needs two alternatives; use the enumeration search instead");
  const auto I = data.agent_count();
  auto table = pair_pattern_table(data);
  TwoSat sat(I);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t j = i + 1; j < I; ++j)
      for (bool fi : {false, true})
        for (bool fj : {false, true})
          if (table.at(i, j).flipped(fi, fj).has_cycle()) sat.add_clause({i, !fi}, {j, !fj});
  auto model = sat.least_model();
  if (!model) return std::nullopt;
  return PermutationAssignment::from_flips(*model);
}

std::optional<PermutationAssignment> solve_general_preferences_multi(const ChoiceDataset& data) {
  const auto I = data.agent_count();
  const auto N = data.alternative_count();
  if (N > 5 || I > 8) {
    std::string hint = N == 2 ? "; binary data can use the 2-SAT search" : "";
    throw SizeGuardError("permutation enumeration limited to N <= 5 and I <= 8" + hint);
  }

  std::vector<std::vector<Level>> perms;
  std::vector<Level> p(N);
  std::iota(p.begin(), p.end(), Level{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  // permuted[agent][perm] = relabeled column
  std::vector<std::vector<std::vector<Level>>> permuted(I);
  for (std::size_t i = 0; i < I; ++i) {
    auto col = data.column(i);
    for (const auto& m : perms) {
      std::vector<Level> c(col.size());
      for (std::size_t t = 0; t < col.size(); ++t) c[t] = m[col[t]];
      permuted[i].push_back(std::move(c));
    }
  }

  std::vector<std::size_t> choice(I, 0);
  std::size_t depth = 0;
  // Depth-first in lexicographic order; a cycle always involves just two
  // agents, so pairwise pruning is exact.
  while (true) {
    if (depth == I) {
      std::vector<std::vector<Level>> maps;
      for (auto c : choice) maps.push_back(perms[c]);
      return PermutationAssignment(std::move(maps));
    }
    bool ok = choice[depth] < perms.size();
    if (ok)
      for (std::size_t j = 0; j < depth && ok; ++j)
        ok = columns_compatible(permuted[j][choice[j]], permuted[depth][choice[depth]]);
    if (ok) {
      ++depth;
      if (depth < I) choice[depth] = 0;
      continue;
    }
    if (choice[depth] < perms.size()) {
      ++choice[depth];
      continue;
    }
    if (depth == 0) return std::nullopt;
    --depth;
    ++choice[depth];
  }
}

} // namespace comlearn
