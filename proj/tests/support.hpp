#pragma once

#include "comlearn/cycles.hpp"
#include "comlearn/dataset.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace testing {

using comlearn::ChoiceDataset;
using comlearn::Level;

inline std::vector<std::string> default_alternatives(std::size_t n) {
  if (n == 2) return {"x", "y"};
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(std::string(1, char('a' + k)));
  return out;
}

inline std::vector<std::string> names(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(prefix + std::to_string(k + 1));
  return out;
}

// rows[t][i] holds belief levels, 0 = lowest.
inline ChoiceDataset from_levels(const std::vector<std::vector<Level>>& rows, std::size_t agents, std::size_t n) {
  std::vector<Level> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return ChoiceDataset(names("a", agents), names("t", rows.size()), default_alternatives(n), flat);
}

inline ChoiceDataset binary(const std::vector<std::string>& agents, const std::vector<std::vector<std::string>>& rows) {
  return ChoiceDataset::from_labels(agents, names("t", rows.size()), {"x", "y"}, rows);
}

// Straight from the definition: four nested loops.
inline bool oracle_has_cycle(const ChoiceDataset& d) {
  for (std::size_t i = 0; i < d.agent_count(); ++i)
    for (std::size_t j = 0; j < d.agent_count(); ++j)
      for (std::size_t a = 0; a < d.period_count(); ++a)
        for (std::size_t b = 0; b < d.period_count(); ++b)
          if (d.level(i, a) > d.level(i, b) && d.level(j, a) < d.level(j, b)) return true;
  return false;
}

inline ChoiceDataset random_dataset(std::mt19937& rng, std::size_t I, std::size_t T, std::size_t N) {
  std::uniform_int_distribution<Level> pick(0, static_cast<Level>(N - 1));
  std::vector<std::vector<Level>> rows(T, std::vector<Level>(I));
  for (auto& r : rows)
    for (auto& v : r) v = pick(rng);
  return from_levels(rows, I, N);
}

// Draws cutoffs and a common belief path, then reads off the choices; such
// data are cycle-free by construction.
inline ChoiceDataset random_cycle_free(std::mt19937& rng, std::size_t I, std::size_t T, std::size_t N) {
  std::uniform_int_distribution<int> grid(1, 40);
  std::vector<std::vector<int>> cut(I);
  for (auto& c : cut) {
    for (std::size_t n = 0; n + 1 < N; ++n) c.push_back(2 * grid(rng));
    std::sort(c.begin(), c.end());
  }
  std::vector<std::vector<Level>> rows(T, std::vector<Level>(I));
  for (auto& r : rows) {
    int belief = 2 * grid(rng) + 1;
    for (std::size_t i = 0; i < I; ++i)
      r[i] = static_cast<Level>(std::count_if(cut[i].begin(), cut[i].end(), [&](int c) { return c < belief; }));
  }
  return from_levels(rows, I, N);
}

} // namespace testing
