#include "comlearn/two_sat.hpp"

#include <algorithm>
#include <utility>

namespace comlearn {

TwoSat::TwoSat(std::size_t variables) : variables_(variables), implications_(2 * variables) {}

void TwoSat::add_clause(Literal a, Literal b) {
  // (a or b) == (!a -> b) and (!b -> a)
  implications_[node({a.var, !a.value})].push_back(node(b));
  implications_[node({b.var, !b.value})].push_back(node(a));
}

namespace {

// Iterative Tarjan; returns component id per node.
std::vector<std::size_t> strongly_connected(const std::vector<std::vector<std::size_t>>& graph) {
  const std::size_t n = graph.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto [v, next] = work.back();
      if (next < graph[v].size()) {
        work.back().second++;
        auto w = graph[v][next];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      work.pop_back();
      if (!work.empty()) {
        auto parent = work.back().first;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return comp;
}

} // namespace

bool TwoSat::satisfiable_with(const std::vector<std::optional<bool>>& fixed) const {
  auto graph = implications_;
  for (std::size_t v = 0; v < variables_; ++v)
    if (fixed[v]) {
      // unit clause (v == value): !lit -> lit
      Literal lit{v, *fixed[v]};
      graph[node({v, !lit.value})].push_back(node(lit));
    }
  auto comp = strongly_connected(graph);
  for (std::size_t v = 0; v < variables_; ++v)
    if (comp[2 * v] == comp[2 * v + 1]) return false;
  return true;
}

bool TwoSat::satisfiable() const { return satisfiable_with(std::vector<std::optional<bool>>(variables_)); }

std::optional<std::vector<bool>> TwoSat::least_model() const {
  std::vector<std::optional<bool>> fixed(variables_);
  if (!satisfiable_with(fixed)) return std::nullopt;
  for (std::size_t v = 0; v < variables_; ++v) {
    fixed[v] = false;
    if (!satisfiable_with(fixed)) fixed[v] = true;
  }
  std::vector<bool> model(variables_);
  for (std::size_t v = 0; v < variables_; ++v) model[v] = *fixed[v];
  return model;
}

} // namespace comlearn
