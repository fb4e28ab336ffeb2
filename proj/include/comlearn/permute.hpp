#pragma once

#include "comlearn/cycles.hpp"
#include "comlearn/dataset.hpp"

#include <optional>
#include <vector>

namespace comlearn {

/// Per-agent relabeling of alternatives. An agent whose utility favours
/// mismatching the state is modelled by reversing their choices; in the
/// binary case that is a single flip flag per agent.
class PermutationAssignment {
 public:
  /// maps[agent][level] is the level the agent's choice is relabeled to.
  /// Throws DomainError unless every map is a bijection.
  explicit PermutationAssignment(std::vector<std::vector<Level>> maps);

  static PermutationAssignment identity(std::size_t agents, std::size_t alternatives);
  static PermutationAssignment from_flips(const std::vector<bool>& flips);

  std::size_t agent_count() const { return maps_.size(); }
  std::size_t alternative_count() const { return maps_.empty() ? 0 : maps_.front().size(); }
  const std::vector<std::vector<Level>>& maps() const { return maps_; }
  /// Binary only: true for agents whose two alternatives are swapped.
  std::vector<bool> flips() const;
  /// +1 for agents kept as is, -1 for flipped agents (binary only).
  std::vector<int> eta() const;

  bool operator==(const PermutationAssignment&) const = default;

 private:
  std::vector<std::vector<Level>> maps_;
};

ChoiceDataset apply_permutation(const ChoiceDataset& data, const PermutationAssignment& kappa);

/// A flip combination for one agent pair that leaves a cycle between them.
struct BlockedCombination {
  std::size_t agent_i;
  std::size_t agent_j;
  bool flip_i;
  bool flip_j;
  /// The cycle in the permuted data, restricted to this pair.
  CycleWitness cycle;
};

/// Every blocked (pair, flip combination), pairs i < j in index order and
/// combinations ordered none, i only, j only, both. Binary only.
std::vector<BlockedCombination> blocked_combinations(const ChoiceDataset& data);

/// Binary general-preferences test: the least flip vector (agents in index
/// order, unflipped preferred) whose permuted data has no cycle, via 2-SAT.
/// Throws UnsupportedShape unless binary.
std::optional<PermutationAssignment> solve_general_preferences_binary(const ChoiceDataset& data);

/// Any number of alternatives: first per-agent permutation profile in
/// lexicographic order (agent 0 most significant) whose permuted data has no
/// cycle. Limited to N <= 5 and I <= 8 (SizeGuardError otherwise).
std::optional<PermutationAssignment> solve_general_preferences_multi(const ChoiceDataset& data);

} // namespace comlearn
