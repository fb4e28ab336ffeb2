#pragma once

#include "comlearn/cycles.hpp"
#include "comlearn/dataset.hpp"
#include "comlearn/rational.hpp"

#include <utility>
#include <vector>

namespace comlearn {

/// Revealed ranking of binary thresholds: agent j sits above agent i when
/// every period in which j chooses x also has i choosing x.
struct AgentPreorder {
  /// Equivalence classes, lowest threshold first. Agents in one class have
  /// identical choice columns.
  std::vector<std::vector<std::size_t>> classes;
  /// Every (lower, upper) agent pair with upper strictly above lower.
  std::vector<std::pair<std::size_t, std::size_t>> strict_edges;
  /// class_of[agent] indexes `classes`.
  std::vector<std::size_t> class_of;

  bool strictly_above(std::size_t upper, std::size_t lower) const { return class_of[upper] > class_of[lower]; }
  bool weakly_above(std::size_t upper, std::size_t lower) const { return class_of[upper] >= class_of[lower]; }
};

/// Throws UnsupportedShape unless binary, CycleError when the data has a
/// cycle (the relation is then incomplete).
AgentPreorder build_preorder(const ChoiceDataset& data);

/// Interior cutoff position (agent, n) with n in 2..N, using the 1-based
/// alternative index of the belief axis. Cutoffs 1 and N+1 are the fixed
/// sentinels 0 and 1 and are not part of the relation.
struct CutoffSlot {
  std::size_t agent = 0;
  std::size_t index = 0;

  auto operator<=>(const CutoffSlot&) const = default;
};

/// Strict "cutoff is above" relation over interior cutoff slots. An edge
/// u -> v records that u's cutoff must exceed v's.
class PairRelation {
 public:
  PairRelation(std::size_t agents, std::size_t alternatives);

  std::size_t agent_count() const { return agents_; }
  std::size_t alternative_count() const { return alternatives_; }
  std::size_t node_count() const { return agents_ * (alternatives_ - 1); }

  std::size_t node_of(CutoffSlot slot) const { return slot.agent * (alternatives_ - 1) + (slot.index - 2); }
  CutoffSlot slot_of(std::size_t node) const {
    return {node / (alternatives_ - 1), node % (alternatives_ - 1) + 2};
  }

  void add_edge(CutoffSlot above, CutoffSlot below);
  bool has_edge(CutoffSlot above, CutoffSlot below) const;
  /// Out-neighbours (slots required below), sorted.
  const std::vector<std::size_t>& below(std::size_t node) const { return below_[node]; }

  /// A directed cycle (first node repeated at the end), or empty if acyclic.
  std::vector<CutoffSlot> find_cycle() const;
  bool is_acyclic() const { return find_cycle().empty(); }

 private:
  std::size_t agents_;
  std::size_t alternatives_;
  std::vector<std::vector<std::size_t>> below_;
};

/// Chain edges (i,n) -> (i,n-1) and, for every period where agent i picks the
/// (n-1)-th alternative and a different agent j picks the n'-th, the cross
/// edge (i,n) -> (j,n'). Acyclic exactly when the data has no cycle.
PairRelation build_pair_relation(const ChoiceDataset& data);

class AcyclicityError : public Error {
 public:
  AcyclicityError(const std::string& what, std::vector<CutoffSlot> cycle) : Error(what), cycle_(std::move(cycle)) {}
  const std::vector<CutoffSlot>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<CutoffSlot> cycle_;
};

/// Per-agent cutoffs u(i,1) = 0 < u(i,2) < ... < u(i,N+1) = 1.
class CutoffProfile {
 public:
  CutoffProfile() = default;
  CutoffProfile(std::size_t agents, std::size_t alternatives);

  std::size_t agent_count() const { return values_.size(); }
  std::size_t alternative_count() const { return values_.empty() ? 0 : values_.front().size() - 1; }

  /// n is 1-based, 1..N+1.
  const Rational& at(std::size_t agent, std::size_t n) const { return values_[agent][n - 1]; }
  Rational& at(std::size_t agent, std::size_t n) { return values_[agent][n - 1]; }
  /// Lower and upper bound of the belief interval selecting `level`.
  const Rational& lower(std::size_t agent, Level level) const { return values_[agent][level]; }
  const Rational& upper(std::size_t agent, Level level) const { return values_[agent][level + 1]; }
  const std::vector<Rational>& row(std::size_t agent) const { return values_[agent]; }

  bool operator==(const CutoffProfile&) const = default;

 private:
  std::vector<std::vector<Rational>> values_;
};

/// Linear extension of the relation, ties among incomparable slots broken by
/// (agent, n); slot of rank r out of R gets cutoff r / (R + 1). Throws
/// AcyclicityError carrying a cycle certificate when the relation is cyclic.
CutoffProfile assign_cutoffs(const PairRelation& relation);

} // namespace comlearn
