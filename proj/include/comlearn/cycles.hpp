#pragma once

#include "comlearn/dataset.hpp"
#include "comlearn/errors.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace comlearn {

enum class CycleKind { general, consecutive };

/// Two agents moving in strictly opposite directions between two periods:
/// agent_i's level drops from period_t1 to period_t2 while agent_j's rises.
/// For binary data this is agent_i choosing x at t1 and y at t2, and agent_j
/// the reverse.
struct CycleWitness {
  std::size_t agent_i = 0;
  std::size_t agent_j = 0;
  std::size_t period_t1 = 0;
  std::size_t period_t2 = 0;
  CycleKind kind = CycleKind::general;

  bool operator==(const CycleWitness&) const = default;
};

/// Thrown by operations whose precondition is cycle-free data.
class CycleError : public Error {
 public:
  CycleError(const std::string& what, CycleWitness witness) : Error(what), witness_(witness) {}
  const CycleWitness& witness() const noexcept { return witness_; }

 private:
  CycleWitness witness_;
};

/// True when the witness pattern really occurs in `data`.
bool is_valid_witness(const ChoiceDataset& data, const CycleWitness& w);

/// True iff the data has no cycle. Runs in O(I * T log T): the data is
/// cycle-free exactly when the period rows form a chain under the
/// componentwise order.
bool is_cycle_free(const ChoiceDataset& data);

/// Lexicographically first cycle by (t1, t2, i, j), or nothing.
std::optional<CycleWitness> find_cycle(const ChoiceDataset& data);

/// First cycle between adjacent periods (t2 = t1 + 1) in scan order.
std::optional<CycleWitness> find_consecutive_cycle(const ChoiceDataset& data);

/// Set of joint binary choices (choice of the first agent, choice of the
/// second) that occur for one agent pair across all periods.
class PatternSet {
 public:
  enum Pattern : std::uint8_t { xx = 0, xy = 1, yx = 2, yy = 3 };

  static Pattern pattern_of(bool first_is_x, bool second_is_x) {
    return static_cast<Pattern>((first_is_x ? 0 : 2) + (second_is_x ? 0 : 1));
  }

  void insert(Pattern p) { bits_ |= static_cast<std::uint8_t>(1u << p); }
  bool contains(Pattern p) const { return (bits_ >> p) & 1u; }
  std::uint8_t bits() const { return bits_; }
  /// Pattern set seen from the other agent's side.
  PatternSet transposed() const;
  /// Pattern set after flipping the first and/or second agent's choices.
  PatternSet flipped(bool flip_first, bool flip_second) const;
  /// Both opposed patterns present, i.e. this pair exhibits a cycle.
  bool has_cycle() const { return contains(xy) && contains(yx); }

  bool operator==(const PatternSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

/// Pattern sets for every agent pair of a binary dataset.
class PairPatternTable {
 public:
  explicit PairPatternTable(std::size_t agents) : agents_(agents), sets_(agents * agents) {}
  std::size_t agent_count() const { return agents_; }
  PatternSet& at(std::size_t i, std::size_t j) { return sets_[i * agents_ + j]; }
  const PatternSet& at(std::size_t i, std::size_t j) const { return sets_[i * agents_ + j]; }

 private:
  std::size_t agents_;
  std::vector<PatternSet> sets_;
};

/// Throws UnsupportedShape unless the dataset is binary.
PairPatternTable pair_pattern_table(const ChoiceDataset& data);

} // namespace comlearn
