#pragma once

#include "comlearn/cycles.hpp"
#include "comlearn/dataset.hpp"
#include "comlearn/order.hpp"
#include "comlearn/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace comlearn {

/// Verdicts for the periods sharing one covariate value.
struct SubsampleAudit {
  std::string value;
  ChoiceDataset data;  // the selected periods, original order
  std::optional<CycleWitness> cycle;
  std::optional<AgentPreorder> preorder;  // present when cycle-free
  std::optional<CycleWitness> consecutive_cycle;

  bool rationalizable() const { return !cycle.has_value(); }
};

/// Agents i, j with u_i >= u_j among favored periods but u_j > u_i among
/// the others.
struct TastePair {
  std::size_t agent_i = 0;
  std::size_t agent_j = 0;
};

struct DiscriminationReport {
  std::string key;
  std::string favored_value;
  std::string other_value;
  std::optional<CycleWitness> full_sample_cycle;
  SubsampleAudit favored;
  SubsampleAudit other;

  bool statistical_flag = false;
  std::string statistical_explanation{};
  /// The other subsample also fails the consecutive-cycle test, so not even
  /// co-monotone private signals explain it. Kept apart from the flag.
  bool comonotone_strengthening = false;

  bool taste_flag = false;
  std::optional<TastePair> taste_pair{};
  std::string taste_explanation{};

  /// Set when the full sample is rationalizable: no flag can be raised then.
  std::optional<std::string> caveat{};
};

/// Requires binary data and a covariate `key` present in every period with
/// exactly two values, one of them `favored` (SelectionError otherwise).
DiscriminationReport audit_discrimination(const ChoiceDataset& data, const std::string& key,
                                          const std::string& favored);

/// Constraints on a hypothetical next period, by agent and alternative label.
struct CounterfactualConstraints {
  /// Every listed agent makes the listed choice.
  std::vector<std::pair<std::string, std::string>> fixed;
  /// At least one listed agent makes their listed choice (ignored if empty).
  std::vector<std::pair<std::string, std::string>> any_of;
};

struct CounterfactualReport {
  /// Admissible profiles (levels per agent) in lexicographic order of the
  /// declared alternatives. Empty when not enumerated.
  std::vector<std::vector<Level>> profiles;
  bool enumerated = true;
  Integer admissible_count;
  Integer total_possible;  // N^I
  /// Binary: the revealed threshold classes, lowest first. Admissible
  /// profiles are those whose x-choosers fill every class below some class k,
  /// a non-empty part of class k and nothing above (or nobody chooses x).
  std::vector<std::vector<std::size_t>> classes;
  CounterfactualConstraints constraints;
};

/// Profiles for one more period that keep the data cycle-free. Binary data
/// use the threshold order (profiles listed for I <= 20, counted above);
/// more alternatives are filtered by brute force under N <= 5, I <= 8.
/// Throws CycleError when the data already has a cycle and SelectionError
/// for unknown agents or alternatives.
CounterfactualReport predict_counterfactuals(const ChoiceDataset& data,
                                             const CounterfactualConstraints& constraints = {});

} // namespace comlearn
