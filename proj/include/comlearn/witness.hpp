#pragma once

#include "comlearn/belief.hpp"
#include "comlearn/dataset.hpp"
#include "comlearn/order.hpp"
#include "comlearn/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace comlearn {

/// u(alternative, state) for each agent. Indexed [agent][level]; each entry
/// holds the utility in state x and in state y.
struct UtilityTable {
  struct Entry {
    Rational in_x;
    Rational in_y;
    bool operator==(const Entry&) const = default;
  };
  std::vector<std::vector<Entry>> values;

  bool operator==(const UtilityTable&) const = default;
};

/// Threshold induced by a binary utility table: the belief at which the agent
/// is indifferent between the high and the low alternative.
Rational induced_threshold(const UtilityTable::Entry& high, const UtilityTable::Entry& low);

/// Utility table inducing exactly the given cutoffs. Binary: u(x,x) =
/// u(y,y) = 1, u(x,y) = 1/2, u(y,x) = (3c-1)/(2c). More alternatives: the
/// piecewise-linear table with U_n(p) - U_{n-1}(p) = p - c_n.
UtilityTable utilities_for(const CutoffProfile& cutoffs);

struct BeliefTrajectory {
  Rational prior;
  std::vector<Rational> beliefs;  // one per period

  bool operator==(const BeliefTrajectory&) const = default;
};

/// Everything needed to replay the common-belief model on a dataset: cutoffs
/// and the utilities inducing them, the belief path, transitions, and the
/// realized binary signal of each period (its complement is implied).
struct RationalizationWitness {
  CutoffProfile cutoffs;
  UtilityTable utilities;
  BeliefTrajectory beliefs;
  std::vector<Transition> transitions;
  std::vector<SignalLikelihood> experiments;

  bool time_invariant() const;
  bool operator==(const RationalizationWitness&) const = default;
};

/// Builds a witness for cycle-free data; throws CycleError otherwise.
RationalizationWitness construct_witness(const ChoiceDataset& data);

/// Binary signal with the given likelihood ratio: given_y = min(1/2, 1/(2r)),
/// given_x = r * given_y. Both lie in (0,1).
SignalLikelihood signal_with_ratio(const Rational& ratio);

enum class Clause {
  none,
  well_formed,  // sentinels, ranges, stochastic rows
  bayes,        // (a) beliefs follow Bayes' rule
  optimality,   // (b) every choice strictly optimal
  utilities,    // (c) utilities induce the cutoffs
};

const char* to_string(Clause clause);

struct Verdict {
  bool accepted = true;
  Clause clause = Clause::none;
  std::optional<std::size_t> agent;
  std::optional<std::size_t> period;
  std::string detail;

  explicit operator bool() const { return accepted; }
  static Verdict accept() { return {}; }
  static Verdict reject(Clause c, std::string detail, std::optional<std::size_t> agent = std::nullopt,
                        std::optional<std::size_t> period = std::nullopt) {
    return {false, c, agent, period, std::move(detail)};
  }
};

/// Exact re-check of a witness against the data; reports the first violated
/// clause. Throws DimensionMismatch when shapes disagree.
Verdict verify_witness(const ChoiceDataset& data, const RationalizationWitness& w);

/// Exhaustive oracle: searches every ordering of the interior cutoff slots
/// (per-agent monotone) for one in which each period's belief interval is
/// non-empty. Limited to I <= 6, T <= 6, N <= 4 (SizeGuardError otherwise).
bool brute_force_rationalizable(const ChoiceDataset& data);

} // namespace comlearn
