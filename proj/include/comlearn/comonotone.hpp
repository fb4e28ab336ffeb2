#pragma once

#include "comlearn/belief.hpp"
#include "comlearn/dataset.hpp"
#include "comlearn/rational.hpp"
#include "comlearn/witness.hpp"

#include <map>
#include <optional>
#include <vector>

namespace comlearn {

/// Each agent's likelihoods of the signal they actually observed, under
/// state x and state y.
struct MarginalPair {
  std::vector<Rational> given_x;
  std::vector<Rational> given_y;

  std::size_t agent_count() const { return given_x.size(); }
  bool operator==(const MarginalPair&) const = default;
};

/// Joint private-signal experiment reproducing prescribed marginals. Every
/// agent draws from {s^0, s^1, ..., s^I}; agent i's realized signal is s^i.
/// The joint is the mixture
///   (1-eps) * [all agents see s^l with prob adjusted_l, or all see s^0]
///   + eps * [uniform over profiles without s^0]
/// and is stored symbolically; probability() evaluates any profile.
class ComonotoneExperiment {
 public:
  ComonotoneExperiment(Rational epsilon, MarginalPair marginals, MarginalPair adjusted);

  std::size_t agent_count() const { return marginals_.agent_count(); }
  const Rational& epsilon() const { return epsilon_; }
  /// Target marginals at the realized signals.
  const MarginalPair& marginals() const { return marginals_; }
  /// The adjusted marginals pi_l(eps) used in the diagonal terms.
  const MarginalPair& adjusted() const { return adjusted_; }

  /// Signal index 0..I (s^0 .. s^I) that agent i observed; always i + 1.
  std::size_t realized_signal(std::size_t agent) const { return agent + 1; }

  /// Joint probability of a signal profile (one entry per agent, values
  /// 0..I) in state x (`in_x`) or y.
  Rational probability(const std::vector<std::size_t>& profile, bool in_x) const;
  /// Closed-form marginal of any agent at signal s^l.
  Rational marginal(std::size_t signal, bool in_x) const;

  /// Every profile with positive probability in either state, in
  /// lexicographic order. Size I^I + 1; only for small I.
  std::vector<std::vector<std::size_t>> support() const;

  bool operator==(const ComonotoneExperiment&) const = default;

 private:
  Rational epsilon_;
  MarginalPair marginals_;
  MarginalPair adjusted_;
};

/// Builds the joint experiment for positive marginals with sums below one
/// whose differences given_x - given_y share one strict sign. eps is half
/// the largest value keeping every adjusted marginal positive in both
/// states. Throws ComonotonicityError or InfeasibleMarginals.
ComonotoneExperiment build_joint_experiment(const MarginalPair& marginals);

/// Positive marginals with the given per-agent likelihood ratios and sums
/// at most 1/2.
MarginalPair marginals_for_ratios(const std::vector<Rational>& ratios);

enum class StateVariant { time_invariant, time_varying };
enum class Strength { strict, weak };

/// One period of a private-signal witness.
struct ComonotonePeriod {
  Transition transition;
  std::vector<Rational> pre_signal;  // q_{i,t}
  std::vector<Rational> posterior;   // p_{i,t}
  /// Empty when every agent receives an uninformative signal.
  std::optional<ComonotoneExperiment> experiment;
  /// The common pre-signal belief forced by a memoryless transition.
  std::optional<Rational> reset_belief;

  bool operator==(const ComonotonePeriod&) const = default;
};

struct ComonotoneWitness {
  std::vector<Rational> cutoffs;  // one interior threshold per agent
  Rational prior;
  std::vector<ComonotonePeriod> periods;
  StateVariant variant = StateVariant::time_invariant;
  Strength strength = Strength::strict;

  bool operator==(const ComonotoneWitness&) const = default;
};

/// Time-invariant construction; requires binary data with no consecutive
/// cycle (CycleError otherwise). Missing cutoffs default to 1/2 each;
/// supplied cutoffs must lie in (0,1) (DomainError). Strength::weak uses
/// uninformative signals in periods where nobody switches.
ComonotoneWitness construct_comonotone_invariant(const ChoiceDataset& data,
                                                 const std::optional<std::vector<Rational>>& cutoffs = std::nullopt,
                                                 Strength strength = Strength::strict);

/// Time-varying construction; succeeds for every binary dataset.
ComonotoneWitness construct_comonotone_varying(const ChoiceDataset& data,
                                               const std::optional<std::vector<Rational>>& cutoffs = std::nullopt);

enum class ComonotoneClause {
  none,
  well_formed,
  bayes,        // (a) posterior is the Bayes update of the pre-signal belief
  transition,   // (b) pre-signal belief follows the transition
  optimality,   // (c) strict optimality against cutoffs
  comonotone,   // (d) experiment is (strictly) co-monotone
  co_movement,  // (e) no opposed strict belief movements within a period
};

const char* to_string(ComonotoneClause clause);

struct ComonotoneVerdict {
  bool accepted = true;
  ComonotoneClause clause = ComonotoneClause::none;
  std::optional<std::size_t> agent;
  std::optional<std::size_t> period;
  std::string detail;

  explicit operator bool() const { return accepted; }
};

/// Exact re-check; experiments with I <= enumeration_limit are fully
/// enumerated for the support-wise product condition.
ComonotoneVerdict verify_comonotone(const ChoiceDataset& data, const ComonotoneWitness& w,
                                    std::size_t enumeration_limit = 6);

} // namespace comlearn
