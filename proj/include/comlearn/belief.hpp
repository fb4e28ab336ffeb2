#pragma once

#include "comlearn/rational.hpp"

namespace comlearn {

/// One period's state transition gamma(next | previous), rows indexed by the
/// previous state.
struct Transition {
  Rational x_to_x = 1;
  Rational x_to_y = 0;
  Rational y_to_x = 0;
  Rational y_to_y = 1;

  static Transition identity() { return {}; }
  /// Next state is x with probability q regardless of the previous state.
  static Transition memoryless(const Rational& q) { return {q, 1 - q, q, 1 - q}; }

  bool is_identity() const { return x_to_x == 1 && y_to_y == 1; }
  bool is_row_stochastic() const {
    return x_to_x >= 0 && x_to_y >= 0 && y_to_x >= 0 && y_to_y >= 0 && x_to_x + x_to_y == 1 &&
           y_to_x + y_to_y == 1;
  }

  bool operator==(const Transition&) const = default;
};

/// Likelihoods of the realized signal in each state.
struct SignalLikelihood {
  Rational given_x;
  Rational given_y;

  bool operator==(const SignalLikelihood&) const = default;
};

/// Belief in state x after the transition but before the signal.
inline Rational predict(const Rational& belief, const Transition& g) {
  Rational q = belief * g.x_to_x + (1 - belief) * g.y_to_x;
  q.canonicalize();
  return q;
}

/// Bayes' rule for a binary state: transition, then condition on the signal.
/// Throws DomainError if the signal has probability zero under the predicted
/// belief.
Rational bayes_update(const Rational& belief, const Transition& g, const SignalLikelihood& signal);

/// Likelihood ratio given_x / given_y that moves `from` to `to` with no
/// state transition in between: odds(to) / odds(from).
Rational required_likelihood_ratio(const Rational& from, const Rational& to);

} // namespace comlearn
