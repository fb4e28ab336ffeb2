#include "comlearn/belief.hpp"

#include "comlearn/errors.hpp"

namespace comlearn {

Rational bayes_update(const Rational& belief, const Transition& g, const SignalLikelihood& signal) {
  const Rational to_x = belief * g.x_to_x + (1 - belief) * g.y_to_x;
  const Rational to_y = belief * g.x_to_y + (1 - belief) * g.y_to_y;
  const Rational num = to_x * signal.given_x;
  const Rational den = num + to_y * signal.given_y;
  if (den == 0) throw DomainError("realized signal has zero probability");
  Rational p = num / den;
  p.canonicalize();
  return p;
}

Rational required_likelihood_ratio(const Rational& from, const Rational& to) {
  if (from <= 0 || from >= 1 || to <= 0 || to >= 1) throw DomainError("beliefs must lie strictly inside (0,1)");
  Rational r = (to / (1 - to)) * ((1 - from) / from);
  r.canonicalize();
  return r;
}

} // namespace comlearn
