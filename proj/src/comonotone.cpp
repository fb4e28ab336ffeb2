#include "comlearn/comonotone.hpp"

#include "comlearn/cycles.hpp"

#include <algorithm>
#include <stdexcept>

namespace comlearn {

namespace {

Rational power(std::size_t base, std::size_t exp) {
  Integer b(static_cast<unsigned long>(base));
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
  return Rational(r);
}

Rational sum(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

int sign(const Rational& v) { return sgn(v); }

} // namespace

ComonotoneExperiment::ComonotoneExperiment(Rational epsilon, MarginalPair marginals, MarginalPair adjusted)
    : epsilon_(std::move(epsilon)), marginals_(std::move(marginals)), adjusted_(std::move(adjusted)) {
  const auto I = marginals_.agent_count();
  if (marginals_.given_y.size() != I || adjusted_.given_x.size() != I || adjusted_.given_y.size() != I)
    throw DimensionMismatch("experiment marginals must have one entry per agent");
}

Rational ComonotoneExperiment::probability(const std::vector<std::size_t>& profile, bool in_x) const {
  const auto I = agent_count();
  if (profile.size() != I) throw DimensionMismatch("signal profile must have one entry per agent");
  const auto& adj = in_x ? adjusted_.given_x : adjusted_.given_y;
  const bool all_zero = std::all_of(profile.begin(), profile.end(), [](std::size_t s) { return s == 0; });
  if (all_zero) {
    Rational p = (1 - epsilon_) * (1 - sum(adj));
    p.canonicalize();
    return p;
  }
  if (std::any_of(profile.begin(), profile.end(), [&](std::size_t s) { return s == 0 || s > I; })) return 0;
  Rational spread = epsilon_ / power(I, I);
  const bool diagonal = std::all_of(profile.begin(), profile.end(), [&](std::size_t s) { return s == profile[0]; });
  Rational p = diagonal ? Rational((1 - epsilon_) * adj[profile[0] - 1] + spread) : spread;
  p.canonicalize();
  return p;
}

Rational ComonotoneExperiment::marginal(std::size_t signal, bool in_x) const {
  const auto I = agent_count();
  const auto& adj = in_x ? adjusted_.given_x : adjusted_.given_y;
  Rational m = signal == 0 ? Rational((1 - epsilon_) * (1 - sum(adj)))
                           : Rational((1 - epsilon_) * adj.at(signal - 1) + epsilon_ / static_cast<long>(I));
  m.canonicalize();
  return m;
}

std::vector<std::vector<std::size_t>> ComonotoneExperiment::support() const {
  const auto I = agent_count();
  std::vector<std::vector<std::size_t>> out{std::vector<std::size_t>(I, 0)};
  std::vector<std::size_t> p(I, 1);
  while (true) {
    out.push_back(p);
    std::size_t k = I;
    while (k > 0 && p[k - 1] == I) p[--k] = 1;
    if (k == 0) break;
    ++p[k - 1];
  }
  return out;
}

ComonotoneExperiment build_joint_experiment(const MarginalPair& marginals) {
  const auto I = marginals.agent_count();
  if (I == 0 || marginals.given_y.size() != I) throw DimensionMismatch("marginals must have one pair per agent");
  for (std::size_t i = 0; i < I; ++i)
    if (marginals.given_x[i] <= 0 || marginals.given_y[i] <= 0)
      throw InfeasibleMarginals("marginal likelihoods must be positive");
  if (sum(marginals.given_x) >= 1 || sum(marginals.given_y) >= 1)
    throw InfeasibleMarginals("marginal likelihoods must sum to less than one in each state");
  const int s = sign(marginals.given_x[0] - marginals.given_y[0]);
  for (std::size_t i = 0; i < I; ++i)
    if (s == 0 || sign(marginals.given_x[i] - marginals.given_y[i]) != s)
      throw ComonotonicityError("marginal differences must share one strict sign across agents");

  // adjusted(eps) = (pi - eps/I) / (1 - eps) stays positive iff eps < I * pi;
  // the sum stays below one for every eps in (0,1) because sum(pi) < 1.
  Rational bound = 1;
  for (std::size_t i = 0; i < I; ++i) {
    bound = std::min(bound, Rational(static_cast<long>(I) * marginals.given_x[i]));
    bound = std::min(bound, Rational(static_cast<long>(I) * marginals.given_y[i]));
  }
  Rational eps = bound / 2;
  eps.canonicalize();

  MarginalPair adjusted;
  for (std::size_t i = 0; i < I; ++i) {
    Rational ax = (marginals.given_x[i] - eps / static_cast<long>(I)) / (1 - eps);
    Rational ay = (marginals.given_y[i] - eps / static_cast<long>(I)) / (1 - eps);
    ax.canonicalize();
    ay.canonicalize();
    adjusted.given_x.push_back(ax);
    adjusted.given_y.push_back(ay);
  }
  return ComonotoneExperiment(eps, marginals, std::move(adjusted));
}

MarginalPair marginals_for_ratios(const std::vector<Rational>& ratios) {
  const auto I = static_cast<long>(ratios.size());
  MarginalPair out;
  for (const auto& r : ratios) {
    if (r <= 0) throw DomainError("likelihood ratios must be positive");
    Rational y = 1 / (2 * I * std::max(Rational(1), r));
    y.canonicalize();
    Rational x = r * y;
    x.canonicalize();
    out.given_x.push_back(x);
    out.given_y.push_back(y);
  }
  return out;
}

namespace {

std::vector<Rational> resolve_cutoffs(const ChoiceDataset& data, const std::optional<std::vector<Rational>>& cutoffs) {
  if (data.alternative_count() != 2) throw UnsupportedShape("private-signal models need exactly two alternatives");
  if (!cutoffs) return std::vector<Rational>(data.agent_count(), Rational(1, 2));
  if (cutoffs->size() != data.agent_count()) throw DimensionMismatch("need one cutoff per agent");
  for (const auto& c : *cutoffs)
    if (c <= 0 || c >= 1) throw DomainError("cutoffs must lie strictly inside (0,1)");
  return *cutoffs;
}

ComonotonePeriod informative_period(Transition g, std::vector<Rational> pre, std::vector<Rational> post) {
  std::vector<Rational> ratios;
  for (std::size_t i = 0; i < pre.size(); ++i) ratios.push_back(required_likelihood_ratio(pre[i], post[i]));
  ComonotonePeriod period;
  period.transition = std::move(g);
  period.experiment = build_joint_experiment(marginals_for_ratios(ratios));
  period.pre_signal = std::move(pre);
  period.posterior = std::move(post);
  return period;
}

bool chose_x(const ChoiceDataset& data, std::size_t i, std::size_t t) { return data.level(i, t) == 1; }

} // namespace

ComonotoneWitness construct_comonotone_invariant(const ChoiceDataset& data,
                                                 const std::optional<std::vector<Rational>>& cutoffs,
                                                 Strength strength) {
  ComonotoneWitness w;
  w.cutoffs = resolve_cutoffs(data, cutoffs);
  if (auto cycle = find_consecutive_cycle(data)) throw CycleError("choice data has a consecutive cycle", *cycle);
  w.variant = StateVariant::time_invariant;
  w.strength = strength;
  w.prior = Rational(1, 2);
  const auto I = data.agent_count();
  const auto T = data.period_count();
  if (T == 0) return w;

  std::vector<Rational> post(I);
  for (std::size_t i = 0; i < I; ++i)
    post[i] = chose_x(data, i, 0) ? midpoint(w.cutoffs[i], 1) : midpoint(0, w.cutoffs[i]);
  w.prior = *std::min_element(post.begin(), post.end()) / 2;
  w.prior.canonicalize();
  w.periods.push_back(informative_period(Transition::identity(), std::vector<Rational>(I, w.prior), post));

  for (std::size_t t = 1; t < T; ++t) {
    bool falls = false, rises = false;
    for (std::size_t i = 0; i < I; ++i) {
      falls |= chose_x(data, i, t - 1) && !chose_x(data, i, t);
      rises |= !chose_x(data, i, t - 1) && chose_x(data, i, t);
    }
    if (falls && rises) throw std::logic_error("opposed switches in adjacent periods despite no consecutive cycle");
    const auto& prev = w.periods.back().posterior;

    if (!falls && !rises && strength == Strength::weak) {
      ComonotonePeriod period;
      period.pre_signal = prev;
      period.posterior = prev;
      w.periods.push_back(std::move(period));
      continue;
    }

    std::vector<Rational> next(I);
    for (std::size_t i = 0; i < I; ++i) {
      const Rational& c = w.cutoffs[i];
      const bool was_x = chose_x(data, i, t - 1);
      const bool is_x = chose_x(data, i, t);
      if (!rises) {  // every belief falls
        if (was_x && is_x) next[i] = midpoint(c, prev[i]);
        else if (!was_x && !is_x) next[i] = midpoint(0, prev[i]);
        else next[i] = midpoint(0, c);
      } else {  // every belief rises
        if (was_x && is_x) next[i] = midpoint(prev[i], 1);
        else if (!was_x && !is_x) next[i] = midpoint(prev[i], c);
        else next[i] = midpoint(c, 1);
      }
    }
    w.periods.push_back(informative_period(Transition::identity(), prev, std::move(next)));
  }
  return w;
}

ComonotoneWitness construct_comonotone_varying(const ChoiceDataset& data,
                                               const std::optional<std::vector<Rational>>& cutoffs) {
  ComonotoneWitness w;
  w.cutoffs = resolve_cutoffs(data, cutoffs);
  w.variant = StateVariant::time_varying;
  w.strength = Strength::strict;
  w.prior = Rational(1, 2);
  const auto I = data.agent_count();
  const Rational reset = *std::min_element(w.cutoffs.begin(), w.cutoffs.end()) / 2;
  for (std::size_t t = 0; t < data.period_count(); ++t) {
    std::vector<Rational> post(I);
    for (std::size_t i = 0; i < I; ++i)
      post[i] = chose_x(data, i, t) ? midpoint(w.cutoffs[i], 1) : midpoint(reset, w.cutoffs[i]);
    auto period = informative_period(Transition::memoryless(reset), std::vector<Rational>(I, reset), std::move(post));
    period.reset_belief = reset;
    w.periods.push_back(std::move(period));
  }
  return w;
}

const char* to_string(ComonotoneClause clause) {
  switch (clause) {
    case ComonotoneClause::none: return "none";
    case ComonotoneClause::well_formed: return "well-formed";
    case ComonotoneClause::bayes: return "bayes";
    case ComonotoneClause::transition: return "transition";
    case ComonotoneClause::optimality: return "optimality";
    case ComonotoneClause::comonotone: return "co-monotone";
    case ComonotoneClause::co_movement: return "co-movement";
  }
  return "unknown";
}

namespace {

ComonotoneVerdict reject(ComonotoneClause c, std::string detail, std::optional<std::size_t> agent,
                         std::optional<std::size_t> period) {
  return {false, c, agent, period, std::move(detail)};
}

bool in_open_unit(const Rational& v) { return v > 0 && v < 1; }

// Checks the experiment's internal consistency; fills the likelihood of each
// agent's realized signal. Empty string means fine.
std::string check_experiment(const ComonotoneExperiment& e, std::size_t enumeration_limit,
                             std::vector<SignalLikelihood>& realized) {
  const auto I = e.agent_count();
  const auto& m = e.marginals();
  const auto& a = e.adjusted();
  const Rational& eps = e.epsilon();
  if (!(eps > 0 && eps < 1)) return "epsilon must lie in (0,1)";
  for (std::size_t i = 0; i < I; ++i) {
    for (bool in_x : {true, false}) {
      const Rational& target = in_x ? m.given_x[i] : m.given_y[i];
      const Rational& adj = in_x ? a.given_x[i] : a.given_y[i];
      if (adj <= 0) return "adjusted marginals must be positive";
      if ((1 - eps) * adj + eps / static_cast<long>(I) != target) return "adjusted marginals do not mix back to the targets";
    }
  }
  if (sum(a.given_x) >= 1 || sum(a.given_y) >= 1) return "adjusted marginals must sum to less than one";
  const int s = sign(m.given_x[0] - m.given_y[0]);
  for (std::size_t i = 0; i < I; ++i)
    if (s == 0 || sign(m.given_x[i] - m.given_y[i]) != s)
      return "marginal differences do not share one strict sign";

  realized.clear();
  if (I > enumeration_limit) {
    for (std::size_t i = 0; i < I; ++i)
      realized.push_back({e.marginal(e.realized_signal(i), true), e.marginal(e.realized_signal(i), false)});
    return {};
  }

  // Full enumeration over {s^0..s^I}^I.
  std::vector<std::vector<Rational>> mx(I, std::vector<Rational>(I + 1)), my = mx;
  Rational total_x = 0, total_y = 0;
  std::vector<std::vector<std::size_t>> support;
  std::vector<std::size_t> p(I, 0);
  while (true) {
    Rational px = e.probability(p, true);
    Rational py = e.probability(p, false);
    if (px < 0 || py < 0) return "negative probability";
    if (px > 0 || py > 0) support.push_back(p);
    total_x += px;
    total_y += py;
    for (std::size_t i = 0; i < I; ++i) {
      mx[i][p[i]] += px;
      my[i][p[i]] += py;
    }
    std::size_t k = I;
    while (k > 0 && p[k - 1] == I) p[--k] = 0;
    if (k == 0) break;
    ++p[k - 1];
  }
  if (total_x != 1 || total_y != 1) return "joint distribution does not sum to one";
  std::vector<std::vector<int>> diff(I, std::vector<int>(I + 1));
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t l = 0; l <= I; ++l) diff[i][l] = sign(mx[i][l] - my[i][l]);
  for (const auto& prof : support)
    for (std::size_t i = 0; i < I; ++i)
      for (std::size_t j = 0; j < I; ++j)
        if (diff[i][prof[i]] * diff[j][prof[j]] <= 0) return "support profile violates strict co-monotonicity";
  std::vector<std::size_t> realized_profile(I);
  for (std::size_t i = 0; i < I; ++i) realized_profile[i] = e.realized_signal(i);
  if (std::find(support.begin(), support.end(), realized_profile) == support.end())
    return "realized signal profile is outside the support";
  for (std::size_t i = 0; i < I; ++i) {
    auto l = e.realized_signal(i);
    if (mx[i][l] != m.given_x[i] || my[i][l] != m.given_y[i]) return "enumerated marginals differ from the targets";
    realized.push_back({mx[i][l], my[i][l]});
  }
  return {};
}

} // namespace

ComonotoneVerdict verify_comonotone(const ChoiceDataset& data, const ComonotoneWitness& w,
                                    std::size_t enumeration_limit) {
  const auto I = data.agent_count();
  const auto T = data.period_count();
  if (data.alternative_count() != 2) throw UnsupportedShape("private-signal models need exactly two alternatives");
  if (w.cutoffs.size() != I || w.periods.size() != T) throw DimensionMismatch("witness does not match the dataset");
  for (const auto& period : w.periods) {
    if (period.pre_signal.size() != I || period.posterior.size() != I)
      throw DimensionMismatch("witness beliefs need one entry per agent");
    if (period.experiment && period.experiment->agent_count() != I)
      throw DimensionMismatch("experiment does not match the agents");
  }

  for (std::size_t i = 0; i < I; ++i)
    if (!in_open_unit(w.cutoffs[i])) return reject(ComonotoneClause::well_formed, "cutoff outside (0,1)", i, {});
  if (!in_open_unit(w.prior)) return reject(ComonotoneClause::well_formed, "prior outside (0,1)", {}, {});

  std::vector<Rational> previous(I, w.prior);
  for (std::size_t t = 0; t < T; ++t) {
    const auto& period = w.periods[t];
    const auto& g = period.transition;
    if (!g.is_row_stochastic())
      return reject(ComonotoneClause::well_formed, "transition rows must be probability vectors", {}, t);
    if (w.variant == StateVariant::time_invariant && !g.is_identity())
      return reject(ComonotoneClause::well_formed, "time-invariant witness with a moving state", {}, t);
    if (period.reset_belief && !(g.x_to_x == *period.reset_belief && g.y_to_x == *period.reset_belief))
      return reject(ComonotoneClause::well_formed, "reset belief does not match the transition", {}, t);

    // (b) pre-signal beliefs
    for (std::size_t i = 0; i < I; ++i)
      if (period.pre_signal[i] != predict(previous[i], g))
        return reject(ComonotoneClause::transition, "pre-signal belief does not follow the transition", i, t);

    // (e) co-movement
    std::optional<std::size_t> up, down;
    for (std::size_t i = 0; i < I; ++i) {
      if (!up && period.posterior[i] > period.pre_signal[i]) up = i;
      if (!down && period.posterior[i] < period.pre_signal[i]) down = i;
    }
    if (up && down)
      return reject(ComonotoneClause::co_movement,
                    "agent " + data.agents()[*up] + "'s belief rises while " + data.agents()[*down] + "'s falls",
                    *down, t);

    // (d) experiment
    std::vector<SignalLikelihood> realized;
    if (period.experiment) {
      auto problem = check_experiment(*period.experiment, enumeration_limit, realized);
      if (!problem.empty()) return reject(ComonotoneClause::comonotone, problem, {}, t);
    } else if (w.strength == Strength::strict) {
      return reject(ComonotoneClause::comonotone, "uninformative signals are not strictly co-monotone", {}, t);
    }

    // (a) Bayes
    for (std::size_t i = 0; i < I; ++i) {
      const Rational& q = period.pre_signal[i];
      Rational expected = q;
      if (period.experiment) {
        const auto& s = realized[i];
        Rational den = q * s.given_x + (1 - q) * s.given_y;
        if (den == 0) return reject(ComonotoneClause::bayes, "realized signal has zero probability", i, t);
        expected = q * s.given_x / den;
        expected.canonicalize();
      }
      if (!in_open_unit(period.posterior[i]))
        return reject(ComonotoneClause::well_formed, "posterior outside (0,1)", i, t);
      if (expected != period.posterior[i])
        return reject(ComonotoneClause::bayes,
                      "posterior " + to_string(period.posterior[i]) + " but Bayes' rule gives " + to_string(expected),
                      i, t);
    }

    // (c) optimality
    for (std::size_t i = 0; i < I; ++i) {
      const bool x = data.level(i, t) == 1;
      const Rational& p = period.posterior[i];
      if (x ? !(p > w.cutoffs[i]) : !(p < w.cutoffs[i]))
        return reject(ComonotoneClause::optimality, "choice is not strictly optimal at the posterior", i, t);
    }

    previous = period.posterior;
  }
  return {};
}

} // namespace comlearn
