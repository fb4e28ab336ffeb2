#include "comlearn/witness.hpp"

#include "comlearn/cycles.hpp"

#include <algorithm>
#include <cstdint>

namespace comlearn {

bool RationalizationWitness::time_invariant() const {
  return std::all_of(transitions.begin(), transitions.end(), [](const Transition& g) { return g.is_identity(); });
}

Rational induced_threshold(const UtilityTable::Entry& high, const UtilityTable::Entry& low) {
  const Rational gain_in_y = low.in_y - high.in_y;
  const Rational slope = (high.in_x - low.in_x) + gain_in_y;
  if (slope == 0) throw DomainError("utility table does not separate the alternatives");
  Rational c = gain_in_y / slope;
  c.canonicalize();
  return c;
}

UtilityTable utilities_for(const CutoffProfile& cutoffs) {
  const auto I = cutoffs.agent_count();
  const auto N = cutoffs.alternative_count();
  UtilityTable table;
  table.values.resize(I);
  for (std::size_t i = 0; i < I; ++i) {
    auto& row = table.values[i];
    row.resize(N);
    if (N == 2) {
      const Rational& c = cutoffs.at(i, 2);
      Rational y_in_x = (3 * c - 1) / (2 * c);
      y_in_x.canonicalize();
      row[1] = {Rational(1), Rational(1, 2)};
      row[0] = {y_in_x, Rational(1)};
      continue;
    }
    Rational cumulative = 0;
    for (std::size_t n = 1; n <= N; ++n) {
      if (n >= 2) cumulative += cutoffs.at(i, n);
      Rational in_x = Rational(static_cast<long>(n - 1)) - cumulative;
      Rational in_y = -cumulative;
      in_x.canonicalize();
      in_y.canonicalize();
      row[n - 1] = {in_x, in_y};
    }
  }
  return table;
}

SignalLikelihood signal_with_ratio(const Rational& ratio) {
  if (ratio <= 0) throw DomainError("likelihood ratio must be positive");
  Rational half(1, 2);
  Rational given_y = ratio <= 1 ? half : Rational(1 / (2 * ratio));
  given_y.canonicalize();
  Rational given_x = ratio * given_y;
  given_x.canonicalize();
  return {given_x, given_y};
}

RationalizationWitness construct_witness(const ChoiceDataset& data) {
  if (auto cycle = find_cycle(data)) throw CycleError("choice data has a cycle", *cycle);

  RationalizationWitness w;
  w.cutoffs = assign_cutoffs(build_pair_relation(data));
  w.utilities = utilities_for(w.cutoffs);
  w.beliefs.prior = Rational(1, 2);

  const auto I = data.agent_count();
  Rational previous = w.beliefs.prior;
  for (std::size_t t = 0; t < data.period_count(); ++t) {
    Rational lo = 0;
    Rational hi = 1;
    for (std::size_t i = 0; i < I; ++i) {
      const Level l = data.level(i, t);
      lo = std::max(lo, w.cutoffs.lower(i, l));
      hi = std::min(hi, w.cutoffs.upper(i, l));
    }
    Rational p = midpoint(lo, hi);
    w.beliefs.beliefs.push_back(p);
    w.transitions.push_back(Transition::identity());
    w.experiments.push_back(signal_with_ratio(required_likelihood_ratio(previous, p)));
    previous = p;
  }
  return w;
}

const char* to_string(Clause clause) {
  switch (clause) {
    case Clause::none: return "none";
    case Clause::well_formed: return "well-formed";
    case Clause::bayes: return "bayes";
    case Clause::optimality: return "optimality";
    case Clause::utilities: return "utilities";
  }
  return "unknown";
}

namespace {

bool in_open_unit(const Rational& v) { return v > 0 && v < 1; }

} // namespace

Verdict verify_witness(const ChoiceDataset& data, const RationalizationWitness& w) {
  const auto I = data.agent_count();
  const auto T = data.period_count();
  const auto N = data.alternative_count();
  if (w.cutoffs.agent_count() != I || w.cutoffs.alternative_count() != N)
    throw DimensionMismatch("cutoff profile does not match the dataset");
  if (w.utilities.values.size() != I) throw DimensionMismatch("utility table does not match the agents");
  for (const auto& row : w.utilities.values)
    if (row.size() != N) throw DimensionMismatch("utility table does not match the alternatives");
  if (w.beliefs.beliefs.size() != T || w.transitions.size() != T || w.experiments.size() != T)
    throw DimensionMismatch("witness does not have one entry per period");

  for (std::size_t i = 0; i < I; ++i) {
    if (w.cutoffs.at(i, 1) != 0 || w.cutoffs.at(i, N + 1) != 1)
      return Verdict::reject(Clause::well_formed, "boundary cutoffs must be 0 and 1", i);
    for (std::size_t n = 2; n <= N + 1; ++n)
      if (w.cutoffs.at(i, n) <= w.cutoffs.at(i, n - 1))
        return Verdict::reject(Clause::well_formed, "cutoffs must be strictly increasing", i);
  }
  if (!in_open_unit(w.beliefs.prior)) return Verdict::reject(Clause::well_formed, "prior outside (0,1)");
  for (std::size_t t = 0; t < T; ++t) {
    if (!in_open_unit(w.beliefs.beliefs[t]))
      return Verdict::reject(Clause::well_formed, "belief outside (0,1)", std::nullopt, t);
    if (!w.transitions[t].is_row_stochastic())
      return Verdict::reject(Clause::well_formed, "transition rows must be probability vectors", std::nullopt, t);
    if (!in_open_unit(w.experiments[t].given_x) || !in_open_unit(w.experiments[t].given_y))
      return Verdict::reject(Clause::well_formed, "signal likelihoods must lie in (0,1)", std::nullopt, t);
  }

  // (a) Bayes' rule
  Rational previous = w.beliefs.prior;
  for (std::size_t t = 0; t < T; ++t) {
    Rational expected = bayes_update(previous, w.transitions[t], w.experiments[t]);
    if (expected != w.beliefs.beliefs[t])
      return Verdict::reject(Clause::bayes,
                             "belief " + to_string(w.beliefs.beliefs[t]) + " but Bayes' rule gives " +
                                 to_string(expected),
                             std::nullopt, t);
    previous = w.beliefs.beliefs[t];
  }

  // (b) strict optimality of every observed choice
  for (std::size_t t = 0; t < T; ++t) {
    const Rational& p = w.beliefs.beliefs[t];
    for (std::size_t i = 0; i < I; ++i) {
      const Level l = data.level(i, t);
      if (!(w.cutoffs.lower(i, l) < p && p < w.cutoffs.upper(i, l)))
        return Verdict::reject(Clause::optimality,
                               "belief " + to_string(p) + " outside (" + to_string(w.cutoffs.lower(i, l)) + ", " +
                                   to_string(w.cutoffs.upper(i, l)) + ")",
                               i, t);
    }
  }

  // (c) utilities induce the claimed cutoffs
  for (std::size_t i = 0; i < I; ++i) {
    const auto& row = w.utilities.values[i];
    if (N == 2) {
      const auto& x = row[1];
      const auto& y = row[0];
      bool shape = x.in_x >= y.in_x && y.in_y >= x.in_y && (x.in_x > y.in_x || y.in_y > x.in_y);
      if (!shape) return Verdict::reject(Clause::utilities, "utilities must favour matching the state", i);
    }
    for (std::size_t n = 2; n <= N; ++n) {
      const auto& high = row[n - 1];
      const auto& low = row[n - 2];
      if ((high.in_x - low.in_x) - (high.in_y - low.in_y) <= 0)
        return Verdict::reject(Clause::utilities, "utility gain must increase with the belief", i);
      if (induced_threshold(high, low) != w.cutoffs.at(i, n))
        return Verdict::reject(Clause::utilities, "utilities induce a different cutoff", i);
    }
  }
  return Verdict::accept();
}

bool brute_force_rationalizable(const ChoiceDataset& data) {
  const auto I = data.agent_count();
  const auto T = data.period_count();
  const auto N = data.alternative_count();
  if (I > 6 || T > 6 || N > 4) throw SizeGuardError("brute force limited to I <= 6, T <= 6, N <= 4");
  const std::size_t per_agent = N - 1;
  const std::size_t R = I * per_agent;
  auto bit = [&](std::size_t agent, std::size_t n) { return std::uint32_t{1} << (agent * per_agent + (n - 2)); };

  // requires[s]: slots that must already sit below slot s when it is placed.
  std::vector<std::uint32_t> requires_below(R, 0);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t n = 3; n <= N; ++n) requires_below[i * per_agent + (n - 2)] |= bit(i, n - 1);
  for (std::size_t t = 0; t < T; ++t) {
    // Cutoffs bounding p_t from below must all sit under those bounding it from above.
    std::uint32_t lower = 0;
    for (std::size_t i = 0; i < I; ++i) {
      std::size_t n = data.level(i, t) + 1;
      if (n >= 2) lower |= bit(i, n);
    }
    for (std::size_t i = 0; i < I; ++i) {
      std::size_t n = data.level(i, t) + 2;
      if (n <= N) requires_below[i * per_agent + (n - 2)] |= lower;
    }
  }

  const std::uint32_t full = R == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << R) - 1;
  std::vector<char> seen(std::size_t{1} << R, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    auto placed = stack.back();
    stack.pop_back();
    if (placed == full) return true;
    for (std::size_t s = 0; s < R; ++s) {
      std::uint32_t b = std::uint32_t{1} << s;
      if ((placed & b) || (placed & requires_below[s]) != requires_below[s]) continue;
      auto next = placed | b;
      if (!seen[next]) {
        seen[next] = 1;
        stack.push_back(next);
      }
    }
  }
  return false;
}

} // namespace comlearn
