#include "comlearn/serialize.hpp"

#include <stdexcept>

namespace comlearn {

namespace {

Json rational_list(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Json labels(const ChoiceDataset& data, const std::vector<std::size_t>& agents) {
  Json out = Json::array();
  for (auto i : agents) out.push_back(data.agents()[i]);
  return out;
}

Json transition_json(const Transition& g) {
  return Json{{"x_to_x", to_string(g.x_to_x)},
              {"x_to_y", to_string(g.x_to_y)},
              {"y_to_x", to_string(g.y_to_x)},
              {"y_to_y", to_string(g.y_to_y)}};
}

Json optional_index(const std::vector<std::string>& names, std::optional<std::size_t> i) {
  return i ? Json(names[*i]) : Json(nullptr);
}

[[noreturn]] void bad(const std::string& what) {
  throw ParseError(ParseError::Kind::bad_document, 0, 0, "witness: " + what);
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) bad(std::string("missing field '") + name + "'");
  return doc.at(name);
}

Rational rational_of(const Json& v) {
  if (!v.is_string()) bad("rationals must be \"n/d\" strings");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    bad("cannot read rational '" + v.get<std::string>() + "'");
  }
}

std::vector<Rational> rationals_of(const Json& v, std::size_t expected) {
  if (!v.is_array() || v.size() != expected) bad("expected a list of " + std::to_string(expected) + " rationals");
  std::vector<Rational> out;
  for (const auto& e : v) out.push_back(rational_of(e));
  return out;
}

Transition transition_of(const Json& v) {
  return {rational_of(field(v, "x_to_x")), rational_of(field(v, "x_to_y")), rational_of(field(v, "y_to_x")),
          rational_of(field(v, "y_to_y"))};
}

void check_labels(const Json& v, const std::vector<std::string>& expected, const char* what) {
  if (!v.is_array() || v.size() != expected.size()) bad(std::string(what) + " do not match the dataset");
  for (std::size_t k = 0; k < expected.size(); ++k)
    if (!v[k].is_string() || v[k].get<std::string>() != expected[k])
      bad(std::string(what) + " do not match the dataset");
}

void check_periods(const Json& periods, const ChoiceDataset& data) {
  if (!periods.is_array() || periods.size() != data.period_count()) bad("one entry per period expected");
  for (std::size_t t = 0; t < data.period_count(); ++t) {
    const auto& label = field(periods[t], "period");
    if (!label.is_string() || label.get<std::string>() != data.periods()[t]) bad("period labels do not match the dataset");
  }
}

} // namespace

Json to_json(const ChoiceDataset& data, const CycleWitness& c) {
  const auto& a = data.agents();
  const auto& p = data.periods();
  Json choices;
  choices[a[c.agent_i]] = Json::array({data.choice(c.agent_i, c.period_t1), data.choice(c.agent_i, c.period_t2)});
  choices[a[c.agent_j]] = Json::array({data.choice(c.agent_j, c.period_t1), data.choice(c.agent_j, c.period_t2)});
  return Json{{"kind", c.kind == CycleKind::consecutive ? "consecutive" : "general"},
              {"agent_i", a[c.agent_i]},
              {"agent_j", a[c.agent_j]},
              {"period_t1", p[c.period_t1]},
              {"period_t2", p[c.period_t2]},
              {"choices", choices}};
}

Json to_json(const ChoiceDataset& data, const RationalizationWitness& w) {
  const auto I = data.agent_count();
  const auto N = data.alternative_count();
  Json cutoffs = Json::array(), utilities = Json::array();
  for (std::size_t i = 0; i < I; ++i) {
    cutoffs.push_back(rational_list(w.cutoffs.row(i)));
    Json u;
    for (std::size_t k = 0; k < N; ++k) {
      const auto& e = w.utilities.values[i][N - 1 - k];
      u[data.alternatives()[k]] = Json{{"in_x", to_string(e.in_x)}, {"in_y", to_string(e.in_y)}};
    }
    utilities.push_back(u);
  }
  Json periods = Json::array();
  for (std::size_t t = 0; t < data.period_count(); ++t)
    periods.push_back(Json{{"period", data.periods()[t]},
                           {"transition", transition_json(w.transitions[t])},
                           {"signal",
                            {{"given_x", to_string(w.experiments[t].given_x)},
                             {"given_y", to_string(w.experiments[t].given_y)}}},
                           {"belief", to_string(w.beliefs.beliefs[t])}});
  return Json{{"model", "common-belief"},
              {"agents", data.agents()},
              {"alternatives", data.alternatives()},
              {"time_invariant", w.time_invariant()},
              {"cutoffs", cutoffs},
              {"utilities", utilities},
              {"prior", to_string(w.beliefs.prior)},
              {"periods", periods}};
}

RationalizationWitness witness_from_json(const ChoiceDataset& data, const Json& doc) {
  const auto I = data.agent_count();
  const auto N = data.alternative_count();
  if (!field(doc, "model").is_string() || doc["model"] != "common-belief") bad("model must be \"common-belief\"");
  check_labels(field(doc, "agents"), data.agents(), "agents");
  check_labels(field(doc, "alternatives"), data.alternatives(), "alternatives");
  RationalizationWitness w;
  w.cutoffs = CutoffProfile(I, N);
  const auto& cutoffs = field(doc, "cutoffs");
  const auto& utilities = field(doc, "utilities");
  if (!cutoffs.is_array() || cutoffs.size() != I || !utilities.is_array() || utilities.size() != I)
    bad("one cutoff row and one utility table per agent expected");
  w.utilities.values.assign(I, std::vector<UtilityTable::Entry>(N));
  for (std::size_t i = 0; i < I; ++i) {
    auto row = rationals_of(cutoffs[i], N + 1);
    for (std::size_t n = 1; n <= N + 1; ++n) w.cutoffs.at(i, n) = row[n - 1];
    for (std::size_t k = 0; k < N; ++k) {
      const auto& e = field(utilities[i], data.alternatives()[k].c_str());
      w.utilities.values[i][N - 1 - k] = {rational_of(field(e, "in_x")), rational_of(field(e, "in_y"))};
    }
  }
  w.beliefs.prior = rational_of(field(doc, "prior"));
  const auto& periods = field(doc, "periods");
  check_periods(periods, data);
  for (const auto& p : periods) {
    w.transitions.push_back(transition_of(field(p, "transition")));
    const auto& s = field(p, "signal");
    w.experiments.push_back({rational_of(field(s, "given_x")), rational_of(field(s, "given_y"))});
    w.beliefs.beliefs.push_back(rational_of(field(p, "belief")));
  }
  return w;
}

namespace {

Json marginal_json(const MarginalPair& m) {
  return Json{{"given_x", rational_list(m.given_x)}, {"given_y", rational_list(m.given_y)}};
}

MarginalPair marginal_of(const Json& v, std::size_t I) {
  return {rationals_of(field(v, "given_x"), I), rationals_of(field(v, "given_y"), I)};
}

} // namespace

Json to_json(const ChoiceDataset& data, const ComonotoneWitness& w, bool enumerate_joint) {
  const auto I = data.agent_count();
  Json periods = Json::array();
  for (std::size_t t = 0; t < w.periods.size(); ++t) {
    const auto& p = w.periods[t];
    Json entry{{"period", data.periods()[t]}, {"transition", transition_json(p.transition)}};
    if (p.reset_belief) entry["reset_belief"] = to_string(*p.reset_belief);
    entry["pre_signal"] = rational_list(p.pre_signal);
    entry["posterior"] = rational_list(p.posterior);
    if (p.experiment) {
      const auto& e = *p.experiment;
      Json realized = Json::array();
      for (std::size_t i = 0; i < I; ++i) realized.push_back(e.realized_signal(i));
      Json ex{{"epsilon", to_string(e.epsilon())},
              {"marginals", marginal_json(e.marginals())},
              {"adjusted", marginal_json(e.adjusted())},
              {"realized_signals", realized}};
      if (enumerate_joint) {
        if (I > 6) throw SizeGuardError("joint enumeration limited to 6 agents");
        Json joint = Json::array();
        for (const auto& profile : e.support())
          joint.push_back(Json{{"signals", profile},
                               {"in_x", to_string(e.probability(profile, true))},
                               {"in_y", to_string(e.probability(profile, false))}});
        ex["joint"] = joint;
      }
      entry["experiment"] = ex;
    } else {
      entry["experiment"] = nullptr;
    }
    periods.push_back(entry);
  }
  return Json{{"model", "co-monotone"},
              {"variant", w.variant == StateVariant::time_invariant ? "time-invariant" : "time-varying"},
              {"strength", w.strength == Strength::strict ? "strict" : "weak"},
              {"agents", data.agents()},
              {"cutoffs", rational_list(w.cutoffs)},
              {"prior", to_string(w.prior)},
              {"periods", periods}};
}

ComonotoneWitness comonotone_witness_from_json(const ChoiceDataset& data, const Json& doc) {
  const auto I = data.agent_count();
  if (!field(doc, "model").is_string() || doc["model"] != "co-monotone") bad("model must be \"co-monotone\"");
  check_labels(field(doc, "agents"), data.agents(), "agents");
  ComonotoneWitness w;
  const auto& variant = field(doc, "variant");
  if (variant == "time-invariant") w.variant = StateVariant::time_invariant;
  else if (variant == "time-varying") w.variant = StateVariant::time_varying;
  else bad("variant must be \"time-invariant\" or \"time-varying\"");
  const auto& strength = field(doc, "strength");
  if (strength == "strict") w.strength = Strength::strict;
  else if (strength == "weak") w.strength = Strength::weak;
  else bad("strength must be \"strict\" or \"weak\"");
  w.cutoffs = rationals_of(field(doc, "cutoffs"), I);
  w.prior = rational_of(field(doc, "prior"));
  const auto& periods = field(doc, "periods");
  check_periods(periods, data);
  for (const auto& p : periods) {
    ComonotonePeriod period;
    period.transition = transition_of(field(p, "transition"));
    if (p.contains("reset_belief")) period.reset_belief = rational_of(p["reset_belief"]);
    period.pre_signal = rationals_of(field(p, "pre_signal"), I);
    period.posterior = rationals_of(field(p, "posterior"), I);
    const auto& e = field(p, "experiment");
    if (!e.is_null()) {
      const auto& realized = field(e, "realized_signals");
      if (!realized.is_array() || realized.size() != I) bad("one realized signal per agent expected");
      for (std::size_t i = 0; i < I; ++i)
        if (!realized[i].is_number_unsigned() || realized[i].get<std::size_t>() != i + 1)
          bad("agent " + std::to_string(i + 1) + " must observe signal " + std::to_string(i + 1));
      period.experiment.emplace(rational_of(field(e, "epsilon")), marginal_of(field(e, "marginals"), I),
                                marginal_of(field(e, "adjusted"), I));
    }
    w.periods.push_back(std::move(period));
  }
  return w;
}

Json to_json(const ChoiceDataset& data, const PermutationAssignment& kappa) {
  Json maps;
  const auto N = data.alternative_count();
  for (std::size_t i = 0; i < kappa.agent_count(); ++i) {
    Json m;
    for (std::size_t k = 0; k < N; ++k) {
      Level from = static_cast<Level>(N - 1 - k);
      m[data.alternatives()[k]] = data.label_of(kappa.maps()[i][from]);
    }
    maps[data.agents()[i]] = m;
  }
  Json out{{"relabeling", maps}};
  if (N == 2) {
    Json flipped = Json::array();
    auto flips = kappa.flips();
    for (std::size_t i = 0; i < flips.size(); ++i)
      if (flips[i]) flipped.push_back(data.agents()[i]);
    out["flipped"] = flipped;
  }
  return out;
}

Json to_json(const ChoiceDataset& data, const BlockedCombination& b) {
  const auto& a = data.agents();
  Json flipped = Json::array();
  if (b.flip_i) flipped.push_back(a[b.agent_i]);
  if (b.flip_j) flipped.push_back(a[b.agent_j]);
  std::vector<bool> flips(data.agent_count(), false);
  flips[b.agent_i] = b.flip_i;
  flips[b.agent_j] = b.flip_j;
  auto permuted = apply_permutation(data, PermutationAssignment::from_flips(flips));
  return Json{{"pair", Json::array({a[b.agent_i], a[b.agent_j]})},
              {"flipped", flipped},
              {"cycle", to_json(permuted, b.cycle)}};
}

namespace {

Json subsample_json(const ChoiceDataset& full, const SubsampleAudit& s) {
  Json out{{"value", s.value}, {"periods", s.data.periods()}};
  out["verdict"] = s.rationalizable() ? "rationalizable" : "cycle";
  if (s.cycle) out["cycle"] = to_json(s.data, *s.cycle);
  if (s.preorder) {
    Json classes = Json::array();
    for (const auto& c : s.preorder->classes) classes.push_back(labels(full, c));
    out["cutoff_order"] = classes;
  }
  out["consecutive_cycle"] = s.consecutive_cycle ? to_json(s.data, *s.consecutive_cycle) : Json(nullptr);
  return out;
}

} // namespace

Json to_json(const DiscriminationReport& r) {
  const auto& data = r.favored.data;
  Json full{{"verdict", r.full_sample_cycle ? "cycle" : "rationalizable"}};
  Json out{{"key", r.key}, {"favored", r.favored_value}, {"other", r.other_value}};
  Json subsamples = Json::array({subsample_json(data, r.favored), subsample_json(data, r.other)});
  Json taste{{"value", r.taste_flag}};
  if (r.taste_pair)
    taste["pair"] = Json::array({data.agents()[r.taste_pair->agent_i], data.agents()[r.taste_pair->agent_j]});
  taste["explanation"] = r.taste_explanation;
  out["full_sample"] = full;
  out["subsamples"] = subsamples;
  out["statistical_flag"] = Json{{"value", r.statistical_flag}, {"explanation", r.statistical_explanation}};
  out["comonotone_strengthening"] = r.comonotone_strengthening;
  out["taste_flag"] = taste;
  out["caveat"] = r.caveat ? Json(*r.caveat) : Json(nullptr);
  return out;
}

Json to_json(const ChoiceDataset& data, const CounterfactualReport& r) {
  Json profiles = Json::array();
  for (const auto& p : r.profiles) {
    Json row = Json::array();
    for (auto l : p) row.push_back(data.label_of(l));
    profiles.push_back(row);
  }
  Json fixed, any_of = Json::array();
  for (const auto& [a, alt] : r.constraints.fixed) fixed[a] = alt;
  for (const auto& [a, alt] : r.constraints.any_of) any_of.push_back(Json{{a, alt}});
  Json out{{"profile_agents", data.agents()},
           {"total_possible", r.total_possible.get_str()},
           {"admissible_count", r.admissible_count.get_str()},
           {"enumerated", r.enumerated},
           {"profiles", profiles}};
  if (!r.classes.empty()) {
    Json classes = Json::array();
    for (const auto& c : r.classes) classes.push_back(labels(data, c));
    out["cutoff_order"] = classes;
  }
  out["constraints"] = Json{{"fixed", fixed.is_null() ? Json::object() : fixed}, {"any_of", any_of}};
  return out;
}

Json to_json(const ChoiceDataset& data, const Verdict& v) {
  return Json{{"accepted", v.accepted},
              {"clause", to_string(v.clause)},
              {"agent", optional_index(data.agents(), v.agent)},
              {"period", optional_index(data.periods(), v.period)},
              {"detail", v.detail}};
}

Json to_json(const ChoiceDataset& data, const ComonotoneVerdict& v) {
  return Json{{"accepted", v.accepted},
              {"clause", to_string(v.clause)},
              {"agent", optional_index(data.agents(), v.agent)},
              {"period", optional_index(data.periods(), v.period)},
              {"detail", v.detail}};
}

} // namespace comlearn
