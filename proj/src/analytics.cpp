#include "comlearn/analytics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace comlearn {

namespace {

SubsampleAudit audit_subsample(const ChoiceDataset& data, const std::string& key, const std::string& value) {
  SubsampleAudit a{value, subsample(data, {key, value}), std::nullopt, std::nullopt, std::nullopt};
  a.cycle = find_cycle(a.data);
  if (!a.cycle) a.preorder = build_preorder(a.data);
  a.consecutive_cycle = find_consecutive_cycle(a.data);
  return a;
}

std::string describe(const ChoiceDataset& data, const CycleWitness& w) {
  return "agents " + data.agents()[w.agent_i] + " and " + data.agents()[w.agent_j] + " move in opposite directions between periods " +
         data.periods()[w.period_t1] + " and " + data.periods()[w.period_t2];
}

} // namespace

DiscriminationReport audit_discrimination(const ChoiceDataset& data, const std::string& key,
                                          const std::string& favored) {
  if (data.alternative_count() != 2) throw UnsupportedShape("discrimination audits need exactly two alternatives");
  std::set<std::string> values;
  for (std::size_t t = 0; t < data.period_count(); ++t) {
    const auto& record = data.covariates(t);
    auto it = record.find(key);
    if (it == record.end())
      throw SelectionError("period '" + data.periods()[t] + "' has no covariate '" + key + "'");
    values.insert(it->second);
  }
  if (values.size() != 2)
    throw SelectionError("covariate '" + key + "' must take exactly two values, found " + std::to_string(values.size()));
  if (!values.contains(favored)) throw SelectionError("covariate '" + key + "' never takes the value '" + favored + "'");
  const std::string other = *values.begin() == favored ? *values.rbegin() : *values.begin();

  DiscriminationReport r{.key = key,
                         .favored_value = favored,
                         .other_value = other,
                         .full_sample_cycle = find_cycle(data),
                         .favored = audit_subsample(data, key, favored),
                         .other = audit_subsample(data, key, other)};

  if (!r.full_sample_cycle) {
    r.caveat =
        "the pooled data are rationalizable: every agent may simply hold beliefs that respond to the covariate, "
        "so statistical discrimination cannot be rejected and no flag is raised";
  }

  if (r.favored.rationalizable() && !r.other.rationalizable()) {
    r.statistical_flag = true;
    r.statistical_explanation = "periods with " + key + "=" + favored + " are rationalizable but those with " + key +
                                "=" + other + " are not: " + describe(r.other.data, *r.other.cycle);
    r.comonotone_strengthening = r.other.consecutive_cycle.has_value();
    if (r.comonotone_strengthening)
      r.statistical_explanation += "; the cycle also occurs in adjacent periods (" +
                                   describe(r.other.data, *r.other.consecutive_cycle) +
                                   "), so co-monotone private signals cannot explain it either";
  } else if (r.favored.rationalizable()) {
    r.statistical_explanation = "both subsamples are rationalizable";
  } else {
    r.statistical_explanation = "the favored subsample itself is not rationalizable";
  }

  if (r.full_sample_cycle && r.favored.rationalizable() && r.other.rationalizable()) {
    const auto& fav = *r.favored.preorder;
    const auto& oth = *r.other.preorder;
    const auto I = data.agent_count();
    for (std::size_t i = 0; i < I && !r.taste_pair; ++i)
      for (std::size_t j = 0; j < I && !r.taste_pair; ++j)
        if (i != j && fav.weakly_above(i, j) && oth.strictly_above(j, i)) r.taste_pair = TastePair{i, j};
    r.taste_flag = r.taste_pair.has_value();
    if (r.taste_flag) {
      const auto& a = data.agents()[r.taste_pair->agent_i];
      const auto& b = data.agents()[r.taste_pair->agent_j];
      r.taste_explanation = "with " + key + "=" + favored + " the cutoff of " + a + " is at least that of " + b +
                            ", with " + key + "=" + other + " the cutoff of " + b + " is strictly higher";
    } else {
      r.taste_explanation = "the two subsamples rank the agents' cutoffs compatibly";
    }
  } else if (!r.full_sample_cycle) {
    r.taste_explanation = "the pooled data are rationalizable";
  } else {
    r.taste_explanation = "needs both subsamples rationalizable";
  }
  return r;
}

namespace {

using Assignment = std::vector<std::pair<std::size_t, Level>>;

Assignment resolve(const ChoiceDataset& data, const std::vector<std::pair<std::string, std::string>>& items) {
  Assignment out;
  for (const auto& [agent, alt] : items) {
    auto i = data.agent_index(agent);
    if (!i) throw SelectionError("unknown agent '" + agent + "'");
    auto l = data.level_of(alt);
    if (!l) throw SelectionError("unknown alternative '" + alt + "'");
    out.emplace_back(*i, *l);
  }
  return out;
}

bool satisfies(const std::vector<Level>& profile, const Assignment& fixed, const Assignment& any_of) {
  for (auto [i, l] : fixed)
    if (profile[i] != l) return false;
  if (any_of.empty()) return true;
  return std::any_of(any_of.begin(), any_of.end(), [&](auto c) { return profile[c.first] == c.second; });
}

// Declared order lists the highest level first.
bool declared_less(const std::vector<Level>& a, const std::vector<Level>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](Level p, Level q) { return p > q; });
}

Integer pow2(std::size_t n) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, n);
  return r;
}

// Admissible binary profiles obeying a conjunctive assignment.
Integer count_binary(const std::vector<std::vector<std::size_t>>& classes, const std::vector<std::size_t>& class_of,
                     const Assignment& fixed, std::size_t agents) {
  std::vector<int> forced(agents, -1);
  for (auto [i, l] : fixed) {
    if (forced[i] >= 0 && forced[i] != int(l)) return 0;
    forced[i] = int(l);
  }
  Integer total = 0;
  if (std::none_of(forced.begin(), forced.end(), [](int f) { return f == 1; })) total += 1;
  const auto K = classes.size();
  // x-choosers fill classes below k, part of k, nothing above
  for (std::size_t k = 0; k < K; ++k) {
    bool ok = true;
    std::size_t fixed_x = 0, free = 0;
    for (std::size_t i = 0; i < agents && ok; ++i) {
      if (class_of[i] < k) ok = forced[i] != 0;
      else if (class_of[i] > k) ok = forced[i] != 1;
      else if (forced[i] == 1) ++fixed_x;
      else if (forced[i] == -1) ++free;
    }
    if (!ok) continue;
    total += pow2(free) - (fixed_x == 0 ? 1 : 0);
  }
  return total;
}

Integer count_with(const std::vector<std::vector<std::size_t>>& classes, const std::vector<std::size_t>& class_of,
                   const Assignment& fixed, const Assignment& any_of, std::size_t agents) {
  Integer all = count_binary(classes, class_of, fixed, agents);
  if (any_of.empty()) return all;
  Assignment none = fixed;
  for (auto [i, l] : any_of) none.emplace_back(i, 1 - l);
  return all - count_binary(classes, class_of, none, agents);
}

bool comparable(std::span<const Level> a, const std::vector<Level>& b) {
  bool le = true, ge = true;
  for (std::size_t i = 0; i < b.size(); ++i) {
    le &= a[i] <= b[i];
    ge &= a[i] >= b[i];
  }
  return le || ge;
}

} // namespace

CounterfactualReport predict_counterfactuals(const ChoiceDataset& data, const CounterfactualConstraints& constraints) {
  const auto I = data.agent_count();
  const auto N = data.alternative_count();
  auto fixed = resolve(data, constraints.fixed);
  auto any_of = resolve(data, constraints.any_of);
  if (auto cycle = find_cycle(data)) throw CycleError("choice data has a cycle", *cycle);

  CounterfactualReport r;
  r.constraints = constraints;
  mpz_ui_pow_ui(r.total_possible.get_mpz_t(), N, I);

  if (N == 2) {
    auto order = build_preorder(data);
    r.classes = order.classes;
    if (I > 20) {
      r.enumerated = false;
      r.admissible_count = count_with(order.classes, order.class_of, fixed, any_of, I);
      return r;
    }
    std::vector<Level> p(I, 0);
    if (satisfies(p, fixed, any_of)) r.profiles.push_back(p);
    for (std::size_t k = 0; k < order.classes.size(); ++k) {
      const auto& members = order.classes[k];
      std::fill(p.begin(), p.end(), Level{0});
      for (std::size_t i = 0; i < I; ++i)
        if (order.class_of[i] < k) p[i] = 1;
      for (std::size_t mask = 1; mask < (std::size_t{1} << members.size()); ++mask) {
        for (std::size_t m = 0; m < members.size(); ++m) p[members[m]] = (mask >> m) & 1u;
        if (satisfies(p, fixed, any_of)) r.profiles.push_back(p);
      }
    }
    std::sort(r.profiles.begin(), r.profiles.end(), declared_less);
    r.admissible_count = static_cast<unsigned long>(r.profiles.size());
    return r;
  }

  if (N > 5 || I > 8) throw SizeGuardError("counterfactuals with more than two alternatives limited to N <= 5 and I <= 8");
  // Declared order: position 0 is the top level.
  std::vector<std::size_t> pos(I, 0);
  while (true) {
    std::vector<Level> p(I);
    for (std::size_t i = 0; i < I; ++i) p[i] = static_cast<Level>(N - 1 - pos[i]);
    bool ok = satisfies(p, fixed, any_of);
    for (std::size_t t = 0; t < data.period_count() && ok; ++t) ok = comparable(data.row(t), p);
    if (ok) r.profiles.push_back(std::move(p));
    std::size_t k = I;
    while (k > 0 && pos[k - 1] == N - 1) pos[--k] = 0;
    if (k == 0) break;
    ++pos[k - 1];
  }
  r.admissible_count = static_cast<unsigned long>(r.profiles.size());
  return r;
}

} // namespace comlearn
