#include "cogsyn/stuckness.hpp"

#include <algorithm>

#include "cogsyn/canonical.hpp"

namespace cogsyn {

Rational evidence_scale(const Rational& x, const Rational& k) {
  if (x < 0) throw Error(Errc::bad_input, "negative evidence mass");
  if (k <= 0) throw Error(Errc::bad_input, "evidence scale needs k > 0");
  return x / (x + k);
}

Rational goal_achievement(const Episode& ep, const TickInterval& I,
                          const std::vector<GoalSpec>& goals) {
  if (goals.empty()) throw Error(Errc::no_goals, "goal_achievement needs at least one goal");
  Rational weight_sum{0};
  for (const GoalSpec& g : goals) {
    if (g.weight < 0) throw Error(Errc::bad_input, "negative goal weight for '" + g.id + "'");
    weight_sum += g.weight;
  }
  if (weight_sum == 0) throw Error(Errc::bad_input, "all goal weights are zero");
  Rational acc{0};
  for (const GoalSpec& g : goals) {
    Rational degree = pattern_degree_over(ep, g.pattern, I);
    acc += g.weight * degree;
  }
  return acc / weight_sum;
}

GStat g_global(const EpisodeStore& store, const std::string& pattern_key,
               const std::vector<GoalSpec>& goals, const std::vector<TickInterval>& catalog,
               const Rational& f_k) {
  if (goals.empty()) throw Error(Errc::no_goals, "g_global needs at least one goal");
  Rational num{0}, den{0};
  for (const Episode& ep : store.episodes())
    for (const TickInterval& I : catalog) {
      Rational p = pattern_degree_over(ep, pattern_key, I);
      if (p == 0) continue;
      num += goal_achievement(ep, I, goals) * p;
      den += p;
    }
  GStat out;
  out.evidence_mass = den;
  out.confidence = evidence_scale(den, f_k);
  if (den != 0) out.value = num / den;
  return out;
}

std::vector<const Episode*> continuations(const EpisodeStore& store, const std::string& situation,
                                          int t0) {
  const Episode& base = store.episode(situation);
  std::vector<std::pair<int, std::string>> prefix;  // (tick, profile) up to t0
  for (const Snapshot& snap : base.snapshots)
    if (snap.state.tick <= t0) prefix.emplace_back(snap.state.tick, snap.state.profile);
  std::vector<const Episode*> out;
  for (const Episode& ep : store.episodes()) {
    std::vector<std::pair<int, std::string>> other;
    for (const Snapshot& snap : ep.snapshots)
      if (snap.state.tick <= t0) other.emplace_back(snap.state.tick, snap.state.profile);
    if (other == prefix) out.push_back(&ep);
  }
  return out;
}

std::vector<TickInterval> unit_future(int t0, int k) {
  std::vector<TickInterval> out;
  for (int i = 1; i <= k; ++i) out.push_back({t0 + i, t0 + i});
  return out;
}

GStat g_conditional(const EpisodeStore& store, const std::string& pattern_key,
                    const std::vector<GoalSpec>& goals, const std::string& situation,
                    const TickInterval& i_s, std::vector<TickInterval> future,
                    const Rational& f_k) {
  if (goals.empty()) throw Error(Errc::no_goals, "g_conditional needs at least one goal");
  int t0 = i_s.end;
  if (future.empty()) future = unit_future(t0);
  std::vector<const Episode*> conts = continuations(store, situation, t0);
  GStat out;
  if (conts.empty()) {
    out.confidence = evidence_scale(Rational(0), f_k);
    return out;
  }
  Rational weight{1};
  weight /= static_cast<int>(conts.size());
  Rational num{0}, den{0};
  for (const Episode* ep : conts)
    for (const TickInterval& I : future) {
      Rational p = pattern_degree_over(*ep, pattern_key, I);
      if (p == 0) continue;
      num += goal_achievement(*ep, I, goals) * p * weight;
      den += p * weight;
    }
  out.evidence_mass = den;
  out.confidence = evidence_scale(den, f_k);
  if (den != 0) out.value = num / den;
  return out;
}

Rational confidence_of_g(const EpisodeStore& store, const std::string& pattern_key,
                         const std::vector<GoalSpec>& goals, const std::string& situation,
                         const TickInterval& i_s, std::vector<TickInterval> future,
                         const Rational& f_k) {
  return g_conditional(store, pattern_key, goals, situation, i_s, std::move(future), f_k)
      .confidence;
}

EStat action_efficacy(const EpisodeStore& store, const std::string& process,
                      const ResourceWindow& budget, const std::string& situation,
                      const TickInterval& i_s, const std::string& pattern_key,
                      const TickInterval& outcome, const RatInterval& band,
                      const Rational& f_k) {
  if (outcome.start <= i_s.end)
    throw Error(Errc::bad_input, "efficacy outcome interval must start after the situation");
  const Episode& base = store.episode(situation);
  const Snapshot* here = snapshot_at(base, i_s.end);
  if (here == nullptr)
    throw Error(Errc::bad_input, "situation '" + situation + "' has no snapshot at tick " +
                                     std::to_string(i_s.end));
  const std::string& profile = here->state.profile;
  EStat out;
  for (const Episode& ep : store.episodes()) {
    std::map<std::string, const Snapshot*> by_id;
    for (const Snapshot& snap : ep.snapshots) by_id[snap.state.id] = &snap;
    for (const Transition& t : ep.transitions) {
      if (t.cause != process) continue;
      if (by_id.at(t.from)->state.profile != profile) continue;
      if (!budget.contains(t.resource_cost)) continue;
      ++out.trials;
      if (band.contains(pattern_degree_over(ep, pattern_key, outcome))) ++out.hits;
    }
  }
  out.confidence = evidence_scale(Rational(out.trials), f_k);
  if (out.trials > 0) out.value = Rational(out.hits, out.trials);
  return out;
}

StuckResult conf_and_stuckness(const EpisodeStore& store, const std::string& process,
                               const std::string& situation, const TickInterval& i_s,
                               const std::vector<CatalogPattern>& candidates,
                               const std::vector<GoalSpec>& goals, const StuckParams& params) {
  StuckResult out;
  if (candidates.empty()) {
    out.no_candidates = true;
    out.conf = 0;
    out.stuck = 1;
    return out;
  }
  int t0 = i_s.end;
  std::vector<TickInterval> future =
      params.future.empty() ? unit_future(t0) : params.future;
  TickInterval outcome;
  if (params.outcome) {
    outcome = *params.outcome;
  } else {
    outcome = {t0 + 1, t0 + 1};
    for (const TickInterval& I : future) outcome.end = std::max(outcome.end, I.end);
  }
  bool have_best = false;
  std::string best_canon;
  for (const CatalogPattern& cand : candidates) {
    GStat g = g_conditional(store, cand.key, goals, situation, i_s, future, params.f_k);
    EStat e = action_efficacy(store, process, params.budget, situation, i_s, cand.key, outcome,
                              params.band, params.f_k);
    Rational g_value = g.value.value_or(Rational(0));
    Rational e_value = e.value.value_or(Rational(0));
    Rational product = g_value * g.confidence * e_value * e.confidence;
    std::string canon = canonical_form(cand.body);
    bool better = !have_best || product > out.conf ||
                  (product == out.conf && canon < best_canon);
    if (better) {
      have_best = true;
      out.conf = product;
      out.argmax_key = cand.key;
      out.argmax_factors = {g_value, g.confidence, e_value, e.confidence};
      best_canon = canon;
    }
  }
  out.stuck = Rational(1) - out.conf;
  return out;
}

}  // namespace cogsyn
