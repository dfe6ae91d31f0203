#pragma once
// The goal-achievement / stuckness formula stack over an EpisodeStore:
//   g(S,I)       weighted mean goal achievement over an interval,
//   g(P)         degree to which displaying pattern P implies achievement,
//   g_{S,I_S}(P) the conditional variant over stored continuations of (S,t),
//   c            evidence confidence f(mass) with f(x) = x/(x+k),
//   e, c_e       action efficacy of a process and its confidence,
//   conf, stuck  max four-factor product over candidate patterns and its
//                complement.
//
// Situations are seeded episodes; Prob((S',I) | (S,t)) is the empirical
// frequency over stored episodes whose per-tick profiles equal S's up to t.

#include <optional>
#include <string>
#include <vector>

#include "cogsyn/cpt.hpp"

namespace cogsyn {

struct GoalSpec {
  std::string id;
  std::string pattern;  // catalog pattern key; the goal's degree at a state
                        // is that pattern's degree there
  Rational weight{1};
};

// f(x) = x / (x + k): monotone evidence scaling onto [0, 1).
Rational evidence_scale(const Rational& x, const Rational& k = Rational(1));

// g(S, I): weighted mean over goals of the mean pattern degree over the
// episode's ticks in I (0 when no tick falls in I).
Rational goal_achievement(const Episode& ep, const TickInterval& I,
                          const std::vector<GoalSpec>& goals);

struct GStat {
  std::optional<Rational> value;  // null when the weighting mass is zero
  Rational confidence{0};
  Rational evidence_mass{0};
};

// g(P) = sum g(S,I) P(S,I) / sum P(S,I) over every stored episode paired
// with every interval in the catalog.
GStat g_global(const EpisodeStore& store, const std::string& pattern_key,
               const std::vector<GoalSpec>& goals, const std::vector<TickInterval>& catalog,
               const Rational& f_k = Rational(1));

// Episodes whose snapshot ticks and profiles equal the situation's up to and
// including t0 (the situation itself is one of them).
std::vector<const Episode*> continuations(const EpisodeStore& store, const std::string& situation,
                                          int t0);

// Default near-future window: the next k unit intervals after t0.
std::vector<TickInterval> unit_future(int t0, int k = 5);

// Conditional g over stored continuations of (S, end of i_s), each weighted
// 1/N; confidence = f(evidence mass). Empty `future` means unit_future.
GStat g_conditional(const EpisodeStore& store, const std::string& pattern_key,
                    const std::vector<GoalSpec>& goals, const std::string& situation,
                    const TickInterval& i_s, std::vector<TickInterval> future = {},
                    const Rational& f_k = Rational(1));

// The confidence leg of g_conditional on its own.
Rational confidence_of_g(const EpisodeStore& store, const std::string& pattern_key,
                         const std::vector<GoalSpec>& goals, const std::string& situation,
                         const TickInterval& i_s, std::vector<TickInterval> future = {},
                         const Rational& f_k = Rational(1));

struct EStat {
  std::optional<Rational> value;  // null when no qualifying trial exists
  Rational confidence{0};
  int trials = 0;
  int hits = 0;
};

// e: over stored transitions where `process` acted from a state whose
// profile equals (situation, end of i_s)'s with resource cost inside
// `budget`, the frequency that the acting episode's P(., outcome) lands in
// `band`. Confidence = f(trial count). `outcome` must start after i_s ends.
EStat action_efficacy(const EpisodeStore& store, const std::string& process,
                      const ResourceWindow& budget, const std::string& situation,
                      const TickInterval& i_s, const std::string& pattern_key,
                      const TickInterval& outcome, const RatInterval& band,
                      const Rational& f_k = Rational(1));

struct StuckParams {
  std::vector<TickInterval> future;     // empty -> unit_future(t0)
  ResourceWindow budget;                // I_R; default unconstrained
  std::optional<TickInterval> outcome;  // I for efficacy; default spans `future`
  RatInterval band{Rational(1, 2), Rational(1)};  // I_P
  Rational f_k{1};
};

struct FactorBreakdown {
  Rational g_value{0};
  Rational g_conf{0};
  Rational e_value{0};
  Rational e_conf{0};
};

struct StuckResult {
  Rational conf{0};
  Rational stuck{1};  // always exactly 1 - conf
  std::string argmax_key;
  bool no_candidates = false;
  FactorBreakdown argmax_factors;
};

// conf = max over candidates of g * c_g * e * c_e with null factors as 0;
// ties broken by the lexicographically least canonical form of the body.
StuckResult conf_and_stuckness(const EpisodeStore& store, const std::string& process,
                               const std::string& situation, const TickInterval& i_s,
                               const std::vector<CatalogPattern>& candidates,
                               const std::vector<GoalSpec>& goals,
                               const StuckParams& params = {});

}  // namespace cogsyn
