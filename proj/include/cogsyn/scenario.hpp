#pragma once
// Declarative scenario files (JSON) and the engine that turns one into an
// EpisodeStore ready for analysis.
//
// Two scenario kinds:
//   episodic     one agent episode per listed seed; each tick's memory is
//                rebuilt from the event log (ctx:/act:/goal:/cog: nodes plus
//                an eff:<tag> node when a toy process acted on the previous
//                tick), snapshotted against the declared pattern catalog.
//   handcrafted  episodes given directly as states-shown-per-tick plus
//                explicit transitions; memories stay empty.
//
// Toy processes are rules from a tiny library: a process acts on the tick it
// observes `acts_when` and establishes effect tag `establishes` on the next
// tick. The transition a tick records is claimed by the first process whose
// trigger matched, otherwise it is exogenous.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cogsyn/agent.hpp"
#include "cogsyn/cpt.hpp"
#include "cogsyn/pgmc.hpp"
#include "cogsyn/stuckness.hpp"
#include "cogsyn/synergy.hpp"

namespace cogsyn {

struct ProcessSpec {
  std::string name;
  std::string acts_when;     // observation tag that triggers the process
  std::string establishes;   // effect tag shown on the following tick
  ResourceCost cost;
  Rational probability{1};
  Rational confidence{1};
};

// Annotation defaults for ticks no process claimed.
struct ExogenousSpec {
  Rational probability{1};
  Rational confidence{1};
  ResourceCost cost;
};

struct GoalDecl {
  std::string id;
  std::string pattern;  // declared pattern name (node type), not a key
  Rational weight{1};
};

struct HandStateSpec {
  int tick = 0;
  std::vector<std::string> shows;  // declared pattern names, degree 1 each
};

struct HandTransitionSpec {
  int from = 0;  // indices into the episode's state list
  int to = 0;
  std::string cause = kExogenousCause;
  Rational probability{1};
  Rational confidence{1};
  ResourceCost cost;
};

struct HandEpisodeSpec {
  std::string situation;
  std::vector<HandStateSpec> states;
  std::vector<HandTransitionSpec> transitions;
};

struct SynergyRequest {
  std::vector<std::string> processes;  // two or three names
  int cells = 10;
  bool midpoint = true;  // false = uniform weights
};

struct DiagramObjectSpec {
  std::string name;
  std::vector<std::string> states;  // pattern names; one profile per entry
};

struct DiagramMorphismSpec {
  std::string name;
  std::string from, to;
  // state-name pairs: source object's state -> target object's state
  std::vector<std::pair<std::string, std::string>> map;
};

struct DiagramRequest {
  std::string process_a;
  std::string process_b;
  std::vector<DiagramObjectSpec> objects;
  std::vector<DiagramMorphismSpec> morphisms;
  std::map<std::string, std::string> classes;  // pattern name -> class label
};

struct AnalysisRequest {
  bool metrics = true;
  std::vector<SynergyRequest> synergy;
  std::optional<MineOptions> mine;
  std::optional<DiagramRequest> diagrams;
};

struct Scenario {
  std::string name;
  bool episodic = true;

  // episodic fields
  std::uint64_t ticks = 0;
  std::vector<std::uint64_t> seeds;  // one episode per seed, in order
  Environment environment;
  Policy policy;
  std::vector<Cognit> cognits;
  std::vector<std::string> schedule;
  std::size_t memory_capacity = 1024;

  // handcrafted fields
  std::vector<HandEpisodeSpec> episodes;

  // shared
  std::vector<std::string> patterns;  // catalog node types, declared order
  std::vector<GoalDecl> goals;
  std::vector<ProcessSpec> processes;
  ExogenousSpec exogenous;
  RatInterval band{Rational(1, 2), Rational(1)};  // stuckness I_P
  Rational f_k{1};
  int future_ticks = 5;
  AnalysisRequest analyses;
};

// Parses a scenario document; malformed input raises Errc::bad_input with a
// message naming the offending field.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

// One single-node catalog pattern per declared name, declared order.
std::vector<CatalogPattern> scenario_catalog(const Scenario& sc);

// Goal declarations with pattern names resolved to catalog keys.
std::vector<GoalSpec> scenario_goals(const Scenario& sc);

// Profile key of a state showing exactly the named patterns at degree 1;
// matches the profiles build_store assigns to handcrafted states.
std::string profile_of_patterns(const std::vector<std::string>& names);

// Runs the episodes (or assembles the handcrafted ones) into a store with
// unit tick intervals. A seed override replaces episode i's seed with
// override + i, preserving the episode count; `jobs` parallelizes episode
// construction without changing the result.
EpisodeStore build_store(const Scenario& sc, std::optional<std::uint64_t> seed_override = {},
                         int jobs = 1);

// Per-sample stuckness detail: every declared process at every (situation,
// tick) sample point — each tick of each episode except the last, history
// I_S = [0, t0]. Candidates = the scenario catalog plus `extra` (mined).
struct MetricRow {
  std::string process;
  std::string situation;
  int tick = 0;
  Rational conf{0};
  Rational stuck{1};
  std::string argmax_key;
};

std::vector<MetricRow> scenario_metric_rows(const EpisodeStore& store, const Scenario& sc,
                                            const std::vector<CatalogPattern>& extra = {});

// Rows regrouped per (situation, tick) for the synergy index.
std::vector<StuckRecord> records_from_rows(const std::vector<MetricRow>& rows);

std::vector<StuckRecord> scenario_stuck_records(
    const EpisodeStore& store, const Scenario& sc,
    const std::vector<CatalogPattern>& extra = {});

}  // namespace cogsyn
