#pragma once
// System states and cognitive-process transitions recorded into an
// append-only episode store. A state is a tick snapshot of which catalog
// h-patterns the memory displays and to what degree; a transition connects
// two states and names the cognitive process (or "exogenous") that caused
// it, annotated with (probability, confidence) and a resource cost.
//
// State identity across episodes is the degree-map fingerprint of the
// snapshot catalog ("profile"); later annotations may extend a state's
// degree map (e.g. with mined patterns) but never change its profile.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cogsyn/agent.hpp"
#include "cogsyn/hypergraph.hpp"
#include "cogsyn/rational.hpp"

namespace cogsyn {

// Inclusive tick interval [start, end].
struct TickInterval {
  int start = 0;
  int end = 0;
  bool contains(int t) const { return start <= t && t <= end; }
  int length() const { return end - start + 1; }
};

std::string format_interval(const TickInterval& i);  // "start..end"

// A catalog h-pattern: a non-empty pattern body plus its stable key
// "hp:<digest of the canonical form>".
struct CatalogPattern {
  std::string key;
  Hypergraph body;
};

std::string pattern_key(const Hypergraph& body);
CatalogPattern make_catalog_pattern(Hypergraph body);
// Single node of the given label type; the work-horse catalog entry.
CatalogPattern node_pattern(const std::string& type_name);

struct SystemState {
  std::string id;  // unique within its episode, e.g. "S0:t3"
  int tick = 0;
  std::map<std::string, Rational> pattern_degrees;  // pattern key -> [0,1]
  std::string profile;  // frozen fingerprint of the snapshot-time degrees
};

// Fingerprint of the degree map with zero entries dropped, so states built
// against different catalogs still agree when they display the same patterns.
std::string state_profile_key(const SystemState& s);

inline constexpr const char* kExogenousCause = "exogenous";

struct ResourceCost {
  Rational space{0};
  Rational time{0};
};

struct Transition {
  std::string from;  // state id (profile key in meta-level graphs)
  std::string to;
  std::string cause = kExogenousCause;
  Rational probability{1};
  Rational confidence{1};
  ResourceCost resource_cost;
  TickInterval interval;
};

// Snapshot = the state plus the memory hypergraph it was read from; the
// memory is kept so later pattern mining and annotation can re-match it.
struct Snapshot {
  SystemState state;
  Hypergraph memory;
};

struct Episode {
  std::string situation;  // unique id S
  std::uint64_t seed = 0;
  std::vector<Event> events;
  std::vector<Snapshot> snapshots;      // strictly ascending ticks
  std::vector<Transition> transitions;  // from/to reference snapshot state ids
};

class EpisodeStore {
 public:
  // Interval catalog the analyses default to (the recorded unit ticks,
  // usually); callers may extend it.
  std::vector<TickInterval> intervals;

  // Validates: fresh situation id, ascending ticks, unique state ids with
  // nonempty profiles, degrees/probability/confidence in [0,1], nonnegative
  // costs, ordered transition intervals, and that every transition
  // references stored snapshot ids. Causes are auto-registered.
  void add(Episode episode);
  void register_process(const std::string& id);

  const std::vector<Episode>& episodes() const { return episodes_; }
  const Episode& episode(const std::string& situation) const;
  bool has_episode(const std::string& situation) const;
  bool knows_process(const std::string& id) const;
  std::vector<std::string> processes() const;  // sorted

  // Computes and stores degrees for catalog keys missing from snapshots by
  // re-matching the kept memory graphs. Profiles are left untouched.
  void annotate(const std::vector<CatalogPattern>& catalog);

 private:
  std::vector<Episode> episodes_;
  std::set<std::string> processes_;
  std::set<std::string> situations_;
};

// Degree per catalog pattern: 1 when the body fully matches the memory,
// else the largest target-closed partial cover fraction. Also freezes the
// state's profile. Empty catalog is rejected.
SystemState snapshot_state(const Hypergraph& memory, const std::vector<CatalogPattern>& catalog,
                           const std::string& id, int tick);

// P(S, I): mean snapshot degree of the pattern over the episode's ticks in
// I; 0 when no snapshot tick falls inside I.
Rational pattern_degree_over(const Episode& ep, const std::string& key, const TickInterval& I);

// Snapshot at an exact tick; nullptr when the episode has none there.
const Snapshot* snapshot_at(const Episode& ep, int tick);

// CPT graph: nodes are states labeled by profile key, links are transitions
// typed by their cause with weights [probability, confidence, space, time].
struct CPTGraph {
  std::string process;  // "" for the all-cause meta graph
  Hypergraph graph;
  std::map<std::string, AtomId> state_nodes;  // profile key -> node id
  std::vector<Transition> transitions;        // meta-level (profile endpoints)
};

// Every recorded transition rewritten to profile-key endpoints, store order.
std::vector<Transition> meta_transitions(const EpisodeStore& store);

// The meta-system: every recorded state profile once (transitions or not),
// every recorded transition as a link.
CPTGraph build_meta_graph(const EpisodeStore& store);

// Transitions caused by `process` whose interval lies within `window`,
// restricted to `situations` (empty = all). Unknown process or situation is
// an error; a known process that never acted yields an empty graph.
CPTGraph extract_cpt(const EpisodeStore& store, const std::string& process,
                     const std::vector<std::string>& situations, const TickInterval& window);

// I_R: componentwise closed windows; an absent component is unconstrained.
struct ResourceWindow {
  std::optional<RatInterval> space;
  std::optional<RatInterval> time;
  bool contains(const ResourceCost& c) const {
    return (!space || space->contains(c.space)) && (!time || time->contains(c.time));
  }
};

struct ResourceBudget {
  Rational space{0};
  Rational time{0};
  ResourceWindow window;  // I_R for conditional efficacy queries
};

using BudgetTable = std::map<std::string, ResourceBudget>;

// Moves `amount` componentwise from -> to. The componentwise sum over the
// table is conserved; overdraft and negative amounts are rejected.
void resource_transfer(BudgetTable& budgets, const std::string& from, const std::string& to,
                       const ResourceCost& amount);

}  // namespace cogsyn
