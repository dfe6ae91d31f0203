#include "cogsyn/cpt.hpp"

#include <algorithm>

#include "cogsyn/canonical.hpp"
#include "cogsyn/pattern.hpp"

namespace cogsyn {

std::string format_interval(const TickInterval& i) {
  return std::to_string(i.start) + ".." + std::to_string(i.end);
}

std::string pattern_key(const Hypergraph& body) {
  return "hp:" + fnv1a64_hex(canonical_form(body));
}

CatalogPattern make_catalog_pattern(Hypergraph body) {
  if (body.size() == 0) throw Error(Errc::bad_input, "empty pattern body");
  CatalogPattern p;
  p.key = pattern_key(body);
  p.body = std::move(body);
  return p;
}

CatalogPattern node_pattern(const std::string& type_name) {
  Hypergraph body;
  body.add_node(Label{type_name, {}});
  return make_catalog_pattern(std::move(body));
}

std::string state_profile_key(const SystemState& s) {
  std::string acc;
  for (const auto& [key, degree] : s.pattern_degrees) {
    if (degree == 0) continue;
    acc += key;
    acc += '=';
    acc += format_rational(degree);
    acc += ';';
  }
  return "st:" + fnv1a64_hex(acc);
}

static void check_degree(const Rational& d, const std::string& what) {
  if (d < 0 || d > 1) throw Error(Errc::bad_input, what + " outside [0,1]: " + format_rational(d));
}

void EpisodeStore::add(Episode episode) {
  if (episode.situation.empty()) throw Error(Errc::bad_input, "episode needs a situation id");
  if (situations_.count(episode.situation))
    throw Error(Errc::bad_input, "duplicate situation id '" + episode.situation + "'");
  std::set<std::string> state_ids;
  int last_tick = -1;
  for (const Snapshot& snap : episode.snapshots) {
    const SystemState& s = snap.state;
    if (s.id.empty()) throw Error(Errc::bad_input, "snapshot state needs an id");
    if (s.profile.empty())
      throw Error(Errc::bad_input, "snapshot state '" + s.id + "' has no profile");
    if (!state_ids.insert(s.id).second)
      throw Error(Errc::bad_input, "duplicate state id '" + s.id + "'");
    if (s.tick <= last_tick)
      throw Error(Errc::bad_input, "snapshot ticks must ascend in '" + episode.situation + "'");
    last_tick = s.tick;
    for (const auto& [key, degree] : s.pattern_degrees) check_degree(degree, "degree of " + key);
  }
  for (const Transition& t : episode.transitions) {
    if (!state_ids.count(t.from) || !state_ids.count(t.to))
      throw Error(Errc::bad_input,
                  "transition references unknown snapshot '" + t.from + "' -> '" + t.to + "'");
    if (t.cause.empty()) throw Error(Errc::bad_input, "transition needs a cause");
    check_degree(t.probability, "transition probability");
    check_degree(t.confidence, "transition confidence");
    if (t.resource_cost.space < 0 || t.resource_cost.time < 0)
      throw Error(Errc::bad_input, "negative transition resource cost");
    if (t.interval.start > t.interval.end)
      throw Error(Errc::bad_input, "transition interval runs backwards");
  }
  for (const Transition& t : episode.transitions) processes_.insert(t.cause);
  situations_.insert(episode.situation);
  episodes_.push_back(std::move(episode));
}

void EpisodeStore::register_process(const std::string& id) {
  if (id.empty()) throw Error(Errc::bad_input, "empty process id");
  processes_.insert(id);
}

const Episode& EpisodeStore::episode(const std::string& situation) const {
  for (const Episode& e : episodes_)
    if (e.situation == situation) return e;
  throw Error(Errc::bad_input, "unknown situation '" + situation + "'");
}

bool EpisodeStore::has_episode(const std::string& situation) const {
  return situations_.count(situation) != 0;
}

bool EpisodeStore::knows_process(const std::string& id) const {
  return processes_.count(id) != 0;
}

std::vector<std::string> EpisodeStore::processes() const {
  return {processes_.begin(), processes_.end()};
}

void EpisodeStore::annotate(const std::vector<CatalogPattern>& catalog) {
  for (Episode& ep : episodes_)
    for (Snapshot& snap : ep.snapshots)
      for (const CatalogPattern& p : catalog) {
        if (snap.state.pattern_degrees.count(p.key)) continue;
        snap.state.pattern_degrees[p.key] = match_cover_fraction(p.body, snap.memory);
      }
}

SystemState snapshot_state(const Hypergraph& memory, const std::vector<CatalogPattern>& catalog,
                           const std::string& id, int tick) {
  if (catalog.empty()) throw Error(Errc::bad_input, "empty pattern catalog");
  SystemState s;
  s.id = id;
  s.tick = tick;
  for (const CatalogPattern& p : catalog)
    s.pattern_degrees[p.key] = match_cover_fraction(p.body, memory);
  s.profile = state_profile_key(s);
  return s;
}

Rational pattern_degree_over(const Episode& ep, const std::string& key, const TickInterval& I) {
  Rational sum{0};
  int count = 0;
  for (const Snapshot& snap : ep.snapshots) {
    if (!I.contains(snap.state.tick)) continue;
    auto it = snap.state.pattern_degrees.find(key);
    if (it != snap.state.pattern_degrees.end()) sum += it->second;
    ++count;
  }
  if (count == 0) return Rational(0);
  return sum / count;
}

const Snapshot* snapshot_at(const Episode& ep, int tick) {
  for (const Snapshot& snap : ep.snapshots)
    if (snap.state.tick == tick) return &snap;
  return nullptr;
}

std::vector<Transition> meta_transitions(const EpisodeStore& store) {
  std::vector<Transition> out;
  for (const Episode& ep : store.episodes()) {
    std::map<std::string, std::string> profile_of;
    for (const Snapshot& snap : ep.snapshots) profile_of[snap.state.id] = snap.state.profile;
    for (Transition t : ep.transitions) {
      t.from = profile_of.at(t.from);
      t.to = profile_of.at(t.to);
      out.push_back(std::move(t));
    }
  }
  return out;
}

static AtomId state_node(CPTGraph& g, const std::string& profile) {
  auto it = g.state_nodes.find(profile);
  if (it != g.state_nodes.end()) return it->second;
  AtomId id = g.graph.add_node(Label{profile, {}});
  g.state_nodes.emplace(profile, id);
  return id;
}

static void add_transition_link(CPTGraph& g, const Transition& t) {
  AtomId from = state_node(g, t.from);
  AtomId to = state_node(g, t.to);
  Label label{t.cause,
              {t.probability, t.confidence, t.resource_cost.space, t.resource_cost.time}};
  g.graph.add_link({from, to}, std::move(label));
  g.transitions.push_back(t);
}

CPTGraph build_meta_graph(const EpisodeStore& store) {
  CPTGraph g;
  for (const Episode& ep : store.episodes())
    for (const Snapshot& snap : ep.snapshots) state_node(g, snap.state.profile);
  for (const Transition& t : meta_transitions(store)) add_transition_link(g, t);
  return g;
}

CPTGraph extract_cpt(const EpisodeStore& store, const std::string& process,
                     const std::vector<std::string>& situations, const TickInterval& window) {
  if (!store.knows_process(process))
    throw Error(Errc::bad_input, "unknown process '" + process + "'");
  std::set<std::string> wanted(situations.begin(), situations.end());
  for (const std::string& s : situations)
    if (!store.has_episode(s)) throw Error(Errc::bad_input, "unknown situation '" + s + "'");
  CPTGraph g;
  g.process = process;
  for (const Episode& ep : store.episodes()) {
    if (!wanted.empty() && !wanted.count(ep.situation)) continue;
    std::map<std::string, std::string> profile_of;
    for (const Snapshot& snap : ep.snapshots) profile_of[snap.state.id] = snap.state.profile;
    for (const Transition& t : ep.transitions) {
      if (t.cause != process) continue;
      if (t.interval.start < window.start || t.interval.end > window.end) continue;
      Transition meta = t;
      meta.from = profile_of.at(t.from);
      meta.to = profile_of.at(t.to);
      add_transition_link(g, meta);
    }
  }
  return g;
}

void resource_transfer(BudgetTable& budgets, const std::string& from, const std::string& to,
                       const ResourceCost& amount) {
  auto donor = budgets.find(from);
  auto recipient = budgets.find(to);
  if (donor == budgets.end()) throw Error(Errc::bad_input, "unknown budget '" + from + "'");
  if (recipient == budgets.end()) throw Error(Errc::bad_input, "unknown budget '" + to + "'");
  if (amount.space < 0 || amount.time < 0)
    throw Error(Errc::bad_input, "negative transfer amount");
  if (amount.space > donor->second.space || amount.time > donor->second.time)
    throw Error(Errc::insufficient_budget,
                "transfer of (" + format_rational(amount.space) + "," +
                    format_rational(amount.time) + ") exceeds '" + from + "'");
  donor->second.space -= amount.space;
  donor->second.time -= amount.time;
  recipient->second.space += amount.space;
  recipient->second.time += amount.time;
}

}  // namespace cogsyn
