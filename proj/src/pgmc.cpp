#include "cogsyn/pgmc.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cogsyn/canonical.hpp"
#include "cogsyn/pattern.hpp"
#include "cogsyn/rng.hpp"

namespace cogsyn {

namespace {

bool substrate_only(const Hypergraph& body) {
  // Linkless bodies made of variables alone match almost anything and carry
  // no information; they are kept for growth but never reported.
  if (body.link_count() != 0) return false;
  for (const Atom& a : body.atoms())
    if (body.label_type(a.id) != kVariableType) return false;
  return true;
}

int support_count(const Hypergraph& body, const std::vector<const Hypergraph*>& snaps) {
  HPattern pat = HPattern::atomic(body);
  int n = 0;
  for (const Hypergraph* g : snaps)
    if (!match_pattern(pat, *g).empty()) ++n;
  return n;
}

// All arity-length target tuples over the body's nodes, lexicographic.
void target_tuples(const std::vector<AtomId>& nodes, std::size_t arity,
                   std::vector<AtomId>& current, std::vector<std::vector<AtomId>>& out) {
  if (current.size() == arity) {
    out.push_back(current);
    return;
  }
  for (AtomId n : nodes) {
    current.push_back(n);
    target_tuples(nodes, arity, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<MinedPattern> mine_history_patterns(const EpisodeStore& store,
                                                const MineOptions& opts) {
  if (opts.max_atoms < 1) throw Error(Errc::bad_input, "max_atoms must be at least 1");
  std::vector<const Hypergraph*> snaps;
  for (const Episode& ep : store.episodes())
    for (const Snapshot& snap : ep.snapshots) snaps.push_back(&snap.memory);

  std::set<std::string> node_types;
  std::set<std::pair<std::string, std::size_t>> link_sigs;
  for (const Hypergraph* g : snaps)
    for (const Atom& a : g->atoms()) {
      const std::string& type = g->label_type(a.id);
      if (a.kind == AtomKind::Node) {
        if (type != kVariableType) node_types.insert(type);
      } else {
        link_sigs.insert({type, a.targets.size()});
      }
    }

  std::map<std::string, MinedPattern> seen;  // canonical form -> record
  std::vector<std::pair<std::string, Hypergraph>> frontier;  // (canon, body)

  auto consider = [&](Hypergraph body, const std::string& parent_key,
                      std::vector<std::pair<std::string, Hypergraph>>& next) {
    std::string canon = canonical_form(body);
    if (seen.count(canon)) return;
    if (seen.size() >= opts.max_patterns)
      throw Error(Errc::too_large, "pattern search exceeded " +
                                       std::to_string(opts.max_patterns) + " candidates");
    MinedPattern rec;
    rec.key = "hp:" + fnv1a64_hex(canon);
    rec.support = support_count(body, snaps);
    rec.parent_key = parent_key;
    rec.body = body;
    bool extend = rec.support >= opts.min_support &&
                  static_cast<int>(body.size()) < opts.max_atoms;
    seen.emplace(canon, std::move(rec));
    if (extend) next.emplace_back(std::move(canon), std::move(body));
  };

  {
    std::vector<std::pair<std::string, Hypergraph>> next;
    for (const std::string& type : node_types) {
      Hypergraph body;
      body.add_node(Label{type, {}});
      consider(std::move(body), "", next);
    }
    if (opts.max_atoms >= 2) {  // the bare variable only ever feeds growth
      Hypergraph body;
      body.add_node(Label{kVariableType, {}});
      consider(std::move(body), "", next);
    }
    std::sort(next.begin(), next.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    frontier = std::move(next);
  }

  while (!frontier.empty()) {
    std::vector<std::pair<std::string, Hypergraph>> next;
    for (const auto& [canon, body] : frontier) {
      const std::string& parent_key = seen.at(canon).key;
      for (const std::string& type : node_types) {
        Hypergraph grown = body;
        grown.add_node(Label{type, {}});
        consider(std::move(grown), parent_key, next);
      }
      {
        Hypergraph grown = body;
        grown.add_node(Label{kVariableType, {}});
        consider(std::move(grown), parent_key, next);
      }
      std::vector<AtomId> nodes = body.node_ids();
      for (const auto& [type, arity] : link_sigs) {
        std::vector<std::vector<AtomId>> tuples;
        std::vector<AtomId> current;
        target_tuples(nodes, arity, current, tuples);
        for (const std::vector<AtomId>& targets : tuples) {
          Hypergraph grown = body;
          grown.add_link(targets, Label{type, {}});
          consider(std::move(grown), parent_key, next);
        }
      }
    }
    std::sort(next.begin(), next.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    frontier = std::move(next);
  }

  std::vector<std::pair<std::string, const MinedPattern*>> keep;
  for (const auto& [canon, rec] : seen) {
    if (rec.support < opts.min_support) continue;
    if (substrate_only(rec.body)) continue;
    keep.emplace_back(canon, &rec);
  }
  std::sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) {
    if (a.second->body.size() != b.second->body.size())
      return a.second->body.size() < b.second->body.size();
    return a.first < b.first;
  });
  std::vector<MinedPattern> out;
  out.reserve(keep.size());
  for (const auto& [canon, rec] : keep) out.push_back(*rec);
  return out;
}

PgmcChoice pgmc_choose(Hypergraph& memory, const std::vector<ActionCandidate>& actions,
                       std::uint64_t seed) {
  if (actions.empty())
    throw Error(Errc::bad_input, "pgmc_choose needs at least one admissible action");
  std::vector<Rational> raw;
  Rational total{0};
  for (const ActionCandidate& a : actions) {
    if (a.from_key.empty() || a.to_key.empty())
      throw Error(Errc::bad_input, "action candidate '" + a.action + "' needs pattern keys");
    if (a.confidence < 0 || a.confidence > 1)
      throw Error(Errc::bad_input, "candidate confidence outside [0,1]");
    Rational f = a.fitness.value_or(Rational(0));
    if (f < kFitnessFloor) f = kFitnessFloor;
    raw.push_back(f);
    total += f;
  }
  PgmcChoice out;
  for (const Rational& f : raw) out.weights.push_back(f / total);

  Rng rng(seed);
  out.index = rng.weighted(raw);
  out.action = actions[out.index].action;

  auto node_for = [&memory](const std::string& key) -> AtomId {
    for (const Atom& a : memory.atoms())
      if (a.kind == AtomKind::Node && memory.label_type(a.id) == key) return a.id;
    return memory.add_node(Label{key, {}});
  };
  for (std::size_t i = 0; i < actions.size(); ++i) {
    AtomId from = node_for(actions[i].from_key);
    AtomId to = node_for(actions[i].to_key);
    Label label{"implication", {out.weights[i], actions[i].confidence}};
    AtomId link = 0;
    bool found = false;
    for (AtomId lid : memory.incident_links(from)) {
      const Atom& a = memory.atom(lid);
      if (memory.label_type(lid) == "implication" &&
          a.targets == std::vector<AtomId>{from, to}) {
        link = lid;
        found = true;
        break;
      }
    }
    if (found) {
      memory.set_label(link, std::move(label));
    } else {
      link = memory.add_link({from, to}, std::move(label));
    }
    out.written_links.push_back(link);
  }
  return out;
}

}  // namespace cogsyn
