#include "cogsyn/synergy.hpp"

#include <algorithm>

#include "cogsyn/prob.hpp"

namespace cogsyn {

std::vector<HalfOpenCell> equispaced_partition(int cells) {
  if (cells < 1) throw Error(Errc::bad_partition, "need at least one cell");
  std::vector<HalfOpenCell> out;
  for (int i = 0; i < cells; ++i)
    out.push_back({Rational(i, cells), Rational(i + 1, cells)});
  return out;
}

std::vector<Rational> midpoint_weights(const std::vector<HalfOpenCell>& cells) {
  std::vector<Rational> out;
  for (const HalfOpenCell& c : cells) out.push_back((c.lo + c.hi) / 2);
  return out;
}

std::vector<Rational> uniform_weights(std::size_t n) {
  return std::vector<Rational>(n, Rational(1));
}

static Rational stuck_of(const StuckRecord& rec, const std::string& process) {
  auto it = rec.stuck.find(process);
  if (it == rec.stuck.end())
    throw Error(Errc::bad_input, "no stuckness recorded for '" + process + "' at (" +
                                     rec.situation + ", " + std::to_string(rec.tick) + ")");
  return it->second;
}

std::vector<std::pair<std::string, int>> stuck_set(const std::vector<StuckRecord>& records,
                                                   const std::string& a, const std::string& b,
                                                   const HalfOpenCell& cell) {
  std::vector<std::pair<std::string, int>> out;
  for (const StuckRecord& rec : records) {
    bool in_a = cell.contains(stuck_of(rec, a));
    bool in_b = cell.contains(stuck_of(rec, b));
    if (in_a != in_b) out.emplace_back(rec.situation, rec.tick);
  }
  return out;
}

std::vector<std::pair<std::string, int>> stuck_set_triple(
    const std::vector<StuckRecord>& records, const std::string& a, const std::string& b,
    const std::string& c, const HalfOpenCell& cell) {
  std::vector<std::pair<std::string, int>> out;
  for (const StuckRecord& rec : records) {
    int in = 0;
    in += cell.contains(stuck_of(rec, a)) ? 1 : 0;
    in += cell.contains(stuck_of(rec, b)) ? 1 : 0;
    in += cell.contains(stuck_of(rec, c)) ? 1 : 0;
    if (in == 2) out.emplace_back(rec.situation, rec.tick);
  }
  return out;
}

namespace {

void validate_partition(const std::vector<HalfOpenCell>& partition,
                        const std::vector<Rational>& weights) {
  if (partition.empty()) throw Error(Errc::bad_partition, "empty partition");
  if (weights.size() != partition.size())
    throw Error(Errc::bad_input, "one weight per partition cell required");
  Rational wsum{0};
  for (const Rational& w : weights) {
    if (w < 0) throw Error(Errc::bad_input, "negative cell weight");
    wsum += w;
  }
  if (wsum == 0) throw Error(Errc::bad_input, "all cell weights are zero");
  std::vector<HalfOpenCell> sorted = partition;
  std::sort(sorted.begin(), sorted.end(),
            [](const HalfOpenCell& x, const HalfOpenCell& y) { return x.lo < y.lo; });
  Rational edge{0};
  for (const HalfOpenCell& c : sorted) {
    if (c.lo != edge || c.hi <= c.lo)
      throw Error(Errc::bad_partition, "cells must tile (0,1] without gaps or overlap");
    edge = c.hi;
  }
  if (edge != 1) throw Error(Errc::bad_partition, "partition must end at 1");
}

SynergyReport synergy_impl(const EpisodeStore& store, const std::vector<StuckRecord>& records,
                           const std::vector<std::string>& processes,
                           const std::vector<HalfOpenCell>& partition,
                           const std::vector<Rational>& weights) {
  validate_partition(partition, weights);
  CPTGraph meta = build_meta_graph(store);
  SynergyReport rep;
  rep.processes = processes;
  Rational wsum{0}, acc{0};
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const HalfOpenCell& cell = partition[i];
    std::vector<std::pair<std::string, int>> pairs =
        processes.size() == 2
            ? stuck_set(records, processes[0], processes[1], cell)
            : stuck_set_triple(records, processes[0], processes[1], processes[2], cell);
    Hypergraph sub;
    std::map<std::string, AtomId> nodes;
    for (const auto& [situation, tick] : pairs) {
      const Snapshot* snap = snapshot_at(store.episode(situation), tick);
      if (snap == nullptr)
        throw Error(Errc::bad_input, "stuck record points at a missing snapshot (" + situation +
                                         ", " + std::to_string(tick) + ")");
      const std::string& profile = snap->state.profile;
      if (!nodes.count(profile)) nodes[profile] = sub.add_node(Label{profile, {}});
    }
    for (const Transition& t : meta.transitions) {
      if (std::find(processes.begin(), processes.end(), t.cause) == processes.end()) continue;
      auto from = nodes.find(t.from), to = nodes.find(t.to);
      if (from == nodes.end() || to == nodes.end()) continue;
      sub.add_link({from->second, to->second},
                   Label{t.cause, {t.probability, t.confidence, t.resource_cost.space,
                                   t.resource_cost.time}});
    }
    ProbOptions popts;
    popts.functional = ProbFunctional::StateMeasure;
    ProbResult pr = prob(sub, meta.graph, popts);
    rep.cells.push_back({cell, weights[i], pr.value, static_cast<int>(pairs.size())});
    wsum += weights[i];
    acc += weights[i] * pr.value;
  }
  rep.value = acc / wsum;
  return rep;
}

}  // namespace

SynergyReport cog_syn(const EpisodeStore& store, const std::vector<StuckRecord>& records,
                      const std::string& a, const std::string& b,
                      const std::vector<HalfOpenCell>& partition,
                      const std::vector<Rational>& weights) {
  return synergy_impl(store, records, {a, b}, partition, weights);
}

SynergyReport cog_syn_triple(const EpisodeStore& store, const std::vector<StuckRecord>& records,
                             const std::string& a, const std::string& b, const std::string& c,
                             const std::vector<HalfOpenCell>& partition,
                             const std::vector<Rational>& weights) {
  return synergy_impl(store, records, {a, b, c}, partition, weights);
}

}  // namespace cogsyn
