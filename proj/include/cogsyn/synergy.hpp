#pragma once
// The cognitive-synergy index: partition-weighted probability mass of the
// recorded situations where exactly one of a pair of processes (or all but
// one of a triple) is stuck to a degree inside each partition cell. The
// probability of a cell's stuck-graph is taken with the state-measure
// functional against the meta-system graph as ambient.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cogsyn/cpt.hpp"

namespace cogsyn {

struct StuckRecord {
  std::string situation;
  int tick = 0;           // t0, the end of the sampled history window
  TickInterval interval;  // I_S
  std::map<std::string, Rational> stuck;  // process -> stuckness degree
};

// n half-open cells ((i-1)/n, i/n] covering (0,1].
std::vector<HalfOpenCell> equispaced_partition(int cells);
// Cell midpoints (deeper stuckness weighs more) / all-ones.
std::vector<Rational> midpoint_weights(const std::vector<HalfOpenCell>& cells);
std::vector<Rational> uniform_weights(std::size_t n);

// (situation, tick) pairs where exactly one of a, b has stuckness in the
// cell; record order. Both processes must be present in every record.
std::vector<std::pair<std::string, int>> stuck_set(const std::vector<StuckRecord>& records,
                                                   const std::string& a, const std::string& b,
                                                   const HalfOpenCell& cell);

// Triple variant: exactly two of the three in the cell.
std::vector<std::pair<std::string, int>> stuck_set_triple(
    const std::vector<StuckRecord>& records, const std::string& a, const std::string& b,
    const std::string& c, const HalfOpenCell& cell);

struct SynergyCell {
  HalfOpenCell cell;
  Rational weight{0};
  Rational prob{0};     // Prob(G^stuck) for this cell
  int stuck_pairs = 0;  // size of the cell's stuck set
};

struct SynergyReport {
  std::vector<std::string> processes;  // two or three ids
  std::vector<SynergyCell> cells;
  Rational value{0};  // cog-syn: sum w * prob / sum w
};

// Partition must tile (0,1] with half-open cells; weights nonnegative, not
// all zero, one per cell.
SynergyReport cog_syn(const EpisodeStore& store, const std::vector<StuckRecord>& records,
                      const std::string& a, const std::string& b,
                      const std::vector<HalfOpenCell>& partition,
                      const std::vector<Rational>& weights);

SynergyReport cog_syn_triple(const EpisodeStore& store, const std::vector<StuckRecord>& records,
                             const std::string& a, const std::string& b, const std::string& c,
                             const std::vector<HalfOpenCell>& partition,
                             const std::vector<Rational>& weights);

}  // namespace cogsyn
