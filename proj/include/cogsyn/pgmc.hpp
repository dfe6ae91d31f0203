#pragma once
// PGMC control: mine frequent h-patterns from recorded memory snapshots
// (level-wise single-atom growth, canonical-form dedup, anti-monotone
// support pruning) and choose the next cognitive action by sampling
// proportionally to pattern-estimated fitness, writing the implied
// current-state -> future-state implication links back into memory.

#include <cstdint>
#include <optional>

#include "cogsyn/cpt.hpp"

namespace cogsyn {

struct MinedPattern {
  std::string key;
  Hypergraph body;
  int support = 0;  // number of snapshots with a full match
  std::string parent_key;  // pattern this one was grown from; "" for seeds
};

struct MineOptions {
  int min_support = 1;
  int max_atoms = 3;
  std::size_t max_patterns = 20000;  // distinct candidates; beyond is an error
};

// Frequent patterns over every snapshot in the store, exhaustive up to
// max_atoms. Growth adds one atom per step: a fresh node (alphabet label or
// variable) or a link over existing nodes. Linkless all-variable bodies are
// search substrate only and never reported. Output is sorted by (atom
// count, canonical form).
std::vector<MinedPattern> mine_history_patterns(const EpisodeStore& store,
                                                const MineOptions& opts = {});

struct ActionCandidate {
  std::string action;
  std::optional<Rational> fitness;  // four-factor product; null = no evidence
  std::string from_key;             // h-pattern key for the current state
  std::string to_key;               // h-pattern key for the predicted future
  Rational confidence{0};           // confidence attached to the written link
};

// Sampling floor so no admissible action ever starves.
inline const Rational kFitnessFloor{1, 1000000};

struct PgmcChoice {
  std::string action;
  std::size_t index = 0;
  std::vector<Rational> weights;      // normalized sampling distribution
  std::vector<AtomId> written_links;  // implication links inserted/updated
};

// Samples an action with probability proportional to max(fitness, floor)
// and records, for every candidate, an "implication" link between nodes
// labeled from_key and to_key with weights [sampling probability,
// confidence]. Re-running updates the existing link's weights in place.
PgmcChoice pgmc_choose(Hypergraph& memory, const std::vector<ActionCandidate>& actions,
                       std::uint64_t seed);

}  // namespace cogsyn
