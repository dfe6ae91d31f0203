#pragma once
// Hom-vs-iso census: over every pair of connected target-closed subgraphs
// (up to a size bound) drawn from two graphs, count the homomorphisms from
// the first side's subgraph into the second side's against the
// isomorphisms among them. Both counts are counts of vertex maps, so every
// isomorphism is also counted as a homomorphism.

#include <cstdint>
#include <optional>

#include "cogsyn/homomorphism.hpp"
#include "cogsyn/hypergraph.hpp"

namespace cogsyn {

struct CensusOptions {
  int size_bound = 3;                    // max atoms per subgraph
  std::optional<Rational> max_cost;      // hom cost ceiling
  std::size_t max_subgraphs = 400;       // per side; beyond -> partial census
  std::size_t max_results_per_pair = 100000;
};

struct CensusRecord {
  std::uint64_t n_hom = 0;
  std::uint64_t n_iso = 0;
  std::uint64_t pairs = 0;  // subgraph pairs examined
  std::uint64_t subgraphs_a = 0;
  std::uint64_t subgraphs_b = 0;
  bool partial = false;  // enumeration or search hit a bound
  std::optional<Rational> ratio() const {
    if (n_iso == 0) return std::nullopt;  // infinity-safe
    return Rational(n_hom, n_iso);
  }
};

// Connected target-closed subgraphs of g with at most `size_bound` atoms,
// as sorted id lists; deterministic order. Sets `truncated` when the
// enumeration hit `max_subgraphs`.
std::vector<std::vector<AtomId>> connected_subgraphs(const Hypergraph& g, int size_bound,
                                                     std::size_t max_subgraphs, bool* truncated);

// The sub-hypergraph on the given atoms (must be target-closed), ids kept.
Hypergraph induced_subgraph(const Hypergraph& g, const std::vector<AtomId>& atoms);

// True when the vertex map is a bijection on nodes and induces a bijection
// on links (parallel-link multiplicities must agree).
bool hom_is_iso(const Hypergraph& src, const Hypergraph& dst, const Homomorphism& hom);

CensusRecord hom_iso_census(const Hypergraph& ga, const Hypergraph& gb,
                            const CensusOptions& opts = {});

}  // namespace cogsyn
