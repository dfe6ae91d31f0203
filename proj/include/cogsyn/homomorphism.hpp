#pragma once
// Homomorphisms between labeled hypergraphs, generated by elementary node
// merges. A map src->dst is a homomorphism when it preserves label types and
// sends every src link onto a dst link of the same type with pointwise-mapped
// targets. Cost of a hom = |src nodes| - |image nodes| = number of implied
// elementary merges (one unit per merge under the default cost model).

#include <map>
#include <optional>
#include <vector>

#include "cogsyn/hypergraph.hpp"

namespace cogsyn {

struct MergeStep {
  AtomId a = 0, b = 0;   // nodes merged
  AtomId result = 0;     // node they land on
};

struct Homomorphism {
  std::map<AtomId, AtomId> vertex_map;  // every src atom id -> dst atom id
  std::vector<MergeStep> elementary_steps;
  Rational cost{0};
};

struct MergeResult {
  Hypergraph graph;
  Homomorphism hom;  // from the source graph onto `graph`
  AtomId merged;     // id of the new node
};

// Merges nodes a and b (distinct nodes) into a fresh node that inherits both
// neighborhoods. Links that become identical (same type, same target list)
// collapse to the lowest-id representative. The merged node takes a's label
// when a is labeled, else b's.
MergeResult merge_nodes(const Hypergraph& g, AtomId a, AtomId b);

struct SplitResult {
  Hypergraph graph;
  AtomId child1 = 0, child2 = 0;
};

// Splits node a into two children (both inherit a's label); `first_cell`
// lists the incident links to reattach to child1, the rest go to child2.
// The two cells must exactly partition a's incident links.
SplitResult split_node(const Hypergraph& g, AtomId a, const std::vector<AtomId>& first_cell);

struct HomSearchOptions {
  std::optional<Rational> max_cost;   // keep homs with cost <= max_cost
  std::size_t max_results = 100000;
  double exact_threshold = 1e7;       // |V_dst|^|V_src| above this -> truncated
  Rational merge_step_cost{1};        // cost-model hook: price of one merge
};

struct HomSearchResult {
  std::vector<Homomorphism> homs;
  bool truncated = false;  // search space above threshold or results capped
};

HomSearchResult find_homomorphisms(const Hypergraph& src, const Hypergraph& dst,
                                   const HomSearchOptions& opts = {});

struct IsoResult {
  bool isomorphic = false;
  std::map<AtomId, AtomId> witness;  // g1 atom -> g2 atom when isomorphic
};

IsoResult is_isomorphic(const Hypergraph& g1, const Hypergraph& g2);

// Checks that `map` (node images for every src node) is a valid homomorphism
// and completes it over links; nullopt when some link has no image.
std::optional<Homomorphism> complete_homomorphism(const Hypergraph& src, const Hypergraph& dst,
                                                  const std::map<AtomId, AtomId>& node_map,
                                                  const Rational& merge_step_cost = Rational(1));

}  // namespace cogsyn
