#pragma once
// Conjecture probes on the recorded transition category: the per-process
// projection F_A (each foreign transition replaced by the cheapest recorded
// A-path between the same state profiles, or a declared gap), natural-
// transformation search between two projections over shape graphs, and the
// indirect-vs-direct commutation cost comparison.
//
// Shape graphs neutralize process identity: nodes are state profiles
// (labeled only through a classifier, unlabeled by default) and every
// replacement transition becomes a "step" link, so components of a natural
// transformation can be ordinary label-preserving homomorphisms.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cogsyn/cpt.hpp"
#include "cogsyn/homomorphism.hpp"

namespace cogsyn {

Rational scalar_cost(const ResourceCost& c);  // space + time

struct ProjectedEdge {
  Transition original;                  // meta-level (profile endpoints)
  std::vector<Transition> replacement;  // == {original} when already ours;
                                        // empty for identities and gaps
  bool gap = false;                     // no recorded path; infinite cost
  Rational cost{0};
};

struct FunctorProjection {
  std::string process;
  std::vector<ProjectedEdge> edges;
  bool has_gap = false;
  Rational cost{0};  // finite part (gap edges contribute nothing)
  std::optional<Rational> total_cost() const {
    if (has_gap) return std::nullopt;
    return cost;
  }
};

// Cheapest recorded `process` path between two state profiles by summed
// scalar cost; 0 for from == to, nullopt when unreachable. Deterministic
// tie-breaking (recorded order).
std::optional<Rational> min_process_path(const EpisodeStore& store, const std::string& process,
                                         const std::string& from, const std::string& to,
                                         std::vector<Transition>* path = nullptr);

// X is a list of meta-level transitions (profile endpoints).
FunctorProjection functor_project(const std::vector<Transition>& x, const std::string& process,
                                  const EpisodeStore& store);

// The projection flattened back to a transition list (gap edges dropped);
// feeding it to functor_project again returns it unchanged.
std::vector<Transition> projected_transitions(const FunctorProjection& fp);

// profile key -> class label; profiles without a class stay unlabeled.
using StateClassifier = std::map<std::string, std::string>;

// Shape graph over the given state profiles plus every profile touched by
// the projection's edges; one "step" link per replacement transition.
Hypergraph object_shape(const std::vector<std::string>& state_profiles,
                        const FunctorProjection& fp, const StateClassifier& classes,
                        std::map<std::string, AtomId>* nodes = nullptr);

struct DiagramObject {
  std::string name;
  Hypergraph shape_a;  // F_A(X) as a shape graph
  Hypergraph shape_b;  // F_B(X)
};

// A recorded morphism f: X -> Y, given through its functor images as node
// maps: map_a sends shape_a(X) nodes to shape_a(Y) nodes, map_b likewise on
// the B side.
struct DiagramMorphism {
  std::string name;
  std::string from, to;
  std::map<AtomId, AtomId> map_a;
  std::map<AtomId, AtomId> map_b;
};

struct NatTransComponent {
  std::string object;
  Homomorphism hom;  // shape_a -> shape_b
  Rational cost{0};
};

struct NatTransResult {
  bool verified = false;
  bool undecided = false;  // candidate space exceeded the search bound
  std::vector<NatTransComponent> components;
  // First square with no commuting choice ("object:<name>" when some object
  // has no candidate homomorphism at all, "(no globally consistent
  // assignment)" when squares are individually satisfiable but incompatible).
  std::string failed_morphism;
};

struct NatTransOptions {
  std::size_t max_candidates_per_object = 4096;
  std::size_t max_assignments = 1000000;
};

// Exhaustive search for per-object homomorphisms shape_a -> shape_b such
// that every naturality square commutes as exact node-map equality.
// Candidates are tried cheapest-first, so the vacuous single-object case
// returns the min-cost hom. A found family is re-verified independently.
NatTransResult nat_trans_search(const std::vector<DiagramObject>& objects,
                                const std::vector<DiagramMorphism>& morphisms,
                                const NatTransOptions& opts = {});

// Independent re-check: every component is validated as a homomorphism from
// scratch and every square re-composed; false on any mismatch.
bool verify_naturality(const std::vector<DiagramObject>& objects,
                       const std::vector<DiagramMorphism>& morphisms,
                       const std::vector<NatTransComponent>& components);

struct CostCompare {
  std::optional<Rational> direct;    // cost(F_A(f)); nullopt = gap
  std::optional<Rational> indirect;  // eta_X + cost(F_B(f)) + eta_Y
  bool holds = false;                // indirect strictly below direct
  std::optional<Rational> margin;    // direct - indirect when both finite
};

// Missing eta legs are an error (no component); a gap direct leg loses to
// any finite indirect route.
CostCompare commutation_cost_compare(const std::optional<Rational>& eta_x,
                                     const std::optional<Rational>& fb_f,
                                     const std::optional<Rational>& eta_y,
                                     const std::optional<Rational>& fa_f);

}  // namespace cogsyn
