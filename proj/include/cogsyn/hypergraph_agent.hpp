#pragma once
// Hypergraph-memory agents: cognits are atoms whose label type selects an
// activation behavior ("cg." prefix). Effects rewrite the memory graph.
//
//   cg.create:<T>  make a T-labeled link over the cognit's node neighbors
//                  (sorted by id), or a T node when it has no neighbors
//   cg.call        activate the callee reached by a "next" link, passing a
//                  return continuation; a "cg.const:<T>" callee creates a T
//                  node, links it to the caller with a "result" link, then
//                  re-activates the caller (which stops once a result link
//                  is attached) -- the program-graph return protocol
//   cg.match       match the h-pattern marked by "pattern" links against the
//                  rest of memory and insert one "match" record link per
//                  binding (targets: cognit, then bound nodes by variable id)
//   cg.forget      remove every atom sharing a link with the cognit (cascade)
//   anything else with the cg. prefix: no effects
//
// Activation chains share the depth bound from agent.hpp; exceeding it keeps
// the applied effects and flags the result.

#include <vector>

#include "cogsyn/agent.hpp"
#include "cogsyn/hypergraph.hpp"

namespace cogsyn {

struct HEffect {
  enum class Kind { Create, Forget, Activate, None };
  Kind kind = Kind::None;
  std::vector<AtomId> atoms;  // created or removed atom ids; activated cognit
};

struct HActivationResult {
  std::vector<HEffect> applied;
  bool depth_exceeded = false;
};

HActivationResult hypergraph_activate(Hypergraph& g, AtomId cognit);

struct RichViolation {
  AtomId atom = 0;
  std::string code;     // e.g. "prob-out-of-range"
  std::string message;
};

struct RichReport {
  std::vector<RichViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Validates the reserved label vocabulary: implication links carry a
// probability weight in [0,1], after links a nonnegative duration, atTime
// links end on a time node, lambda links bind a variable node first, and
// variable labels appear only on nodes. Report-only.
RichReport rich_language_check(const Hypergraph& g);

}  // namespace cogsyn
