#pragma once
// Lattice operations on labeled hypergraphs: join = disjoint union, meet =
// categorical (direct) product, exponent = the internal hom; implication
// adjoins meet so that |Hom(meet(C,B),A)| = |Hom(C, exponent(A,B))|.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>

#include "cogsyn/homomorphism.hpp"
#include "cogsyn/hypergraph.hpp"

namespace cogsyn {

struct JoinResult {
  Hypergraph graph;
  std::map<AtomId, AtomId> left_map, right_map;  // operand id -> joined id
};

// Disjoint union with fresh sequential ids; left operand's atoms first.
JoinResult join(const Hypergraph& a, const Hypergraph& b);

struct MeetResult {
  Hypergraph graph;
  // product atom id -> (a-side id, b-side id); covers nodes and links
  std::map<AtomId, std::pair<AtomId, AtomId>> pairs;
};

// Direct product: nodes are all (a,b) node pairs; for every pair of links
// with equal type and arity there is a product link with pointwise-paired
// targets. Pair labels: "tA&tB" when either side is labeled, none otherwise.
// Product link weights: pointwise product when both sides carry equal-length
// weight vectors, absent otherwise.
MeetResult meet(const Hypergraph& a, const Hypergraph& b);

struct ExponentOptions {
  std::size_t max_nodes = 20000;  // error(exponent-too-large) above this
  // Fixed (type, arity) the exponent is taken over; inferred from the
  // operands when absent. Pinning it keeps the adjunction exact when both
  // operands happen to be linkless: B then imposes no constraint, so every
  // function tuple is linked (the complete reflexive structure), rather
  // than none.
  std::optional<std::pair<std::string, std::size_t>> signature;
};

struct ExponentResult {
  Hypergraph graph;
  // exponent node id -> total function (B node id -> A node id)
  std::map<AtomId, std::map<AtomId, AtomId>> functions;
};

// Exponent A^B over the unique link signature (type, arity) occurring in A
// and B (error(ambiguous-signature) when several occur; overridable through
// opts.signature): nodes are all total functions from B's nodes to A's
// nodes; functions (F1..Fk) are linked iff for every B-link (b1..bk),
// (F1(b1)..Fk(bk)) is an A-link.
ExponentResult exponent(const Hypergraph& a, const Hypergraph& b,
                        const ExponentOptions& opts = {});

// implication(B, A) = exponent(A, B): the relative pseudo-complement B -> A.
ExponentResult implication(const Hypergraph& b, const Hypergraph& a,
                           const ExponentOptions& opts = {});

struct CostLeqOptions {
  std::size_t state_budget = 200000;  // BFS states before undecided-at-scale
};

// Construction-cost order: true iff some homomorphism a1 -> a exists and a
// minimal insertion sequence building a1 from the empty graph passes through
// a graph isomorphic to a (equivalently: a matches a target-closed
// sub-hypergraph of a1). BFS over target-closed subsets memoized by subset;
// error(undecided-at-scale) past the state budget.
bool cost_leq(const Hypergraph& a, const Hypergraph& a1, const CostLeqOptions& opts = {});

}  // namespace cogsyn
