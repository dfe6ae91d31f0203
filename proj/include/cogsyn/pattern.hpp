#pragma once
// h-patterns: a hypergraph body whose variable nodes (label type "variable")
// bind to concrete nodes of a target graph, combined with and/or/not.
// Negation is only meaningful against the ambient graph, so `not` may appear
// only under a conjunction; a free-standing `not` is rejected.

#include <map>
#include <memory>
#include <vector>

#include "cogsyn/hypergraph.hpp"

namespace cogsyn {

inline constexpr const char* kVariableType = "variable";

// Variable atom id in the pattern body -> concrete atom id in the target.
using Binding = std::map<AtomId, AtomId>;

struct HPattern {
  enum class Kind { Atomic, And, Or, Not };
  Kind kind = Kind::Atomic;
  Hypergraph body;  // Atomic only
  std::shared_ptr<HPattern> left, right;  // And/Or children; Not uses left

  static HPattern atomic(Hypergraph body);
  static HPattern conj(HPattern a, HPattern b);
  static HPattern disj(HPattern a, HPattern b);
  static HPattern negation(HPattern a);
};

// All bindings of the pattern in g, sorted by the lexicographic sequence of
// (variable id, target id) pairs. A binding is valid when the whole pattern
// body maps into g by a label-type- and structure-preserving assignment that
// sends each variable node to the bound node.
std::vector<Binding> match_pattern(const HPattern& pattern, const Hypergraph& g);

// Largest fraction of the body's atoms (as a target-closed sub-pattern) that
// embeds into g; 1 when the full body matches, 0 when nothing does.
Rational match_cover_fraction(const Hypergraph& body, const Hypergraph& g);

// Variable node ids of an atomic body, ascending.
std::vector<AtomId> pattern_variables(const Hypergraph& body);

}  // namespace cogsyn
