#pragma once
// Canonical string form: equal strings exactly when graphs are isomorphic
// (label types respected, weights ignored). Refinement narrows the atom
// ordering; remaining ties are broken by individualize-and-refine branching,
// taking the lexicographically least serialization.

#include <string>

#include "cogsyn/hypergraph.hpp"

namespace cogsyn {

struct CanonicalOptions {
  std::size_t max_atoms = 64;       // error(too-large) above this
  std::size_t branch_budget = 200000;  // individualization leaves explored
};

std::string canonical_form(const Hypergraph& g, const CanonicalOptions& opts = {});

// 64-bit FNV-1a of the canonical form, hex-encoded; stable pattern key for
// labels and reports.
std::string canonical_digest(const Hypergraph& g, const CanonicalOptions& opts = {});

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace cogsyn
