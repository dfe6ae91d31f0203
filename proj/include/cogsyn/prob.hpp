#pragma once
// Intuitionistic probability over hypergraphs, pluggable functional.
//
// EmbeddingCount (default): #homs(sub -> ambient) divided by #homs(sub -> the
// complete label-compatible graph on ambient's node set). The denominator
// factorizes as a product over sub's nodes of their compatible-node counts,
// so the functional equals the chance that a uniformly random
// label-compatible node map is a homomorphism. Exact when the compatible map
// space is small, seeded Monte Carlo above the threshold. prob(empty) = 1,
// prob(single node) = 1, monotone under sub-pattern extension.
//
// StateMeasure (the counting functional used where probabilities must add
// over disjoint joins and multiply over meets): |nodes(sub)| / |nodes(ambient)|
// for instance sub-hypergraphs. Node counts add under disjoint union inside
// one ambient and multiply under the direct product with the product ambient,
// so both laws hold exactly; prob(empty) = 0.
//
// The ambient is fixed explicitly per call; results depend on that choice.

#include <cstdint>

#include "cogsyn/hypergraph.hpp"

namespace cogsyn {

enum class ProbFunctional { EmbeddingCount, StateMeasure };

struct ProbOptions {
  ProbFunctional functional = ProbFunctional::EmbeddingCount;
  double exact_threshold = 1e7;  // compatible-map count above this -> Monte Carlo
  std::uint64_t mc_samples = 20000;
  std::uint64_t seed = 0;
};

struct ProbResult {
  bool exact = true;
  Rational value{0};    // exact mode
  double estimate = 0;  // Monte Carlo mode (also set to value in exact mode)
  double stderr_value = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  bool degenerate = false;  // zero denominator (e.g. empty ambient, nonempty sub)
};

ProbResult prob(const Hypergraph& sub, const Hypergraph& ambient, const ProbOptions& opts = {});

}  // namespace cogsyn
