#include "cogsyn/prob.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cogsyn/rng.hpp"

namespace cogsyn {

namespace {

const std::string& type_of(const Atom& a) {
  static const std::string empty;
  return a.label ? a.label->type_name : empty;
}

struct EmbeddingSpace {
  std::vector<const Atom*> sub_nodes;
  std::vector<const Atom*> sub_links;
  // candidates[i] = ambient node ids compatible with sub_nodes[i]
  std::vector<std::vector<AtomId>> candidates;

  EmbeddingSpace(const Hypergraph& sub, const Hypergraph& ambient) {
    for (const auto& a : sub.atoms()) {
      if (a.kind == AtomKind::Node) {
        sub_nodes.push_back(&a);
      } else {
        for (AtomId t : a.targets)
          if (sub.atom(t).kind == AtomKind::Link)
            throw Error(Errc::bad_input,
                        "probability functional requires node-targeting links");
        sub_links.push_back(&a);
      }
    }
    candidates.resize(sub_nodes.size());
    for (std::size_t i = 0; i < sub_nodes.size(); ++i)
      for (const auto& n : ambient.atoms())
        if (n.kind == AtomKind::Node && type_of(n) == type_of(*sub_nodes[i]))
          candidates[i].push_back(n.id);
  }

  double space_size() const {
    double s = 1;
    for (const auto& c : candidates) s *= static_cast<double>(c.size());
    return s;
  }

  bool map_is_hom(const std::vector<AtomId>& choice, const Hypergraph& ambient,
                  const std::map<AtomId, std::size_t>& node_pos) const {
    for (const Atom* l : sub_links) {
      std::vector<AtomId> image;
      image.reserve(l->targets.size());
      for (AtomId t : l->targets) image.push_back(choice[node_pos.at(t)]);
      bool ok = false;
      for (const auto& cand : ambient.atoms())
        if (cand.kind == AtomKind::Link && type_of(cand) == type_of(*l) &&
            cand.targets == image) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

ProbResult prob(const Hypergraph& sub, const Hypergraph& ambient, const ProbOptions& opts) {
  ProbResult res;
  res.seed = opts.seed;
  if (opts.functional == ProbFunctional::StateMeasure) {
    std::size_t ns = sub.node_count(), na = ambient.node_count();
    if (na == 0) {
      res.degenerate = sub.size() > 0;
      res.value = 0;
    } else {
      res.value = Rational(ns, na);
      if (res.value > 1) {  // sub is not an instance inside the ambient
        res.value = 1;
        res.degenerate = true;
      }
    }
    res.estimate = to_double(res.value);
    return res;
  }

  EmbeddingSpace space(sub, ambient);
  std::map<AtomId, std::size_t> node_pos;
  for (std::size_t i = 0; i < space.sub_nodes.size(); ++i)
    node_pos[space.sub_nodes[i]->id] = i;

  for (const auto& c : space.candidates)
    if (c.empty()) {
      // Zero compatible maps: denominator vanishes; report 0 with a flag.
      res.degenerate = true;
      res.value = 0;
      res.estimate = 0;
      return res;
    }
  if (space.sub_nodes.empty()) {
    res.value = 1;  // vacuous embedding
    res.estimate = 1;
    return res;
  }

  double total = space.space_size();
  if (total <= opts.exact_threshold) {
    // Exact enumeration of the compatible map space.
    BigInt hits = 0, all = 0;
    std::vector<std::size_t> idx(space.sub_nodes.size(), 0);
    std::vector<AtomId> choice(space.sub_nodes.size());
    while (true) {
      for (std::size_t i = 0; i < idx.size(); ++i) choice[i] = space.candidates[i][idx[i]];
      ++all;
      if (space.map_is_hom(choice, ambient, node_pos)) ++hits;
      std::size_t p = 0;
      while (p < idx.size() && ++idx[p] == space.candidates[p].size()) idx[p++] = 0;
      if (p == idx.size()) break;
    }
    res.value = Rational(hits, all);
    res.estimate = to_double(res.value);
    return res;
  }

  Rng rng(opts.seed);
  std::uint64_t hits = 0;
  std::vector<AtomId> choice(space.sub_nodes.size());
  for (std::uint64_t s = 0; s < opts.mc_samples; ++s) {
    for (std::size_t i = 0; i < choice.size(); ++i)
      choice[i] = space.candidates[i][rng.below(space.candidates[i].size())];
    if (space.map_is_hom(choice, ambient, node_pos)) ++hits;
  }
  res.exact = false;
  res.n_samples = opts.mc_samples;
  double p = static_cast<double>(hits) / static_cast<double>(opts.mc_samples);
  res.estimate = p;
  res.stderr_value = std::sqrt(p * (1 - p) / static_cast<double>(opts.mc_samples));
  return res;
}

}  // namespace cogsyn
