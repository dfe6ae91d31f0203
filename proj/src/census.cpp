#include "cogsyn/census.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace cogsyn {

std::vector<std::vector<AtomId>> connected_subgraphs(const Hypergraph& g, int size_bound,
                                                     std::size_t max_subgraphs,
                                                     bool* truncated) {
  if (truncated) *truncated = false;
  std::vector<std::vector<AtomId>> out;
  if (size_bound < 1 || g.size() == 0) return out;

  std::set<std::vector<AtomId>> visited;
  std::deque<std::vector<AtomId>> queue;
  bool budget_hit = false;
  auto push = [&](std::vector<AtomId> s) {
    if (budget_hit || visited.count(s)) return;
    if (visited.size() >= max_subgraphs) {
      budget_hit = true;
      return;
    }
    visited.insert(s);
    queue.push_back(std::move(s));
  };

  for (const Atom& a : g.atoms()) push({a.id});
  while (!queue.empty() && !budget_hit) {
    std::vector<AtomId> s = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(s.size()) >= size_bound) continue;
    std::set<AtomId> in(s.begin(), s.end());
    std::set<AtomId> cands;  // atoms incidence-adjacent to s
    for (AtomId id : s) {
      for (AtomId t : g.atom(id).targets)
        if (!in.count(t)) cands.insert(t);
      for (AtomId l : g.incident_links(id))
        if (!in.count(l)) cands.insert(l);
    }
    for (AtomId c : cands) {
      std::vector<AtomId> grown = s;
      grown.insert(std::lower_bound(grown.begin(), grown.end(), c), c);
      push(std::move(grown));
    }
  }
  if (budget_hit && truncated) *truncated = true;

  for (const std::vector<AtomId>& s : visited) {
    std::set<AtomId> in(s.begin(), s.end());
    bool closed = true;
    for (AtomId id : s)
      for (AtomId t : g.atom(id).targets)
        if (!in.count(t)) {
          closed = false;
          break;
        }
    if (closed) out.push_back(s);
  }
  return out;
}

Hypergraph induced_subgraph(const Hypergraph& g, const std::vector<AtomId>& atoms) {
  std::set<AtomId> in(atoms.begin(), atoms.end());
  Hypergraph sub;
  for (const Atom& a : g.atoms()) {  // insertion order keeps targets first
    if (!in.count(a.id)) continue;
    sub.add_atom_with_id(a.id, a.kind, a.targets, a.label);
  }
  return sub;
}

bool hom_is_iso(const Hypergraph& src, const Hypergraph& dst, const Homomorphism& hom) {
  if (src.node_count() != dst.node_count() || src.link_count() != dst.link_count()) return false;
  std::set<AtomId> images;
  for (AtomId n : src.node_ids()) {
    auto it = hom.vertex_map.find(n);
    if (it == hom.vertex_map.end()) return false;
    if (!images.insert(it->second).second) return false;  // node map not injective
  }
  std::map<std::pair<std::string, std::vector<AtomId>>, int> src_links, dst_links;
  for (AtomId l : src.link_ids()) {
    const Atom& a = src.atom(l);
    std::vector<AtomId> mapped;
    mapped.reserve(a.targets.size());
    for (AtomId t : a.targets) mapped.push_back(hom.vertex_map.at(t));
    ++src_links[{src.label_type(l), std::move(mapped)}];
  }
  for (AtomId l : dst.link_ids()) {
    const Atom& a = dst.atom(l);
    ++dst_links[{dst.label_type(l), a.targets}];
  }
  return src_links == dst_links;
}

CensusRecord hom_iso_census(const Hypergraph& ga, const Hypergraph& gb,
                            const CensusOptions& opts) {
  CensusRecord rec;
  bool trunc_a = false, trunc_b = false;
  std::vector<std::vector<AtomId>> subs_a =
      connected_subgraphs(ga, opts.size_bound, opts.max_subgraphs, &trunc_a);
  std::vector<std::vector<AtomId>> subs_b =
      connected_subgraphs(gb, opts.size_bound, opts.max_subgraphs, &trunc_b);
  rec.partial = trunc_a || trunc_b;
  rec.subgraphs_a = subs_a.size();
  rec.subgraphs_b = subs_b.size();

  std::vector<Hypergraph> right;
  right.reserve(subs_b.size());
  for (const std::vector<AtomId>& sb : subs_b) right.push_back(induced_subgraph(gb, sb));

  HomSearchOptions hopts;
  hopts.max_cost = opts.max_cost;
  hopts.max_results = opts.max_results_per_pair;
  for (const std::vector<AtomId>& sa : subs_a) {
    Hypergraph left = induced_subgraph(ga, sa);
    for (const Hypergraph& xb : right) {
      HomSearchResult res = find_homomorphisms(left, xb, hopts);
      if (res.truncated) rec.partial = true;
      rec.n_hom += res.homs.size();
      for (const Homomorphism& h : res.homs)
        if (hom_is_iso(left, xb, h)) ++rec.n_iso;
      ++rec.pairs;
    }
  }
  return rec;
}

}  // namespace cogsyn
