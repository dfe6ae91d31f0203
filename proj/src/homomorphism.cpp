#include "cogsyn/homomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cogsyn {

namespace {

const std::string& type_of(const Atom& a) {
  static const std::string empty;
  return a.label ? a.label->type_name : empty;
}

// Deterministic duplicate-link collapse: links equal when kind, type and
// target sequence coincide; lowest id survives.
std::map<AtomId, AtomId> collapse_duplicate_links(std::vector<Atom>& atoms) {
  std::map<AtomId, AtomId> moved;
  std::map<std::pair<std::string, std::vector<AtomId>>, AtomId> seen;
  std::vector<Atom> kept;
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.id < y.id; });
  for (auto& a : atoms) {
    if (a.kind != AtomKind::Link) {
      kept.push_back(std::move(a));
      continue;
    }
    auto key = std::make_pair(type_of(a), a.targets);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), a.id);
      kept.push_back(std::move(a));
    } else {
      moved[a.id] = it->second;
    }
  }
  atoms = std::move(kept);
  return moved;
}

}  // namespace

MergeResult merge_nodes(const Hypergraph& g, AtomId a, AtomId b) {
  const Atom& na = g.atom(a);
  const Atom& nb = g.atom(b);
  if (na.kind != AtomKind::Node || nb.kind != AtomKind::Node)
    throw Error(Errc::merge_non_node, "merge expects two nodes");
  if (a == b) throw Error(Errc::bad_input, "merge of a node with itself");

  AtomId merged = g.fresh_id();
  std::vector<Atom> atoms;
  for (const auto& atom : g.atoms()) {
    if (atom.id == a || atom.id == b) continue;
    Atom copy = atom;
    for (auto& t : copy.targets)
      if (t == a || t == b) t = merged;
    atoms.push_back(std::move(copy));
  }
  Atom m;
  m.id = merged;
  m.kind = AtomKind::Node;
  m.label = na.label ? na.label : nb.label;
  atoms.push_back(std::move(m));

  auto moved = collapse_duplicate_links(atoms);

  MergeResult res;
  res.merged = merged;
  // Insert nodes, then links ordered so targets exist (links may target links
  // with smaller ids; the merged node is inserted with the other nodes).
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.id < y.id; });
  for (const auto& atom : atoms)
    if (atom.kind == AtomKind::Node) res.graph.add_atom_with_id(atom.id, atom.kind, {}, atom.label);
  for (const auto& atom : atoms)
    if (atom.kind == AtomKind::Link)
      res.graph.add_atom_with_id(atom.id, atom.kind, atom.targets, atom.label);

  res.hom.cost = 1;
  res.hom.elementary_steps = {MergeStep{a, b, merged}};
  for (const auto& atom : g.atoms()) {
    AtomId img = atom.id;
    if (img == a || img == b) img = merged;
    auto it = moved.find(img);
    if (it != moved.end()) img = it->second;
    res.hom.vertex_map[atom.id] = img;
  }
  return res;
}

SplitResult split_node(const Hypergraph& g, AtomId a, const std::vector<AtomId>& first_cell) {
  const Atom& na = g.atom(a);
  if (na.kind != AtomKind::Node) throw Error(Errc::merge_non_node, "split expects a node");
  auto incident = g.incident_links(a);
  std::set<AtomId> incident_set(incident.begin(), incident.end());
  std::set<AtomId> cell1(first_cell.begin(), first_cell.end());
  if (cell1.size() != first_cell.size())
    throw Error(Errc::bad_partition, "repeated link id in partition cell");
  for (AtomId l : cell1)
    if (!incident_set.count(l))
      throw Error(Errc::bad_partition,
                  "link " + std::to_string(l) + " is not incident to node " + std::to_string(a));

  SplitResult res;
  AtomId c1 = g.fresh_id();
  AtomId c2 = c1 + 1;
  res.child1 = c1;
  res.child2 = c2;
  std::vector<Atom> atoms;
  for (const auto& atom : g.atoms()) {
    if (atom.id == a) continue;
    Atom copy = atom;
    if (copy.kind == AtomKind::Link && incident_set.count(copy.id)) {
      AtomId child = cell1.count(copy.id) ? c1 : c2;
      for (auto& t : copy.targets)
        if (t == a) t = child;
    }
    atoms.push_back(std::move(copy));
  }
  Atom ch1;
  ch1.id = c1;
  ch1.kind = AtomKind::Node;
  ch1.label = na.label;
  Atom ch2 = ch1;
  ch2.id = c2;
  atoms.push_back(std::move(ch1));
  atoms.push_back(std::move(ch2));
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.id < y.id; });
  for (const auto& atom : atoms)
    if (atom.kind == AtomKind::Node) res.graph.add_atom_with_id(atom.id, atom.kind, {}, atom.label);
  for (const auto& atom : atoms)
    if (atom.kind == AtomKind::Link)
      res.graph.add_atom_with_id(atom.id, atom.kind, atom.targets, atom.label);
  return res;
}

std::optional<Homomorphism> complete_homomorphism(const Hypergraph& src, const Hypergraph& dst,
                                                  const std::map<AtomId, AtomId>& node_map,
                                                  const Rational& merge_step_cost) {
  Homomorphism h;
  h.vertex_map = node_map;
  for (const auto& atom : src.atoms()) {
    if (atom.kind != AtomKind::Link) {
      auto it = node_map.find(atom.id);
      if (it == node_map.end() || !dst.has(it->second)) return std::nullopt;
      if (type_of(atom) != type_of(dst.atom(it->second))) return std::nullopt;
      continue;
    }
    std::vector<AtomId> image;
    image.reserve(atom.targets.size());
    for (AtomId t : atom.targets) {
      auto it = h.vertex_map.find(t);
      if (it == h.vertex_map.end()) return std::nullopt;
      image.push_back(it->second);
    }
    AtomId found = 0;
    bool ok = false;
    for (const auto& cand : dst.atoms()) {
      if (cand.kind != AtomKind::Link || cand.targets != image || type_of(cand) != type_of(atom))
        continue;
      found = cand.id;
      ok = true;
      break;  // lowest insertion-order representative
    }
    if (!ok) return std::nullopt;
    h.vertex_map[atom.id] = found;
  }
  // Implied merge steps: nodes sharing an image collapse onto it pairwise.
  std::map<AtomId, std::vector<AtomId>> fibers;
  for (const auto& atom : src.atoms())
    if (atom.kind == AtomKind::Node) fibers[node_map.at(atom.id)].push_back(atom.id);
  std::size_t merges = 0;
  for (const auto& [img, fiber] : fibers)
    for (std::size_t i = 1; i < fiber.size(); ++i) {
      h.elementary_steps.push_back(MergeStep{fiber[i - 1], fiber[i], img});
      ++merges;
    }
  h.cost = merge_step_cost * Rational(static_cast<unsigned>(merges));
  return h;
}

namespace {

struct HomSearcher {
  const Hypergraph& src;
  const Hypergraph& dst;
  const HomSearchOptions& opts;
  HomSearchResult out;
  std::vector<const Atom*> src_nodes;
  std::vector<const Atom*> dst_nodes;
  std::map<AtomId, AtomId> assign;
  std::map<AtomId, int> image_use;  // distinct-image bookkeeping
  std::vector<const Atom*> src_links;

  HomSearcher(const Hypergraph& s, const Hypergraph& d, const HomSearchOptions& o)
      : src(s), dst(d), opts(o) {
    for (const auto& a : src.atoms())
      if (a.kind == AtomKind::Node) src_nodes.push_back(&a);
    for (const auto& a : dst.atoms())
      if (a.kind == AtomKind::Node) dst_nodes.push_back(&a);
    for (const auto& a : src.atoms())
      if (a.kind == AtomKind::Link) src_links.push_back(&a);
  }

  // Links whose targets are all assigned must map onto a dst link.
  bool links_consistent() const {
    for (const Atom* l : src_links) {
      bool all = true;
      std::vector<AtomId> image;
      for (AtomId t : l->targets) {
        const Atom& ta = src.atom(t);
        if (ta.kind == AtomKind::Link) {
          all = false;  // checked by complete_homomorphism at the leaf
          break;
        }
        auto it = assign.find(t);
        if (it == assign.end()) {
          all = false;
          break;
        }
        image.push_back(it->second);
      }
      if (!all) continue;
      bool ok = false;
      for (const auto& cand : dst.atoms())
        if (cand.kind == AtomKind::Link && type_of(cand) == type_of(*l) &&
            cand.targets == image) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  }

  std::size_t merges_so_far() const {
    std::size_t assigned = assign.size();
    return assigned - image_use.size();
  }

  void search(std::size_t depth) {
    if (out.homs.size() >= opts.max_results) {
      out.truncated = true;
      return;
    }
    if (depth == src_nodes.size()) {
      auto h = complete_homomorphism(src, dst, assign, opts.merge_step_cost);
      if (h && (!opts.max_cost || h->cost <= *opts.max_cost)) out.homs.push_back(std::move(*h));
      return;
    }
    const Atom& pat = *src_nodes[depth];
    for (const Atom* cand : dst_nodes) {
      if (type_of(pat) != type_of(*cand)) continue;
      assign[pat.id] = cand->id;
      ++image_use[cand->id];
      bool cost_ok = true;
      if (opts.max_cost) {
        Rational lower = opts.merge_step_cost * Rational(static_cast<unsigned>(merges_so_far()));
        cost_ok = lower <= *opts.max_cost;
      }
      if (cost_ok && links_consistent()) search(depth + 1);
      auto it = image_use.find(cand->id);
      if (--(it->second) == 0) image_use.erase(it);
      assign.erase(pat.id);
      if (out.truncated && out.homs.size() >= opts.max_results) return;
    }
  }
};

}  // namespace

HomSearchResult find_homomorphisms(const Hypergraph& src, const Hypergraph& dst,
                                   const HomSearchOptions& opts) {
  HomSearcher searcher(src, dst, opts);
  double space = std::pow(static_cast<double>(searcher.dst_nodes.size()),
                          static_cast<double>(searcher.src_nodes.size()));
  HomSearchResult& out = searcher.out;
  if (space > opts.exact_threshold) out.truncated = true;
  if (!searcher.src_nodes.empty() && searcher.dst_nodes.empty()) return out;
  searcher.search(0);
  if (out.homs.size() > opts.max_results) {
    out.homs.resize(opts.max_results);
    out.truncated = true;
  }
  return out;
}

namespace {

struct IsoSearcher {
  const Hypergraph& g1;
  const Hypergraph& g2;
  std::vector<const Atom*> nodes1, nodes2;
  std::map<AtomId, AtomId> assign;
  std::map<AtomId, AtomId> inverse;
  IsoResult result;

  IsoSearcher(const Hypergraph& a, const Hypergraph& b) : g1(a), g2(b) {
    for (const auto& at : g1.atoms())
      if (at.kind == AtomKind::Node) nodes1.push_back(&at);
    for (const auto& at : g2.atoms())
      if (at.kind == AtomKind::Node) nodes2.push_back(&at);
  }

  // Bidirectional incremental pruning over node-only links: any link fully
  // inside the assigned region must correspond in both directions (with
  // multiplicity).
  bool region_links_ok() const {
    auto count_links = [](const Hypergraph& g, const std::map<AtomId, AtomId>& m,
                          std::multiset<std::string>* out) {
      for (const auto& l : g.atoms()) {
        if (l.kind != AtomKind::Link) continue;
        std::string key = type_of(l);
        bool inside = true;
        for (AtomId t : l.targets) {
          if (g.atom(t).kind == AtomKind::Link) {
            inside = false;  // meta-links handled by the full multiset check
            break;
          }
          auto it = m.find(t);
          if (it == m.end()) {
            inside = false;
            break;
          }
          key += "," + std::to_string(it->second);
        }
        if (inside) out->insert(key);
      }
    };
    std::multiset<std::string> in1, in2;
    count_links(g1, assign, &in1);
    std::map<AtomId, AtomId> ident;
    for (const auto& [u, v] : assign) ident[v] = v;
    count_links(g2, ident, &in2);
    return in1 == in2;
  }

  // Multiset link correspondence under the node bijection.
  bool links_match(std::map<AtomId, AtomId>* link_map) {
    std::multimap<std::pair<std::string, std::vector<AtomId>>, AtomId> pool;
    for (const auto& a : g2.atoms())
      if (a.kind == AtomKind::Link) pool.emplace(std::make_pair(type_of(a), a.targets), a.id);
    // Links may target links; resolve in dependency order.
    std::vector<const Atom*> pending;
    for (const auto& a : g1.atoms())
      if (a.kind == AtomKind::Link) pending.push_back(&a);
    std::map<AtomId, AtomId> local = assign;
    while (!pending.empty()) {
      std::vector<const Atom*> still;
      bool progress = false;
      for (const Atom* l : pending) {
        std::vector<AtomId> image;
        bool ready = true;
        for (AtomId t : l->targets) {
          auto it = local.find(t);
          if (it == local.end()) {
            ready = false;
            break;
          }
          image.push_back(it->second);
        }
        if (!ready) {
          still.push_back(l);
          continue;
        }
        auto key = std::make_pair(type_of(*l), image);
        auto it = pool.find(key);
        if (it == pool.end()) return false;
        local[l->id] = it->second;
        pool.erase(it);
        progress = true;
      }
      if (!progress) return false;
      pending = std::move(still);
    }
    if (!pool.empty()) return false;
    if (link_map) *link_map = std::move(local);
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == nodes1.size()) {
      std::map<AtomId, AtomId> full;
      if (!links_match(&full)) return false;
      result.isomorphic = true;
      result.witness = std::move(full);
      return true;
    }
    const Atom& pat = *nodes1[depth];
    for (const Atom* cand : nodes2) {
      if (inverse.count(cand->id) || type_of(pat) != type_of(*cand)) continue;
      assign[pat.id] = cand->id;
      inverse[cand->id] = pat.id;
      if (region_links_ok() && search(depth + 1)) return true;
      inverse.erase(cand->id);
      assign.erase(pat.id);
    }
    return false;
  }
};

}  // namespace

IsoResult is_isomorphic(const Hypergraph& g1, const Hypergraph& g2) {
  IsoResult res;
  if (g1.node_count() != g2.node_count() || g1.link_count() != g2.link_count()) return res;
  std::multiset<std::string> t1, t2;
  for (const auto& a : g1.atoms()) t1.insert(type_of(a) + (a.kind == AtomKind::Link ? "#L" : "#N"));
  for (const auto& a : g2.atoms()) t2.insert(type_of(a) + (a.kind == AtomKind::Link ? "#L" : "#N"));
  if (t1 != t2) return res;
  IsoSearcher searcher(g1, g2);
  searcher.search(0);
  return searcher.result;
}

}  // namespace cogsyn
