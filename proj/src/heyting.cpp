#include "cogsyn/heyting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cogsyn/canonical.hpp"

namespace cogsyn {

namespace {
const std::string& type_of(const Atom& a) {
  static const std::string empty;
  return a.label ? a.label->type_name : empty;
}
}  // namespace

JoinResult join(const Hypergraph& a, const Hypergraph& b) {
  JoinResult res;
  res.graph.name = a.name.empty() && b.name.empty() ? "" : a.name + "+" + b.name;
  auto copy_side = [&res](const Hypergraph& g, std::map<AtomId, AtomId>& m) {
    // Nodes first, then links in dependency order (links may target links).
    for (const auto& atom : g.atoms())
      if (atom.kind == AtomKind::Node) m[atom.id] = res.graph.add_node(atom.label);
    std::vector<const Atom*> pending;
    for (const auto& atom : g.atoms())
      if (atom.kind == AtomKind::Link) pending.push_back(&atom);
    while (!pending.empty()) {
      std::vector<const Atom*> still;
      for (const Atom* l : pending) {
        bool ready = true;
        std::vector<AtomId> tgts;
        for (AtomId t : l->targets) {
          auto it = m.find(t);
          if (it == m.end()) {
            ready = false;
            break;
          }
          tgts.push_back(it->second);
        }
        if (ready)
          m[l->id] = res.graph.add_link(std::move(tgts), l->label);
        else
          still.push_back(l);
      }
      pending = std::move(still);
    }
  };
  copy_side(a, res.left_map);
  copy_side(b, res.right_map);
  return res;
}

MeetResult meet(const Hypergraph& a, const Hypergraph& b) {
  MeetResult res;
  std::map<std::pair<AtomId, AtomId>, AtomId> node_of;
  for (const auto& na : a.atoms()) {
    if (na.kind != AtomKind::Node) continue;
    for (const auto& nb : b.atoms()) {
      if (nb.kind != AtomKind::Node) continue;
      std::optional<Label> lab;
      if (na.label || nb.label) {
        Label l;
        l.type_name = (na.label ? na.label->type_name : "") + "&" +
                      (nb.label ? nb.label->type_name : "");
        lab = std::move(l);
      }
      AtomId id = res.graph.add_node(std::move(lab));
      node_of[{na.id, nb.id}] = id;
      res.pairs[id] = {na.id, nb.id};
    }
  }
  for (const auto& la : a.atoms()) {
    if (la.kind != AtomKind::Link) continue;
    bool meta = false;
    for (AtomId t : la.targets)
      if (a.atom(t).kind == AtomKind::Link) meta = true;
    if (meta) continue;  // products are defined over node-targeting links
    for (const auto& lb : b.atoms()) {
      if (lb.kind != AtomKind::Link || lb.targets.size() != la.targets.size() ||
          type_of(la) != type_of(lb))
        continue;
      bool meta2 = false;
      for (AtomId t : lb.targets)
        if (b.atom(t).kind == AtomKind::Link) meta2 = true;
      if (meta2) continue;
      std::vector<AtomId> tgts;
      tgts.reserve(la.targets.size());
      for (std::size_t i = 0; i < la.targets.size(); ++i)
        tgts.push_back(node_of.at({la.targets[i], lb.targets[i]}));
      std::optional<Label> lab;
      if (la.label || lb.label) {
        Label l;
        l.type_name = type_of(la);
        if (la.label && lb.label && !la.label->weights.empty() &&
            la.label->weights.size() == lb.label->weights.size()) {
          for (std::size_t i = 0; i < la.label->weights.size(); ++i)
            l.weights.push_back(la.label->weights[i] * lb.label->weights[i]);
        }
        lab = std::move(l);
      }
      AtomId id = res.graph.add_link(std::move(tgts), std::move(lab));
      res.pairs[id] = {la.id, lb.id};
    }
  }
  return res;
}

namespace {

// The single (type, arity) link signature across both operands.
std::pair<std::string, std::size_t> link_signature(const Hypergraph& a, const Hypergraph& b) {
  std::set<std::pair<std::string, std::size_t>> sigs;
  for (const Hypergraph* g : {&a, &b})
    for (const auto& atom : g->atoms())
      if (atom.kind == AtomKind::Link) sigs.insert({type_of(atom), atom.targets.size()});
  if (sigs.size() > 1)
    throw Error(Errc::ambiguous_signature,
                "exponent needs a single link (type, arity) signature; found " +
                    std::to_string(sigs.size()));
  if (sigs.empty()) return {"", 2};  // degenerate: no links on either side
  return *sigs.begin();
}

}  // namespace

ExponentResult exponent(const Hypergraph& a, const Hypergraph& b, const ExponentOptions& opts) {
  auto [sig_type, arity] = opts.signature ? *opts.signature : link_signature(a, b);
  auto a_nodes = a.node_ids();
  auto b_nodes = b.node_ids();
  double count = std::pow(static_cast<double>(a_nodes.size()),
                          static_cast<double>(b_nodes.size()));
  if (count > static_cast<double>(opts.max_nodes))
    throw Error(Errc::exponent_too_large,
                "exponent would have " + std::to_string(count) + " nodes (cap " +
                    std::to_string(opts.max_nodes) + ")");

  ExponentResult res;
  std::vector<std::map<AtomId, AtomId>> fns;
  if (b_nodes.empty()) {
    fns.push_back({});  // the unique empty function
  } else if (!a_nodes.empty()) {
    std::vector<std::size_t> idx(b_nodes.size(), 0);
    while (true) {
      std::map<AtomId, AtomId> f;
      for (std::size_t i = 0; i < b_nodes.size(); ++i) f[b_nodes[i]] = a_nodes[idx[i]];
      fns.push_back(std::move(f));
      std::size_t p = 0;
      while (p < idx.size() && ++idx[p] == a_nodes.size()) idx[p++] = 0;
      if (p == idx.size()) break;
    }
  }
  std::vector<AtomId> fn_atom(fns.size());
  for (std::size_t i = 0; i < fns.size(); ++i) {
    fn_atom[i] = res.graph.add_node(std::nullopt);
    res.functions[fn_atom[i]] = fns[i];
  }

  // B's links of the signature, as target-index tuples into b_nodes order.
  std::vector<std::vector<AtomId>> b_links;
  for (const auto& l : b.atoms())
    if (l.kind == AtomKind::Link && type_of(l) == sig_type && l.targets.size() == arity)
      b_links.push_back(l.targets);
  auto a_has_link = [&](const std::vector<AtomId>& tgts) {
    for (const auto& l : a.atoms())
      if (l.kind == AtomKind::Link && type_of(l) == sig_type && l.targets == tgts) return true;
    return false;
  };

  // Link (F1..Fk) iff every B-link maps into an A-link pointwise.
  std::vector<std::size_t> tuple(arity, 0);
  if (!fns.empty()) {
    while (true) {
      bool ok = true;
      for (const auto& bl : b_links) {
        std::vector<AtomId> image(arity);
        for (std::size_t i = 0; i < arity; ++i) image[i] = fns[tuple[i]].at(bl[i]);
        if (!a_has_link(image)) {
          ok = false;
          break;
        }
      }
      if (ok && !sig_type.empty()) {
        std::vector<AtomId> tgts(arity);
        for (std::size_t i = 0; i < arity; ++i) tgts[i] = fn_atom[tuple[i]];
        Label l;
        l.type_name = sig_type;
        res.graph.add_link(std::move(tgts), std::move(l));
      }
      std::size_t p = 0;
      while (p < arity && ++tuple[p] == fns.size()) tuple[p++] = 0;
      if (p == arity) break;
    }
  }
  return res;
}

ExponentResult implication(const Hypergraph& b, const Hypergraph& a, const ExponentOptions& opts) {
  return exponent(a, b, opts);
}

bool cost_leq(const Hypergraph& a, const Hypergraph& a1, const CostLeqOptions& opts) {
  HomSearchOptions hopts;
  hopts.max_results = 1;
  if (find_homomorphisms(a1, a, hopts).homs.empty()) return false;
  std::size_t want = a.size();
  if (want == 0) return true;  // the empty graph starts every construction
  if (want > a1.size()) return false;

  // BFS over target-closed atom subsets of a1, looking for one isomorphic
  // to a at the target size.
  std::string target = canonical_form(a);
  const auto& atoms = a1.atoms();
  std::size_t n = atoms.size();
  if (n > 63) throw Error(Errc::undecided_at_scale, "construction search over > 63 atoms");
  std::map<AtomId, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[atoms[i].id] = i;

  auto induced = [&](std::uint64_t mask) {
    Hypergraph sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) {
        if (atoms[i].kind == AtomKind::Node)
          sub.add_atom_with_id(atoms[i].id, atoms[i].kind, {}, atoms[i].label);
      }
    for (std::size_t i = 0; i < n; ++i)
      if ((mask & (1ull << i)) && atoms[i].kind == AtomKind::Link)
        sub.add_atom_with_id(atoms[i].id, atoms[i].kind, atoms[i].targets, atoms[i].label);
    return sub;
  };

  // Memo = visited atom subsets (all insertion orders reaching a subset are
  // equivalent); canonical forms are compared at the target size only, since
  // isomorphic subsets embedded differently may extend differently.
  std::set<std::uint64_t> frontier{0};
  std::set<std::uint64_t> seen_masks{0};
  std::size_t states = 0;
  for (std::size_t sz = 0; sz < want; ++sz) {
    std::set<std::uint64_t> next;
    for (std::uint64_t mask : frontier) {
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1ull << i)) continue;
        bool addable = true;
        for (AtomId t : atoms[i].targets)
          if (!(mask & (1ull << pos[t]))) {
            addable = false;
            break;
          }
        if (!addable) continue;
        std::uint64_t grown = mask | (1ull << i);
        if (!seen_masks.insert(grown).second) continue;
        if (++states > opts.state_budget)
          throw Error(Errc::undecided_at_scale, "construction-path search exceeded state budget");
        if (sz + 1 == want) {
          if (canonical_form(induced(grown)) == target) return true;
        } else {
          next.insert(grown);
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return false;
}

}  // namespace cogsyn
