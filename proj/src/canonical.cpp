#include "cogsyn/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace cogsyn {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace {

struct Canonicalizer {
  const Hypergraph& g;
  const CanonicalOptions& opts;
  std::vector<const Atom*> atoms;            // stable order
  std::map<AtomId, std::size_t> pos;         // id -> index into atoms
  std::size_t leaves = 0;

  Canonicalizer(const Hypergraph& graph, const CanonicalOptions& o) : g(graph), opts(o) {
    for (const auto& a : g.atoms()) atoms.push_back(&a);
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom* x, const Atom* y) { return x->id < y->id; });
    for (std::size_t i = 0; i < atoms.size(); ++i) pos[atoms[i]->id] = i;
  }

  static std::string esc(const std::string& s) { return std::to_string(s.size()) + ":" + s; }

  std::string initial_color(const Atom& a) const {
    std::string c = a.kind == AtomKind::Node ? "n" : ("l" + std::to_string(a.targets.size()));
    c += esc(a.label ? a.label->type_name : "");
    return c;
  }

  // One refinement round: each atom's new color folds in, for links, the
  // colors of its targets in order and, for all atoms, the multiset of
  // (link color, position) over incident links.
  std::vector<int> refine(std::vector<int> color) const {
    while (true) {
      std::vector<std::string> sig(atoms.size());
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        std::ostringstream s;
        s << color[i];
        if (atoms[i]->kind == AtomKind::Link) {
          s << "T";
          for (AtomId t : atoms[i]->targets) s << "," << color[pos.at(t)];
        }
        std::vector<std::string> inc;
        for (std::size_t j = 0; j < atoms.size(); ++j) {
          if (atoms[j]->kind != AtomKind::Link) continue;
          for (std::size_t k = 0; k < atoms[j]->targets.size(); ++k)
            if (atoms[j]->targets[k] == atoms[i]->id)
              inc.push_back(std::to_string(color[j]) + "@" + std::to_string(k));
        }
        std::sort(inc.begin(), inc.end());
        s << "I";
        for (const auto& x : inc) s << ";" << x;
        sig[i] = s.str();
      }
      // Rank by (old color, signature): the new partition refines the old
      // one in the old order, so a stable partition keeps its colors and the
      // loop reaches a fixpoint. (Ranking by the signature string alone would
      // reshuffle stable classes through the decimal prefix and never
      // converge once ten or more classes exist.)
      std::map<std::pair<int, std::string>, int> palette;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        palette.emplace(std::make_pair(color[i], sig[i]), 0);
      int next = 0;
      for (auto& [k, v] : palette) v = next++;
      std::vector<int> fresh(atoms.size());
      for (std::size_t i = 0; i < atoms.size(); ++i)
        fresh[i] = palette[{color[i], sig[i]}];
      if (fresh == color) return color;
      color = std::move(fresh);
    }
  }

  // Serialization under a total order: atoms sorted by (color, then branch
  // history); links refer to target positions.
  std::string emit(const std::vector<std::size_t>& order) const {
    std::vector<std::size_t> where(atoms.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) where[order[rank]] = rank;
    std::ostringstream out;
    out << "H1;";
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      const Atom& a = *atoms[order[rank]];
      if (a.kind == AtomKind::Node) {
        out << "n" << esc(a.label ? a.label->type_name : "") << ";";
      } else {
        out << "l" << esc(a.label ? a.label->type_name : "") << "(";
        for (std::size_t k = 0; k < a.targets.size(); ++k) {
          if (k) out << ",";
          out << where[pos.at(a.targets[k])];
        }
        out << ");";
      }
    }
    return out.str();
  }

  // Returns the minimal string reachable from this coloring.
  std::string descend(std::vector<int> color) {
    color = refine(std::move(color));
    // Group by color; first class with >1 member branches.
    std::map<int, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < atoms.size(); ++i) classes[color[i]].push_back(i);
    const std::vector<std::size_t>* branch_class = nullptr;
    for (const auto& [c, members] : classes)
      if (members.size() > 1) {
        branch_class = &members;
        break;
      }
    if (!branch_class) {
      if (++leaves > opts.branch_budget)
        throw Error(Errc::too_large, "canonical form branch budget exceeded");
      std::vector<std::size_t> order(atoms.size());
      for (std::size_t i = 0; i < atoms.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](std::size_t x, std::size_t y) { return color[x] < color[y]; });
      return emit(order);
    }
    // Branch once per syntactic-duplicate group: atoms of the class whose
    // entire incident structure is literally identical (isolated nodes of one
    // label; exactly-parallel links) are swapped by a transposition
    // automorphism, so their branches emit the same string.
    std::vector<std::size_t> reps;
    std::set<std::string> dup_keys;
    for (std::size_t member : *branch_class) {
      const Atom& a = *atoms[member];
      std::string key;
      if (a.kind == AtomKind::Link) {
        key = "L";
        for (AtomId t : a.targets) key += "," + std::to_string(t);
      } else if (g.incident_links(a.id).empty()) {
        key = "N-isolated";  // same class => same label already
      } else {
        key = "N" + std::to_string(a.id);  // non-isolated nodes never collide
      }
      if (dup_keys.insert(std::move(key)).second) reps.push_back(member);
    }
    int fresh = -1;  // strictly smaller than every palette color
    std::string best;
    for (std::size_t member : reps) {
      if (leaves > opts.branch_budget)
        throw Error(Errc::too_large, "canonical form branch budget exceeded");
      std::vector<int> next = color;
      next[member] = fresh;
      std::string s = descend(std::move(next));
      if (best.empty() || s < best) best = std::move(s);
    }
    return best;
  }

  std::string run() {
    if (atoms.empty()) return "H0;";
    if (atoms.size() > opts.max_atoms)
      throw Error(Errc::too_large, "canonical form over " + std::to_string(atoms.size()) +
                                       " atoms exceeds the size bound");
    std::vector<std::string> init(atoms.size());
    std::map<std::string, int> palette;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      init[i] = initial_color(*atoms[i]);
      palette.emplace(init[i], 0);
    }
    int next = 0;
    for (auto& [k, v] : palette) v = next++;
    std::vector<int> color(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) color[i] = palette[init[i]];
    return descend(std::move(color));
  }
};

}  // namespace

std::string canonical_form(const Hypergraph& g, const CanonicalOptions& opts) {
  Canonicalizer c(g, opts);
  return c.run();
}

std::string canonical_digest(const Hypergraph& g, const CanonicalOptions& opts) {
  return fnv1a64_hex(canonical_form(g, opts));
}

}  // namespace cogsyn
