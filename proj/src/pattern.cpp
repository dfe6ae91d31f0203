#include "cogsyn/pattern.hpp"

#include <algorithm>
#include <set>

namespace cogsyn {

HPattern HPattern::atomic(Hypergraph body) {
  HPattern p;
  p.kind = Kind::Atomic;
  p.body = std::move(body);
  for (const auto& a : p.body.atoms())
    if (a.kind == AtomKind::Link && a.label && a.label->type_name == kVariableType)
      throw Error(Errc::bad_input, "variable atoms must be nodes, atom " + std::to_string(a.id));
  return p;
}

HPattern HPattern::conj(HPattern a, HPattern b) {
  HPattern p;
  p.kind = Kind::And;
  p.left = std::make_shared<HPattern>(std::move(a));
  p.right = std::make_shared<HPattern>(std::move(b));
  return p;
}

HPattern HPattern::disj(HPattern a, HPattern b) {
  HPattern p;
  p.kind = Kind::Or;
  p.left = std::make_shared<HPattern>(std::move(a));
  p.right = std::make_shared<HPattern>(std::move(b));
  return p;
}

HPattern HPattern::negation(HPattern a) {
  HPattern p;
  p.kind = Kind::Not;
  p.left = std::make_shared<HPattern>(std::move(a));
  return p;
}

std::vector<AtomId> pattern_variables(const Hypergraph& body) {
  std::vector<AtomId> vars;
  for (const auto& a : body.atoms())
    if (a.kind == AtomKind::Node && a.label && a.label->type_name == kVariableType)
      vars.push_back(a.id);
  std::sort(vars.begin(), vars.end());
  return vars;
}

namespace {

bool is_variable(const Atom& a) {
  return a.kind == AtomKind::Node && a.label && a.label->type_name == kVariableType;
}

// Backtracking embedding of an atomic body into g. The assignment maps every
// body atom; label types must agree except for variables, which accept any
// node. Non-injective assignments are allowed (two body atoms may share an
// image), matching the brute-force oracle semantics.
struct AtomicMatcher {
  const Hypergraph& body;
  const Hypergraph& g;
  std::vector<const Atom*> order;           // nodes first, then links
  std::map<AtomId, AtomId> assign;
  std::set<Binding> found;

  AtomicMatcher(const Hypergraph& b, const Hypergraph& graph) : body(b), g(graph) {
    for (const auto& a : body.atoms())
      if (a.kind == AtomKind::Node) order.push_back(&a);
    for (const auto& a : body.atoms())
      if (a.kind == AtomKind::Link) order.push_back(&a);
  }

  bool candidate_ok(const Atom& pat, const Atom& cand) const {
    if (is_variable(pat)) return cand.kind == AtomKind::Node;
    if (pat.kind != cand.kind) return false;
    const std::string& pt = pat.label ? pat.label->type_name : std::string();
    const std::string& ct = cand.label ? cand.label->type_name : std::string();
    if (pt != ct) return false;
    if (pat.kind == AtomKind::Link) {
      if (pat.targets.size() != cand.targets.size()) return false;
      for (std::size_t i = 0; i < pat.targets.size(); ++i) {
        auto it = assign.find(pat.targets[i]);
        if (it != assign.end() && it->second != cand.targets[i]) return false;
      }
    }
    return true;
  }

  void run(std::size_t depth) {
    if (depth == order.size()) {
      Binding b;
      for (const Atom* a : order)
        if (is_variable(*a)) b[a->id] = assign[a->id];
      found.insert(std::move(b));
      return;
    }
    const Atom& pat = *order[depth];
    for (const auto& cand : g.atoms()) {
      if (!candidate_ok(pat, cand)) continue;
      assign[pat.id] = cand.id;
      run(depth + 1);
      assign.erase(pat.id);
    }
  }
};

std::vector<Binding> eval(const HPattern& p, const Hypergraph& g, bool negation_allowed);

std::vector<Binding> eval_atomic(const HPattern& p, const Hypergraph& g) {
  AtomicMatcher m(p.body, g);
  m.run(0);
  return {m.found.begin(), m.found.end()};
}

bool consistent(const Binding& a, const Binding& b) {
  for (const auto& [var, tgt] : a) {
    auto it = b.find(var);
    if (it != b.end() && it->second != tgt) return false;
  }
  return true;
}

std::vector<Binding> eval_and(const HPattern& p, const Hypergraph& g) {
  const HPattern& l = *p.left;
  const HPattern& r = *p.right;
  bool lneg = l.kind == HPattern::Kind::Not;
  bool rneg = r.kind == HPattern::Kind::Not;
  if (lneg && rneg)
    throw Error(Errc::unbounded_negation, "conjunction of two negations has no positive side");
  if (lneg || rneg) {
    const HPattern& pos = lneg ? r : l;
    const HPattern& neg = lneg ? *l.left : *r.left;
    auto pos_bindings = eval(pos, g, false);
    auto neg_bindings = eval(neg, g, false);
    std::vector<Binding> out;
    for (const auto& b : pos_bindings) {
      bool blocked = false;
      for (const auto& nb : neg_bindings)
        if (consistent(b, nb)) {
          blocked = true;
          break;
        }
      if (!blocked) out.push_back(b);
    }
    return out;
  }
  auto lb = eval(l, g, false);
  auto rb = eval(r, g, false);
  std::set<Binding> merged;
  for (const auto& a : lb)
    for (const auto& b : rb) {
      if (!consistent(a, b)) continue;
      Binding m = a;
      m.insert(b.begin(), b.end());
      merged.insert(std::move(m));
    }
  return {merged.begin(), merged.end()};
}

std::vector<Binding> eval(const HPattern& p, const Hypergraph& g, bool negation_allowed) {
  switch (p.kind) {
    case HPattern::Kind::Atomic:
      return eval_atomic(p, g);
    case HPattern::Kind::And:
      return eval_and(p, g);
    case HPattern::Kind::Or: {
      auto lb = eval(*p.left, g, false);
      auto rb = eval(*p.right, g, false);
      std::set<Binding> u(lb.begin(), lb.end());
      u.insert(rb.begin(), rb.end());
      return {u.begin(), u.end()};
    }
    case HPattern::Kind::Not:
      if (!negation_allowed)
        throw Error(Errc::unbounded_negation,
                    "negation is only defined relative to a conjoined positive pattern");
      // Reached only from eval_and, which unwraps Not itself.
      throw Error(Errc::unbounded_negation, "free-standing negation");
  }
  return {};
}

}  // namespace

std::vector<Binding> match_pattern(const HPattern& pattern, const Hypergraph& g) {
  auto out = eval(pattern, g, false);
  std::sort(out.begin(), out.end());  // std::map comparison = lexicographic (var,target) pairs
  return out;
}

Rational match_cover_fraction(const Hypergraph& body, const Hypergraph& g) {
  const auto& atoms = body.atoms();
  std::size_t n = atoms.size();
  if (n == 0) return 1;
  if (n > 20) throw Error(Errc::too_large, "partial-cover search over " + std::to_string(n) + " atoms");
  std::map<AtomId, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[atoms[i].id] = i;
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t count = static_cast<std::size_t>(__builtin_popcount(mask));
    if (count <= best) continue;
    // Target-closed: a link is only eligible with all of its targets.
    bool closed = true;
    for (std::size_t i = 0; i < n && closed; ++i) {
      if (!(mask & (1u << i))) continue;
      for (AtomId t : atoms[i].targets)
        if (!(mask & (1u << pos[t]))) {
          closed = false;
          break;
        }
    }
    if (!closed) continue;
    Hypergraph sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.add_atom_with_id(atoms[i].id, atoms[i].kind, atoms[i].targets,
                                                 atoms[i].label);
    if (!match_pattern(HPattern::atomic(std::move(sub)), g).empty()) best = count;
    if (best == n) break;
  }
  return Rational(best, n);
}

}  // namespace cogsyn
