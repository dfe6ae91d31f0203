#include "cogsyn/hypergraph_agent.hpp"

#include <algorithm>
#include <set>

#include "cogsyn/pattern.hpp"

namespace cogsyn {

namespace {

const std::string& type_of(const Hypergraph& g, AtomId id) { return g.label_type(id); }

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

// Node neighbors: nodes sharing a link with the cognit, ascending ids.
std::vector<AtomId> node_neighbors(const Hypergraph& g, AtomId id) {
  std::set<AtomId> out;
  for (AtomId l : g.incident_links(id))
    for (AtomId t : g.atom(l).targets)
      if (t != id && g.atom(t).kind == AtomKind::Node) out.insert(t);
  return {out.begin(), out.end()};
}

void option_create(Hypergraph& g, AtomId cognit, const std::string& made_type,
                   HActivationResult& res) {
  Label lab;
  lab.type_name = made_type;
  auto neighbors = node_neighbors(g, cognit);
  HEffect eff;
  eff.kind = HEffect::Kind::Create;
  if (neighbors.empty())
    eff.atoms = {g.add_node(std::move(lab))};
  else
    eff.atoms = {g.add_link(std::move(neighbors), std::move(lab))};
  res.applied.push_back(std::move(eff));
}

bool has_result_link(const Hypergraph& g, AtomId id) {
  for (AtomId l : g.incident_links(id))
    if (type_of(g, l) == "result") return true;
  return false;
}

void activate_rec(Hypergraph& g, AtomId cognit, AtomId return_to, std::size_t depth,
                  HActivationResult& res);

void option_call(Hypergraph& g, AtomId cognit, std::size_t depth, HActivationResult& res) {
  if (has_result_link(g, cognit)) {  // computation finished; hold the result
    res.applied.push_back(HEffect{HEffect::Kind::None, {}});
    return;
  }
  for (AtomId l : g.incident_links(cognit)) {
    const Atom& link = g.atom(l);
    if (type_of(g, l) != "next" || link.targets.size() < 2 || link.targets[0] != cognit) continue;
    AtomId callee = link.targets[1];
    HEffect eff;
    eff.kind = HEffect::Kind::Activate;
    eff.atoms = {callee};
    res.applied.push_back(std::move(eff));
    activate_rec(g, callee, cognit, depth + 1, res);
    return;
  }
  res.applied.push_back(HEffect{HEffect::Kind::None, {}});
}

void option_const(Hypergraph& g, AtomId cognit, AtomId return_to, std::size_t depth,
                  const std::string& value_type, HActivationResult& res) {
  Label vlab;
  vlab.type_name = value_type;
  AtomId value = g.add_node(std::move(vlab));
  HEffect mk;
  mk.kind = HEffect::Kind::Create;
  mk.atoms = {value};
  res.applied.push_back(std::move(mk));
  if (return_to != cognit && g.has(return_to)) {
    Label rlab;
    rlab.type_name = "result";
    AtomId rl = g.add_link({return_to, value}, std::move(rlab));
    HEffect link_eff;
    link_eff.kind = HEffect::Kind::Create;
    link_eff.atoms = {rl};
    res.applied.push_back(std::move(link_eff));
    HEffect back;
    back.kind = HEffect::Kind::Activate;
    back.atoms = {return_to};
    res.applied.push_back(std::move(back));
    activate_rec(g, return_to, return_to, depth + 1, res);
  }
}

void option_match(Hypergraph& g, AtomId cognit, HActivationResult& res) {
  // Pattern body: atoms marked by "pattern" links from the cognit, plus links
  // of memory whose targets are all marked.
  std::set<AtomId> marked;
  std::set<AtomId> machinery;
  for (AtomId l : g.incident_links(cognit)) {
    const Atom& link = g.atom(l);
    if (type_of(g, l) != "pattern" || link.targets.empty() || link.targets[0] != cognit) continue;
    machinery.insert(l);
    for (std::size_t i = 1; i < link.targets.size(); ++i) marked.insert(link.targets[i]);
  }
  for (const auto& a : g.atoms()) {
    if (a.kind != AtomKind::Link || marked.count(a.id) || machinery.count(a.id)) continue;
    bool inside = !a.targets.empty();
    for (AtomId t : a.targets)
      if (!marked.count(t)) inside = false;
    if (inside) marked.insert(a.id);
  }
  if (marked.empty()) {
    res.applied.push_back(HEffect{HEffect::Kind::None, {}});
    return;
  }
  Hypergraph body;
  for (const auto& a : g.atoms())
    if (marked.count(a.id) && a.kind == AtomKind::Node)
      body.add_atom_with_id(a.id, a.kind, {}, a.label);
  for (const auto& a : g.atoms())
    if (marked.count(a.id) && a.kind == AtomKind::Link)
      body.add_atom_with_id(a.id, a.kind, a.targets, a.label);
  // Match against memory minus the pattern body and its marker machinery.
  Hypergraph rest;
  std::set<AtomId> excluded = marked;
  excluded.insert(machinery.begin(), machinery.end());
  excluded.insert(cognit);
  for (const auto& a : g.atoms())
    if (!excluded.count(a.id) && a.kind == AtomKind::Node)
      rest.add_atom_with_id(a.id, a.kind, {}, a.label);
  for (const auto& a : g.atoms()) {
    if (excluded.count(a.id) || a.kind != AtomKind::Link) continue;
    bool keep = true;
    for (AtomId t : a.targets)
      if (excluded.count(t)) keep = false;
    if (keep) rest.add_atom_with_id(a.id, a.kind, a.targets, a.label);
  }
  auto vars = pattern_variables(body);
  auto bindings = match_pattern(HPattern::atomic(std::move(body)), rest);
  for (const auto& b : bindings) {
    std::vector<AtomId> targets{cognit};
    for (AtomId v : vars) targets.push_back(b.at(v));
    Label lab;
    lab.type_name = "match";
    AtomId rec = g.add_link(std::move(targets), std::move(lab));
    HEffect eff;
    eff.kind = HEffect::Kind::Create;
    eff.atoms = {rec};
    res.applied.push_back(std::move(eff));
  }
  if (bindings.empty()) res.applied.push_back(HEffect{HEffect::Kind::None, {}});
}

void option_forget(Hypergraph& g, AtomId cognit, HActivationResult& res) {
  std::set<AtomId> doomed;
  for (AtomId l : g.incident_links(cognit))
    for (AtomId t : g.atom(l).targets)
      if (t != cognit) doomed.insert(t);
  HEffect eff;
  eff.kind = HEffect::Kind::Forget;
  eff.atoms.assign(doomed.begin(), doomed.end());
  for (AtomId t : eff.atoms)
    if (g.has(t)) g.remove_atom(t);
  res.applied.push_back(std::move(eff));
}

void activate_rec(Hypergraph& g, AtomId cognit, AtomId return_to, std::size_t depth,
                  HActivationResult& res) {
  if (depth >= kActivationDepthBound) {
    res.depth_exceeded = true;
    return;
  }
  const std::string& t = type_of(g, cognit);
  if (!starts_with(t, "cg."))
    throw Error(Errc::bad_input, "atom " + std::to_string(cognit) + " is not activatable");
  if (starts_with(t, "cg.create:")) {
    option_create(g, cognit, t.substr(10), res);
  } else if (t == "cg.call") {
    option_call(g, cognit, depth, res);
  } else if (starts_with(t, "cg.const:")) {
    option_const(g, cognit, return_to, depth, t.substr(9), res);
  } else if (t == "cg.match") {
    option_match(g, cognit, res);
  } else if (t == "cg.forget") {
    option_forget(g, cognit, res);
  } else {
    res.applied.push_back(HEffect{HEffect::Kind::None, {}});
  }
}

}  // namespace

HActivationResult hypergraph_activate(Hypergraph& g, AtomId cognit) {
  if (!g.has(cognit)) throw Error(Errc::unknown_atom, "no atom " + std::to_string(cognit));
  HActivationResult res;
  activate_rec(g, cognit, cognit, 0, res);
  return res;
}

RichReport rich_language_check(const Hypergraph& g) {
  RichReport rep;
  auto add = [&rep](AtomId id, const std::string& code, const std::string& msg) {
    rep.violations.push_back(RichViolation{id, code, msg});
  };
  for (const auto& a : g.atoms()) {
    const std::string& t = a.label ? a.label->type_name : std::string();
    if (t == kVariableType && a.kind == AtomKind::Link)
      add(a.id, "variable-link", "variable labels belong on nodes");
    if (a.kind != AtomKind::Link) continue;
    if (t == "implication") {
      if (a.targets.size() != 2)
        add(a.id, "implication-arity", "implication links must have arity 2");
      if (!a.label || a.label->weights.empty())
        add(a.id, "missing-probability", "implication links carry a probability weight");
      else if (a.label->weights[0] < 0 || a.label->weights[0] > 1)
        add(a.id, "prob-out-of-range",
            "implication probability " + format_rational(a.label->weights[0]));
    } else if (t == "after") {
      if (!a.label || a.label->weights.empty())
        add(a.id, "missing-duration", "after links carry a duration weight");
      else if (a.label->weights[0] < 0)
        add(a.id, "negative-duration", "after duration " + format_rational(a.label->weights[0]));
    } else if (t == "atTime") {
      bool has_time = false;
      for (AtomId tgt : a.targets)
        if (g.label_type(tgt) == "time") has_time = true;
      if (!has_time) add(a.id, "attime-missing-time-node", "atTime links reference a time node");
    } else if (t == "lambda") {
      if (a.targets.empty() || g.label_type(a.targets[0]) != kVariableType)
        add(a.id, "lambda-missing-variable", "lambda links bind a variable node first");
    }
  }
  return rep;
}

}  // namespace cogsyn
