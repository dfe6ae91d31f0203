#include "cogsyn/projection.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cogsyn {

Rational scalar_cost(const ResourceCost& c) { return c.space + c.time; }

std::optional<Rational> min_process_path(const EpisodeStore& store, const std::string& process,
                                         const std::string& from, const std::string& to,
                                         std::vector<Transition>* path) {
  if (path) path->clear();
  if (from == to) return Rational(0);
  std::vector<Transition> edges;
  for (const Transition& t : meta_transitions(store))
    if (t.cause == process) edges.push_back(t);

  std::map<std::string, Rational> dist;
  std::map<std::string, std::size_t> via;  // edge that last improved the node
  std::set<std::string> done;
  dist[from] = 0;
  while (true) {
    std::string cur;
    Rational best{0};
    bool found = false;
    for (const auto& [key, d] : dist) {
      if (done.count(key)) continue;
      if (!found || d < best) {
        cur = key;
        best = d;
        found = true;
      }
    }
    if (!found || cur == to) break;
    done.insert(cur);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].from != cur) continue;
      Rational next = best + scalar_cost(edges[i].resource_cost);
      auto it = dist.find(edges[i].to);
      if (it == dist.end() || next < it->second) {
        dist[edges[i].to] = next;
        via[edges[i].to] = i;
      }
    }
  }
  auto it = dist.find(to);
  if (it == dist.end()) return std::nullopt;
  if (path) {
    std::string cur = to;
    while (cur != from) {
      const Transition& e = edges[via.at(cur)];
      path->push_back(e);
      cur = e.from;
    }
    std::reverse(path->begin(), path->end());
  }
  return it->second;
}

FunctorProjection functor_project(const std::vector<Transition>& x, const std::string& process,
                                  const EpisodeStore& store) {
  FunctorProjection fp;
  fp.process = process;
  for (const Transition& t : x) {
    ProjectedEdge e;
    e.original = t;
    if (t.cause == process) {
      e.replacement = {t};
      e.cost = scalar_cost(t.resource_cost);
    } else {
      std::vector<Transition> path;
      std::optional<Rational> c = min_process_path(store, process, t.from, t.to, &path);
      if (c) {
        e.replacement = std::move(path);
        e.cost = *c;
      } else {
        e.gap = true;
        fp.has_gap = true;
      }
    }
    if (!e.gap) fp.cost += e.cost;
    fp.edges.push_back(std::move(e));
  }
  return fp;
}

std::vector<Transition> projected_transitions(const FunctorProjection& fp) {
  std::vector<Transition> out;
  for (const ProjectedEdge& e : fp.edges)
    for (const Transition& t : e.replacement) out.push_back(t);
  return out;
}

Hypergraph object_shape(const std::vector<std::string>& state_profiles,
                        const FunctorProjection& fp, const StateClassifier& classes,
                        std::map<std::string, AtomId>* nodes) {
  std::set<std::string> profiles(state_profiles.begin(), state_profiles.end());
  for (const ProjectedEdge& e : fp.edges) {
    profiles.insert(e.original.from);
    profiles.insert(e.original.to);
    for (const Transition& t : e.replacement) {
      profiles.insert(t.from);
      profiles.insert(t.to);
    }
  }
  Hypergraph g;
  std::map<std::string, AtomId> by_profile;
  for (const std::string& p : profiles) {
    auto it = classes.find(p);
    std::optional<Label> label;
    if (it != classes.end() && !it->second.empty()) label = Label{it->second, {}};
    by_profile[p] = g.add_node(std::move(label));
  }
  for (const ProjectedEdge& e : fp.edges)
    for (const Transition& t : e.replacement)
      g.add_link({by_profile.at(t.from), by_profile.at(t.to)}, Label{"step", {}});
  if (nodes) *nodes = std::move(by_profile);
  return g;
}

namespace {

AtomId mapped_node(const std::map<AtomId, AtomId>& m, AtomId n, const std::string& what) {
  auto it = m.find(n);
  if (it == m.end())
    throw Error(Errc::bad_input, what + " is undefined on node " + std::to_string(n));
  return it->second;
}

bool square_commutes(const DiagramObject& from_obj, const DiagramMorphism& f,
                     const Homomorphism& eta_from, const Homomorphism& eta_to) {
  for (AtomId n : from_obj.shape_a.node_ids()) {
    AtomId over = mapped_node(f.map_a, n, "map_a of " + f.name);
    auto down = eta_to.vertex_map.find(over);
    if (down == eta_to.vertex_map.end())
      throw Error(Errc::bad_input,
                  "map_a of " + f.name + " leaves the target object's shape at node " +
                      std::to_string(over));
    AtomId right_down =
        mapped_node(f.map_b, eta_from.vertex_map.at(n), "map_b of " + f.name);
    if (down->second != right_down) return false;
  }
  return true;
}

std::vector<Homomorphism> sorted_candidates(const DiagramObject& obj,
                                            const NatTransOptions& opts, bool* truncated) {
  HomSearchOptions hopts;
  hopts.max_results = opts.max_candidates_per_object;
  HomSearchResult res = find_homomorphisms(obj.shape_a, obj.shape_b, hopts);
  if (res.truncated) *truncated = true;
  std::sort(res.homs.begin(), res.homs.end(), [](const Homomorphism& a, const Homomorphism& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.vertex_map < b.vertex_map;
  });
  return res.homs;
}

}  // namespace

NatTransResult nat_trans_search(const std::vector<DiagramObject>& objects,
                                const std::vector<DiagramMorphism>& morphisms,
                                const NatTransOptions& opts) {
  NatTransResult out;
  if (objects.empty()) throw Error(Errc::bad_input, "nat_trans_search needs objects");
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!position.emplace(objects[i].name, i).second)
      throw Error(Errc::bad_input, "duplicate object '" + objects[i].name + "'");
  }
  for (const DiagramMorphism& f : morphisms)
    if (!position.count(f.from) || !position.count(f.to))
      throw Error(Errc::bad_input, "morphism '" + f.name + "' references unknown objects");

  bool truncated = false;
  std::vector<std::vector<Homomorphism>> candidates;
  for (const DiagramObject& obj : objects) {
    candidates.push_back(sorted_candidates(obj, opts, &truncated));
    if (candidates.back().empty()) {
      out.failed_morphism = "object:" + obj.name;
      out.undecided = truncated;
      return out;
    }
  }
  if (truncated) {
    out.undecided = true;
    return out;
  }

  std::vector<const Homomorphism*> chosen(objects.size(), nullptr);
  std::size_t trials = 0;
  bool budget_hit = false;

  auto consistent_at = [&](std::size_t depth) {
    for (const DiagramMorphism& f : morphisms) {
      std::size_t pf = position.at(f.from), pt = position.at(f.to);
      if (pf > depth || pt > depth) continue;
      if (!square_commutes(objects[pf], f, *chosen[pf], *chosen[pt])) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> descend = [&](std::size_t depth) -> bool {
    if (depth == objects.size()) return true;
    for (const Homomorphism& cand : candidates[depth]) {
      if (++trials > opts.max_assignments) {
        budget_hit = true;
        return false;
      }
      chosen[depth] = &cand;
      if (consistent_at(depth) && descend(depth + 1)) return true;
      if (budget_hit) return false;
    }
    chosen[depth] = nullptr;
    return false;
  };

  if (descend(0)) {
    for (std::size_t i = 0; i < objects.size(); ++i)
      out.components.push_back({objects[i].name, *chosen[i], chosen[i]->cost});
    out.verified = verify_naturality(objects, morphisms, out.components);
    return out;
  }
  if (budget_hit) {
    out.undecided = true;
    return out;
  }
  for (const DiagramMorphism& f : morphisms) {
    const std::vector<Homomorphism>& from_cands = candidates[position.at(f.from)];
    const std::vector<Homomorphism>& to_cands = candidates[position.at(f.to)];
    bool any = false;
    for (const Homomorphism& ca : from_cands) {
      for (const Homomorphism& cb : to_cands)
        if (square_commutes(objects[position.at(f.from)], f, ca, cb)) {
          any = true;
          break;
        }
      if (any) break;
    }
    if (!any) {
      out.failed_morphism = f.name;
      return out;
    }
  }
  out.failed_morphism = "(no globally consistent assignment)";
  return out;
}

bool verify_naturality(const std::vector<DiagramObject>& objects,
                       const std::vector<DiagramMorphism>& morphisms,
                       const std::vector<NatTransComponent>& components) {
  std::map<std::string, const DiagramObject*> obj;
  for (const DiagramObject& o : objects) obj[o.name] = &o;
  std::map<std::string, const Homomorphism*> comp;
  for (const NatTransComponent& c : components) comp[c.object] = &c.hom;

  for (const DiagramObject& o : objects) {
    auto it = comp.find(o.name);
    if (it == comp.end()) return false;
    std::map<AtomId, AtomId> node_map;
    for (AtomId n : o.shape_a.node_ids()) {
      auto v = it->second->vertex_map.find(n);
      if (v == it->second->vertex_map.end()) return false;
      node_map[n] = v->second;
    }
    if (!complete_homomorphism(o.shape_a, o.shape_b, node_map)) return false;
  }
  for (const DiagramMorphism& f : morphisms) {
    auto from_obj = obj.find(f.from);
    auto to_obj = obj.find(f.to);
    if (from_obj == obj.end() || to_obj == obj.end()) return false;
    if (!square_commutes(*from_obj->second, f, *comp.at(f.from), *comp.at(f.to))) return false;
  }
  return true;
}

CostCompare commutation_cost_compare(const std::optional<Rational>& eta_x,
                                     const std::optional<Rational>& fb_f,
                                     const std::optional<Rational>& eta_y,
                                     const std::optional<Rational>& fa_f) {
  if (!eta_x || !eta_y)
    throw Error(Errc::no_component, "both natural-transformation legs are required");
  CostCompare out;
  out.direct = fa_f;
  if (fb_f) out.indirect = *eta_x + *fb_f + *eta_y;
  if (out.indirect) out.holds = !out.direct || *out.indirect < *out.direct;
  if (out.indirect && out.direct) out.margin = *out.direct - *out.indirect;
  return out;
}

}  // namespace cogsyn
