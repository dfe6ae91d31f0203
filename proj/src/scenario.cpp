#include "cogsyn/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace cogsyn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(Errc::bad_input, "scenario field '" + field + "': " + what);
}

const json* opt_member(const json& o, const char* key) {
  if (!o.is_object()) return nullptr;
  auto it = o.find(key);
  if (it == o.end() || it->is_null()) return nullptr;
  return &*it;
}

const json& member(const json& o, const char* key, const std::string& path) {
  const json* m = opt_member(o, key);
  if (!m) fail(path, "missing");
  return *m;
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::string get_name(const json& v, const std::string& path) {
  std::string s = get_string(v, path);
  if (s.empty()) fail(path, "must not be empty");
  // names end up in labels, report lines and file names
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':' ||
          c == '-' || c == '+'))
      fail(path, "character '" + std::string(1, c) + "' is not allowed in a name");
  if (s == "." || s == "..") fail(path, "reserved name");
  return s;
}

Rational get_rational(const json& v, const std::string& path) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path, "expected an exact rational (integer or \"p/q\" string)");
}

Rational get_unit(const json& v, const std::string& path) {
  Rational q = get_rational(v, path);
  if (q < 0 || q > 1) fail(path, "must lie in [0,1]");
  return q;
}

std::uint64_t get_u64(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    fail(path, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

int get_count(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  long long n = v.get<long long>();
  if (n < 0 || n > (1ll << 30)) fail(path, "out of range");
  return static_cast<int>(n);
}

ResourceCost get_cost(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected [space, time]");
  ResourceCost c;
  c.space = get_rational(v[0], path + "[0]");
  c.time = get_rational(v[1], path + "[1]");
  if (c.space < 0 || c.time < 0) fail(path, "costs must be nonnegative");
  return c;
}

std::vector<std::pair<std::string, Rational>> get_weighted_list(const json& v,
                                                                const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of [symbol, weight] pairs");
  std::vector<std::pair<std::string, Rational>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const json& e = v[i];
    std::string p = path + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2) fail(p, "expected [symbol, weight]");
    out.emplace_back(get_name(e[0], p + "[0]"), get_rational(e[1], p + "[1]"));
  }
  return out;
}

Environment parse_environment(const json& v) {
  Environment env;
  std::string kind = get_string(member(v, "kind", "environment.kind"), "environment.kind");
  if (kind == "constant") {
    env.kind = Environment::Kind::Constant;
    env.constant_observation =
        get_name(member(v, "observation", "environment.observation"), "environment.observation");
    if (const json* r = opt_member(v, "reward"))
      env.constant_reward = get_unit(*r, "environment.reward");
  } else if (kind == "cycle") {
    env.kind = Environment::Kind::Cycle;
    const json& cyc = member(v, "cycle", "environment.cycle");
    if (!cyc.is_array() || cyc.empty()) fail("environment.cycle", "expected a nonempty array");
    for (std::size_t i = 0; i < cyc.size(); ++i)
      env.cycle.push_back(get_name(cyc[i], "environment.cycle[" + std::to_string(i) + "]"));
    if (const json* rw = opt_member(v, "rewards")) {
      if (!rw->is_object()) fail("environment.rewards", "expected an object");
      for (auto it = rw->begin(); it != rw->end(); ++it)
        env.cycle_reward[it.key()] = get_unit(it.value(), "environment.rewards." + it.key());
    }
  } else if (kind == "table") {
    env.kind = Environment::Kind::Table;
    const json& rows = member(v, "rows", "environment.rows");
    if (!rows.is_object()) fail("environment.rows", "expected an object keyed by action");
    for (auto it = rows.begin(); it != rows.end(); ++it) {
      std::string p = "environment.rows." + (it.key().empty() ? "(default)" : it.key());
      const json& row = it.value();
      auto obs = get_weighted_list(member(row, "observations", p + ".observations"),
                                   p + ".observations");
      Rational reward{0};
      if (const json* r = opt_member(row, "reward")) reward = get_unit(*r, p + ".reward");
      env.table[it.key()] = {std::move(obs), reward};
    }
  } else {
    fail("environment.kind", "unknown kind '" + kind + "'");
  }
  if (const json* gw = opt_member(v, "goal_weights"))
    env.goal_weights = get_weighted_list(*gw, "environment.goal_weights");
  return env;
}

Policy parse_policy(const json& v) {
  Policy pol;
  std::string kind = get_string(member(v, "kind", "policy.kind"), "policy.kind");
  if (kind == "constant") {
    pol.kind = Policy::Kind::Constant;
    pol.constant_action = get_name(member(v, "action", "policy.action"), "policy.action");
  } else if (kind == "uniform") {
    pol.kind = Policy::Kind::Uniform;
    const json& acts = member(v, "actions", "policy.actions");
    if (!acts.is_array() || acts.empty()) fail("policy.actions", "expected a nonempty array");
    for (std::size_t i = 0; i < acts.size(); ++i)
      pol.actions.push_back(get_name(acts[i], "policy.actions[" + std::to_string(i) + "]"));
  } else if (kind == "table") {
    pol.kind = Policy::Kind::Table;
    const json& rows = member(v, "rows", "policy.rows");
    if (!rows.is_object()) fail("policy.rows", "expected an object keyed by observation");
    for (auto it = rows.begin(); it != rows.end(); ++it)
      pol.table[it.key()] = get_weighted_list(
          it.value(), "policy.rows." + (it.key().empty() ? "(default)" : it.key()));
  } else {
    fail("policy.kind", "unknown kind '" + kind + "'");
  }
  return pol;
}

CognitRule::Kind parse_rule_kind(const std::string& s, const std::string& path) {
  if (s == "identity") return CognitRule::Kind::Identity;
  if (s == "annihilate") return CognitRule::Kind::Annihilate;
  if (s == "append_tag") return CognitRule::Kind::AppendTag;
  if (s == "create_entity") return CognitRule::Kind::CreateEntity;
  if (s == "forget_entity") return CognitRule::Kind::ForgetEntity;
  if (s == "execute_action") return CognitRule::Kind::ExecuteAction;
  if (s == "activate_other") return CognitRule::Kind::ActivateOther;
  if (s == "noop") return CognitRule::Kind::Noop;
  fail(path, "unknown rule kind '" + s + "'");
}

Entity::Kind parse_entity_kind(const std::string& s, const std::string& path) {
  if (s == "observation") return Entity::Kind::Observation;
  if (s == "action") return Entity::Kind::Action;
  if (s == "goal") return Entity::Kind::Goal;
  if (s == "reward") return Entity::Kind::Reward;
  if (s == "cognit") return Entity::Kind::Cognit;
  fail(path, "unknown entity kind '" + s + "'");
}

void check_pattern_name(const std::string& name, const std::string& path) {
  try {
    node_pattern(name);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::string require_declared(const std::string& name, const std::set<std::string>& declared,
                             const std::string& path) {
  if (!declared.count(name)) fail(path, "'" + name + "' is not a declared pattern");
  return name;
}

DiagramRequest parse_diagrams(const json& v, const std::set<std::string>& patterns) {
  DiagramRequest req;
  req.process_a =
      get_name(member(v, "process_a", "analyses.diagrams.process_a"), "analyses.diagrams.process_a");
  req.process_b =
      get_name(member(v, "process_b", "analyses.diagrams.process_b"), "analyses.diagrams.process_b");
  const json& objs = member(v, "objects", "analyses.diagrams.objects");
  if (!objs.is_array() || objs.empty())
    fail("analyses.diagrams.objects", "expected a nonempty array");
  std::map<std::string, std::set<std::string>> object_states;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::string p = "analyses.diagrams.objects[" + std::to_string(i) + "]";
    DiagramObjectSpec os;
    os.name = get_name(member(objs[i], "name", p + ".name"), p + ".name");
    if (object_states.count(os.name)) fail(p + ".name", "duplicate object '" + os.name + "'");
    const json& states = member(objs[i], "states", p + ".states");
    if (!states.is_array() || states.empty()) fail(p + ".states", "expected a nonempty array");
    for (std::size_t j = 0; j < states.size(); ++j) {
      std::string sp = p + ".states[" + std::to_string(j) + "]";
      os.states.push_back(require_declared(get_string(states[j], sp), patterns, sp));
    }
    object_states[os.name] = {os.states.begin(), os.states.end()};
    req.objects.push_back(std::move(os));
  }
  if (const json* ms = opt_member(v, "morphisms")) {
    if (!ms->is_array()) fail("analyses.diagrams.morphisms", "expected an array");
    for (std::size_t i = 0; i < ms->size(); ++i) {
      std::string p = "analyses.diagrams.morphisms[" + std::to_string(i) + "]";
      DiagramMorphismSpec m;
      m.name = get_name(member((*ms)[i], "name", p + ".name"), p + ".name");
      m.from = get_name(member((*ms)[i], "from", p + ".from"), p + ".from");
      m.to = get_name(member((*ms)[i], "to", p + ".to"), p + ".to");
      if (!object_states.count(m.from)) fail(p + ".from", "unknown object '" + m.from + "'");
      if (!object_states.count(m.to)) fail(p + ".to", "unknown object '" + m.to + "'");
      const json& pairs = member((*ms)[i], "map", p + ".map");
      if (!pairs.is_array() || pairs.empty()) fail(p + ".map", "expected a nonempty array");
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        std::string pp = p + ".map[" + std::to_string(j) + "]";
        const json& pr = pairs[j];
        if (!pr.is_array() || pr.size() != 2) fail(pp, "expected [from_state, to_state]");
        std::string a = get_string(pr[0], pp + "[0]"), b = get_string(pr[1], pp + "[1]");
        if (!object_states[m.from].count(a))
          fail(pp + "[0]", "'" + a + "' is not a state of object '" + m.from + "'");
        if (!object_states[m.to].count(b))
          fail(pp + "[1]", "'" + b + "' is not a state of object '" + m.to + "'");
        m.map.emplace_back(std::move(a), std::move(b));
      }
      req.morphisms.push_back(std::move(m));
    }
  }
  if (const json* cl = opt_member(v, "classes")) {
    if (!cl->is_object()) fail("analyses.diagrams.classes", "expected an object");
    for (auto it = cl->begin(); it != cl->end(); ++it) {
      require_declared(it.key(), patterns, "analyses.diagrams.classes." + it.key());
      req.classes[it.key()] = get_name(it.value(), "analyses.diagrams.classes." + it.key());
    }
  }
  return req;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(Errc::bad_input, std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::bad_input, "scenario document must be a JSON object");

  Scenario sc;
  sc.name = get_name(member(doc, "name", "name"), "name");
  std::string kind = get_string(member(doc, "kind", "kind"), "kind");
  if (kind == "episodic")
    sc.episodic = true;
  else if (kind == "handcrafted")
    sc.episodic = false;
  else
    fail("kind", "expected \"episodic\" or \"handcrafted\"");

  const json& pats = member(doc, "patterns", "patterns");
  if (!pats.is_array() || pats.empty()) fail("patterns", "expected a nonempty array");
  std::set<std::string> declared;
  for (std::size_t i = 0; i < pats.size(); ++i) {
    std::string p = "patterns[" + std::to_string(i) + "]";
    std::string name = get_string(pats[i], p);
    check_pattern_name(name, p);
    if (!declared.insert(name).second) fail(p, "duplicate pattern '" + name + "'");
    sc.patterns.push_back(std::move(name));
  }

  std::set<std::string> process_names;
  if (const json* procs = opt_member(doc, "processes")) {
    if (!procs->is_array()) fail("processes", "expected an array");
    for (std::size_t i = 0; i < procs->size(); ++i) {
      std::string p = "processes[" + std::to_string(i) + "]";
      ProcessSpec ps;
      ps.name = get_name(member((*procs)[i], "name", p + ".name"), p + ".name");
      if (ps.name == kExogenousCause) fail(p + ".name", "reserved cause name");
      if (!process_names.insert(ps.name).second)
        fail(p + ".name", "duplicate process '" + ps.name + "'");
      if (sc.episodic) {
        ps.acts_when =
            get_string(member((*procs)[i], "acts_when", p + ".acts_when"), p + ".acts_when");
        if (ps.acts_when.empty()) fail(p + ".acts_when", "must not be empty");
        ps.establishes =
            get_string(member((*procs)[i], "establishes", p + ".establishes"), p + ".establishes");
        check_pattern_name("eff:" + ps.establishes, p + ".establishes");
      }
      if (const json* c = opt_member((*procs)[i], "cost"))
        ps.cost = get_cost(*c, p + ".cost");
      if (const json* q = opt_member((*procs)[i], "probability"))
        ps.probability = get_unit(*q, p + ".probability");
      if (const json* q = opt_member((*procs)[i], "confidence"))
        ps.confidence = get_unit(*q, p + ".confidence");
      sc.processes.push_back(std::move(ps));
    }
  }

  if (const json* g = opt_member(doc, "goals")) {
    if (!g->is_array()) fail("goals", "expected an array");
    std::set<std::string> goal_ids;
    for (std::size_t i = 0; i < g->size(); ++i) {
      std::string p = "goals[" + std::to_string(i) + "]";
      GoalDecl gd;
      gd.id = get_name(member((*g)[i], "id", p + ".id"), p + ".id");
      if (!goal_ids.insert(gd.id).second) fail(p + ".id", "duplicate goal '" + gd.id + "'");
      gd.pattern = require_declared(
          get_string(member((*g)[i], "pattern", p + ".pattern"), p + ".pattern"), declared,
          p + ".pattern");
      if (const json* w = opt_member((*g)[i], "weight")) {
        gd.weight = get_rational(*w, p + ".weight");
        if (gd.weight < 0) fail(p + ".weight", "must be nonnegative");
      }
      sc.goals.push_back(std::move(gd));
    }
  }

  if (const json* ex = opt_member(doc, "exogenous")) {
    if (const json* q = opt_member(*ex, "probability"))
      sc.exogenous.probability = get_unit(*q, "exogenous.probability");
    if (const json* q = opt_member(*ex, "confidence"))
      sc.exogenous.confidence = get_unit(*q, "exogenous.confidence");
    if (const json* c = opt_member(*ex, "cost")) sc.exogenous.cost = get_cost(*c, "exogenous.cost");
  }

  if (const json* st = opt_member(doc, "stuckness")) {
    if (const json* b = opt_member(*st, "band")) {
      if (!b->is_array() || b->size() != 2) fail("stuckness.band", "expected [lo, hi]");
      sc.band.lo = get_unit((*b)[0], "stuckness.band[0]");
      sc.band.hi = get_unit((*b)[1], "stuckness.band[1]");
      if (sc.band.hi < sc.band.lo) fail("stuckness.band", "hi below lo");
    }
    if (const json* k = opt_member(*st, "f_k")) {
      sc.f_k = get_rational(*k, "stuckness.f_k");
      if (sc.f_k <= 0) fail("stuckness.f_k", "must be positive");
    }
    if (const json* f = opt_member(*st, "future_ticks")) {
      sc.future_ticks = get_count(*f, "stuckness.future_ticks");
      if (sc.future_ticks < 1) fail("stuckness.future_ticks", "must be at least 1");
    }
  }

  if (sc.episodic) {
    sc.ticks = get_u64(member(doc, "ticks", "ticks"), "ticks");
    if (sc.ticks < 2) fail("ticks", "episodic scenarios need at least 2 ticks");
    if (sc.ticks > 100000) fail("ticks", "out of range");
    const json& seeds = member(doc, "seeds", "seeds");
    if (!seeds.is_array() || seeds.empty()) fail("seeds", "expected a nonempty array");
    for (std::size_t i = 0; i < seeds.size(); ++i)
      sc.seeds.push_back(get_u64(seeds[i], "seeds[" + std::to_string(i) + "]"));
    sc.environment = parse_environment(member(doc, "environment", "environment"));
    sc.policy = parse_policy(member(doc, "policy", "policy"));
    if (const json* cap = opt_member(doc, "memory_capacity"))
      sc.memory_capacity = get_u64(*cap, "memory_capacity");
    if (process_names.empty()) fail("processes", "episodic scenarios need at least one process");
    std::set<std::string> cognit_ids;
    if (const json* cs = opt_member(doc, "cognits")) {
      if (!cs->is_array()) fail("cognits", "expected an array");
      for (std::size_t i = 0; i < cs->size(); ++i) {
        std::string p = "cognits[" + std::to_string(i) + "]";
        Cognit c;
        c.id = get_name(member((*cs)[i], "id", p + ".id"), p + ".id");
        if (!cognit_ids.insert(c.id).second) fail(p + ".id", "duplicate cognit '" + c.id + "'");
        c.rule.kind =
            parse_rule_kind(get_string(member((*cs)[i], "rule", p + ".rule"), p + ".rule"),
                            p + ".rule");
        if (const json* pa = opt_member((*cs)[i], "param"))
          c.rule.param = get_string(*pa, p + ".param");
        if (const json* ek = opt_member((*cs)[i], "entity_kind"))
          c.rule.entity_kind = parse_entity_kind(get_string(*ek, p + ".entity_kind"),
                                                 p + ".entity_kind");
        sc.cognits.push_back(std::move(c));
      }
    }
    if (const json* sch = opt_member(doc, "schedule")) {
      if (!sch->is_array()) fail("schedule", "expected an array");
      for (std::size_t i = 0; i < sch->size(); ++i) {
        std::string p = "schedule[" + std::to_string(i) + "]";
        std::string id = get_string((*sch)[i], p);
        if (!cognit_ids.count(id)) fail(p, "unknown cognit '" + id + "'");
        sc.schedule.push_back(std::move(id));
      }
    }
  } else {
    const json& eps = member(doc, "episodes", "episodes");
    if (!eps.is_array() || eps.empty()) fail("episodes", "expected a nonempty array");
    std::set<std::string> situations;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      std::string p = "episodes[" + std::to_string(i) + "]";
      HandEpisodeSpec ep;
      ep.situation =
          get_name(member(eps[i], "situation", p + ".situation"), p + ".situation");
      if (!situations.insert(ep.situation).second)
        fail(p + ".situation", "duplicate situation '" + ep.situation + "'");
      const json& states = member(eps[i], "states", p + ".states");
      if (!states.is_array() || states.empty()) fail(p + ".states", "expected a nonempty array");
      int last_tick = -1;
      for (std::size_t j = 0; j < states.size(); ++j) {
        std::string sp = p + ".states[" + std::to_string(j) + "]";
        HandStateSpec hs;
        hs.tick = get_count(member(states[j], "tick", sp + ".tick"), sp + ".tick");
        if (hs.tick <= last_tick) fail(sp + ".tick", "ticks must be strictly ascending");
        last_tick = hs.tick;
        if (const json* sh = opt_member(states[j], "shows")) {
          if (!sh->is_array()) fail(sp + ".shows", "expected an array");
          for (std::size_t k = 0; k < sh->size(); ++k) {
            std::string kp = sp + ".shows[" + std::to_string(k) + "]";
            hs.shows.push_back(require_declared(get_string((*sh)[k], kp), declared, kp));
          }
        }
        ep.states.push_back(std::move(hs));
      }
      if (const json* trs = opt_member(eps[i], "transitions")) {
        if (!trs->is_array()) fail(p + ".transitions", "expected an array");
        for (std::size_t j = 0; j < trs->size(); ++j) {
          std::string tp = p + ".transitions[" + std::to_string(j) + "]";
          HandTransitionSpec ht;
          ht.from = get_count(member((*trs)[j], "from", tp + ".from"), tp + ".from");
          ht.to = get_count(member((*trs)[j], "to", tp + ".to"), tp + ".to");
          int n = static_cast<int>(ep.states.size());
          if (ht.from >= n) fail(tp + ".from", "state index out of range");
          if (ht.to >= n) fail(tp + ".to", "state index out of range");
          if (ep.states[ht.to].tick < ep.states[ht.from].tick)
            fail(tp, "transition runs backwards in time");
          ht.cause = get_name(member((*trs)[j], "cause", tp + ".cause"), tp + ".cause");
          if (const json* q = opt_member((*trs)[j], "probability"))
            ht.probability = get_unit(*q, tp + ".probability");
          if (const json* q = opt_member((*trs)[j], "confidence"))
            ht.confidence = get_unit(*q, tp + ".confidence");
          if (const json* c = opt_member((*trs)[j], "cost")) ht.cost = get_cost(*c, tp + ".cost");
          ep.transitions.push_back(std::move(ht));
        }
      }
      sc.episodes.push_back(std::move(ep));
    }
  }

  // causes available to analysis requests
  std::set<std::string> causes = process_names;
  for (const auto& ep : sc.episodes)
    for (const auto& t : ep.transitions) causes.insert(t.cause);

  if (const json* an = opt_member(doc, "analyses")) {
    if (const json* m = opt_member(*an, "metrics")) {
      if (!m->is_boolean()) fail("analyses.metrics", "expected a boolean");
      sc.analyses.metrics = m->get<bool>();
    }
    if (const json* sy = opt_member(*an, "synergy")) {
      if (!sy->is_array()) fail("analyses.synergy", "expected an array");
      for (std::size_t i = 0; i < sy->size(); ++i) {
        std::string p = "analyses.synergy[" + std::to_string(i) + "]";
        SynergyRequest rq;
        const json& procs = member((*sy)[i], "processes", p + ".processes");
        if (!procs.is_array() || (procs.size() != 2 && procs.size() != 3))
          fail(p + ".processes", "expected two or three process names");
        for (std::size_t j = 0; j < procs.size(); ++j) {
          std::string pp = p + ".processes[" + std::to_string(j) + "]";
          std::string name = get_string(procs[j], pp);
          if (!causes.count(name)) fail(pp, "unknown process '" + name + "'");
          rq.processes.push_back(std::move(name));
        }
        if (const json* c = opt_member((*sy)[i], "cells")) {
          rq.cells = get_count(*c, p + ".cells");
          if (rq.cells < 1) fail(p + ".cells", "must be at least 1");
        }
        if (const json* w = opt_member((*sy)[i], "weights")) {
          std::string ws = get_string(*w, p + ".weights");
          if (ws == "midpoint")
            rq.midpoint = true;
          else if (ws == "uniform")
            rq.midpoint = false;
          else
            fail(p + ".weights", "expected \"midpoint\" or \"uniform\"");
        }
        sc.analyses.synergy.push_back(std::move(rq));
      }
    }
    if (const json* mn = opt_member(*an, "mine")) {
      MineOptions mo;
      if (const json* v = opt_member(*mn, "min_support")) {
        mo.min_support = get_count(*v, "analyses.mine.min_support");
        if (mo.min_support < 1) fail("analyses.mine.min_support", "must be at least 1");
      }
      if (const json* v = opt_member(*mn, "max_atoms")) {
        mo.max_atoms = get_count(*v, "analyses.mine.max_atoms");
        if (mo.max_atoms < 1) fail("analyses.mine.max_atoms", "must be at least 1");
      }
      if (const json* v = opt_member(*mn, "max_patterns"))
        mo.max_patterns = static_cast<std::size_t>(get_u64(*v, "analyses.mine.max_patterns"));
      sc.analyses.mine = mo;
    }
    if (const json* dg = opt_member(*an, "diagrams")) {
      DiagramRequest req = parse_diagrams(*dg, declared);
      if (!causes.count(req.process_a))
        fail("analyses.diagrams.process_a", "unknown process '" + req.process_a + "'");
      if (!causes.count(req.process_b))
        fail("analyses.diagrams.process_b", "unknown process '" + req.process_b + "'");
      sc.analyses.diagrams = std::move(req);
    }
  }
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::bad_input, "cannot read scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::vector<CatalogPattern> scenario_catalog(const Scenario& sc) {
  std::vector<CatalogPattern> catalog;
  catalog.reserve(sc.patterns.size());
  for (const auto& name : sc.patterns) catalog.push_back(node_pattern(name));
  return catalog;
}

std::vector<GoalSpec> scenario_goals(const Scenario& sc) {
  std::vector<GoalSpec> goals;
  goals.reserve(sc.goals.size());
  for (const auto& g : sc.goals)
    goals.push_back(GoalSpec{g.id, node_pattern(g.pattern).key, g.weight});
  return goals;
}

std::string profile_of_patterns(const std::vector<std::string>& names) {
  SystemState s;
  for (const auto& n : names) s.pattern_degrees[node_pattern(n).key] = 1;
  return state_profile_key(s);
}

namespace {

Episode run_scenario_episode(const Scenario& sc, const std::vector<CatalogPattern>& catalog,
                             std::size_t index, std::uint64_t seed) {
  Episode ep;
  ep.situation = "ep" + std::to_string(index);
  ep.seed = seed;
  CognitAgentState agent(sc.memory_capacity);
  agent.policy = sc.policy;
  for (const auto& c : sc.cognits) agent.cognits[c.id] = c;
  agent.schedule = sc.schedule;
  ep.events = run_episode(agent, sc.environment, sc.ticks, seed);

  std::vector<const ProcessSpec*> acting(sc.ticks, nullptr);
  for (std::uint64_t t = 0; t < sc.ticks; ++t) {
    if (!ep.events[t].observation) continue;
    for (const auto& p : sc.processes)
      if (p.acts_when == *ep.events[t].observation) {
        acting[t] = &p;
        break;
      }
  }
  for (std::uint64_t t = 0; t < sc.ticks; ++t) {
    const Event& e = ep.events[t];
    Hypergraph mem;
    if (e.observation) mem.add_node(Label{"ctx:" + *e.observation, {}});
    if (e.action) mem.add_node(Label{"act:" + *e.action, {}});
    if (e.goal) mem.add_node(Label{"goal:" + *e.goal, {}});
    if (e.cognit) mem.add_node(Label{"cog:" + *e.cognit, {}});
    if (t > 0 && acting[t - 1])
      mem.add_node(Label{"eff:" + acting[t - 1]->establishes, {}});
    Snapshot snap;
    snap.state = snapshot_state(mem, catalog, "s" + std::to_string(t), static_cast<int>(t));
    snap.memory = std::move(mem);
    ep.snapshots.push_back(std::move(snap));
  }
  for (std::uint64_t t = 0; t + 1 < sc.ticks; ++t) {
    Transition tr;
    tr.from = "s" + std::to_string(t);
    tr.to = "s" + std::to_string(t + 1);
    tr.interval = {static_cast<int>(t), static_cast<int>(t + 1)};
    if (acting[t]) {
      tr.cause = acting[t]->name;
      tr.probability = acting[t]->probability;
      tr.confidence = acting[t]->confidence;
      tr.resource_cost = acting[t]->cost;
    } else {
      tr.cause = kExogenousCause;
      tr.probability = sc.exogenous.probability;
      tr.confidence = sc.exogenous.confidence;
      tr.resource_cost = sc.exogenous.cost;
    }
    ep.transitions.push_back(std::move(tr));
  }
  return ep;
}

}  // namespace

EpisodeStore build_store(const Scenario& sc, std::optional<std::uint64_t> seed_override,
                         int jobs) {
  EpisodeStore store;
  for (const auto& p : sc.processes) store.register_process(p.name);

  if (sc.episodic) {
    auto catalog = scenario_catalog(sc);
    std::vector<std::uint64_t> seeds = sc.seeds;
    if (seed_override)
      for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = *seed_override + i;
    std::vector<Episode> built(seeds.size());
    if (jobs > 1 && seeds.size() > 1) {
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= seeds.size()) return;
          built[i] = run_scenario_episode(sc, catalog, i, seeds[i]);
        }
      };
      std::vector<std::thread> pool;
      int n = std::min<int>(jobs, static_cast<int>(seeds.size()));
      for (int i = 0; i < n; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    } else {
      for (std::size_t i = 0; i < seeds.size(); ++i)
        built[i] = run_scenario_episode(sc, catalog, i, seeds[i]);
    }
    for (auto& ep : built) store.add(std::move(ep));
    for (std::uint64_t t = 0; t < sc.ticks; ++t)
      store.intervals.push_back({static_cast<int>(t), static_cast<int>(t)});
    return store;
  }

  int max_tick = 0;
  for (const auto& spec : sc.episodes) {
    Episode ep;
    ep.situation = spec.situation;
    for (std::size_t i = 0; i < spec.states.size(); ++i) {
      const auto& hs = spec.states[i];
      Snapshot snap;
      snap.state.id = "s" + std::to_string(i);
      snap.state.tick = hs.tick;
      for (const auto& name : hs.shows)
        snap.state.pattern_degrees[node_pattern(name).key] = 1;
      snap.state.profile = state_profile_key(snap.state);
      ep.snapshots.push_back(std::move(snap));
      max_tick = std::max(max_tick, hs.tick);
    }
    for (const auto& ht : spec.transitions) {
      Transition tr;
      tr.from = "s" + std::to_string(ht.from);
      tr.to = "s" + std::to_string(ht.to);
      tr.cause = ht.cause;
      tr.probability = ht.probability;
      tr.confidence = ht.confidence;
      tr.resource_cost = ht.cost;
      tr.interval = {spec.states[ht.from].tick, spec.states[ht.to].tick};
      ep.transitions.push_back(std::move(tr));
    }
    store.add(std::move(ep));
  }
  for (int t = 0; t <= max_tick; ++t) store.intervals.push_back({t, t});
  return store;
}

std::vector<MetricRow> scenario_metric_rows(const EpisodeStore& store, const Scenario& sc,
                                            const std::vector<CatalogPattern>& extra) {
  std::vector<CatalogPattern> candidates = scenario_catalog(sc);
  std::set<std::string> have;
  for (const auto& c : candidates) have.insert(c.key);
  for (const auto& c : extra)
    if (have.insert(c.key).second) candidates.push_back(c);

  auto goals = scenario_goals(sc);
  StuckParams params;
  params.band = sc.band;
  params.f_k = sc.f_k;

  std::vector<MetricRow> rows;
  for (const auto& ep : store.episodes()) {
    for (std::size_t k = 0; k + 1 < ep.snapshots.size(); ++k) {
      int t0 = ep.snapshots[k].state.tick;
      params.future = unit_future(t0, sc.future_ticks);
      params.outcome.reset();
      TickInterval i_s{0, t0};
      for (const auto& p : sc.processes) {
        StuckResult r = conf_and_stuckness(store, p.name, ep.situation, i_s, candidates, goals,
                                           params);
        rows.push_back(MetricRow{p.name, ep.situation, t0, r.conf, r.stuck, r.argmax_key});
      }
    }
  }
  return rows;
}

std::vector<StuckRecord> records_from_rows(const std::vector<MetricRow>& rows) {
  std::vector<StuckRecord> records;
  for (const auto& row : rows) {
    if (records.empty() || records.back().situation != row.situation ||
        records.back().tick != row.tick) {
      StuckRecord rec;
      rec.situation = row.situation;
      rec.tick = row.tick;
      rec.interval = {0, row.tick};
      records.push_back(std::move(rec));
    }
    records.back().stuck[row.process] = row.stuck;
  }
  return records;
}

std::vector<StuckRecord> scenario_stuck_records(const EpisodeStore& store, const Scenario& sc,
                                                const std::vector<CatalogPattern>& extra) {
  return records_from_rows(scenario_metric_rows(store, sc, extra));
}

}  // namespace cogsyn
