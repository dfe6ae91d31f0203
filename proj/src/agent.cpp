#include "cogsyn/agent.hpp"

#include <algorithm>
#include <sstream>

namespace cogsyn {

std::string entity_kind_name(Entity::Kind k) {
  switch (k) {
    case Entity::Kind::Observation: return "observation";
    case Entity::Kind::Action: return "action";
    case Entity::Kind::Goal: return "goal";
    case Entity::Kind::Reward: return "reward";
    case Entity::Kind::Cognit: return "cognit";
  }
  return "?";
}

std::string episode_log_to_text(const std::vector<Event>& log) {
  std::ostringstream out;
  for (const Event& e : log) {
    auto line = [&](int slot, const char* kind, const std::string& payload) {
      out << e.tick << "\t" << slot << "\t" << kind << "\t" << payload << "\n";
    };
    if (e.cognit) line(0, "cognit", *e.cognit);
    if (e.action) line(1, "action", *e.action);
    if (e.observation) line(2, "observation", *e.observation);
    if (e.goal) line(3, "goal", *e.goal);
    if (e.reward) line(4, "reward", format_rational(*e.reward));
  }
  return out.str();
}

std::vector<Event> episode_log_from_text(const std::string& text) {
  std::map<std::uint64_t, Event> by_tick;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
      auto tab = line.find('\t', start);
      if (tab == std::string::npos)
        throw Error(Errc::bad_input, "episode log line " + std::to_string(lineno) +
                                         ": expected 4 tab-separated fields");
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    cols.push_back(line.substr(start));
    std::uint64_t tick;
    try {
      tick = std::stoull(cols[0]);
    } catch (const std::exception&) {
      throw Error(Errc::bad_input,
                  "episode log line " + std::to_string(lineno) + ": bad tick '" + cols[0] + "'");
    }
    Event& e = by_tick[tick];
    e.tick = tick;
    const std::string& kind = cols[2];
    const std::string& payload = cols[3];
    if (kind == "cognit") e.cognit = payload;
    else if (kind == "action") e.action = payload;
    else if (kind == "observation") e.observation = payload;
    else if (kind == "goal") e.goal = payload;
    else if (kind == "reward") {
      Rational r = parse_rational(payload);
      if (r < 0 || r > 1)
        throw Error(Errc::bad_input,
                    "episode log line " + std::to_string(lineno) + ": reward outside [0,1]");
      e.reward = r;
    } else {
      throw Error(Errc::bad_input,
                  "episode log line " + std::to_string(lineno) + ": unknown kind '" + kind + "'");
    }
  }
  std::vector<Event> out;
  out.reserve(by_tick.size());
  for (auto& [t, e] : by_tick) out.push_back(std::move(e));
  return out;
}

void Memory::insert(const Entity& e) {
  auto it = slots_.find(e);
  if (it == slots_.end()) {
    slots_[e] = Slot{1, seq_++};
  } else {
    ++it->second.count;
  }
  ++total_;
  evict_until_fits();
}

void Memory::evict_until_fits() {
  while (total_ > capacity_ && !slots_.empty()) {
    auto victim = slots_.begin();
    for (auto it = slots_.begin(); it != slots_.end(); ++it) {
      if (it->second.count < victim->second.count ||
          (it->second.count == victim->second.count &&
           it->second.first_seq < victim->second.first_seq))
        victim = it;
    }
    total_ -= victim->second.count;
    slots_.erase(victim);
  }
}

bool Memory::forget(const Entity& e) {
  auto it = slots_.find(e);
  if (it == slots_.end()) return false;
  total_ -= it->second.count;
  slots_.erase(it);
  return true;
}

std::size_t Memory::count(const Entity& e) const {
  auto it = slots_.find(e);
  return it == slots_.end() ? 0 : it->second.count;
}

std::vector<std::pair<Entity, std::size_t>> Memory::contents() const {
  std::vector<std::pair<Entity, std::size_t>> out;
  out.reserve(slots_.size());
  for (const auto& [e, slot] : slots_) out.emplace_back(e, slot.count);
  return out;
}

std::optional<Entity> cognit_product(const Cognit& c, const Entity& x) {
  switch (c.rule.kind) {
    case CognitRule::Kind::Identity:
      return x;
    case CognitRule::Kind::Annihilate:
      return std::nullopt;
    case CognitRule::Kind::AppendTag: {
      Entity out = x;
      out.symbol += c.rule.param;
      return out;
    }
    case CognitRule::Kind::CreateEntity:
      return Entity{c.rule.entity_kind, c.rule.param};
    default:
      return std::nullopt;
  }
}

namespace {

std::vector<Effect> rule_effects(const Cognit& c) {
  std::vector<Effect> out;
  Effect e;
  switch (c.rule.kind) {
    case CognitRule::Kind::CreateEntity:
      e.kind = Effect::Kind::Create;
      e.entity = Entity{c.rule.entity_kind, c.rule.param};
      out.push_back(e);
      break;
    case CognitRule::Kind::ForgetEntity:
      e.kind = Effect::Kind::Forget;
      e.entity = Entity{c.rule.entity_kind, c.rule.param};
      out.push_back(e);
      break;
    case CognitRule::Kind::ExecuteAction:
      e.kind = Effect::Kind::Execute;
      e.symbol = c.rule.param;
      out.push_back(e);
      break;
    case CognitRule::Kind::ActivateOther:
      e.kind = Effect::Kind::Activate;
      e.symbol = c.rule.param;
      out.push_back(e);
      break;
    case CognitRule::Kind::Annihilate:
      e.kind = Effect::Kind::Forget;
      e.entity = Entity{Entity::Kind::Cognit, c.id};
      out.push_back(e);
      break;
    case CognitRule::Kind::Identity:
    case CognitRule::Kind::AppendTag:
    case CognitRule::Kind::Noop:
      e.kind = Effect::Kind::None;
      out.push_back(e);
      break;
  }
  return out;
}

void activate_rec(CognitAgentState& agent, const std::string& cognit_id, std::size_t depth,
                  ActivationResult& res) {
  if (depth >= kActivationDepthBound) {
    res.depth_exceeded = true;
    return;
  }
  auto it = agent.cognits.find(cognit_id);
  if (it == agent.cognits.end())
    throw Error(Errc::unknown_atom, "no cognit with id '" + cognit_id + "'");
  for (Effect eff : rule_effects(it->second)) {
    switch (eff.kind) {
      case Effect::Kind::Create:
        agent.memory.insert(eff.entity);
        break;
      case Effect::Kind::Forget:
        agent.memory.forget(eff.entity);
        break;
      case Effect::Kind::Execute:
        res.executed.push_back(eff.symbol);
        break;
      case Effect::Kind::Activate:
        break;  // recurse below, after recording
      case Effect::Kind::None:
        break;
    }
    res.applied.push_back(eff);
    if (eff.kind == Effect::Kind::Activate) {
      activate_rec(agent, eff.symbol, depth + 1, res);
      if (res.depth_exceeded) return;
    }
  }
}

}  // namespace

ActivationResult activate_cognit(CognitAgentState& agent, const std::string& cognit_id) {
  ActivationResult res;
  activate_rec(agent, cognit_id, 0, res);
  return res;
}

std::string sample_action(const Policy& p, const std::optional<std::string>& last_obs, Rng& rng) {
  switch (p.kind) {
    case Policy::Kind::Constant:
      return p.constant_action;
    case Policy::Kind::Uniform: {
      if (p.actions.empty()) throw Error(Errc::bad_input, "uniform policy with no actions");
      return p.actions[rng.below(p.actions.size())];
    }
    case Policy::Kind::Table: {
      std::string key = last_obs.value_or("");
      auto it = p.table.find(key);
      if (it == p.table.end()) it = p.table.find("");
      if (it == p.table.end() || it->second.empty())
        throw Error(Errc::bad_input, "policy table has no row for observation '" + key + "'");
      std::vector<Rational> w;
      w.reserve(it->second.size());
      for (const auto& [a, weight] : it->second) w.push_back(weight);
      return it->second[rng.weighted(w)].first;
    }
  }
  throw Error(Errc::bad_input, "bad policy");
}

EnvStep step_environment(const Environment& env, std::uint64_t tick, const std::string& action,
                         Rng& rng) {
  EnvStep out;
  switch (env.kind) {
    case Environment::Kind::Constant:
      out.observation = env.constant_observation;
      out.reward = env.constant_reward;
      break;
    case Environment::Kind::Table: {
      auto it = env.table.find(action);
      if (it == env.table.end()) it = env.table.find("");
      if (it == env.table.end())
        throw Error(Errc::bad_input, "environment table has no row for action '" + action + "'");
      const auto& [obs_weights, reward] = it->second;
      if (obs_weights.empty())
        throw Error(Errc::bad_input, "environment row with no observations");
      std::vector<Rational> w;
      w.reserve(obs_weights.size());
      for (const auto& [o, weight] : obs_weights) w.push_back(weight);
      out.observation = obs_weights[rng.weighted(w)].first;
      out.reward = reward;
      break;
    }
    case Environment::Kind::Cycle: {
      if (env.cycle.empty()) throw Error(Errc::bad_input, "cycle environment with no observations");
      out.observation = env.cycle[tick % env.cycle.size()];
      auto it = env.cycle_reward.find(out.observation);
      out.reward = it == env.cycle_reward.end() ? Rational(0) : it->second;
      break;
    }
  }
  if (out.reward < 0 || out.reward > 1)
    throw Error(Errc::bad_input, "environment reward outside [0,1]");
  return out;
}

std::vector<Event> run_episode(CognitAgentState& agent, const Environment& env,
                               std::uint64_t ticks, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Event> log;
  log.reserve(ticks);
  std::optional<std::string> last_obs;
  for (std::uint64_t t = 0; t < ticks; ++t) {
    Event e;
    e.tick = t;
    if (!agent.schedule.empty()) {
      const std::string& cid = agent.schedule[t % agent.schedule.size()];
      auto res = activate_cognit(agent, cid);
      e.cognit = cid;
      for (const auto& a : res.executed) agent.pending_actions.push_back(a);
      agent.memory.insert(Entity{Entity::Kind::Cognit, cid});
    }
    if (!agent.pending_actions.empty()) {
      e.action = agent.pending_actions.front();
      agent.pending_actions.pop_front();
    } else {
      e.action = sample_action(agent.policy, last_obs, rng);
    }
    agent.memory.insert(Entity{Entity::Kind::Action, *e.action});
    EnvStep step = step_environment(env, t, *e.action, rng);
    e.observation = step.observation;
    last_obs = step.observation;
    agent.memory.insert(Entity{Entity::Kind::Observation, step.observation});
    if (!env.goal_weights.empty()) {
      std::vector<Rational> w;
      w.reserve(env.goal_weights.size());
      for (const auto& [g, weight] : env.goal_weights) w.push_back(weight);
      e.goal = env.goal_weights[rng.weighted(w)].first;
      agent.memory.insert(Entity{Entity::Kind::Goal, *e.goal});
    }
    e.reward = step.reward;
    agent.memory.insert(Entity{Entity::Kind::Reward, format_rational(step.reward)});
    log.push_back(std::move(e));
  }
  return log;
}

}  // namespace cogsyn
