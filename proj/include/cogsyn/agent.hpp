#pragma once
// Agent hierarchy: policy-driven basic agents, goal-weighted agents, and
// cognit agents whose memory is a capacity-bounded multiset of entities.
// One Event per tick with the fixed slot order c a o g r; any item may be
// absent. Rewards are exact rationals in [0,1].

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cogsyn/rational.hpp"
#include "cogsyn/rng.hpp"

namespace cogsyn {

struct Event {
  std::uint64_t tick = 0;
  std::optional<std::string> cognit;
  std::optional<std::string> action;
  std::optional<std::string> observation;
  std::optional<std::string> goal;
  std::optional<Rational> reward;
};

// Text form: one line per present item, `tick<TAB>slot<TAB>kind<TAB>payload`,
// slot 0..4 = cognit, action, observation, goal, reward.
std::string episode_log_to_text(const std::vector<Event>& log);
std::vector<Event> episode_log_from_text(const std::string& text);

struct Entity {
  enum class Kind { Observation, Action, Goal, Reward, Cognit };
  Kind kind = Kind::Observation;
  std::string symbol;

  friend bool operator<(const Entity& a, const Entity& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.symbol < b.symbol;
  }
  friend bool operator==(const Entity& a, const Entity& b) {
    return a.kind == b.kind && a.symbol == b.symbol;
  }
};

std::string entity_kind_name(Entity::Kind k);

// Multiset memory: repeated insertion increments the count. When the total
// count exceeds capacity, whole entries are evicted, lowest count first and
// oldest first insertion on ties, until the total fits.
class Memory {
 public:
  explicit Memory(std::size_t capacity = 1024) : capacity_(capacity) {}

  void insert(const Entity& e);
  bool forget(const Entity& e);  // removes the whole entry; false when absent
  std::size_t count(const Entity& e) const;
  std::size_t total() const { return total_; }
  std::size_t capacity() const { return capacity_; }
  // (entity, count) ordered by entity key.
  std::vector<std::pair<Entity, std::size_t>> contents() const;

 private:
  struct Slot {
    std::size_t count = 0;
    std::uint64_t first_seq = 0;
  };
  std::size_t capacity_;
  std::size_t total_ = 0;
  std::uint64_t seq_ = 0;
  std::map<Entity, Slot> slots_;
  void evict_until_fits();
};

// Rule library for cognits. The product c * x and activation effects are
// both derived from the rule.
struct CognitRule {
  enum class Kind {
    Identity,    // c * x = x; activation: none
    Annihilate,  // c * x = null; activation: forget own tag's entity
    AppendTag,   // c * x = x with `param` appended to its symbol
    CreateEntity,   // activation: create entity (entity_kind, param)
    ForgetEntity,   // activation: forget entity (entity_kind, param)
    ExecuteAction,  // activation: emit action `param`
    ActivateOther,  // activation: activate cognit `param`
    Noop,
  };
  Kind kind = Kind::Noop;
  std::string param;
  Entity::Kind entity_kind = Entity::Kind::Observation;
};

struct Cognit {
  std::string id;
  CognitRule rule;
};

struct Effect {
  enum class Kind { Forget, Create, Execute, Activate, None };
  Kind kind = Kind::None;
  Entity entity;       // Forget/Create payload
  std::string symbol;  // Execute action / Activate cognit id
};

inline constexpr std::size_t kActivationDepthBound = 64;

struct ActivationResult {
  std::vector<Effect> applied;
  std::vector<std::string> executed;  // action symbols queued by Execute
  bool depth_exceeded = false;
};

// c * x in isolation: the entity the product yields, or nullopt when the
// product annihilates or the rule has no product reading.
std::optional<Entity> cognit_product(const Cognit& c, const Entity& x);

class CognitAgentState;

// Applies the cognit's effects to memory; Activate effects recurse with the
// shared depth bound. Effects already applied stay applied when the bound
// trips (flagged, not rolled back).
ActivationResult activate_cognit(CognitAgentState& agent, const std::string& cognit_id);

// Policies: action distribution conditioned on the latest observation.
struct Policy {
  enum class Kind { Constant, Uniform, Table };
  Kind kind = Kind::Constant;
  std::string constant_action;
  std::vector<std::string> actions;  // Uniform support / Table row support
  // Table: observation -> weighted actions; empty-key row is the default.
  std::map<std::string, std::vector<std::pair<std::string, Rational>>> table;
};

std::string sample_action(const Policy& p, const std::optional<std::string>& last_obs, Rng& rng);

// Environments: observation and reward mu(x | history, a), plus the goal
// weighting gamma used by goal-seeking agents.
struct Environment {
  enum class Kind { Constant, Table, Cycle };
  Kind kind = Kind::Constant;
  std::string constant_observation;
  Rational constant_reward{0};
  // Table: action -> (weighted observations, reward)
  std::map<std::string, std::pair<std::vector<std::pair<std::string, Rational>>, Rational>> table;
  std::vector<std::string> cycle;               // Cycle observations
  std::map<std::string, Rational> cycle_reward;  // per observation
  std::vector<std::pair<std::string, Rational>> goal_weights;  // gamma
};

struct EnvStep {
  std::string observation;
  Rational reward{0};
};

EnvStep step_environment(const Environment& env, std::uint64_t tick, const std::string& action,
                         Rng& rng);

class CognitAgentState {
 public:
  Memory memory;
  std::map<std::string, Cognit> cognits;
  std::deque<std::string> pending_actions;
  Policy policy;
  // Cognits activated in rotation, one per tick; empty = no cognit slot.
  std::vector<std::string> schedule;

  explicit CognitAgentState(std::size_t capacity = 1024) : memory(capacity) {}
};

// Runs the tick loop: cognit activation (schedule rotation), action (queued
// effects first, else policy), observation + reward from the environment,
// goal sampled from gamma. All randomness flows from the single seed.
std::vector<Event> run_episode(CognitAgentState& agent, const Environment& env,
                               std::uint64_t ticks, std::uint64_t seed);

}  // namespace cogsyn
