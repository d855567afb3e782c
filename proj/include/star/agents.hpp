#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "star/action.hpp"
#include "star/components.hpp"
#include "star/observation.hpp"
#include "star/rng.hpp"
#include "star/terrain.hpp"

namespace star {

// Typed reading of an observation document. Policies see nothing else.
struct ObservedUnit {
  EntityId id = kInvalidEntity;
  UnitType type = UnitType::Infantry;
  HexCoord at;
  int count = 0;
  int count_max = 0;
  int mp = 0;
  int ap = 0;
  int attack_range = 1;
  bool rested = false;
  bool confused = false;
  std::int64_t locked_until_ms = 0;
  std::vector<std::pair<HexCoord, int>> reachable;
  std::vector<EntityId> enemies_in_range;
};

struct ObservedEnemy {
  EntityId id = kInvalidEntity;
  UnitType type = UnitType::Infantry;
  HexCoord at;
  std::string band;
};

struct ObservationView {
  std::string faction;
  bool real_time = false;
  int turn_number = 0;
  std::int64_t clock_ms = 0;
  int width = 0;
  int height = 0;
  std::vector<Terrain> terrain;  // row-major
  std::vector<ObservedUnit> own;
  std::vector<ObservedEnemy> enemies;

  static ObservationView parse(const nlohmann::json& doc);

  Terrain at(HexCoord c) const { return terrain[static_cast<std::size_t>(c.row * width + c.col)]; }
  bool contains(HexCoord c) const { return in_bounds(c, width, height); }
  // Units that may act now: AP left and not resting (turn-based), not locked
  // (real time).
  bool can_act(const ObservedUnit& u) const;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual ObservationLevel observation_level() const { return ObservationLevel::Tactical; }
  // One batch. Turn-based batches end with exactly one end_turn; real-time
  // batches never contain one.
  virtual std::vector<ActionRequest> decide(const nlohmann::json& observation) = 0;
};

struct AgentProfile {
  std::string policy;  // random | greedy | kiting
  std::uint64_t seed = 0;

  std::string label() const { return policy + ":" + std::to_string(seed); }
};

// "greedy:7" -> {greedy, 7}; a bare policy name gets seed 0. Throws
// std::invalid_argument on unknown policies or bad seeds.
AgentProfile parse_profile(const std::string& text);

std::unique_ptr<Agent> make_agent(const AgentProfile& profile);

class RandomAgent : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(Rng(seed).split("random_policy")) {}
  std::string name() const override { return "random"; }
  std::vector<ActionRequest> decide(const nlohmann::json& observation) override;

 private:
  Rng rng_;
};

class GreedyAgent : public Agent {
 public:
  std::string name() const override { return "greedy"; }
  std::vector<ActionRequest> decide(const nlohmann::json& observation) override;

 private:
  std::map<EntityId, HexCoord> start_;
};

class KitingAgent : public Agent {
 public:
  std::string name() const override { return "kiting"; }
  std::vector<ActionRequest> decide(const nlohmann::json& observation) override;

 private:
  std::map<EntityId, HexCoord> start_;
};

ActionRequest move_request(EntityId unit, HexCoord to);
ActionRequest attack_request(EntityId unit, EntityId target);
ActionRequest end_turn_request(const std::string& faction);

}  // namespace star
