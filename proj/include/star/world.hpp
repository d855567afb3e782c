#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "star/registry.hpp"
#include "star/scenario.hpp"
#include "star/terrain.hpp"

namespace star {

enum class Mode : std::uint8_t { TurnBased, RealTime };

std::string_view to_string(Mode m);
std::optional<Mode> mode_from_string(std::string_view name);

enum class TerminalReason : std::uint8_t { Elimination, Horizon, Forfeit };

std::string_view to_string(TerminalReason r);

struct Outcome {
  std::optional<int> winner;  // side index; nullopt is a draw
  double surviving_fraction = 0.0;  // winner's soldiers left / soldiers fielded
  std::int64_t duration = 0;  // completed turns or simulated milliseconds
  TerminalReason reason = TerminalReason::Elimination;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct FactionState {
  std::string name;
  int manpower = 0;
  int supplies = 0;
  int construction_points = 0;
  int initial_soldiers = 0;
  bool forfeited = false;

  friend bool operator==(const FactionState&, const FactionState&) = default;
};

// The single authoritative game state. Mutated by one scheduler thread only.
struct WorldState {
  Registry registry;
  TerrainGrid terrain;
  Mode mode = Mode::TurnBased;
  std::uint64_t seed = 0;
  int turn_number = 1;
  std::optional<int> active_side;  // turn-based only
  std::int64_t clock_ms = 0;       // real-time only
  std::int64_t regen_carry_ms = 0;
  std::int64_t horizon_turns = 100;
  std::int64_t horizon_ms = 300'000;
  std::array<FactionState, 2> factions;
  std::optional<Outcome> outcome;

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

std::optional<int> side_by_name(const WorldState& world, std::string_view name);
inline int opponent(int side) { return 1 - side; }

std::optional<EntityId> unit_at(const WorldState& world, HexCoord c);
std::vector<EntityId> units_of(const WorldState& world, int side);
int soldiers_of(const WorldState& world, int side);

// Creates a unit with the full component signature, gauges at max.
EntityId spawn_unit(WorldState& world, int side, UnitType type, HexCoord at,
                    const ScenarioConfig& scenario);

// Builds a ready-to-play world: terrain, both armies, faction pools.
WorldState build_world(const ScenarioConfig& scenario, Mode mode, std::uint64_t seed);

// Ordered list of systems run at a schedule point (end of turn, real-time
// round). Systems run in registration order.
class SystemSchedule {
 public:
  using System = std::function<void(WorldState&)>;

  void add(std::string name, System system) { systems_.push_back({std::move(name), std::move(system)}); }
  void run(WorldState& world) const {
    for (const auto& entry : systems_) entry.system(world);
  }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& e : systems_) out.push_back(e.name);
    return out;
  }

 private:
  struct Entry {
    std::string name;
    System system;
  };
  std::vector<Entry> systems_;
};

}  // namespace star
