#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "star/hex.hpp"

namespace star {

using EntityId = std::uint32_t;
inline constexpr EntityId kInvalidEntity = 0;

enum class UnitType : std::uint8_t { Infantry, Cavalry, Archer };

std::string_view to_string(UnitType t);
std::optional<UnitType> unit_type_from_string(std::string_view name);

enum class Status : std::uint8_t { MoraleBoost, Confusion, Fatigue };

std::string_view to_string(Status s);
std::optional<Status> status_from_string(std::string_view name);
bool is_negative(Status s);

struct Gauge {
  int current = 0;
  int max = 0;

  friend bool operator==(const Gauge&, const Gauge&) = default;
};

struct Position {
  HexCoord at;
  friend bool operator==(const Position&, const Position&) = default;
};

struct UnitStats {
  UnitType type = UnitType::Infantry;
  int attack = 0;
  int defense = 0;
  int attack_range = 1;
  int vision_range = 3;
  friend bool operator==(const UnitStats&, const UnitStats&) = default;
};

struct UnitCount : Gauge {};
struct MovementPoints : Gauge {};
struct ActionPoints : Gauge {};

struct FactionTag {
  int side = 0;
  friend bool operator==(const FactionTag&, const FactionTag&) = default;
};

// Remaining duration per active status; -1 means "until rest".
struct StatusEffects {
  std::map<Status, int> active;
  friend bool operator==(const StatusEffects&, const StatusEffects&) = default;
};

struct SkillState {
  int skill_points = 0;
  std::map<std::string, int> cooldowns;  // turns remaining
  friend bool operator==(const SkillState&, const SkillState&) = default;
};

// Real-time only: the unit rejects gameplay actions until the clock reaches
// locked_until_ms.
struct ActionLock {
  std::int64_t locked_until_ms = 0;
  friend bool operator==(const ActionLock&, const ActionLock&) = default;
};

// Per-turn bookkeeping cleared by the refresh system.
struct TurnFlags {
  bool rested = false;
  int ap_spent = 0;
  friend bool operator==(const TurnFlags&, const TurnFlags&) = default;
};

}  // namespace star
