#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace star {

// Every failure an agent or operator can observe. The wire name is the
// enumerator spelled as-is.
enum class ErrorCode {
  // validation layers
  OutOfBounds,
  UnknownUnit,
  NotYourUnit,
  NotYourTurn,
  MissingComponent,
  InsufficientMP,
  OutOfRange,
  FriendlyFire,
  InsufficientAP,
  UnknownAction,
  InvalidParams,
  // rule handlers
  DeadTarget,
  Blocked,
  InvalidTarget,
  StatusForbids,
  UnitResting,
  AlreadyOwned,
  NotOwned,
  MaxFortification,
  TerrainForbidsConstruction,
  UnknownSkill,
  SkillOnCooldown,
  InsufficientCP,
  InsufficientSP,
  OccupiedTile,
  ImpassableTile,
  UnknownFaction,
  UnitBusy,
  NotInThisMode,
  GameOver,
  DomainError,
  // protocol
  NotRegistered,
  FactionTaken,
  MalformedMessage,
  UnknownType,
  SchemaViolation,
  UnserializablePayload,
  AgentTimeout,
  DegenerateMap,
  // ratings
  InvalidScore,
  InsufficientPlayers,
};

std::string_view to_string(ErrorCode code);
std::optional<ErrorCode> error_code_from_string(std::string_view name);

// Spatial errors are the share of failures reported as SAE.
bool is_spatial(ErrorCode code);

class StarError : public std::runtime_error {
 public:
  StarError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  explicit StarError(ErrorCode code) : StarError(code, std::string(to_string(code))) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace star
