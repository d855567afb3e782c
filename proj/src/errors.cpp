#include "star/errors.hpp"

#include <array>
#include <utility>

namespace star {
namespace {

using Entry = std::pair<ErrorCode, std::string_view>;

constexpr std::array kNames = {
    Entry{ErrorCode::OutOfBounds, "OutOfBounds"},
    Entry{ErrorCode::UnknownUnit, "UnknownUnit"},
    Entry{ErrorCode::NotYourUnit, "NotYourUnit"},
    Entry{ErrorCode::NotYourTurn, "NotYourTurn"},
    Entry{ErrorCode::MissingComponent, "MissingComponent"},
    Entry{ErrorCode::InsufficientMP, "InsufficientMP"},
    Entry{ErrorCode::OutOfRange, "OutOfRange"},
    Entry{ErrorCode::FriendlyFire, "FriendlyFire"},
    Entry{ErrorCode::InsufficientAP, "InsufficientAP"},
    Entry{ErrorCode::UnknownAction, "UnknownAction"},
    Entry{ErrorCode::InvalidParams, "InvalidParams"},
    Entry{ErrorCode::DeadTarget, "DeadTarget"},
    Entry{ErrorCode::Blocked, "Blocked"},
    Entry{ErrorCode::InvalidTarget, "InvalidTarget"},
    Entry{ErrorCode::StatusForbids, "StatusForbids"},
    Entry{ErrorCode::UnitResting, "UnitResting"},
    Entry{ErrorCode::AlreadyOwned, "AlreadyOwned"},
    Entry{ErrorCode::NotOwned, "NotOwned"},
    Entry{ErrorCode::MaxFortification, "MaxFortification"},
    Entry{ErrorCode::TerrainForbidsConstruction, "TerrainForbidsConstruction"},
    Entry{ErrorCode::UnknownSkill, "UnknownSkill"},
    Entry{ErrorCode::SkillOnCooldown, "SkillOnCooldown"},
    Entry{ErrorCode::InsufficientCP, "InsufficientCP"},
    Entry{ErrorCode::InsufficientSP, "InsufficientSP"},
    Entry{ErrorCode::OccupiedTile, "OccupiedTile"},
    Entry{ErrorCode::ImpassableTile, "ImpassableTile"},
    Entry{ErrorCode::UnknownFaction, "UnknownFaction"},
    Entry{ErrorCode::UnitBusy, "UnitBusy"},
    Entry{ErrorCode::NotInThisMode, "NotInThisMode"},
    Entry{ErrorCode::GameOver, "GameOver"},
    Entry{ErrorCode::DomainError, "DomainError"},
    Entry{ErrorCode::NotRegistered, "NotRegistered"},
    Entry{ErrorCode::FactionTaken, "FactionTaken"},
    Entry{ErrorCode::MalformedMessage, "MalformedMessage"},
    Entry{ErrorCode::UnknownType, "UnknownType"},
    Entry{ErrorCode::SchemaViolation, "SchemaViolation"},
    Entry{ErrorCode::UnserializablePayload, "UnserializablePayload"},
    Entry{ErrorCode::AgentTimeout, "AgentTimeout"},
    Entry{ErrorCode::DegenerateMap, "DegenerateMap"},
    Entry{ErrorCode::InvalidScore, "InvalidScore"},
    Entry{ErrorCode::InsufficientPlayers, "InsufficientPlayers"},
};

}  // namespace

std::string_view to_string(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

std::optional<ErrorCode> error_code_from_string(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

bool is_spatial(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfBounds:
    case ErrorCode::InsufficientMP:
    case ErrorCode::OutOfRange:
    case ErrorCode::Blocked:
    case ErrorCode::InvalidTarget:
      return true;
    default:
      return false;
  }
}

}  // namespace star
