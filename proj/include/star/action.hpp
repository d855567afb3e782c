#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "star/errors.hpp"

namespace star {

enum class ActionKind {
  Move,
  Attack,
  Rest,
  Occupy,
  Fortify,
  Skill,
  Observation,
  GetFactionState,
  EndTurn,
  GetActionList,
  RegisterAgentInfo,
  StrategyPing,
  ReportLlmStats,
};

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> action_from_string(std::string_view name);

// Actions that act on a specific own unit.
bool is_unit_action(ActionKind kind);
// Unit actions plus end_turn: the actions gated by turn order.
bool is_gameplay(ActionKind kind);
bool is_telemetry(ActionKind kind);

struct ActionRequest {
  ActionKind kind = ActionKind::GetActionList;
  nlohmann::json params = nlohmann::json::object();

  // {"action": "<name>", "params": {...}}
  nlohmann::json to_json() const;
  // Throws StarError(UnknownAction) or StarError(InvalidParams).
  static ActionRequest parse(const nlohmann::json& doc);

  friend bool operator==(const ActionRequest&, const ActionRequest&) = default;
};

struct ActionResult {
  bool ok = true;
  nlohmann::json detail = nlohmann::json::object();
  std::optional<ErrorCode> error;
  bool spatial = false;
  std::string message;
  std::vector<std::string> warnings;

  static ActionResult success(nlohmann::json detail = nlohmann::json::object());
  static ActionResult failure(ErrorCode code, std::string message = {});

  nlohmann::json to_json() const;
  static ActionResult from_json(const nlohmann::json& doc);
};

// The 13 supported actions with their parameter signatures.
nlohmann::json action_catalog();

// Parameter names each action understands; anything else is ignored with a
// warning.
const std::vector<std::string>& known_params(ActionKind kind);

}  // namespace star
