#include "star/action.hpp"

#include <array>
#include <map>
#include <utility>

namespace star {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ActionKind, std::string_view>, 13> kActions = {{
    {ActionKind::Move, "move"},
    {ActionKind::Attack, "attack"},
    {ActionKind::Rest, "rest"},
    {ActionKind::Occupy, "occupy"},
    {ActionKind::Fortify, "fortify"},
    {ActionKind::Skill, "skill"},
    {ActionKind::Observation, "observation"},
    {ActionKind::GetFactionState, "get_faction_state"},
    {ActionKind::EndTurn, "end_turn"},
    {ActionKind::GetActionList, "get_action_list"},
    {ActionKind::RegisterAgentInfo, "register_agent_info"},
    {ActionKind::StrategyPing, "strategy_ping"},
    {ActionKind::ReportLlmStats, "report_llm_stats"},
}};

json param(std::string_view name, std::string_view type, bool required, std::string_view about) {
  return {{"name", name}, {"type", type}, {"required", required}, {"description", about}};
}

}  // namespace

std::string_view to_string(ActionKind kind) {
  for (const auto& [k, name] : kActions) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ActionKind> action_from_string(std::string_view name) {
  for (const auto& [k, n] : kActions) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_unit_action(ActionKind kind) {
  switch (kind) {
    case ActionKind::Move:
    case ActionKind::Attack:
    case ActionKind::Rest:
    case ActionKind::Occupy:
    case ActionKind::Fortify:
    case ActionKind::Skill:
      return true;
    default:
      return false;
  }
}

bool is_gameplay(ActionKind kind) { return is_unit_action(kind) || kind == ActionKind::EndTurn; }

bool is_telemetry(ActionKind kind) {
  return kind == ActionKind::StrategyPing || kind == ActionKind::ReportLlmStats;
}

json ActionRequest::to_json() const { return {{"action", to_string(kind)}, {"params", params}}; }

ActionRequest ActionRequest::parse(const json& doc) {
  if (!doc.is_object()) throw StarError(ErrorCode::InvalidParams, "action must be an object");
  const auto it = doc.find("action");
  if (it == doc.end() || !it->is_string()) {
    throw StarError(ErrorCode::InvalidParams, "missing action name");
  }
  const auto kind = action_from_string(it->get<std::string>());
  if (!kind) throw StarError(ErrorCode::UnknownAction, "unknown action " + it->get<std::string>());
  ActionRequest req{*kind, json::object()};
  if (const auto p = doc.find("params"); p != doc.end() && !p->is_null()) {
    if (!p->is_object()) throw StarError(ErrorCode::InvalidParams, "params must be an object");
    req.params = *p;
  }
  return req;
}

ActionResult ActionResult::success(json detail) {
  ActionResult r;
  r.detail = std::move(detail);
  return r;
}

ActionResult ActionResult::failure(ErrorCode code, std::string message) {
  ActionResult r;
  r.ok = false;
  r.error = code;
  r.spatial = is_spatial(code);
  r.message = message.empty() ? std::string(to_string(code)) : std::move(message);
  return r;
}

json ActionResult::to_json() const {
  json out = {{"ok", ok}, {"detail", detail}, {"spatial", spatial}};
  out["error_code"] = error ? json(to_string(*error)) : json(nullptr);
  if (!message.empty()) out["message"] = message;
  if (!warnings.empty()) out["warnings"] = warnings;
  return out;
}

ActionResult ActionResult::from_json(const json& doc) {
  ActionResult r;
  r.ok = doc.at("ok").get<bool>();
  r.detail = doc.value("detail", json::object());
  r.spatial = doc.value("spatial", false);
  if (const auto e = doc.find("error_code"); e != doc.end() && e->is_string()) {
    r.error = error_code_from_string(e->get<std::string>());
  }
  r.message = doc.value("message", std::string{});
  r.warnings = doc.value("warnings", std::vector<std::string>{});
  return r;
}

const std::vector<std::string>& known_params(ActionKind kind) {
  static const std::map<ActionKind, std::vector<std::string>> kKnown = {
      {ActionKind::Move, {"unit_id", "target_position"}},
      {ActionKind::Attack, {"unit_id", "target_id"}},
      {ActionKind::Rest, {"unit_id"}},
      {ActionKind::Occupy, {"unit_id", "position"}},
      {ActionKind::Fortify, {"unit_id", "position"}},
      {ActionKind::Skill, {"unit_id", "skill_name", "target"}},
      {ActionKind::Observation, {"unit_id", "observation_level"}},
      {ActionKind::GetFactionState, {"faction"}},
      {ActionKind::EndTurn, {"faction"}},
      {ActionKind::GetActionList, {}},
      {ActionKind::RegisterAgentInfo, {"faction", "agent_id", "model_id", "provider"}},
      {ActionKind::StrategyPing, {"faction", "score", "evidence"}},
      {ActionKind::ReportLlmStats,
       {"faction", "prompt_tokens", "completion_tokens", "total_tokens", "latency_ms",
        "mean_latency_ms", "error_rate", "errors", "requests", "retries", "model_id"}},
  };
  return kKnown.at(kind);
}

json action_catalog() {
  const json unit = param("unit_id", "int", true, "Unique identifier of the unit");
  json list = json::array();
  const auto add = [&list](ActionKind k, std::string_view category, std::string_view about,
                           json params) {
    list.push_back({{"name", to_string(k)},
                    {"category", category},
                    {"description", about},
                    {"parameters", std::move(params)}});
  };
  add(ActionKind::Move, "unit_control", "Move a unit to a target hex; costs MP by terrain",
      json::array({unit, param("target_position", "object {col: int, row: int}", true,
                               "Target coordinates")}));
  add(ActionKind::Attack, "unit_control", "Attack a hostile unit within range; costs 1 AP",
      json::array({unit, param("target_id", "int", true, "Target unit ID")}));
  add(ActionKind::Rest, "unit_control",
      "Hold position for the rest of the turn: +1 AP, relieves one negative status",
      json::array({unit}));
  add(ActionKind::Occupy, "unit_control", "Take ownership of the current or an adjacent tile",
      json::array({unit, param("position", "object {col: int, row: int}", true,
                               "Tile to occupy")}));
  add(ActionKind::Fortify, "unit_control",
      "Raise the fortification of an owned tile; costs 1 AP and 1 CP",
      json::array({unit, param("position", "object {col: int, row: int}", true,
                               "Tile to fortify")}));
  add(ActionKind::Skill, "unit_control", "Use a unit skill (fire_attack, ambush)",
      json::array({unit, param("skill_name", "string", true, "Canonical skill identifier"),
                   param("target", "int | {col: int, row: int}", false,
                         "Context-dependent target")}));
  add(ActionKind::Observation, "observation", "Get observation info for the faction or a unit",
      json::array({param("unit_id", "int", false, "Unit ID"),
                   param("observation_level", "string", false,
                         "basic | detailed | tactical (default basic)")}));
  add(ActionKind::GetFactionState, "faction_control",
      "Faction state (active/victory/defeat/eliminated/draw), unit counts, surviving units",
      json::array({param("faction", "string", true, "Faction name")}));
  add(ActionKind::EndTurn, "system", "End the current turn; AP/MP restore for the next turn",
      json::array({param("faction", "string", false, "The faction ending its turn")}));
  add(ActionKind::GetActionList, "system", "List supported actions and parameter signatures",
      json::array());
  add(ActionKind::RegisterAgentInfo, "system", "Register the agent for a faction",
      json::array({param("faction", "string", true, "The faction to control"),
                   param("agent_id", "string", true, "Unique identifier for the agent"),
                   param("model_id", "string", true, "Identifier of the model")}));
  add(ActionKind::StrategyPing, "system", "Report a strategic reasoning event",
      json::array({param("faction", "string", false, "The reporting faction"),
                   param("score", "float", true, "Self-assessed confidence, 0.0 to 1.0"),
                   param("evidence", "string", false, "Text describing the insight")}));
  add(ActionKind::ReportLlmStats, "system", "Report token usage, latency and error rates",
      json::array({param("total_tokens", "int", false, "Tokens used"),
                   param("mean_latency_ms", "float", false, "Mean response latency"),
                   param("error_rate", "float", false, "Client-side error rate")}));
  return list;
}

}  // namespace star
