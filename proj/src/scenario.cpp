#include "star/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace star {

using nlohmann::json;

namespace {

template <class T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

json coord_json(HexCoord c) { return {{"col", c.col}, {"row", c.row}}; }

HexCoord coord_from(const json& j) { return {j.at("col").get<int>(), j.at("row").get<int>()}; }

UnitType unit_type_from(const std::string& name) {
  const auto t = unit_type_from_string(name);
  if (!t) throw std::invalid_argument("unknown unit type: " + name);
  return *t;
}

}  // namespace

HexCoord rotate_180(HexCoord c, int width, int height) {
  return {width - 1 - c.col, height - 1 - c.row};
}

void to_json(json& j, const ScenarioConfig& s) {
  json units = json::object();
  for (const auto& [type, t] : s.units) {
    units[std::string(to_string(type))] = {
        {"attack", t.attack},     {"defense", t.defense}, {"attack_range", t.attack_range},
        {"vision_range", t.vision_range}, {"count_max", t.count_max}, {"mp_max", t.mp_max},
        {"ap_max", t.ap_max},
    };
  }
  json army = json::array();
  for (const auto& slot : s.army) {
    army.push_back({{"type", to_string(slot.type)}, {"position", coord_json(slot.position)}});
  }
  json skills = json::object();
  for (const auto& [name, spec] : s.rules.skills) {
    skills[name] = {{"sp_cost", spec.sp_cost},
                    {"cooldown_turns", spec.cooldown_turns},
                    {"range_bonus", spec.range_bonus}};
  }
  const RuleConfig& r = s.rules;
  j = {
      {"name", s.name},
      {"width", s.width},
      {"height", s.height},
      {"factions", s.factions},
      {"map",
       {{"frequency", s.map.frequency},
        {"octaves", s.map.octaves},
        {"water_fraction", s.map.water_fraction},
        {"mountain_fraction", s.map.mountain_fraction},
        {"hill_fraction", s.map.hill_fraction},
        {"forest_fraction", s.map.forest_fraction},
        {"cities", s.map.cities},
        {"smoothing_passes", s.map.smoothing_passes},
        {"max_retries", s.map.max_retries}}},
      {"units", units},
      {"army", army},
      {"horizon_turns", s.horizon_turns},
      {"horizon_ms", s.horizon_ms},
      {"rules",
       {{"curve_weight", r.curve_weight},
        {"curve_exponent", r.curve_exponent},
        {"defense_cap", r.defense_cap},
        {"fortification_per_level", r.fortification_per_level},
        {"max_fortification", r.max_fortification},
        {"morale_boost_multiplier", r.morale_boost_multiplier},
        {"morale_boost_turns", r.morale_boost_turns},
        {"confusion_turns", r.confusion_turns},
        {"fatigue_multiplier", r.fatigue_multiplier},
        {"skills", skills},
        {"skill_points_per_unit", r.skill_points_per_unit},
        {"construction_points", r.construction_points},
        {"initial_manpower", r.initial_manpower},
        {"initial_supplies", r.initial_supplies},
        {"city_manpower_per_turn", r.city_manpower_per_turn},
        {"city_supplies_per_turn", r.city_supplies_per_turn},
        {"realtime_round_ms", r.realtime_round_ms}}},
  };
  if (s.fixed_map) j["fixed_map"] = *s.fixed_map;
}

void from_json(const json& j, ScenarioConfig& s) {
  if (!j.is_object()) throw std::invalid_argument("scenario must be a JSON object");
  read(j, "name", s.name);
  read(j, "width", s.width);
  read(j, "height", s.height);
  read(j, "factions", s.factions);
  read(j, "horizon_turns", s.horizon_turns);
  read(j, "horizon_ms", s.horizon_ms);
  if (auto it = j.find("fixed_map"); it != j.end() && !it->is_null()) {
    s.fixed_map = it->get<std::string>();
  }
  if (auto it = j.find("map"); it != j.end()) {
    const json& m = *it;
    read(m, "frequency", s.map.frequency);
    read(m, "octaves", s.map.octaves);
    read(m, "water_fraction", s.map.water_fraction);
    read(m, "mountain_fraction", s.map.mountain_fraction);
    read(m, "hill_fraction", s.map.hill_fraction);
    read(m, "forest_fraction", s.map.forest_fraction);
    read(m, "cities", s.map.cities);
    read(m, "smoothing_passes", s.map.smoothing_passes);
    read(m, "max_retries", s.map.max_retries);
  }
  if (auto it = j.find("units"); it != j.end()) {
    for (const auto& [name, u] : it->items()) {
      UnitTemplate& t = s.units[unit_type_from(name)];
      read(u, "attack", t.attack);
      read(u, "defense", t.defense);
      read(u, "attack_range", t.attack_range);
      read(u, "vision_range", t.vision_range);
      read(u, "count_max", t.count_max);
      read(u, "mp_max", t.mp_max);
      read(u, "ap_max", t.ap_max);
    }
  }
  if (auto it = j.find("army"); it != j.end()) {
    s.army.clear();
    for (const json& slot : *it) {
      s.army.push_back({unit_type_from(slot.at("type").get<std::string>()),
                        coord_from(slot.at("position"))});
    }
  }
  if (auto it = j.find("rules"); it != j.end()) {
    const json& r = *it;
    RuleConfig& c = s.rules;
    read(r, "curve_weight", c.curve_weight);
    read(r, "curve_exponent", c.curve_exponent);
    read(r, "defense_cap", c.defense_cap);
    read(r, "fortification_per_level", c.fortification_per_level);
    read(r, "max_fortification", c.max_fortification);
    read(r, "morale_boost_multiplier", c.morale_boost_multiplier);
    read(r, "morale_boost_turns", c.morale_boost_turns);
    read(r, "confusion_turns", c.confusion_turns);
    read(r, "fatigue_multiplier", c.fatigue_multiplier);
    read(r, "skill_points_per_unit", c.skill_points_per_unit);
    read(r, "construction_points", c.construction_points);
    read(r, "initial_manpower", c.initial_manpower);
    read(r, "initial_supplies", c.initial_supplies);
    read(r, "city_manpower_per_turn", c.city_manpower_per_turn);
    read(r, "city_supplies_per_turn", c.city_supplies_per_turn);
    read(r, "realtime_round_ms", c.realtime_round_ms);
    if (auto sk = r.find("skills"); sk != r.end()) {
      for (const auto& [name, spec] : sk->items()) {
        SkillSpec& out = c.skills[name];
        read(spec, "sp_cost", out.sp_cost);
        read(spec, "cooldown_turns", out.cooldown_turns);
        read(spec, "range_bonus", out.range_bonus);
      }
    }
  }
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  return json::parse(in, nullptr, true, true).get<ScenarioConfig>();
}

}  // namespace star
