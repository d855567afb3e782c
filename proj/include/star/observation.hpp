#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "json.hpp"
#include "star/combat.hpp"
#include "star/world.hpp"

namespace star {

enum class ObservationLevel { Basic, Detailed, Tactical };

std::string_view to_string(ObservationLevel level);
std::optional<ObservationLevel> observation_level_from_string(std::string_view name);

// Union over the side's units of cells within vision range that have line of
// sight. Each unit sees its own cell.
std::set<HexCoord> visible_cells(const WorldState& world, int side);

// "low" below 34% of max, "high" above 66%, "medium" otherwise.
std::string_view estimate_band(int current, int max);

nlohmann::json coord_to_json(HexCoord c);
// Throws StarError(InvalidParams) when the document is not {col: int, row: int}.
HexCoord coord_from_json(const nlohmann::json& doc);

// Fog-filtered view for one side. Enemy units appear only inside the visible
// set and never with exact soldier counts. Higher levels add detail about the
// side's own units only.
nlohmann::json build_observation(const WorldState& world, const Rules& rules, int side,
                                 ObservationLevel level);

// Record for one own unit at the requested level.
nlohmann::json own_unit_record(const WorldState& world, const Rules& rules, EntityId id,
                               ObservationLevel level, const std::set<HexCoord>& visible);

}  // namespace star
