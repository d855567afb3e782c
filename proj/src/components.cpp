#include "star/components.hpp"

namespace star {

std::string_view to_string(UnitType t) {
  switch (t) {
    case UnitType::Infantry: return "infantry";
    case UnitType::Cavalry: return "cavalry";
    case UnitType::Archer: return "archer";
  }
  return "unknown";
}

std::optional<UnitType> unit_type_from_string(std::string_view name) {
  for (const UnitType t : {UnitType::Infantry, UnitType::Cavalry, UnitType::Archer}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::MoraleBoost: return "MORALE_BOOST";
    case Status::Confusion: return "CONFUSION";
    case Status::Fatigue: return "FATIGUE";
  }
  return "UNKNOWN";
}

std::optional<Status> status_from_string(std::string_view name) {
  for (const Status s : {Status::MoraleBoost, Status::Confusion, Status::Fatigue}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

bool is_negative(Status s) { return s != Status::MoraleBoost; }

}  // namespace star
