#include "star/envelope.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "star/errors.hpp"

namespace star {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<MsgType, std::string_view>, 9> kTypes = {{
    {MsgType::Observation, "OBSERVATION"},
    {MsgType::ActionRequest, "ACTION_REQUEST"},
    {MsgType::ActionResult, "ACTION_RESULT"},
    {MsgType::Event, "EVENT"},
    {MsgType::Register, "REGISTER"},
    {MsgType::RegisterAck, "REGISTER_ACK"},
    {MsgType::Error, "ERROR"},
    {MsgType::StatsReport, "STATS_REPORT"},
    {MsgType::Ping, "PING"},
}};

bool all_finite(const json& j) {
  switch (j.type()) {
    case json::value_t::number_float: return std::isfinite(j.get<double>());
    case json::value_t::object:
    case json::value_t::array:
      for (const auto& v : j) {
        if (!all_finite(v)) return false;
      }
      return true;
    default: return true;
  }
}

[[noreturn]] void schema(const std::string& what) { throw StarError(ErrorCode::SchemaViolation, what); }

const json& field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) schema(std::string("missing field ") + key);
  return *it;
}

std::string string_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_string()) schema(std::string(key) + " must be a string");
  return v.get<std::string>();
}

std::int64_t int_field(const json& v, const char* key) {
  if (!v.is_number_integer()) schema(std::string(key) + " must be an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    schema(std::string(key) + " out of range");
  }
  return v.get<std::int64_t>();
}

}  // namespace

std::string_view to_string(MsgType t) {
  for (const auto& [k, name] : kTypes) {
    if (k == t) return name;
  }
  return "UNKNOWN";
}

std::optional<MsgType> msg_type_from_string(std::string_view name) {
  for (const auto& [k, n] : kTypes) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string encode_envelope(const Envelope& e) {
  if (!all_finite(e.payload)) {
    throw StarError(ErrorCode::UnserializablePayload, "payload holds a non-finite number");
  }
  json doc = {{"msg_type", to_string(e.msg_type)},
              {"sender", e.sender},
              {"receiver", e.receiver},
              {"timestamp", e.timestamp},
              {"seq", e.seq},
              {"payload", e.payload}};
  if (e.received_at) doc["received_at"] = *e.received_at;
  try {
    return doc.dump();
  } catch (const json::type_error& err) {
    throw StarError(ErrorCode::UnserializablePayload, err.what());
  }
}

Envelope decode_envelope(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& err) {
    throw StarError(ErrorCode::MalformedMessage, err.what());
  }
  if (!doc.is_object()) schema("envelope must be an object");

  Envelope e;
  const std::string type = string_field(doc, "msg_type");
  const auto parsed = msg_type_from_string(type);
  if (!parsed) throw StarError(ErrorCode::UnknownType, "unknown msg_type " + type);
  e.msg_type = *parsed;
  e.sender = string_field(doc, "sender");
  e.receiver = string_field(doc, "receiver");
  e.timestamp = int_field(field(doc, "timestamp"), "timestamp");
  e.seq = int_field(field(doc, "seq"), "seq");
  if (e.seq < 0) schema("seq must be non-negative");
  e.payload = field(doc, "payload");
  if (!e.payload.is_object()) schema("payload must be an object");
  if (const auto it = doc.find("received_at"); it != doc.end()) e.received_at = int_field(*it, "received_at");
  return e;
}

json error_payload(std::string_view code, std::string_view message, bool spatial) {
  return {{"code", code}, {"message", message}, {"spatial", spatial}};
}

}  // namespace star
