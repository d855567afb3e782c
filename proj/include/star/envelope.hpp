#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace star {

enum class MsgType {
  Observation,
  ActionRequest,
  ActionResult,
  Event,
  Register,
  RegisterAck,
  Error,
  StatsReport,
  Ping,
};

std::string_view to_string(MsgType t);
std::optional<MsgType> msg_type_from_string(std::string_view name);

// Wire unit. Field names on the wire: msg_type, sender, receiver, timestamp,
// seq, payload, and received_at once the server has stamped it.
struct Envelope {
  MsgType msg_type = MsgType::Ping;
  std::string sender;
  std::string receiver;
  std::int64_t timestamp = 0;  // ms since epoch, set by the sender
  std::int64_t seq = 0;        // per sender, strictly increasing
  nlohmann::json payload = nlohmann::json::object();
  std::optional<std::int64_t> received_at;

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

// Canonical text: sorted keys, no insignificant whitespace, UTF-8. Throws
// StarError(UnserializablePayload) for non-finite numbers or invalid UTF-8.
std::string encode_envelope(const Envelope& e);

// Throws StarError with MalformedMessage (not JSON), UnknownType (msg_type
// not in the taxonomy) or SchemaViolation (missing or mistyped field).
Envelope decode_envelope(std::string_view text);

// ERROR payload: {code, message, spatial}.
nlohmann::json error_payload(std::string_view code, std::string_view message, bool spatial);

}  // namespace star
