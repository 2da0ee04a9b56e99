#pragma once

// Line-oriented JSON messages for prover/verifier sessions.
//
// Every line is one object {"type", "session_id", "round_index", "payload"}.
// round_index counts the messages of a session in both directions and must
// strictly increase. Binary fields are lowercase hex:
//   bit vectors / matrices   packed bits (serialize.hpp)
//   pi                       u32le image indices
//   commitments              digest bytes
//
// Order:  HELLO -> AGG_INPUT -> VALIDITY_RESULT
//         -> (COMMIT -> CHALLENGE -> RESPONSE -> ROUND_RESULT) x d
//         -> SESSION_RESULT
// A failed validity check or rejected round jumps straight to SESSION_RESULT.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "fedzkp/sigma.hpp"
#include "fedzkp/watermark.hpp"

namespace fedzkp {

inline constexpr int kWireVersion = 1;

enum class MessageType {
  hello,
  agg_input,
  validity_result,
  commit,
  challenge,
  response,
  round_result,
  session_result,
  error,
};

const char* to_string(MessageType type);
std::optional<MessageType> parse_message_type(std::string_view name);

struct WireMessage {
  MessageType type = MessageType::hello;
  std::string session_id;
  std::uint64_t round_index = 0;
  nlohmann::json payload = nlohmann::json::object();
};

/// Single line, no trailing newline.
std::string encode_line(const WireMessage& msg);
/// Throws ProtocolError on anything but a well-formed message object.
WireMessage decode_line(std::string_view line);

nlohmann::json agg_payload(const AggregatedInput& agg, std::size_t index);
struct AggPayload {
  AggregatedInput agg;
  std::size_t index;
};
AggPayload parse_agg_payload(const nlohmann::json& payload);

nlohmann::json commit_payload(const RoundMessage1& msg1);
RoundMessage1 parse_commit_payload(const nlohmann::json& payload, std::size_t commitment_bits);

nlohmann::json response_payload(const RoundResponse& resp);
/// Field lengths are checked against m; presence is left to the verifier.
RoundResponse parse_response_payload(const nlohmann::json& payload, std::size_t m);

std::string permutation_hex(const Permutation& pi);
Permutation permutation_from_hex(std::string_view hex, std::size_t m);

}  // namespace fedzkp
