#include "fedzkp/wire.hpp"

#include <array>

#include "fedzkp/error.hpp"
#include "fedzkp/serialize.hpp"

namespace fedzkp {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<MessageType, const char*>, 9> kNames{{
    {MessageType::hello, "HELLO"},
    {MessageType::agg_input, "AGG_INPUT"},
    {MessageType::validity_result, "VALIDITY_RESULT"},
    {MessageType::commit, "COMMIT"},
    {MessageType::challenge, "CHALLENGE"},
    {MessageType::response, "RESPONSE"},
    {MessageType::round_result, "ROUND_RESULT"},
    {MessageType::session_result, "SESSION_RESULT"},
    {MessageType::error, "ERROR"},
}};

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ProtocolError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string hex_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw ProtocolError(std::string("field '") + key + "' is not a string");
  return v.get<std::string>();
}

std::uint64_t uint_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  // Values built in memory are signed integers; parsed ones are unsigned.
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ProtocolError(std::string("field '") + key + "' is not an unsigned integer");
  }
  return v.get<std::uint64_t>();
}

BitVec bits_from_hex(const std::string& hex, std::size_t n) {
  const Bytes raw = from_hex(hex);
  if (raw.size() != (n + 7) / 8) throw ProtocolError("bit field has wrong length");
  BitVec v = unpack_bits(raw, n);
  if (pack_bits(v) != raw) throw ProtocolError("bit field has nonzero padding");
  return v;
}

OpeningRandomness randomness_from_hex(const std::string& hex) {
  const Bytes raw = from_hex(hex);
  if (raw.size() != kOpeningBytes) throw ProtocolError("opening randomness has wrong length");
  OpeningRandomness r{};
  std::copy(raw.begin(), raw.end(), r.begin());
  return r;
}

}  // namespace

const char* to_string(MessageType type) {
  for (const auto& [t, name] : kNames) {
    if (t == type) return name;
  }
  return "UNKNOWN";
}

std::optional<MessageType> parse_message_type(std::string_view name) {
  for (const auto& [t, n] : kNames) {
    if (name == n) return t;
  }
  return std::nullopt;
}

std::string encode_line(const WireMessage& msg) {
  json j;
  j["type"] = to_string(msg.type);
  j["session_id"] = msg.session_id;
  j["round_index"] = msg.round_index;
  j["payload"] = msg.payload;
  return j.dump();
}

WireMessage decode_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("message is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProtocolError("message is not a JSON object");
  WireMessage msg;
  const auto type = parse_message_type(hex_field(j, "type"));
  if (!type) throw ProtocolError("unknown message type");
  msg.type = *type;
  msg.session_id = hex_field(j, "session_id");
  msg.round_index = uint_field(j, "round_index");
  msg.payload = field(j, "payload");
  if (!msg.payload.is_object()) throw ProtocolError("payload is not an object");
  return msg;
}

json agg_payload(const AggregatedInput& agg, std::size_t index) {
  json a = json::array();
  json y = json::array();
  for (const auto& part : agg.parts()) {
    a.push_back(to_hex(pack_bits(part.a)));
    y.push_back(to_hex(pack_bits(part.y)));
  }
  return json{{"K", agg.clients()}, {"m", agg.m()}, {"l", agg.l()}, {"A", a}, {"y", y}, {"index", index}};
}

AggPayload parse_agg_payload(const json& payload) {
  const std::uint64_t k = uint_field(payload, "K");
  const std::uint64_t m = uint_field(payload, "m");
  const std::uint64_t l = uint_field(payload, "l");
  const std::uint64_t index = uint_field(payload, "index");
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 20;
  if (k == 0 || m == 0 || l == 0 || k > kLimit || m > kLimit || l > kLimit) {
    throw ProtocolError("aggregate dimensions out of range");
  }
  if (index >= k) throw ProtocolError("client index outside the aggregate");
  const json& a = field(payload, "A");
  const json& y = field(payload, "y");
  if (!a.is_array() || !y.is_array() || a.size() != k || y.size() != k) {
    throw ProtocolError("aggregate arrays do not have K entries");
  }
  std::vector<PublicInput> parts;
  for (std::size_t j = 0; j < k; ++j) {
    if (!a[j].is_string() || !y[j].is_string()) throw ProtocolError("aggregate entries must be hex strings");
    const Bytes raw = from_hex(a[j].get<std::string>());
    if (raw.size() != (m * l + 7) / 8) throw ProtocolError("matrix field has wrong length");
    parts.push_back({unpack_matrix(raw, m, l), bits_from_hex(y[j].get<std::string>(), m)});
  }
  return {AggregatedInput(std::move(parts)), index};
}

json commit_payload(const RoundMessage1& msg1) {
  return json{{"c0", msg1.c0.hex()}, {"c1", msg1.c1.hex()}, {"c2", msg1.c2.hex()}};
}

RoundMessage1 parse_commit_payload(const json& payload, std::size_t commitment_bits) {
  return {Commitment::from_hex(hex_field(payload, "c0"), commitment_bits),
          Commitment::from_hex(hex_field(payload, "c1"), commitment_bits),
          Commitment::from_hex(hex_field(payload, "c2"), commitment_bits)};
}

std::string permutation_hex(const Permutation& pi) {
  Bytes raw;
  raw.reserve(4 * pi.size());
  for (auto idx : pi.map()) append_u32le(raw, idx);
  return to_hex(raw);
}

Permutation permutation_from_hex(std::string_view hex, std::size_t m) {
  const Bytes raw = from_hex(hex);
  if (raw.size() != 4 * m) throw ProtocolError("permutation has wrong length");
  ByteReader in(raw);
  std::vector<std::uint32_t> map(m);
  for (auto& v : map) v = in.u32le();
  try {
    return Permutation(std::move(map));
  } catch (const ParameterError&) {
    throw ProtocolError("permutation is not a bijection");
  }
}

json response_payload(const RoundResponse& resp) {
  json j{{"c", resp.challenge.value()}};
  if (resp.pi) j["pi"] = permutation_hex(*resp.pi);
  if (resp.t0) j["t0"] = to_hex(pack_bits(*resp.t0));
  if (resp.t1) j["t1"] = to_hex(pack_bits(*resp.t1));
  if (resp.t2) j["t2"] = to_hex(pack_bits(*resp.t2));
  if (resp.r0) j["r0"] = to_hex(*resp.r0);
  if (resp.r1) j["r1"] = to_hex(*resp.r1);
  if (resp.r2) j["r2"] = to_hex(*resp.r2);
  return j;
}

RoundResponse parse_response_payload(const json& payload, std::size_t m) {
  RoundResponse resp;
  const std::uint64_t c = uint_field(payload, "c");
  if (c > 2) throw ProtocolError("challenge value out of range");
  resp.challenge = Challenge::from_int(static_cast<int>(c));
  if (payload.contains("pi")) resp.pi = permutation_from_hex(hex_field(payload, "pi"), m);
  if (payload.contains("t0")) resp.t0 = bits_from_hex(hex_field(payload, "t0"), m);
  if (payload.contains("t1")) resp.t1 = bits_from_hex(hex_field(payload, "t1"), m);
  if (payload.contains("t2")) resp.t2 = bits_from_hex(hex_field(payload, "t2"), m);
  if (payload.contains("r0")) resp.r0 = randomness_from_hex(hex_field(payload, "r0"));
  if (payload.contains("r1")) resp.r1 = randomness_from_hex(hex_field(payload, "r1"));
  if (payload.contains("r2")) resp.r2 = randomness_from_hex(hex_field(payload, "r2"));
  return resp;
}

}  // namespace fedzkp
