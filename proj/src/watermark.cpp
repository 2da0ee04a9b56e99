#include "fedzkp/watermark.hpp"

#include <algorithm>

#include "fedzkp/error.hpp"
#include "fedzkp/serialize.hpp"
#include "fedzkp/shake.hpp"

namespace fedzkp {

AggregatedInput::AggregatedInput(std::vector<PublicInput> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ParameterError("aggregate: at least one client input required");
  const std::size_t m = parts_.front().m();
  const std::size_t l = parts_.front().l();
  for (const auto& p : parts_) {
    if (p.m() != m || p.l() != l || p.y.size() != m) throw DimensionError("aggregate: client inputs differ in shape");
  }
}

const PublicInput& AggregatedInput::select_component(std::size_t j) const {
  if (j >= parts_.size()) throw ParameterError("select_component: client index out of range");
  return parts_[j];
}

AggregatedInput aggregate(std::vector<PublicInput> parts) { return AggregatedInput(std::move(parts)); }

namespace {

Bytes header_bytes(const AggregatedInput& agg) {
  Bytes out(kHashDomainTag.begin(), kHashDomainTag.end());
  append_u32le(out, static_cast<std::uint32_t>(agg.clients()));
  append_u32le(out, static_cast<std::uint32_t>(agg.m()));
  append_u32le(out, static_cast<std::uint32_t>(agg.l()));
  return out;
}

}  // namespace

std::vector<std::uint8_t> canonical_bytes(const AggregatedInput& agg) {
  Bytes out = header_bytes(agg);
  for (const auto& p : agg.parts()) append_bits(out, p.a);
  for (const auto& p : agg.parts()) append_bits(out, p.y);
  return out;
}

HashWatermark hash_watermark(const AggregatedInput& agg, std::size_t n) {
  if (n == 0) throw ParameterError("hash_watermark: n must be positive");
  // Streamed so the K*m*l-bit aggregate is never materialised at once.
  Shake256 h;
  h.update(header_bytes(agg));
  Bytes chunk;
  for (const auto& p : agg.parts()) {
    chunk.clear();
    append_bits(chunk, p.a);
    h.update(chunk);
  }
  for (const auto& p : agg.parts()) {
    chunk.clear();
    append_bits(chunk, p.y);
    h.update(chunk);
  }
  return HashWatermark{unpack_bits(h.finalize((n + 7) / 8), n)};
}

const char* to_string(ClientCheckStatus status) {
  switch (status) {
    case ClientCheckStatus::ok:
      return "ok";
    case ClientCheckStatus::wrong_hash:
      return "wrong-hash";
    case ClientCheckStatus::missing_own:
      return "missing-own";
    case ClientCheckStatus::wrong_count:
      return "wrong-count";
  }
  return "unknown";
}

ClientCheckResult client_check(const HashWatermark& wm, const AggregatedInput& agg, const PublicInput& own,
                               std::size_t expected_clients) {
  if (wm.n() == 0 || !(hash_watermark(agg, wm.n()) == wm)) return {ClientCheckStatus::wrong_hash};
  if (std::find(agg.parts().begin(), agg.parts().end(), own) == agg.parts().end()) {
    return {ClientCheckStatus::missing_own};
  }
  if (agg.clients() != expected_clients) return {ClientCheckStatus::wrong_count};
  return {ClientCheckStatus::ok};
}

std::size_t watermark_distance(const BitVec& extracted, const AggregatedInput& agg) {
  if (extracted.empty()) throw DimensionError("validity_check: empty watermark");
  return hamming_distance(extracted, hash_watermark(agg, extracted.size()).h);
}

bool validity_check(const BitVec& extracted, const AggregatedInput& agg, std::size_t err_n) {
  return watermark_distance(extracted, agg) < err_n;
}

}  // namespace fedzkp
