#pragma once

// Hash watermark derived from the aggregated client public inputs.
//
// Canonical hash input, bit exact:
//   "FEDZKP-H1" || u32le K || u32le m || u32le l
//   || A_1 .. A_K (each a row-major packed bit stream)
//   || y_1 .. y_K (each packed)
// and h is the first n bits of SHAKE-256 over it.

#include <cstddef>
#include <string_view>
#include <vector>

#include "fedzkp/gf2.hpp"
#include "fedzkp/xlpn.hpp"

namespace fedzkp {

inline constexpr std::string_view kHashDomainTag = "FEDZKP-H1";
inline constexpr std::size_t kDefaultWatermarkBits = 1024;

class AggregatedInput {
 public:
  /// Throws ParameterError on an empty list, DimensionError on mixed shapes.
  explicit AggregatedInput(std::vector<PublicInput> parts);

  std::size_t clients() const { return parts_.size(); }
  std::size_t m() const { return parts_.front().m(); }
  std::size_t l() const { return parts_.front().l(); }
  const std::vector<PublicInput>& parts() const { return parts_; }

  /// The j-th client's (A_j, y_j), 0-based.
  const PublicInput& select_component(std::size_t j) const;

  /// Bit sizes of A_agg and y_agg as stored, K*m*l and K*m.
  std::size_t matrix_bits() const { return clients() * m() * l(); }
  std::size_t vector_bits() const { return clients() * m(); }

  friend bool operator==(const AggregatedInput&, const AggregatedInput&) = default;

 private:
  std::vector<PublicInput> parts_;
};

AggregatedInput aggregate(std::vector<PublicInput> parts);

/// The canonical byte string hashed into the watermark.
std::vector<std::uint8_t> canonical_bytes(const AggregatedInput& agg);

struct HashWatermark {
  BitVec h;
  std::size_t n() const { return h.size(); }
  friend bool operator==(const HashWatermark&, const HashWatermark&) = default;
};

HashWatermark hash_watermark(const AggregatedInput& agg, std::size_t n);

enum class ClientCheckStatus { ok, wrong_hash, missing_own, wrong_count };

struct ClientCheckResult {
  ClientCheckStatus status = ClientCheckStatus::ok;
  bool ok() const { return status == ClientCheckStatus::ok; }
  explicit operator bool() const { return ok(); }
};

const char* to_string(ClientCheckStatus status);

/// Client-side acceptance of a server-issued watermark: the hash matches,
/// the client's own input is present, and there are exactly K inputs.
ClientCheckResult client_check(const HashWatermark& wm, const AggregatedInput& agg, const PublicInput& own,
                               std::size_t expected_clients);

/// Hamming distance between an extracted watermark and H(agg) is strictly
/// below err_n. Throws DimensionError if the lengths cannot match.
bool validity_check(const BitVec& extracted, const AggregatedInput& agg, std::size_t err_n);

/// Distance used by validity_check.
std::size_t watermark_distance(const BitVec& extracted, const AggregatedInput& agg);

}  // namespace fedzkp
