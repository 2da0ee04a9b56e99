#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fedzkp/rng.hpp"

namespace fedzkp {

inline constexpr std::size_t kDefaultCommitBits = 800;
inline constexpr std::size_t kOpeningBytes = 32;

using OpeningRandomness = std::array<std::uint8_t, kOpeningBytes>;

struct Commitment {
  std::vector<std::uint8_t> digest;
  std::size_t bits = 0;

  std::string hex() const;
  static Commitment from_hex(const std::string& hex, std::size_t bits);

  friend bool operator==(const Commitment&, const Commitment&) = default;
};

struct Opening {
  OpeningRandomness randomness{};
  std::vector<std::uint8_t> message;
};

/// Commit/open interface. The Sigma protocol only talks to this, so a
/// perfectly binding scheme can replace the hash construction below.
class CommitmentScheme {
 public:
  virtual ~CommitmentScheme() = default;

  virtual std::size_t commitment_bits() const = 0;
  virtual Commitment commit_with(std::span<const std::uint8_t> message,
                                 const OpeningRandomness& randomness) const = 0;

  std::pair<Commitment, Opening> commit(std::span<const std::uint8_t> message, Rng& rng) const;
  bool verify(const Commitment& c, const OpeningRandomness& randomness,
              std::span<const std::uint8_t> message) const;
};

/// c = SHAKE-256(d || m), squeezed to the configured bit length.
/// Computationally binding and hiding.
class ShakeCommitment final : public CommitmentScheme {
 public:
  explicit ShakeCommitment(std::size_t bits = kDefaultCommitBits);

  std::size_t commitment_bits() const override { return bits_; }
  Commitment commit_with(std::span<const std::uint8_t> message,
                         const OpeningRandomness& randomness) const override;

 private:
  std::size_t bits_;
};

const CommitmentScheme& default_commitment_scheme();

std::pair<Commitment, Opening> commit(std::span<const std::uint8_t> message, Rng& rng);
bool verify_commit(const Commitment& c, const OpeningRandomness& randomness,
                   std::span<const std::uint8_t> message);

}  // namespace fedzkp
