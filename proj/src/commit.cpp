#include "fedzkp/commit.hpp"

#include "fedzkp/error.hpp"
#include "fedzkp/serialize.hpp"
#include "fedzkp/shake.hpp"

namespace fedzkp {

std::string Commitment::hex() const { return to_hex(digest); }

Commitment Commitment::from_hex(const std::string& hex, std::size_t bits) {
  Commitment c{fedzkp::from_hex(hex), bits};
  if (c.digest.size() != (bits + 7) / 8) throw ProtocolError("commitment digest has wrong length");
  return c;
}

std::pair<Commitment, Opening> CommitmentScheme::commit(std::span<const std::uint8_t> message,
                                                        Rng& rng) const {
  Opening opening;
  for (std::size_t i = 0; i < kOpeningBytes; i += 8) {
    const std::uint64_t word = rng();
    for (std::size_t b = 0; b < 8; ++b) opening.randomness[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
  }
  opening.message.assign(message.begin(), message.end());
  return {commit_with(message, opening.randomness), std::move(opening)};
}

bool CommitmentScheme::verify(const Commitment& c, const OpeningRandomness& randomness,
                              std::span<const std::uint8_t> message) const {
  return c == commit_with(message, randomness);
}

ShakeCommitment::ShakeCommitment(std::size_t bits) : bits_(bits) {
  if (bits == 0) throw ParameterError("commitment length must be positive");
}

Commitment ShakeCommitment::commit_with(std::span<const std::uint8_t> message,
                                        const OpeningRandomness& randomness) const {
  Shake256 h;
  h.update(randomness);
  h.update(message);
  Commitment c{h.finalize((bits_ + 7) / 8), bits_};
  if (bits_ % 8 != 0) c.digest.back() &= static_cast<std::uint8_t>(0xFF00U >> (bits_ % 8));
  return c;
}

const CommitmentScheme& default_commitment_scheme() {
  static const ShakeCommitment scheme(kDefaultCommitBits);
  return scheme;
}

std::pair<Commitment, Opening> commit(std::span<const std::uint8_t> message, Rng& rng) {
  return default_commitment_scheme().commit(message, rng);
}

bool verify_commit(const Commitment& c, const OpeningRandomness& randomness,
                   std::span<const std::uint8_t> message) {
  return default_commitment_scheme().verify(c, randomness, message);
}

}  // namespace fedzkp
