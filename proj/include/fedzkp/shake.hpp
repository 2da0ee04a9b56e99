#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "fedzkp/gf2.hpp"

namespace fedzkp {

/// Incremental SHAKE-256 extendable-output function.
class Shake256 {
 public:
  Shake256();
  ~Shake256();
  Shake256(Shake256&&) noexcept;
  Shake256& operator=(Shake256&&) noexcept;
  Shake256(const Shake256&) = delete;
  Shake256& operator=(const Shake256&) = delete;

  Shake256& update(std::span<const std::uint8_t> data);
  Shake256& update(std::string_view text);
  /// Squeezes out_bytes bytes; the object cannot be updated afterwards.
  std::vector<std::uint8_t> finalize(std::size_t out_bytes);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> data, std::size_t out_bytes);

/// The first n bits of the digest, MSB-first within each byte.
BitVec shake256_bits(std::span<const std::uint8_t> data, std::size_t n);

}  // namespace fedzkp
