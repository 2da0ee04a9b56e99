#pragma once

#include <cstdint>
#include <random>

namespace fedzkp {

/// Every randomized operation takes one of these by reference. Not a CSPRNG.
using Rng = std::mt19937_64;

/// Seed taken from FEDZKP_SEED when set, otherwise from std::random_device.
std::uint64_t seed_from_env();

/// Independent child stream; lets parallel parties stay reproducible.
inline Rng fork(Rng& parent) {
  std::seed_seq seq{parent(), parent(), parent(), parent()};
  return Rng(seq);
}

inline std::size_t uniform_below(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

}  // namespace fedzkp
