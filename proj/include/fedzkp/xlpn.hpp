#pragma once

// Exact learning parity with noise instances.
//
// A client credential is (s, e) with |e| exactly w = round-half-up(m * tau);
// the matching public input is (A, y = A s + e) with A an m x l matrix of full
// column rank.

#include <cstddef>
#include <cstdint>

#include "fedzkp/gf2.hpp"
#include "fedzkp/rng.hpp"

namespace fedzkp {

struct XlpnParams {
  std::size_t m = 800;
  std::size_t l = 700;
  std::uint32_t tau_num = 1;
  std::uint32_t tau_den = 4;

  /// round-half-up(m * tau_num / tau_den)
  std::size_t error_weight() const;
  double tau() const { return static_cast<double>(tau_num) / tau_den; }

  /// Throws ParameterError unless l >= 1, m > l and 0 <= tau < 1/2.
  void validate() const;

  friend bool operator==(const XlpnParams&, const XlpnParams&) = default;
};

struct Credential {
  BitVec s;
  BitVec e;

  friend bool operator==(const Credential&, const Credential&) = default;
};

struct PublicInput {
  BitMatrix a;
  BitVec y;

  std::size_t m() const { return a.rows(); }
  std::size_t l() const { return a.cols(); }

  friend bool operator==(const PublicInput&, const PublicInput&) = default;
};

struct XlpnInstance {
  PublicInput pub;
  Credential cred;
};

inline constexpr int kMaxRankResamples = 100;

/// Uniform full-column-rank A, uniform s, uniform weight-w e.
XlpnInstance gen_instance(const XlpnParams& params, Rng& rng);

/// y == A s + e and |e| == w. Throws DimensionError on non-conforming shapes.
bool validate_instance(const PublicInput& pub, const Credential& cred, std::size_t w);
bool validate_instance(const PublicInput& pub, const Credential& cred, const XlpnParams& params);

}  // namespace fedzkp
