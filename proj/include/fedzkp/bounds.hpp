#pragma once

// Security arithmetic over exact integers and rationals.
//
// Ball sizes are S(n, r) = sum_{i=0..r} C(n, i), the number of n-bit strings
// within Hamming distance r of a fixed string. Floating point is only used
// to report values, never to decide a bracket.

#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fedzkp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(std::size_t n, std::size_t k);

/// sum_{i=0..radius} C(n, i); radius is clamped to n.
BigInt hamming_ball_size(std::size_t n, std::size_t radius);

/// 2^-n * S(n, radius). Throws ParameterError if radius > n.
Rational near_collision_prob(std::size_t n, std::size_t radius);

/// The boundary err_n for required probability p_r:
///   2^-n S(n, 2 err_n - 1) < p_r <= 2^-n S(n, 2 err_n).
/// When the first radius reaching p_r is odd no integer meets both sides;
/// the largest err_n meeting the strict left side is returned then.
/// Throws ParameterError for p_r outside (0, 1] or p_r < 2^-n.
std::size_t compute_err_n(std::size_t n, const Rational& p_r);

/// 1 - err_n / n
Rational detection_rate_floor(std::size_t n, std::size_t err_n);

/// k q 2^-n S(n, 2 err_n) + q (2/3)^d
Rational advantage_bound(std::size_t k, std::size_t q, std::size_t n, std::size_t err_n, std::size_t d);

/// 1 - log2(S(n, 2 floor(frac n))) / n
double convergence_exponent(std::size_t n, double frac);

double log2_big(const BigInt& x);
double to_double(const Rational& x);

struct SecurityParams {
  std::size_t n = 0;
  Rational p_r;
  std::size_t err_n = 0;
  Rational r_n;
};

SecurityParams make_security_params(std::size_t n, const Rational& p_r);

/// Accepts "2^-k", "2^k", "a/b", decimals like "0.001", and integers.
Rational parse_probability(std::string_view text);

/// "2^-128" style rendering when x is a power of two, else "a/b".
std::string format_probability(const Rational& x);

}  // namespace fedzkp
