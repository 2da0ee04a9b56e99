#include "fedzkp/bounds.hpp"

#include <charconv>
#include <cmath>

#include "fedzkp/error.hpp"

namespace fedzkp {

namespace mp = boost::multiprecision;

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (std::size_t i = 0; i < k; ++i) {
    c *= n - i;
    c /= i + 1;
  }
  return c;
}

BigInt hamming_ball_size(std::size_t n, std::size_t radius) {
  radius = std::min(radius, n);
  BigInt term = 1;  // C(n, 0)
  BigInt sum = 1;
  for (std::size_t i = 0; i < radius; ++i) {
    term *= n - i;
    term /= i + 1;
    sum += term;
  }
  return sum;
}

Rational near_collision_prob(std::size_t n, std::size_t radius) {
  if (radius > n) throw ParameterError("near_collision_prob: radius exceeds n");
  return Rational(hamming_ball_size(n, radius), BigInt(1) << n);
}

std::size_t compute_err_n(std::size_t n, const Rational& p_r) {
  if (p_r <= 0 || p_r > 1) throw ParameterError("compute_err_n: p_r must lie in (0, 1]");
  const BigInt total = BigInt(1) << n;
  // Compare S(j) >= p_r * 2^n as S(j) * den >= num * 2^n.
  const BigInt target = mp::numerator(p_r) * total;
  const BigInt den = mp::denominator(p_r);
  if (den > total * mp::numerator(p_r)) throw ParameterError("compute_err_n: p_r below 2^-n");

  BigInt term = 1;
  BigInt sum = 1;
  std::size_t j = 0;
  while (sum * den < target) {
    term *= n - j;
    term /= j + 1;
    sum += term;
    ++j;
  }
  return j / 2;
}

Rational detection_rate_floor(std::size_t n, std::size_t err_n) {
  if (n == 0 || err_n > n) throw ParameterError("detection_rate_floor: need 0 <= err_n <= n, n > 0");
  return Rational(1) - Rational(BigInt(err_n), BigInt(n));
}

Rational advantage_bound(std::size_t k, std::size_t q, std::size_t n, std::size_t err_n, std::size_t d) {
  const Rational collision = near_collision_prob(n, std::min(2 * err_n, n));
  const Rational repetition = Rational(mp::pow(BigInt(2), static_cast<unsigned>(d)),
                                       mp::pow(BigInt(3), static_cast<unsigned>(d)));
  return Rational(BigInt(k) * q) * collision + Rational(BigInt(q)) * repetition;
}

double log2_big(const BigInt& x) {
  if (x <= 0) throw ParameterError("log2_big: argument must be positive");
  const std::size_t msb = mp::msb(x);
  if (msb < 53) return std::log2(x.convert_to<double>());
  const BigInt top = x >> (msb - 52);
  return static_cast<double>(msb - 52) + std::log2(top.convert_to<double>());
}

double to_double(const Rational& x) {
  const BigInt num = mp::numerator(x);
  const BigInt den = mp::denominator(x);
  if (num == 0) return 0.0;
  const double sign = num < 0 ? -1.0 : 1.0;
  return sign * std::exp2(log2_big(mp::abs(num)) - log2_big(den));
}

double convergence_exponent(std::size_t n, double frac) {
  if (!(frac > 0.0 && frac < 0.5)) throw ParameterError("convergence_exponent: frac must lie in (0, 1/2)");
  const auto err_n = static_cast<std::size_t>(std::floor(frac * static_cast<double>(n)));
  return 1.0 - log2_big(hamming_ball_size(n, 2 * err_n)) / static_cast<double>(n);
}

SecurityParams make_security_params(std::size_t n, const Rational& p_r) {
  SecurityParams sp;
  sp.n = n;
  sp.p_r = p_r;
  sp.err_n = compute_err_n(n, p_r);
  sp.r_n = detection_rate_floor(n, sp.err_n);
  return sp;
}

namespace {

std::uint64_t parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParameterError("parse_probability: malformed number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational parse_probability(std::string_view text) {
  if (text.starts_with("2^")) {
    std::string_view exp = text.substr(2);
    bool negative = false;
    if (exp.starts_with('-')) {
      negative = true;
      exp.remove_prefix(1);
    }
    const auto e = parse_uint(exp);
    const BigInt p = BigInt(1) << e;
    return negative ? Rational(BigInt(1), p) : Rational(p);
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_uint(text.substr(slash + 1));
    if (den == 0) throw ParameterError("parse_probability: zero denominator");
    return Rational(BigInt(parse_uint(text.substr(0, slash))), BigInt(den));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
    BigInt num = int_part.empty() ? BigInt(0) : BigInt(parse_uint(int_part));
    num = num * scale + (frac_part.empty() ? BigInt(0) : BigInt(parse_uint(frac_part)));
    return Rational(num, scale);
  }
  return Rational(BigInt(parse_uint(text)));
}

std::string format_probability(const Rational& x) {
  const BigInt num = mp::numerator(x);
  const BigInt den = mp::denominator(x);
  if (num == 1 && den > 1 && (den & (den - 1)) == 0) return "2^-" + std::to_string(mp::msb(den));
  return num.str() + "/" + den.str();
}

}  // namespace fedzkp
