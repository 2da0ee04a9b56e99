#include "doctest.h"

#include "fedzkp/bounds.hpp"
#include "fedzkp/error.hpp"

using namespace fedzkp;

namespace {

Rational pow2_neg(unsigned k) { return Rational(BigInt(1), BigInt(1) << k); }

}  // namespace

TEST_CASE("binomials and ball sizes") {
  CHECK(binomial(12, 0) == 1);
  CHECK(binomial(12, 4) == 495);
  CHECK(binomial(4, 7) == 0);
  CHECK(hamming_ball_size(12, 4) == 794);
  CHECK(hamming_ball_size(16, 4) == 2517);
  CHECK(hamming_ball_size(128, 5) == BigInt(275584033));
  CHECK(hamming_ball_size(10, 50) == 1024);
  CHECK(binomial(1024, 512) > (BigInt(1) << 1000));
}

TEST_CASE("near-collision probability") {
  CHECK(near_collision_prob(12, 2) == Rational(79, 4096));
  CHECK(near_collision_prob(16, 4) == Rational(2517, 65536));
  CHECK(near_collision_prob(8, 8) == 1);
  CHECK_THROWS_AS(near_collision_prob(8, 9), ParameterError);
}

TEST_CASE("err_n at the default security level") {
  const std::size_t e = compute_err_n(1024, pow2_neg(128));
  CHECK(e == 153);
  // Both sides of the bracket hold here.
  CHECK(near_collision_prob(1024, 2 * e - 1) < pow2_neg(128));
  CHECK(pow2_neg(128) <= near_collision_prob(1024, 2 * e));
  CHECK(to_double(detection_rate_floor(1024, e)) == doctest::Approx(1.0 - 153.0 / 1024));
}

TEST_CASE("err_n edge cases") {
  CHECK(compute_err_n(16, Rational(1, 16)) == 2);  // first radius 5 is odd
  CHECK(compute_err_n(128, pow2_neg(64)) == 8);
  CHECK(compute_err_n(64, Rational(1, 1000)) == 10);
  CHECK(compute_err_n(12, pow2_neg(12)) == 0);
  CHECK(compute_err_n(16, Rational(1)) == 8);
  CHECK_THROWS_AS(compute_err_n(12, pow2_neg(13)), ParameterError);
  CHECK_THROWS_AS(compute_err_n(12, Rational(0)), ParameterError);
  CHECK_THROWS_AS(compute_err_n(12, Rational(3, 2)), ParameterError);
}

TEST_CASE("advantage bound") {
  CHECK(advantage_bound(1, 1, 12, 1, 1) == Rational(8429, 12288));
  CHECK(to_double(advantage_bound(100, 2, 12, 0, 3)) == doctest::Approx(0.64142).epsilon(1e-4));
  CHECK(advantage_bound(0, 1, 12, 0, 0) == 1);
}

TEST_CASE("convergence exponents") {
  CHECK(convergence_exponent(10000, 0.025) == doctest::Approx(0.71417).epsilon(1e-4));
  CHECK(convergence_exponent(10000, 0.075) == doctest::Approx(0.39078).epsilon(1e-4));
}

TEST_CASE("security parameter bundle") {
  const SecurityParams sp = make_security_params(1024, pow2_neg(128));
  CHECK(sp.err_n == 153);
  CHECK(sp.r_n == Rational(1024 - 153, 1024));
}

TEST_CASE("probability parsing and formatting") {
  CHECK(parse_probability("2^-128") == pow2_neg(128));
  CHECK(parse_probability("2^3") == 8);
  CHECK(parse_probability("3/4") == Rational(3, 4));
  CHECK(parse_probability("0.001") == Rational(1, 1000));
  CHECK(parse_probability("1") == 1);
  CHECK_THROWS_AS(parse_probability("abc"), ParameterError);
  CHECK_THROWS_AS(parse_probability("1/0"), ParameterError);
  CHECK(format_probability(pow2_neg(128)) == "2^-128");
  CHECK(format_probability(Rational(3, 4)) == "3/4");
}

TEST_CASE("log2 of big integers") {
  CHECK(log2_big(BigInt(1) << 3000) == doctest::Approx(3000.0));
  CHECK(log2_big(BigInt(3)) == doctest::Approx(1.5849625));
}
