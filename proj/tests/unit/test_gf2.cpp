#include "doctest.h"

#include "fedzkp/error.hpp"
#include "fedzkp/gf2.hpp"

using namespace fedzkp;

namespace {

// Bit-at-a-time reference product.
BitVec naive_mul(const BitMatrix& a, const BitVec& x) {
  BitVec out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    bool acc = false;
    for (std::size_t c = 0; c < a.cols(); ++c) acc ^= a.get(r, c) && x.get(c);
    out.set(r, acc);
  }
  return out;
}

}  // namespace

TEST_CASE("bit vectors round trip through strings") {
  const BitVec v = BitVec::from_string("1011001");
  CHECK(v.size() == 7);
  CHECK(v.weight() == 4);
  CHECK(v.to_string() == "1011001");
  CHECK(v.complement().to_string() == "0100110");
  CHECK((v ^ v.complement()) == BitVec::ones(7));
  CHECK_THROWS_AS(BitVec::from_string("10x"), ParameterError);
}

TEST_CASE("tail bits stay clear") {
  Rng rng(1);
  for (std::size_t len : {1U, 63U, 64U, 65U, 130U}) {
    const BitVec r = BitVec::random(len, rng);
    CHECK(r.complement().weight() == len - r.weight());
    CHECK(BitVec::ones(len).weight() == len);
  }
}

TEST_CASE("xor of different lengths is rejected") {
  BitVec a(5);
  CHECK_THROWS_AS(a ^= BitVec(6), DimensionError);
  CHECK_THROWS_AS(hamming_distance(BitVec(3), BitVec(4)), DimensionError);
}

TEST_CASE("matrix-vector product matches the bitwise reference") {
  Rng rng(2);
  for (auto [m, l] : {std::pair{1, 1}, {8, 4}, {70, 65}, {130, 128}, {200, 190}}) {
    const BitMatrix a = BitMatrix::random(m, l, rng);
    const BitVec x = BitVec::random(l, rng);
    CHECK(mat_vec_mul(a, x) == naive_mul(a, x));
  }
  CHECK_THROWS_AS(mat_vec_mul(BitMatrix(3, 2), BitVec(3)), DimensionError);
}

TEST_CASE("small hand-checked system") {
  const BitMatrix a = BitMatrix::from_rows({"10", "01", "11"});
  CHECK(mat_vec_mul(a, BitVec::from_string("11")).to_string() == "110");
  const auto x = solve_linear(a, BitVec::from_string("110"));
  REQUIRE(x);
  CHECK(x->to_string() == "11");
  CHECK_FALSE(in_image(a, BitVec::from_string("111")));
  CHECK(rank(a) == 2);
}

TEST_CASE("solve_linear finds a preimage for image vectors") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const BitMatrix a = BitMatrix::random(90, 70, rng);
    const BitVec b = mat_vec_mul(a, BitVec::random(70, rng));
    const auto x = solve_linear(a, b);
    REQUIRE(x);
    CHECK(mat_vec_mul(a, *x) == b);
  }
}

TEST_CASE("inconsistent systems have no solution") {
  BitMatrix a = BitMatrix::from_rows({"110", "110", "011"});
  CHECK(rank(a) == 2);
  CHECK_FALSE(solve_linear(a, BitVec::from_string("100")).has_value());
  CHECK(solve_linear(a, BitVec::from_string("001")).has_value());
}

TEST_CASE("rank of structured matrices") {
  CHECK(rank(BitMatrix::identity(77)) == 77);
  CHECK(rank(BitMatrix(10, 6)) == 0);
  Rng rng(4);
  const BitMatrix a = BitMatrix::random(300, 100, rng);
  CHECK(rank(a) == 100);  // fails with probability about 2^-200
}

TEST_CASE("permutations") {
  const Permutation pi(std::vector<std::uint32_t>{2, 0, 1});
  // out[map[i]] = a[i]
  CHECK(pi.apply(BitVec::from_string("100")).to_string() == "001");
  CHECK(pi.apply(BitVec::from_string("010")).to_string() == "100");
  CHECK(pi.apply_inverse(pi.apply(BitVec::from_string("110"))).to_string() == "110");
  CHECK(pi.inverse().apply(BitVec::from_string("011")) == pi.apply_inverse(BitVec::from_string("011")));
  CHECK_THROWS_AS(Permutation(std::vector<std::uint32_t>{0, 0, 1}), ParameterError);
  CHECK_THROWS_AS(Permutation(std::vector<std::uint32_t>{0, 3}), ParameterError);
  CHECK_THROWS_AS(pi.apply(BitVec(4)), DimensionError);

  Rng rng(5);
  const Permutation r = Permutation::random(500, rng);
  const BitVec v = BitVec::random(500, rng);
  CHECK(r.apply(v).weight() == v.weight());
  CHECK(apply_permutation(r, v) == r.apply(v));
  CHECK(r.apply_inverse(r.apply(v)) == v);
}

TEST_CASE("fixed-weight sampling") {
  Rng rng(6);
  for (std::size_t w : {0U, 1U, 200U, 800U}) CHECK(sample_fixed_weight(800, w, rng).weight() == w);
  CHECK_THROWS_AS(sample_fixed_weight(4, 5, rng), ParameterError);

  // Each position is set with probability w/m.
  std::vector<int> hits(8, 0);
  const int trials = 8000;
  for (int t = 0; t < trials; ++t) {
    const BitVec v = sample_fixed_weight(8, 2, rng);
    for (std::size_t i = 0; i < 8; ++i) hits[i] += v.get(i) ? 1 : 0;
  }
  for (int h : hits) CHECK(std::abs(h - trials / 4) < 4 * 39);
}
