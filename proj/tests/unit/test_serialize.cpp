#include "doctest.h"

#include <string>

#include "fedzkp/error.hpp"
#include "fedzkp/serialize.hpp"
#include "fedzkp/shake.hpp"

using namespace fedzkp;

TEST_CASE("vectors pack MSB first and zero pad") {
  CHECK(to_hex(pack_bits(BitVec::from_string("100000001"))) == "8080");
  CHECK(to_hex(pack_bits(BitVec::from_string("0000000100000010"))) == "0102");
  CHECK(pack_bits(BitVec()).empty());
}

TEST_CASE("matrices pack as one continuous row-major stream") {
  // 100 010 001 -> 10001000 1(0000000)
  CHECK(to_hex(pack_bits(BitMatrix::identity(3))) == "8880");
  const BitMatrix a = BitMatrix::from_rows({"0001", "0100", "0111"});
  CHECK(to_hex(pack_bits(a)) == "1470");
}

TEST_CASE("pack and unpack are inverse") {
  Rng rng(11);
  for (std::size_t n : {1U, 7U, 8U, 9U, 64U, 65U, 700U, 800U}) {
    const BitVec v = BitVec::random(n, rng);
    CHECK(unpack_bits(pack_bits(v), n) == v);
  }
  for (auto [r, c] : {std::pair{3, 3}, {8, 4}, {5, 16}, {13, 70}, {40, 64}}) {
    const BitMatrix a = BitMatrix::random(r, c, rng);
    CHECK(unpack_matrix(pack_bits(a), r, c) == a);
  }
  CHECK_THROWS_AS(unpack_bits(Bytes{0x00}, 9), ProtocolError);
  CHECK_THROWS_AS(unpack_matrix(Bytes{0x00}, 3, 3), ProtocolError);
}

TEST_CASE("hex") {
  const Bytes b{0x00, 0xab, 0x7f, 0xff};
  CHECK(to_hex(b) == "00ab7fff");
  CHECK(from_hex("00AB7fff") == b);
  CHECK_THROWS_AS(from_hex("abc"), ProtocolError);
  CHECK_THROWS_AS(from_hex("zz"), ProtocolError);
}

TEST_CASE("little-endian integers and length-prefixed bit data") {
  Bytes out;
  append_u32le(out, 0x01020304U);
  append_u64le(out, 5);
  write_bitvec(out, BitVec::from_string("101"));
  write_bitmatrix(out, BitMatrix::identity(2));
  CHECK(to_hex(out).substr(0, 8) == "04030201");
  ByteReader in(out);
  CHECK(in.u32le() == 0x01020304U);
  CHECK(in.u64le() == 5);
  CHECK(in.bitvec().to_string() == "101");
  CHECK(in.bitmatrix() == BitMatrix::identity(2));
  CHECK(in.at_end());
  CHECK_THROWS_AS(in.u32le(), ProtocolError);

  Bytes lying;
  append_u64le(lying, 1000);
  ByteReader bad(lying);
  CHECK_THROWS_AS(bad.bitvec(), ProtocolError);
}

TEST_CASE("SHAKE-256 known answers") {
  // Empty input, first 32 bytes.
  CHECK(to_hex(shake256({}, 32)) == "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f");

  Shake256 inc;
  inc.update(std::string_view("ab")).update(std::string_view("c"));
  const std::string abc = "abc";
  CHECK(inc.finalize(40) == shake256({reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size()}, 40));
}

TEST_CASE("SHAKE bit output is a prefix of the byte output") {
  const Bytes msg{1, 2, 3};
  const Bytes full = shake256(msg, 16);
  const BitVec bits = shake256_bits(msg, 100);
  CHECK(bits.size() == 100);
  Bytes prefix(full.begin(), full.begin() + 13);
  prefix.back() &= 0xF0;
  CHECK(pack_bits(bits) == prefix);
}
