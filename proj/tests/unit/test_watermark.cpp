#include "doctest.h"

#include "fedzkp/error.hpp"
#include "fedzkp/serialize.hpp"
#include "fedzkp/watermark.hpp"

using namespace fedzkp;

namespace {

BitMatrix rows_from(std::initializer_list<const char*> rows) {
  std::vector<std::string> v(rows.begin(), rows.end());
  return BitMatrix::from_rows(v);
}

}  // namespace

TEST_CASE("hash of an all-zero aggregate matches the reference digest") {
  const AggregatedInput agg({PublicInput{BitMatrix(8, 4), BitVec(8)}});
  CHECK(to_hex(pack_bits(hash_watermark(agg, 64).h)) == "038acd000a002612");
}

TEST_CASE("hash of a two-client aggregate matches the reference digest") {
  const PublicInput p1{rows_from({"0001", "0100", "0111", "1010", "1101", "0000", "0011", "0110"}),
                       BitVec::from_string("10110010")};
  const PublicInput p2{rows_from({"0010", "0111", "1100", "0001", "0110", "1011", "0000", "0101"}),
                       BitVec::from_string("01100111")};
  const AggregatedInput agg({p1, p2});
  CHECK(hash_watermark(agg, 100).h.to_string() ==
        "0001001011101101011111010110100101101110000111000111100011100100101000111011100000001101100001110001");

  const AggregatedInput swapped({p2, p1});
  CHECK(hash_watermark(swapped, 100) != hash_watermark(agg, 100));
}

TEST_CASE("every input bit influences the hash") {
  Rng rng(41);
  const XlpnParams p{16, 8, 1, 4};
  const PublicInput a = gen_instance(p, rng).pub;
  const PublicInput b = gen_instance(p, rng).pub;
  const HashWatermark base = hash_watermark(AggregatedInput({a, b}), 256);
  PublicInput a2 = a;
  a2.a.set(3, 5, !a2.a.get(3, 5));
  CHECK(hash_watermark(AggregatedInput({a2, b}), 256) != base);
  PublicInput b2 = b;
  b2.y.flip(15);
  CHECK(hash_watermark(AggregatedInput({a, b2}), 256) != base);
}

TEST_CASE("aggregate shape checks") {
  CHECK_THROWS_AS(AggregatedInput({}), ParameterError);
  CHECK_THROWS_AS(AggregatedInput({PublicInput{BitMatrix(8, 4), BitVec(8)}, PublicInput{BitMatrix(8, 5), BitVec(8)}}),
                  DimensionError);
  CHECK_THROWS_AS(AggregatedInput({PublicInput{BitMatrix(8, 4), BitVec(7)}}), DimensionError);
  const AggregatedInput agg({PublicInput{BitMatrix(8, 4), BitVec(8)}, PublicInput{BitMatrix(8, 4), BitVec(8)}});
  CHECK(agg.matrix_bits() == 64);
  CHECK(agg.vector_bits() == 16);
  CHECK_THROWS(agg.select_component(2));
}

TEST_CASE("canonical bytes layout") {
  const AggregatedInput agg({PublicInput{BitMatrix::identity(3), BitVec::from_string("101")}});
  // tag, K=1, m=3, l=3, 9 matrix bits in 2 bytes, 3 vector bits in 1 byte
  CHECK(to_hex(canonical_bytes(agg)) == to_hex(Bytes{'F', 'E', 'D', 'Z', 'K', 'P', '-', 'H', '1'}) +
                                             "010000000300000003000000" + "8880" + "a0");
}

TEST_CASE("client check") {
  Rng rng(42);
  const XlpnParams p{16, 8, 1, 4};
  const PublicInput a = gen_instance(p, rng).pub;
  const PublicInput b = gen_instance(p, rng).pub;
  const PublicInput stranger = gen_instance(p, rng).pub;
  const AggregatedInput agg({a, b});
  const HashWatermark wm = hash_watermark(agg, 128);

  CHECK(client_check(wm, agg, b, 2).ok());
  CHECK(client_check(wm, agg, stranger, 2).status == ClientCheckStatus::missing_own);
  CHECK(client_check(wm, agg, a, 3).status == ClientCheckStatus::wrong_count);
  HashWatermark tampered = wm;
  tampered.h.flip(0);
  CHECK(client_check(tampered, agg, a, 2).status == ClientCheckStatus::wrong_hash);
  CHECK(std::string(to_string(ClientCheckStatus::ok)) == "ok");
}

TEST_CASE("validity check is strict in err_n") {
  Rng rng(43);
  const AggregatedInput agg({gen_instance(XlpnParams{16, 8, 1, 4}, rng).pub});
  BitVec h = hash_watermark(agg, 64).h;
  CHECK(watermark_distance(h, agg) == 0);
  CHECK(validity_check(h, agg, 1));
  CHECK_FALSE(validity_check(h, agg, 0));
  h.flip(0);
  h.flip(9);
  h.flip(33);
  CHECK(watermark_distance(h, agg) == 3);
  CHECK_FALSE(validity_check(h, agg, 3));
  CHECK(validity_check(h, agg, 4));
}
