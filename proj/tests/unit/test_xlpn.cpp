#include "doctest.h"

#include <string>

#include "fedzkp/commit.hpp"
#include "fedzkp/error.hpp"
#include "fedzkp/serialize.hpp"
#include "fedzkp/xlpn.hpp"

using namespace fedzkp;

TEST_CASE("error weight rounds half up") {
  CHECK(XlpnParams{800, 700, 1, 4}.error_weight() == 200);
  CHECK(XlpnParams{8, 4, 1, 4}.error_weight() == 2);
  CHECK(XlpnParams{10, 4, 1, 4}.error_weight() == 3);  // 2.5
  CHECK(XlpnParams{9, 4, 1, 4}.error_weight() == 2);   // 2.25
  CHECK(XlpnParams{600, 512, 1, 4}.error_weight() == 150);
  CHECK(XlpnParams{16, 8, 0, 1}.error_weight() == 0);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(XlpnParams{800, 700, 1, 4}.validate());
  CHECK_NOTHROW(XlpnParams{600, 512, 1, 4}.validate());
  CHECK_THROWS_AS(XlpnParams({700, 700, 1, 4}).validate(), ParameterError);
  CHECK_THROWS_AS(XlpnParams({800, 0, 1, 4}).validate(), ParameterError);
  CHECK_THROWS_AS(XlpnParams({800, 700, 1, 2}).validate(), ParameterError);
  CHECK_THROWS_AS(XlpnParams({800, 700, 1, 0}).validate(), ParameterError);
}

TEST_CASE("generated instances are consistent and full rank") {
  Rng rng(21);
  for (const XlpnParams p : {XlpnParams{8, 4, 1, 4}, XlpnParams{64, 40, 1, 8}, XlpnParams{800, 700, 1, 4}}) {
    for (int i = 0; i < 3; ++i) {
      const XlpnInstance inst = gen_instance(p, rng);
      CHECK(inst.pub.m() == p.m);
      CHECK(inst.pub.l() == p.l);
      CHECK(rank(inst.pub.a) == p.l);
      CHECK(inst.cred.e.weight() == p.error_weight());
      CHECK(validate_instance(inst.pub, inst.cred, p));
    }
  }
}

TEST_CASE("instance validation") {
  Rng rng(22);
  const XlpnParams p{32, 16, 1, 4};
  XlpnInstance inst = gen_instance(p, rng);
  Credential wrong = inst.cred;
  wrong.s.flip(0);
  CHECK_FALSE(validate_instance(inst.pub, wrong, p));
  wrong = inst.cred;
  wrong.e.flip(3);
  CHECK_FALSE(validate_instance(inst.pub, wrong, p));
  CHECK_FALSE(validate_instance(inst.pub, inst.cred, p.error_weight() + 1));
  CHECK_THROWS_AS(validate_instance(inst.pub, Credential{BitVec(15), inst.cred.e}, p), DimensionError);
  CHECK_THROWS_AS(validate_instance(inst.pub, Credential{inst.cred.s, BitVec(31)}, p), DimensionError);
}

TEST_CASE("hash commitment matches an independent SHAKE-256 computation") {
  OpeningRandomness r{};
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint8_t>(i);
  const std::string msg = "abc";
  const ShakeCommitment scheme(800);
  const Commitment c = scheme.commit_with({reinterpret_cast<const std::uint8_t*>(msg.data()), msg.size()}, r);
  CHECK(c.bits == 800);
  CHECK(c.hex() ==
        "0afcf43ba76a02342cb2280eca3e4545c4fb05221001098e4b82dc332cb781caf72ee7fe5f86343b5fca164346c4ad88"
        "8ec01b9758c0384f199f5d74e5d9e68631f94e93046d5a2aa4f5e6ca94f238c50940e018b36263a1b6edbde7891bfd9e"
        "bb5d3c6e");
}

TEST_CASE("commit and open") {
  Rng rng(23);
  const Bytes msg{1, 2, 3, 4};
  auto [c, opening] = commit(msg, rng);
  CHECK(verify_commit(c, opening.randomness, msg));
  CHECK_FALSE(verify_commit(c, opening.randomness, Bytes{1, 2, 3, 5}));
  OpeningRandomness other = opening.randomness;
  other[0] ^= 1;
  CHECK_FALSE(verify_commit(c, other, msg));

  auto [c2, opening2] = commit(msg, rng);
  CHECK(c != c2);  // hiding needs fresh randomness
  CHECK(opening2.message == msg);
}

TEST_CASE("odd commitment lengths mask the trailing bits") {
  const ShakeCommitment scheme(13);
  OpeningRandomness r{};
  const Commitment c = scheme.commit_with(Bytes{9}, r);
  CHECK(c.digest.size() == 2);
  CHECK((c.digest[1] & 0x07) == 0);
  CHECK(Commitment::from_hex(c.hex(), 13) == c);
  CHECK_THROWS_AS(Commitment::from_hex("00", 13), ProtocolError);
}
