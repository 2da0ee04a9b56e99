#include "doctest.h"

#include <filesystem>

#include "fedzkp/costs.hpp"
#include "fedzkp/error.hpp"
#include "fedzkp/files.hpp"

using namespace fedzkp;

namespace {

const XlpnParams kParams{20, 12, 1, 4};

Bytes truncated(Bytes b, std::size_t drop) {
  b.resize(b.size() - drop);
  return b;
}

}  // namespace

TEST_CASE("credential and public input files round trip") {
  Rng rng(61);
  const XlpnInstance inst = gen_instance(kParams, rng);
  const CredentialFile cf{kParams, 3, inst.cred};
  const Bytes cb = encode(cf);
  CHECK(std::string(cb.begin(), cb.begin() + 8) == std::string("FEDZKP1C"));
  const CredentialFile back = decode_credential(cb);
  CHECK(back.params == kParams);
  CHECK(back.index == 3);
  CHECK(back.cred == inst.cred);

  const PublicInputFile pf{kParams, inst.pub};
  CHECK(decode_public_input(encode(pf)).pub == inst.pub);
}

TEST_CASE("aggregate files round trip") {
  Rng rng(62);
  const AggregatedInput agg({gen_instance(kParams, rng).pub, gen_instance(kParams, rng).pub});
  const AggregateFile af{kParams, agg};
  const AggregateFile back = decode_aggregate(encode(af));
  CHECK(back.agg == agg);
  CHECK(back.params == kParams);
}

TEST_CASE("checkpoints round trip bit for bit") {
  Rng rng(63);
  Checkpoint c{init_model(ModelShape{3, 16, 2}, rng), 40, 9};
  c.state.theta(0) = -0.0;
  c.state.gamma(1) = 1e-300;
  const Checkpoint back = decode_checkpoint(encode(c));
  CHECK(back.state.shape.hidden == 16);
  CHECK(back.state.theta == c.state.theta);
  CHECK(back.state.gamma == c.state.gamma);
  CHECK(std::signbit(back.state.theta(0)));
  CHECK(back.n == 40);
  CHECK(back.projection_seed == 9);
}

TEST_CASE("decoders reject damaged files") {
  Rng rng(64);
  const XlpnInstance inst = gen_instance(kParams, rng);
  const Bytes good = encode(CredentialFile{kParams, 0, inst.cred});

  Bytes bad_magic = good;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(decode_credential(bad_magic), ProtocolError);
  CHECK_THROWS_AS(decode_public_input(good), ProtocolError);
  CHECK_THROWS_AS(decode_credential(truncated(good, 1)), ProtocolError);
  CHECK_THROWS_AS(decode_credential(Bytes{}), ProtocolError);
  Bytes trailing = good;
  trailing.push_back(0);
  CHECK_THROWS_AS(decode_credential(trailing), ProtocolError);

  const Bytes ckpt = encode(Checkpoint{init_model(ModelShape{3, 16, 2}, rng), 8, 1});
  CHECK_THROWS_AS(decode_checkpoint(truncated(ckpt, 8)), ProtocolError);
  CHECK_THROWS_AS(decode_aggregate(ckpt), ProtocolError);
}

TEST_CASE("watermark json") {
  Rng rng(65);
  const HashWatermark wm{BitVec::random(77, rng)};
  const std::string text = encode_watermark_json(wm);
  CHECK(decode_watermark_json(text) == wm);
  CHECK(decode_watermark_json(R"({"n": 4, "h": "a0"})").h.to_string() == "1010");
  CHECK_THROWS_AS(decode_watermark_json(R"({"n": 4, "h": "a8"})"), ProtocolError);
  CHECK_THROWS_AS(decode_watermark_json(R"({"n": 9, "h": "a0"})"), ProtocolError);
  CHECK_THROWS_AS(decode_watermark_json("not json"), ProtocolError);
}

TEST_CASE("files on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "fedzkp_test_files";
  std::filesystem::create_directories(dir);
  const Bytes data{1, 2, 3, 250};
  write_file(dir / "x.bin", data);
  CHECK(read_file(dir / "x.bin") == data);
  CHECK_THROWS_AS(read_file(dir / "missing.bin"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cost formulas") {
  const CostReport r = cost_report(10, 800, 700, 300, 800);
  CHECK(r.memory_bits == 12958500);
  CHECK(r.communication_bits == 6753400);
  CHECK(r.memory_mib() == doctest::Approx(1.5448).epsilon(1e-3));
  CHECK(r.communication_kib() == doctest::Approx(824.39).epsilon(1e-3));

  const CostReport none = cost_report(1, 16, 8, 0, 800);
  CHECK(none.memory_bits == (16 + 1 + 1) * 8 + 16);
  CHECK(none.communication_bits == 16 * 8 + 8);

  // One round: (32 + 3l) * 2/3 is not an integer for l = 8.
  const CostReport one = cost_report(1, 16, 8, 1, 10);
  CHECK(one.communication_bits == Rational(16 * 8 + 8 + 30) + Rational(2 * (32 + 24), 3));
  CHECK(format_bits(one.communication_bits) == "610/3");
  CHECK(format_bits(Rational(12)) == "12");

  CHECK_THROWS_AS(cost_report(0, 16, 8, 1, 10), ParameterError);
  CHECK_THROWS_AS(cost_report(1, 16, 8, 1, 0), ParameterError);
}
