#include "doctest.h"

#include <cmath>

#include "fedzkp/error.hpp"
#include "fedzkp/sigma.hpp"

using namespace fedzkp;

namespace {

const XlpnParams kSmall{40, 24, 1, 4};

struct Fixture {
  Rng rng{31};
  XlpnInstance inst = gen_instance(kSmall, rng);
  std::size_t w = kSmall.error_weight();
};

}  // namespace

TEST_CASE("challenge values") {
  CHECK(Challenge::from_int(2).value() == 2);
  CHECK_THROWS_AS(Challenge::from_int(3), ParameterError);
  CHECK_THROWS_AS(Challenge::from_int(-1), ParameterError);
}

TEST_CASE("C0 message layout") {
  const Permutation pi(std::vector<std::uint32_t>{1, 0, 2});
  const Bytes msg = c0_message(pi, BitVec::from_string("101"));
  CHECK(to_hex(msg) == "010000000000000002000000a0");
  CHECK(to_hex(vector_message(BitVec::from_string("11"))) == "c0");
}

TEST_CASE("honest rounds accept for every challenge") {
  Fixture f;
  for (int trial = 0; trial < 30; ++trial) {
    for (int c = 0; c < 3; ++c) {
      auto [state, msg1] = prover_commit(f.inst.pub, f.inst.cred, f.w, f.rng);
      const Challenge ch = Challenge::from_int(c);
      CHECK(verifier_check_round(f.inst.pub, msg1, ch, prover_respond(state, ch), f.w));
    }
  }
}

TEST_CASE("responses open exactly the prescribed commitments") {
  Fixture f;
  auto [state, msg1] = prover_commit(f.inst.pub, f.inst.cred, f.w, f.rng);
  const RoundResponse r0 = prover_respond(state, Challenge::from_int(0));
  CHECK((r0.pi && r0.t0 && r0.t1 && !r0.t2 && r0.r0 && r0.r1 && !r0.r2));
  const RoundResponse r1 = prover_respond(state, Challenge::from_int(1));
  CHECK((r1.pi && r1.t0 && !r1.t1 && r1.t2 && r1.r0 && !r1.r1 && r1.r2));
  const RoundResponse r2 = prover_respond(state, Challenge::from_int(2));
  CHECK((!r2.pi && !r2.t0 && r2.t1 && r2.t2 && !r2.r0 && r2.r1 && r2.r2));
}

TEST_CASE("malformed or tampered responses are rejected without throwing") {
  Fixture f;
  auto [state, msg1] = prover_commit(f.inst.pub, f.inst.cred, f.w, f.rng);
  const Challenge c0 = Challenge::from_int(0);
  const Challenge c2 = Challenge::from_int(2);
  const RoundResponse good = prover_respond(state, c0);

  CHECK_FALSE(verifier_check_round(f.inst.pub, msg1, Challenge::from_int(1), good, f.w));

  RoundResponse extra = good;
  extra.t2 = state.t2;
  extra.r2 = state.r2;
  CHECK_FALSE(verifier_check_round(f.inst.pub, msg1, c0, extra, f.w));

  RoundResponse missing = good;
  missing.r1.reset();
  CHECK_FALSE(verifier_check_round(f.inst.pub, msg1, c0, missing, f.w));

  RoundResponse flipped = good;
  flipped.t0->flip(0);
  CHECK_FALSE(verifier_check_round(f.inst.pub, msg1, c0, flipped, f.w));

  RoundResponse short_t = good;
  short_t.t1 = BitVec(5);
  CHECK_FALSE(verifier_check_round(f.inst.pub, msg1, c0, short_t, f.w));

  RoundResponse wrong_weight = prover_respond(state, c2);
  CHECK(verifier_check_round(f.inst.pub, msg1, c2, wrong_weight, f.w));
  CHECK_FALSE(verifier_check_round(f.inst.pub, msg1, c2, wrong_weight, f.w + 1));
}

TEST_CASE("prover refuses a non-witness") {
  Fixture f;
  Credential bad = f.inst.cred;
  bad.s.flip(1);
  CHECK_THROWS_AS(prover_commit(f.inst.pub, bad, f.w, f.rng), ParameterError);
}

TEST_CASE("honest sessions accept") {
  Fixture f;
  const SessionResult res = run_session(f.inst.pub, f.inst.cred, f.w, 50, f.rng);
  CHECK(res.accepted);
  CHECK(res.transcripts.size() == 50);
}

TEST_CASE("cheating prover answers exactly the two challenges it prepared for") {
  Fixture f;
  for (int dodge = 0; dodge < 3; ++dodge) {
    CheatingProver cheat(f.inst.pub, f.w, Rng(100 + dodge), Challenge::from_int(dodge));
    for (int c = 0; c < 3; ++c) {
      const RoundMessage1 msg1 = cheat.commit();
      const Challenge ch = Challenge::from_int(c);
      const bool ok = verifier_check_round(f.inst.pub, msg1, ch, cheat.respond(ch), f.w);
      CHECK(ok == (c != dodge));
    }
  }
}

TEST_CASE("cheating prover passes a uniformly challenged round about 2/3 of the time") {
  Fixture f;
  CheatingProver cheat(f.inst.pub, f.w, Rng(7));
  const int trials = 1500;
  int accepted = 0;
  for (int t = 0; t < trials; ++t) {
    const RoundMessage1 msg1 = cheat.commit();
    const Challenge c = verifier_challenge(f.rng);
    accepted += verifier_check_round(f.inst.pub, msg1, c, cheat.respond(c), f.w) ? 1 : 0;
  }
  const double sigma = std::sqrt(trials * (2.0 / 3) * (1.0 / 3));
  CHECK(std::abs(accepted - trials * 2.0 / 3) < 4 * sigma);
}

TEST_CASE("multi-round sessions stop at the first rejection") {
  Fixture f;
  CheatingProver cheat(f.inst.pub, f.w, Rng(8), Challenge::from_int(1));
  Rng vrng(9);
  const SessionResult res = run_session(cheat, f.inst.pub, f.w, 200, vrng);
  CHECK_FALSE(res.accepted);
  CHECK_FALSE(res.transcripts.back().accepted);
  CHECK(res.transcripts.back().challenge.value() == 1);
}

TEST_CASE("simulated transcripts accept for their challenge") {
  Fixture f;
  for (int trial = 0; trial < 50; ++trial) {
    for (int c = 0; c < 3; ++c) {
      const Transcript t = simulate_round(f.inst.pub, f.w, Challenge::from_int(c), f.rng);
      CHECK(t.accepted);
      CHECK(verifier_check_round(f.inst.pub, t.msg1, t.challenge, t.response, f.w));
    }
  }
}

TEST_CASE("extractor recovers the credential from three transcripts") {
  Fixture f;
  for (int trial = 0; trial < 10; ++trial) {
    auto [state, msg1] = prover_commit(f.inst.pub, f.inst.cred, f.w, f.rng);
    Transcript t[3];
    for (int c = 0; c < 3; ++c) {
      t[c].msg1 = msg1;
      t[c].challenge = Challenge::from_int(c);
      t[c].response = prover_respond(state, t[c].challenge);
      t[c].accepted = true;
    }
    const Credential got = extract_witness(f.inst.pub, f.w, t[0], t[1], t[2]);
    CHECK(got == f.inst.cred);
  }
}

TEST_CASE("extractor rejects inconsistent transcripts") {
  Fixture f;
  auto [s1, m1] = prover_commit(f.inst.pub, f.inst.cred, f.w, f.rng);
  auto [s2, m2] = prover_commit(f.inst.pub, f.inst.cred, f.w, f.rng);
  Transcript t0{m1, Challenge::from_int(0), prover_respond(s1, Challenge::from_int(0)), true};
  Transcript t1{m1, Challenge::from_int(1), prover_respond(s1, Challenge::from_int(1)), true};
  Transcript t2{m2, Challenge::from_int(2), prover_respond(s2, Challenge::from_int(2)), true};
  CHECK_THROWS_AS(extract_witness(f.inst.pub, f.w, t0, t1, t2), ExtractionError);
  CHECK_THROWS_AS(extract_witness(f.inst.pub, f.w, t1, t0, t2), ExtractionError);
}

TEST_CASE("knowledge error") {
  CHECK(knowledge_error(0) == doctest::Approx(1.0));
  CHECK(knowledge_error(1) == doctest::Approx(2.0 / 3));
  CHECK(knowledge_error(3) == doctest::Approx(8.0 / 27));
}
