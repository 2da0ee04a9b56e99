#include "fedzkp/sigma.hpp"

#include <cmath>

#include "fedzkp/error.hpp"

namespace fedzkp {

namespace {

OpeningRandomness fresh_randomness(Rng& rng) {
  OpeningRandomness r{};
  for (std::size_t i = 0; i < r.size(); i += 8) {
    const std::uint64_t word = rng();
    for (std::size_t b = 0; b < 8; ++b) r[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
  }
  return r;
}

// Placeholder committed where a simulator has nothing to hide: zeros of the
// same length as the real message.
Bytes zero_c0_message(std::size_t m) { return Bytes(4 * m + (m + 7) / 8, 0); }
Bytes zero_vector_message(std::size_t m) { return Bytes((m + 7) / 8, 0); }

bool sized(const std::optional<BitVec>& v, std::size_t m) { return v.has_value() && v->size() == m; }

}  // namespace

Challenge Challenge::from_int(int c) {
  if (c < 0 || c > 2) throw ParameterError("challenge must be 0, 1 or 2");
  return Challenge(static_cast<std::uint8_t>(c));
}

Bytes c0_message(const Permutation& pi, const BitVec& t0) {
  Bytes out;
  out.reserve(4 * pi.size() + (t0.size() + 7) / 8);
  for (auto idx : pi.map()) append_u32le(out, idx);
  append_bits(out, t0);
  return out;
}

Bytes vector_message(const BitVec& t) { return pack_bits(t); }

ProverRoundState commit_round(Permutation pi, BitVec v, BitVec f, BitVec t0, BitVec t1, BitVec t2,
                              Rng& rng, const CommitmentScheme& scheme) {
  ProverRoundState st{std::move(pi), std::move(v), std::move(f), std::move(t0), std::move(t1),
                      std::move(t2), fresh_randomness(rng), fresh_randomness(rng), fresh_randomness(rng),
                      RoundMessage1{}};
  st.msg1.c0 = scheme.commit_with(c0_message(st.pi, st.t0), st.r0);
  st.msg1.c1 = scheme.commit_with(vector_message(st.t1), st.r1);
  st.msg1.c2 = scheme.commit_with(vector_message(st.t2), st.r2);
  return st;
}

std::pair<ProverRoundState, RoundMessage1> prover_commit(const PublicInput& pub, const Credential& cred,
                                                         std::size_t w, Rng& rng,
                                                         const CommitmentScheme& scheme) {
  if (!validate_instance(pub, cred, w)) throw ParameterError("prover_commit: credential is not a witness");
  const std::size_t m = pub.m();
  Permutation pi = Permutation::random(m, rng);
  BitVec v = BitVec::random(pub.l(), rng);
  BitVec f = BitVec::random(m, rng);
  BitVec t0 = mat_vec_mul(pub.a, v) ^ f;
  BitVec t1 = pi.apply(f);
  BitVec t2 = pi.apply(f ^ cred.e);
  ProverRoundState st =
      commit_round(std::move(pi), std::move(v), std::move(f), std::move(t0), std::move(t1), std::move(t2), rng, scheme);
  RoundMessage1 msg1 = st.msg1;
  return {std::move(st), std::move(msg1)};
}

Challenge verifier_challenge(Rng& rng) { return Challenge::from_int(static_cast<int>(uniform_below(rng, 3))); }

RoundResponse prover_respond(const ProverRoundState& state, Challenge c) {
  RoundResponse resp;
  resp.challenge = c;
  switch (c.value()) {
    case 0:
      resp.pi = state.pi;
      resp.t0 = state.t0;
      resp.t1 = state.t1;
      resp.r0 = state.r0;
      resp.r1 = state.r1;
      break;
    case 1:
      resp.pi = state.pi;
      resp.t0 = state.t0;
      resp.t2 = state.t2;
      resp.r0 = state.r0;
      resp.r2 = state.r2;
      break;
    case 2:
      resp.t1 = state.t1;
      resp.t2 = state.t2;
      resp.r1 = state.r1;
      resp.r2 = state.r2;
      break;
    default:
      throw ParameterError("prover_respond: challenge outside {0,1,2}");
  }
  return resp;
}

bool verifier_check_round(const PublicInput& pub, const RoundMessage1& msg1, Challenge c,
                          const RoundResponse& resp, std::size_t w, const CommitmentScheme& scheme) {
  const std::size_t m = pub.m();
  if (pub.y.size() != m || resp.challenge != c) return false;

  const bool wants_pi = c.value() != 2;
  const bool wants_t0 = c.value() != 2;
  const bool wants_t1 = c.value() != 1;
  const bool wants_t2 = c.value() != 0;
  if (resp.pi.has_value() != wants_pi || resp.t0.has_value() != wants_t0 ||
      resp.t1.has_value() != wants_t1 || resp.t2.has_value() != wants_t2 ||
      resp.r0.has_value() != wants_t0 || resp.r1.has_value() != wants_t1 ||
      resp.r2.has_value() != wants_t2) {
    return false;
  }
  if (wants_pi && resp.pi->size() != m) return false;
  if ((wants_t0 && !sized(resp.t0, m)) || (wants_t1 && !sized(resp.t1, m)) || (wants_t2 && !sized(resp.t2, m))) {
    return false;
  }

  if (wants_t0 && !scheme.verify(msg1.c0, *resp.r0, c0_message(*resp.pi, *resp.t0))) return false;
  if (wants_t1 && !scheme.verify(msg1.c1, *resp.r1, vector_message(*resp.t1))) return false;
  if (wants_t2 && !scheme.verify(msg1.c2, *resp.r2, vector_message(*resp.t2))) return false;

  switch (c.value()) {
    case 0:
      return in_image(pub.a, *resp.t0 ^ resp.pi->apply_inverse(*resp.t1));
    case 1:
      return in_image(pub.a, *resp.t0 ^ resp.pi->apply_inverse(*resp.t2) ^ pub.y);
    default:
      return (*resp.t1 ^ *resp.t2).weight() == w;
  }
}

// ---------------------------------------------------------------------------
// Provers

HonestProver::HonestProver(const PublicInput& pub, const Credential& cred, std::size_t w, Rng rng,
                           const CommitmentScheme& scheme)
    : pub_(pub), cred_(cred), w_(w), rng_(std::move(rng)), scheme_(scheme) {}

RoundMessage1 HonestProver::commit() {
  auto [state, msg1] = prover_commit(pub_, cred_, w_, rng_, scheme_);
  state_ = std::move(state);
  return msg1;
}

RoundResponse HonestProver::respond(Challenge c) {
  if (!state_) throw ProtocolError("respond called before commit");
  RoundResponse resp = prover_respond(*state_, c);
  state_.reset();
  return resp;
}

CheatingProver::CheatingProver(const PublicInput& pub, std::size_t w, Rng rng,
                               std::optional<Challenge> fixed_dodge, const CommitmentScheme& scheme)
    : pub_(pub), w_(w), rng_(std::move(rng)), fixed_dodge_(fixed_dodge), scheme_(scheme) {}

RoundMessage1 CheatingProver::commit() {
  dodged_ = fixed_dodge_ ? *fixed_dodge_ : Challenge::from_int(static_cast<int>(uniform_below(rng_, 3)));
  const std::size_t m = pub_.m();
  Permutation pi = Permutation::random(m, rng_);
  BitVec v = BitVec::random(pub_.l(), rng_);
  BitVec f = BitVec::random(m, rng_);
  const BitVec fake_e = sample_fixed_weight(m, w_, rng_);
  const BitVec av = mat_vec_mul(pub_.a, v);

  BitVec t0;
  BitVec t2;
  switch (dodged_.value()) {
    case 0:
      t0 = av ^ f ^ fake_e ^ pub_.y;
      t2 = pi.apply(f ^ fake_e);
      break;
    case 1:
      t0 = av ^ f;
      t2 = pi.apply(f ^ fake_e);
      break;
    default:
      t0 = av ^ f;
      t2 = pi.apply(f ^ pub_.y);
      break;
  }
  BitVec t1 = pi.apply(f);
  state_ = commit_round(std::move(pi), std::move(v), std::move(f), std::move(t0), std::move(t1), std::move(t2),
                        rng_, scheme_);
  return state_->msg1;
}

RoundResponse CheatingProver::respond(Challenge c) {
  if (!state_) throw ProtocolError("respond called before commit");
  RoundResponse resp = prover_respond(*state_, c);
  state_.reset();
  return resp;
}

// ---------------------------------------------------------------------------
// Sessions

SessionResult run_session(RoundProver& prover, const PublicInput& pub, std::size_t w, std::size_t rounds,
                          Rng& verifier_rng, const CommitmentScheme& scheme) {
  if (rounds == 0) throw ParameterError("run_session: at least one round required");
  SessionResult result;
  result.transcripts.reserve(rounds);
  for (std::size_t i = 0; i < rounds; ++i) {
    Transcript t;
    t.msg1 = prover.commit();
    t.challenge = verifier_challenge(verifier_rng);
    t.response = prover.respond(t.challenge);
    t.accepted = verifier_check_round(pub, t.msg1, t.challenge, t.response, w, scheme);
    const bool ok = t.accepted;
    result.transcripts.push_back(std::move(t));
    if (!ok) return result;
  }
  result.accepted = true;
  return result;
}

SessionResult run_session(const PublicInput& pub, const Credential& cred, std::size_t w, std::size_t rounds,
                          Rng& rng, const CommitmentScheme& scheme) {
  HonestProver prover(pub, cred, w, fork(rng), scheme);
  return run_session(prover, pub, w, rounds, rng, scheme);
}

// ---------------------------------------------------------------------------
// Simulator and extractor

Transcript simulate_round(const PublicInput& pub, std::size_t w, Challenge c, Rng& rng,
                          const CommitmentScheme& scheme) {
  const std::size_t m = pub.m();
  Transcript t;
  t.challenge = c;
  t.response.challenge = c;

  auto commit_to = [&](const Bytes& message, std::optional<OpeningRandomness>& slot) {
    const OpeningRandomness r = fresh_randomness(rng);
    slot = r;
    return scheme.commit_with(message, r);
  };
  std::optional<OpeningRandomness> unused;

  switch (c.value()) {
    case 0: {
      Permutation pi = Permutation::random(m, rng);
      const BitVec v = BitVec::random(pub.l(), rng);
      const BitVec f = BitVec::random(m, rng);
      BitVec t0 = mat_vec_mul(pub.a, v) ^ f;
      BitVec t1 = pi.apply(f);
      t.msg1.c0 = commit_to(c0_message(pi, t0), t.response.r0);
      t.msg1.c1 = commit_to(vector_message(t1), t.response.r1);
      t.msg1.c2 = commit_to(zero_vector_message(m), unused);
      t.response.pi = std::move(pi);
      t.response.t0 = std::move(t0);
      t.response.t1 = std::move(t1);
      break;
    }
    case 1: {
      Permutation pi = Permutation::random(m, rng);
      const BitVec a = BitVec::random(m, rng);
      const BitVec b = BitVec::random(pub.l(), rng);
      BitVec t0 = mat_vec_mul(pub.a, b) ^ pub.y ^ a;
      BitVec t2 = pi.apply(a);
      t.msg1.c0 = commit_to(c0_message(pi, t0), t.response.r0);
      t.msg1.c1 = commit_to(zero_vector_message(m), unused);
      t.msg1.c2 = commit_to(vector_message(t2), t.response.r2);
      t.response.pi = std::move(pi);
      t.response.t0 = std::move(t0);
      t.response.t2 = std::move(t2);
      break;
    }
    default: {
      BitVec a = BitVec::random(m, rng);
      const BitVec b = sample_fixed_weight(m, w, rng);
      BitVec a_plus_b = a ^ b;
      t.msg1.c0 = commit_to(zero_c0_message(m), unused);
      t.msg1.c1 = commit_to(vector_message(a), t.response.r1);
      t.msg1.c2 = commit_to(vector_message(a_plus_b), t.response.r2);
      t.response.t1 = std::move(a);
      t.response.t2 = std::move(a_plus_b);
      break;
    }
  }
  t.accepted = verifier_check_round(pub, t.msg1, c, t.response, w, scheme);
  return t;
}

Credential extract_witness(const PublicInput& pub, std::size_t w, const Transcript& with_c0,
                           const Transcript& with_c1, const Transcript& with_c2,
                           const CommitmentScheme& scheme) {
  const Transcript* ts[3] = {&with_c0, &with_c1, &with_c2};
  for (int c = 0; c < 3; ++c) {
    const Transcript& t = *ts[c];
    if (t.challenge.value() != c) throw ExtractionError("extract_witness: transcripts must carry challenges 0, 1, 2");
    if (!(t.msg1 == with_c0.msg1)) throw ExtractionError("extract_witness: first messages differ");
    if (!verifier_check_round(pub, t.msg1, t.challenge, t.response, w, scheme)) {
      throw ExtractionError("extract_witness: transcript does not verify");
    }
  }
  // Each commitment was opened twice; the openings must agree.
  const RoundResponse& r0 = with_c0.response;
  const RoundResponse& r1 = with_c1.response;
  const RoundResponse& r2 = with_c2.response;
  if (!(*r0.pi == *r1.pi) || !(*r0.t0 == *r1.t0) || !(*r0.t1 == *r2.t1) || !(*r1.t2 == *r2.t2)) {
    throw ExtractionError("extract_witness: inconsistent openings of one commitment");
  }

  const Permutation& pi = *r0.pi;
  const BitVec& t0 = *r0.t0;
  const BitVec& t1 = *r0.t1;
  const BitVec& t2 = *r1.t2;

  const BitVec f = pi.apply_inverse(t1);
  BitVec e = pi.apply_inverse(t1 ^ t2);
  const auto v = solve_linear(pub.a, t0 ^ f);
  const auto u = solve_linear(pub.a, t0 ^ pi.apply_inverse(t2) ^ pub.y);
  if (!v || !u) throw ExtractionError("extract_witness: linear system has no solution");

  Credential cred{*v ^ *u, std::move(e)};
  if (!validate_instance(pub, cred, w)) throw ExtractionError("extract_witness: recovered pair is not a witness");
  return cred;
}

double knowledge_error(std::size_t rounds) { return std::pow(2.0 / 3.0, static_cast<double>(rounds)); }

}  // namespace fedzkp
