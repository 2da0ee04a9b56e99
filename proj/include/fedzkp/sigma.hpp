#pragma once

// Three-move zero-knowledge proof of knowledge of an xLPN witness (s, e)
// for the public statement (A, y, w).
//
// Per round the prover samples a permutation pi and vectors v, f and commits
//   C0 = Com(pi || t0),  t0 = A v + f
//   C1 = Com(t1),        t1 = pi(f)
//   C2 = Com(t2),        t2 = pi(f + e)
// The verifier sends c in {0, 1, 2} and the prover opens {C0, C1}, {C0, C2}
// or {C1, C2} respectively. The verifier checks
//   c = 0:  t0 + pi^-1(t1)       in img A
//   c = 1:  t0 + pi^-1(t2) + y   in img A
//   c = 2:  |t1 + t2| == w
// A prover without the witness can prepare for at most two of the three
// challenges, so d rounds leave a knowledge error of (2/3)^d.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fedzkp/commit.hpp"
#include "fedzkp/gf2.hpp"
#include "fedzkp/rng.hpp"
#include "fedzkp/serialize.hpp"
#include "fedzkp/xlpn.hpp"

namespace fedzkp {

class Challenge {
 public:
  Challenge() = default;
  /// Throws ParameterError outside {0, 1, 2}.
  static Challenge from_int(int c);

  int value() const { return value_; }
  friend bool operator==(const Challenge&, const Challenge&) = default;

 private:
  explicit Challenge(std::uint8_t v) : value_(v) {}
  std::uint8_t value_ = 0;
};

struct RoundMessage1 {
  Commitment c0;
  Commitment c1;
  Commitment c2;

  friend bool operator==(const RoundMessage1&, const RoundMessage1&) = default;
};

/// Opened values for one challenge. Exactly the two commitments prescribed
/// by the challenge are opened; every other field stays empty.
struct RoundResponse {
  Challenge challenge;
  std::optional<Permutation> pi;
  std::optional<BitVec> t0;
  std::optional<BitVec> t1;
  std::optional<BitVec> t2;
  std::optional<OpeningRandomness> r0;
  std::optional<OpeningRandomness> r1;
  std::optional<OpeningRandomness> r2;
};

struct Transcript {
  RoundMessage1 msg1;
  Challenge challenge;
  RoundResponse response;
  bool accepted = false;
};

/// Prover secrets for one round. Never leaves the prover.
struct ProverRoundState {
  Permutation pi;
  BitVec v;
  BitVec f;
  BitVec t0;
  BitVec t1;
  BitVec t2;
  OpeningRandomness r0{};
  OpeningRandomness r1{};
  OpeningRandomness r2{};
  RoundMessage1 msg1;
};

/// Committed message of C0: pi as 32-bit little-endian indices, then packed t0.
Bytes c0_message(const Permutation& pi, const BitVec& t0);
/// Committed message of C1 / C2: packed t.
Bytes vector_message(const BitVec& t);

/// Throws ParameterError if (s, e) is not a witness for (A, y, w).
std::pair<ProverRoundState, RoundMessage1> prover_commit(
    const PublicInput& pub, const Credential& cred, std::size_t w, Rng& rng,
    const CommitmentScheme& scheme = default_commitment_scheme());

/// Commits to arbitrary t-values; shared by the honest and cheating provers.
ProverRoundState commit_round(Permutation pi, BitVec v, BitVec f, BitVec t0, BitVec t1, BitVec t2,
                              Rng& rng, const CommitmentScheme& scheme);

Challenge verifier_challenge(Rng& rng);

RoundResponse prover_respond(const ProverRoundState& state, Challenge c);

/// Malformed responses are rejections, never exceptions.
bool verifier_check_round(const PublicInput& pub, const RoundMessage1& msg1, Challenge c,
                          const RoundResponse& resp, std::size_t w,
                          const CommitmentScheme& scheme = default_commitment_scheme());

/// One side of a round-by-round interaction.
class RoundProver {
 public:
  virtual ~RoundProver() = default;
  virtual RoundMessage1 commit() = 0;
  virtual RoundResponse respond(Challenge c) = 0;
};

class HonestProver final : public RoundProver {
 public:
  HonestProver(const PublicInput& pub, const Credential& cred, std::size_t w, Rng rng,
               const CommitmentScheme& scheme = default_commitment_scheme());

  RoundMessage1 commit() override;
  RoundResponse respond(Challenge c) override;

 private:
  PublicInput pub_;
  Credential cred_;
  std::size_t w_;
  Rng rng_;
  const CommitmentScheme& scheme_;
  std::optional<ProverRoundState> state_;
};

/// Prover without the witness. Each round it bets that the verifier will
/// not send one challenge value and prepares values that answer the other
/// two consistently:
///   dodge 0:  t0 = A v + f + e' + y,  t1 = pi(f),  t2 = pi(f + e')
///   dodge 1:  t0 = A v + f,           t1 = pi(f),  t2 = pi(f + e')
///   dodge 2:  t0 = A v + f,           t1 = pi(f),  t2 = pi(f + y)
/// with e' a random weight-w vector.
class CheatingProver final : public RoundProver {
 public:
  /// With no fixed dodge the dodged value is drawn uniformly every round.
  CheatingProver(const PublicInput& pub, std::size_t w, Rng rng,
                 std::optional<Challenge> fixed_dodge = std::nullopt,
                 const CommitmentScheme& scheme = default_commitment_scheme());

  RoundMessage1 commit() override;
  RoundResponse respond(Challenge c) override;

  /// The challenge value dodged in the current round.
  Challenge dodged() const { return dodged_; }

 private:
  PublicInput pub_;
  std::size_t w_;
  Rng rng_;
  std::optional<Challenge> fixed_dodge_;
  const CommitmentScheme& scheme_;
  Challenge dodged_;
  std::optional<ProverRoundState> state_;
};

struct SessionResult {
  bool accepted = false;
  std::vector<Transcript> transcripts;
};

/// d rounds; stops at the first rejected round.
SessionResult run_session(RoundProver& prover, const PublicInput& pub, std::size_t w,
                          std::size_t rounds, Rng& verifier_rng,
                          const CommitmentScheme& scheme = default_commitment_scheme());

SessionResult run_session(const PublicInput& pub, const Credential& cred, std::size_t w,
                          std::size_t rounds, Rng& rng,
                          const CommitmentScheme& scheme = default_commitment_scheme());

/// Accepting transcript for challenge c produced without any witness.
Transcript simulate_round(const PublicInput& pub, std::size_t w, Challenge c, Rng& rng,
                          const CommitmentScheme& scheme = default_commitment_scheme());

/// Recovers (s, e) from accepting transcripts that share one first message
/// and carry challenges 0, 1 and 2. Throws ExtractionError otherwise.
Credential extract_witness(const PublicInput& pub, std::size_t w, const Transcript& with_c0,
                           const Transcript& with_c1, const Transcript& with_c2,
                           const CommitmentScheme& scheme = default_commitment_scheme());

/// (2/3)^d
double knowledge_error(std::size_t rounds);

}  // namespace fedzkp
