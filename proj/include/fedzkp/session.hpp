#pragma once

// Ownership verification sessions over a Channel.
//
// The verifier holds only the watermark it extracted from the model. It
// checks the presented aggregate against it, then runs d Sigma rounds on the
// prover's chosen component with w computed from its own tau.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fedzkp/channel.hpp"
#include "fedzkp/files.hpp"
#include "fedzkp/sigma.hpp"
#include "fedzkp/watermark.hpp"

namespace fedzkp {

enum class SessionStatus { accepted, rejected, aborted };

const char* to_string(SessionStatus status);

struct VerifierConfig {
  std::uint32_t tau_num = 1;
  std::uint32_t tau_den = 4;
  std::size_t err_n = 0;
  std::size_t rounds = 300;
};

struct SessionOutcome {
  SessionStatus status = SessionStatus::aborted;
  std::string reason;
  std::string session_id;
  bool validity_passed = false;
  std::size_t distance = 0;
  std::size_t rounds_completed = 0;

  bool accepted() const { return status == SessionStatus::accepted; }
};

/// Malformed or out-of-order input gets an ERROR reply and a rejection;
/// a vanished peer yields `aborted`.
SessionOutcome run_verifier_session(Channel& channel, const BitVec& extracted, const VerifierConfig& config,
                                    Rng& rng);

SessionOutcome run_prover_session(Channel& channel, const AggregatedInput& agg, std::size_t index,
                                  RoundProver& prover, const std::string& session_id);

/// Extracts the watermark from the checkpoint, then serves `max_sessions`
/// sequential sessions (0 = forever).
std::vector<SessionOutcome> run_verifier_endpoint(TcpListener& listener, const Checkpoint& checkpoint,
                                                  const VerifierConfig& config, std::size_t max_sessions,
                                                  Rng& rng,
                                                  const std::function<void(const SessionOutcome&)>& on_result = {});

SessionOutcome run_prover_endpoint(const std::string& host, std::uint16_t port, const CredentialFile& credential,
                                   const AggregateFile& aggregate, std::size_t index, Rng& rng);

BitVec checkpoint_watermark(const Checkpoint& checkpoint);

/// Lines of a transcript that a prover sent (HELLO, AGG_INPUT, COMMIT, RESPONSE).
std::vector<std::string> prover_lines(const std::string& transcript);

}  // namespace fedzkp
