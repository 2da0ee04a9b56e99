#include "fedzkp/session.hpp"

#include <sstream>

#include "fedzkp/error.hpp"
#include "fedzkp/model.hpp"
#include "fedzkp/wire.hpp"

namespace fedzkp {

using nlohmann::json;

const char* to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::accepted: return "accepted";
    case SessionStatus::rejected: return "rejected";
    case SessionStatus::aborted: return "aborted";
  }
  return "unknown";
}

namespace {

// The peer reported an error or ended the session early.
class PeerRejected : public Error {
 public:
  using Error::Error;
};

class Link {
 public:
  Link(Channel& ch, std::string session_id) : ch_(ch), sid_(std::move(session_id)) {}

  const std::string& session_id() const { return sid_; }

  void send(MessageType type, json payload) {
    const std::uint64_t idx = last_ ? *last_ + 1 : 0;
    last_ = idx;
    ch_.send_line(encode_line({type, sid_, idx, std::move(payload)}));
  }

  WireMessage recv() {
    auto line = ch_.recv_line();
    if (!line) throw TransportError("peer closed the connection");
    WireMessage msg = decode_line(*line);
    if (!last_ && sid_.empty()) {
      sid_ = msg.session_id;
    } else if (msg.session_id != sid_) {
      throw ProtocolError("session id mismatch");
    }
    if (last_ && msg.round_index <= *last_) throw ProtocolError("round_index did not increase");
    last_ = msg.round_index;
    return msg;
  }

  WireMessage expect(MessageType type) {
    WireMessage msg = recv();
    if (msg.type == MessageType::error) {
      const auto& p = msg.payload;
      throw PeerRejected("peer error: " + (p.contains("message") && p["message"].is_string()
                                               ? p["message"].get<std::string>()
                                               : std::string("unspecified")));
    }
    if (msg.type != type) {
      throw ProtocolError(std::string("expected ") + to_string(type) + ", got " + to_string(msg.type));
    }
    return msg;
  }

 private:
  Channel& ch_;
  std::string sid_;
  std::optional<std::uint64_t> last_;
};

bool bool_field(const json& payload, const char* key) {
  if (!payload.contains(key) || !payload[key].is_boolean()) {
    throw ProtocolError(std::string("field '") + key + "' is not a boolean");
  }
  return payload[key].get<bool>();
}

std::string reason_of(const json& payload) {
  return payload.contains("reason") && payload["reason"].is_string() ? payload["reason"].get<std::string>() : "";
}

// Honest-form prover that does not insist on holding a witness; a mismatched
// credential is caught by the verifier rather than locally.
class PresentedCredentialProver final : public RoundProver {
 public:
  PresentedCredentialProver(const PublicInput& pub, const Credential& cred, Rng& rng)
      : pub_(pub), cred_(cred), rng_(rng) {}

  RoundMessage1 commit() override {
    const std::size_t m = pub_.m();
    Permutation pi = Permutation::random(m, rng_);
    BitVec v = BitVec::random(pub_.l(), rng_);
    BitVec f = BitVec::random(m, rng_);
    BitVec t0 = mat_vec_mul(pub_.a, v) ^ f;
    BitVec t1 = pi.apply(f);
    BitVec t2 = pi.apply(f ^ cred_.e);
    state_ = commit_round(std::move(pi), std::move(v), std::move(f), std::move(t0), std::move(t1), std::move(t2),
                          rng_, default_commitment_scheme());
    return state_->msg1;
  }

  RoundResponse respond(Challenge c) override {
    if (!state_) throw ProtocolError("respond called before commit");
    return prover_respond(*state_, c);
  }

 private:
  const PublicInput& pub_;
  const Credential& cred_;
  Rng& rng_;
  std::optional<ProverRoundState> state_;
};

std::string new_session_id(Rng& rng) {
  std::ostringstream os;
  os << std::hex << rng();
  return os.str();
}

}  // namespace

SessionOutcome run_verifier_session(Channel& channel, const BitVec& extracted, const VerifierConfig& config,
                                    Rng& rng) {
  SessionOutcome out;
  Link link(channel, "");
  auto finish = [&](SessionStatus status, std::string reason) {
    out.status = status;
    out.reason = std::move(reason);
    out.session_id = link.session_id();
    return out;
  };
  try {
    const WireMessage hello = link.expect(MessageType::hello);
    if (!hello.payload.contains("version") || hello.payload["version"] != kWireVersion) {
      throw ProtocolError("unsupported protocol version");
    }
    const AggPayload ap = parse_agg_payload(link.expect(MessageType::agg_input).payload);
    XlpnParams params{ap.agg.m(), ap.agg.l(), config.tau_num, config.tau_den};
    try {
      params.validate();
    } catch (const ParameterError& e) {
      throw ProtocolError(std::string("aggregate parameters: ") + e.what());
    }
    const std::size_t w = params.error_weight();
    out.distance = watermark_distance(extracted, ap.agg);
    out.validity_passed = out.distance < config.err_n;
    link.send(MessageType::validity_result, json{{"valid", out.validity_passed},
                                                 {"distance", out.distance},
                                                 {"err_n", config.err_n},
                                                 {"rounds", config.rounds}});
    if (!out.validity_passed) {
      link.send(MessageType::session_result, json{{"accepted", false}, {"reason", "validity check failed"}});
      return finish(SessionStatus::rejected, "validity check failed");
    }

    const PublicInput& pub = ap.agg.select_component(ap.index);
    const std::size_t bits = default_commitment_scheme().commitment_bits();
    for (std::size_t r = 1; r <= config.rounds; ++r) {
      const RoundMessage1 msg1 = parse_commit_payload(link.expect(MessageType::commit).payload, bits);
      const Challenge c = verifier_challenge(rng);
      link.send(MessageType::challenge, json{{"c", c.value()}});
      const RoundResponse resp = parse_response_payload(link.expect(MessageType::response).payload, pub.m());
      const bool ok = verifier_check_round(pub, msg1, c, resp, w);
      link.send(MessageType::round_result, json{{"accepted", ok}});
      if (!ok) {
        const std::string reason = "round " + std::to_string(r) + " rejected";
        link.send(MessageType::session_result, json{{"accepted", false}, {"reason", reason}});
        return finish(SessionStatus::rejected, reason);
      }
      out.rounds_completed = r;
    }
    link.send(MessageType::session_result, json{{"accepted", true}, {"reason", ""}});
    return finish(SessionStatus::accepted, "");
  } catch (const TransportError& e) {
    return finish(SessionStatus::aborted, e.what());
  } catch (const PeerRejected& e) {
    return finish(SessionStatus::rejected, e.what());
  } catch (const Error& e) {
    try {
      link.send(MessageType::error, json{{"message", e.what()}});
      link.send(MessageType::session_result, json{{"accepted", false}, {"reason", e.what()}});
    } catch (const TransportError&) {
    }
    return finish(SessionStatus::rejected, e.what());
  }
}

SessionOutcome run_prover_session(Channel& channel, const AggregatedInput& agg, std::size_t index,
                                  RoundProver& prover, const std::string& session_id) {
  SessionOutcome out;
  out.session_id = session_id;
  Link link(channel, session_id);
  auto finish = [&](SessionStatus status, std::string reason) {
    out.status = status;
    out.reason = std::move(reason);
    return out;
  };
  auto read_result = [&]() {
    const WireMessage res = link.expect(MessageType::session_result);
    const bool accepted = bool_field(res.payload, "accepted");
    return finish(accepted ? SessionStatus::accepted : SessionStatus::rejected, reason_of(res.payload));
  };
  try {
    link.send(MessageType::hello, json{{"version", kWireVersion}});
    link.send(MessageType::agg_input, agg_payload(agg, index));
    const WireMessage validity = link.expect(MessageType::validity_result);
    out.validity_passed = bool_field(validity.payload, "valid");
    if (validity.payload.contains("distance") && validity.payload["distance"].is_number_unsigned()) {
      out.distance = validity.payload["distance"].get<std::size_t>();
    }
    if (!out.validity_passed) return read_result();
    if (!validity.payload.contains("rounds") || !validity.payload["rounds"].is_number_unsigned()) {
      throw ProtocolError("validity result lacks a round count");
    }
    const auto rounds = validity.payload["rounds"].get<std::size_t>();
    for (std::size_t r = 1; r <= rounds; ++r) {
      link.send(MessageType::commit, commit_payload(prover.commit()));
      const WireMessage ch = link.expect(MessageType::challenge);
      if (!ch.payload.contains("c") || !ch.payload["c"].is_number_unsigned() || ch.payload["c"].get<std::uint64_t>() > 2) {
        throw ProtocolError("challenge out of range");
      }
      const Challenge c = Challenge::from_int(ch.payload["c"].get<int>());
      link.send(MessageType::response, response_payload(prover.respond(c)));
      const bool ok = bool_field(link.expect(MessageType::round_result).payload, "accepted");
      if (!ok) return read_result();
      out.rounds_completed = r;
    }
    return read_result();
  } catch (const TransportError& e) {
    return finish(SessionStatus::aborted, e.what());
  } catch (const PeerRejected& e) {
    return finish(SessionStatus::rejected, e.what());
  } catch (const Error& e) {
    try {
      link.send(MessageType::error, json{{"message", e.what()}});
    } catch (const TransportError&) {
    }
    return finish(SessionStatus::rejected, e.what());
  }
}

BitVec checkpoint_watermark(const Checkpoint& checkpoint) {
  const Eigen::MatrixXd e = projection_matrix(checkpoint.state.shape.hidden, checkpoint.n, checkpoint.projection_seed);
  return extract_watermark(checkpoint.state.gamma, e);
}

std::vector<SessionOutcome> run_verifier_endpoint(TcpListener& listener, const Checkpoint& checkpoint,
                                                  const VerifierConfig& config, std::size_t max_sessions,
                                                  Rng& rng,
                                                  const std::function<void(const SessionOutcome&)>& on_result) {
  const BitVec extracted = checkpoint_watermark(checkpoint);
  std::vector<SessionOutcome> results;
  while (max_sessions == 0 || results.size() < max_sessions) {
    auto channel = listener.accept();
    results.push_back(run_verifier_session(*channel, extracted, config, rng));
    if (on_result) on_result(results.back());
  }
  return results;
}

SessionOutcome run_prover_endpoint(const std::string& host, std::uint16_t port, const CredentialFile& credential,
                                   const AggregateFile& aggregate, std::size_t index, Rng& rng) {
  if (index >= aggregate.agg.clients()) throw ParameterError("client index outside the aggregate");
  if (!(credential.params == aggregate.params)) throw ParameterError("credential and aggregate parameters differ");
  auto channel = tcp_connect(host, port);
  const PublicInput& pub = aggregate.agg.select_component(index);
  PresentedCredentialProver prover(pub, credential.cred, rng);
  return run_prover_session(*channel, aggregate.agg, index, prover, new_session_id(rng));
}

std::vector<std::string> prover_lines(const std::string& transcript) {
  std::vector<std::string> out;
  std::istringstream in(transcript);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const WireMessage msg = decode_line(line);
    switch (msg.type) {
      case MessageType::hello:
      case MessageType::agg_input:
      case MessageType::commit:
      case MessageType::response: out.push_back(line); break;
      default: break;
    }
  }
  return out;
}

}  // namespace fedzkp
