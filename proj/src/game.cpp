#include "fedzkp/game.hpp"

#include "fedzkp/error.hpp"
#include "fedzkp/sigma.hpp"

namespace fedzkp {

GameOutcome run_security_game(const GameConfig& config, Rng& rng) {
  if (config.q == 0 || config.d == 0) throw ParameterError("run_security_game: q and d must be positive");
  const ForgeryParams& p = config.params;
  p.xlpn.validate();
  const std::size_t w = p.xlpn.error_weight();

  GameOutcome out;
  out.instances = config.q;
  out.log.push_back("setup n=" + std::to_string(p.n) + " err_n=" + std::to_string(p.err_n) +
                    " m=" + std::to_string(p.xlpn.m) + " l=" + std::to_string(p.xlpn.l));

  std::vector<AggregatedInput> aggregates;
  std::vector<std::vector<Credential>> credentials(config.q);
  std::vector<HashWatermark> watermarks;
  for (std::size_t j = 0; j < config.q; ++j) {
    std::vector<PublicInput> parts;
    for (std::size_t c = 0; c < p.clients; ++c) {
      XlpnInstance inst = gen_instance(p.xlpn, rng);
      parts.push_back(std::move(inst.pub));
      credentials[j].push_back(std::move(inst.cred));
    }
    aggregates.emplace_back(std::move(parts));
    watermarks.push_back(hash_watermark(aggregates.back(), p.n));
  }
  out.log.push_back("instances q=" + std::to_string(config.q));

  // The adversary sees these transcripts; the strategies below do not use them.
  std::size_t observed = 0;
  for (std::size_t j = 0; j < config.q; ++j) {
    const SessionResult honest =
        run_session(aggregates[j].select_component(0), credentials[j][0], w, config.d, rng);
    observed += honest.transcripts.size();
  }
  out.log.push_back("phase observed_rounds=" + std::to_string(observed));

  if (config.k > 0) {
    const auto forged = bruteforce_near_collision(watermarks, config.k, p, rng);
    out.queries_used = forged ? forged->attempts : config.k;
    out.won_challenge1 = forged.has_value();
  }
  out.log.push_back(std::string("challenge1 ") + (out.won_challenge1 ? "won" : "lost") +
                    " queries=" + std::to_string(out.queries_used));
  if (out.won_challenge1) return out;

  for (std::size_t j = 0; j < config.q && !out.won_challenge2; ++j) {
    const PublicInput& pub = aggregates[j].select_component(0);
    Rng prover_rng = fork(rng);
    SessionResult res;
    if (config.adversary_has_credential) {
      HonestProver prover(pub, credentials[j][0], w, std::move(prover_rng));
      res = run_session(prover, pub, w, config.d, rng);
    } else {
      CheatingProver prover(pub, w, std::move(prover_rng));
      res = run_session(prover, pub, w, config.d, rng);
    }
    out.won_challenge2 = res.accepted;
  }
  out.log.push_back(std::string("challenge2 ") + (out.won_challenge2 ? "won" : "lost"));
  return out;
}

}  // namespace fedzkp
