// fedzkp command line: credentials, aggregation, training, verification,
// attacks and the security arithmetic.
//
// Exit codes: 0 ok, 1 check or verification negative, 2 usage,
// 3 runtime failure, 4 transport abort.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fedzkp/attacks.hpp"
#include "fedzkp/bounds.hpp"
#include "fedzkp/costs.hpp"
#include "fedzkp/error.hpp"
#include "fedzkp/files.hpp"
#include "fedzkp/game.hpp"
#include "fedzkp/model.hpp"
#include "fedzkp/session.hpp"
#include "fedzkp/watermark.hpp"

namespace fs = std::filesystem;
using namespace fedzkp;

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitAborted = 4;

struct Tau {
  std::uint32_t num = 1;
  std::uint32_t den = 4;
};

Tau parse_tau(const std::string& text) {
  const Rational r = parse_probability(text);
  if (numerator(r) > 0xFFFFFFFFU || denominator(r) > 0xFFFFFFFFU) throw ParameterError("tau is too fine-grained");
  return {numerator(r).convert_to<std::uint32_t>(), denominator(r).convert_to<std::uint32_t>()};
}

Rng make_rng(std::optional<std::uint64_t> seed) { return Rng(seed ? *seed : seed_from_env()); }

std::string read_text(const fs::path& p) {
  const Bytes b = read_file(p);
  return std::string(b.begin(), b.end());
}

void write_text(const fs::path& p, const std::string& s) {
  write_file(p, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParameterError("not a number in list: " + item);
    }
  }
  if (out.empty()) throw ParameterError("empty value list");
  return out;
}

struct ModelOptions {
  std::size_t input_dim = 16;
  std::size_t hidden = 4096;
  std::size_t classes = 10;
  double readout_scale = 16.0;
  double spread = 1.0;
  std::size_t train_samples = 2000;
  std::size_t test_samples = 1000;
  TrainConfig train;
};

void add_model_options(CLI::App* cmd, ModelOptions& o) {
  cmd->add_option("--input-dim", o.input_dim, "Feature dimension of the toy task")->capture_default_str();
  cmd->add_option("--hidden", o.hidden, "Hidden width (length of W_gamma)")->capture_default_str();
  cmd->add_option("--classes", o.classes, "Number of classes")->capture_default_str();
  cmd->add_option("--readout-scale", o.readout_scale, "Readout init scale")->capture_default_str();
  cmd->add_option("--spread", o.spread, "Blob center spread")->capture_default_str();
  cmd->add_option("--train-samples", o.train_samples)->capture_default_str();
  cmd->add_option("--test-samples", o.test_samples)->capture_default_str();
  cmd->add_option("--lr", o.train.learning_rate, "SGD step")->capture_default_str();
  cmd->add_option("--lambda", o.train.lambda, "Weight of the hinge term")->capture_default_str();
  cmd->add_option("--mu", o.train.mu_hinge, "Hinge margin")->capture_default_str();
  cmd->add_option("--batch", o.train.batch_size)->capture_default_str();
}

BlobTask task_for(const ModelOptions& o) {
  BlobSpec spec;
  spec.classes = o.classes;
  spec.input_dim = o.input_dim;
  spec.train_samples = o.train_samples;
  spec.test_samples = o.test_samples;
  spec.center_spread = o.spread;
  return make_blob_task(spec);
}

// ---------------------------------------------------------------------------

int cmd_keygen(std::size_t clients, std::size_t m, std::size_t l, const std::string& tau_text, const fs::path& dir,
               std::optional<std::uint64_t> seed) {
  const Tau tau = parse_tau(tau_text);
  XlpnParams params{m, l, tau.num, tau.den};
  params.validate();
  if (clients == 0) throw ParameterError("--clients must be positive");
  fs::create_directories(dir);
  Rng rng = make_rng(seed);
  for (std::size_t j = 0; j < clients; ++j) {
    XlpnInstance inst = gen_instance(params, rng);
    write_file(dir / ("client" + std::to_string(j) + ".cred"), encode(CredentialFile{params, j, inst.cred}));
    write_file(dir / ("client" + std::to_string(j) + ".pub"), encode(PublicInputFile{params, inst.pub}));
  }
  std::cout << "wrote " << clients << " credentials to " << dir.string() << " (w=" << params.error_weight() << ")\n";
  return 0;
}

int cmd_aggregate(const std::vector<std::string>& inputs, const fs::path& out, std::size_t n, const fs::path& wm_out) {
  std::vector<PublicInput> parts;
  std::optional<XlpnParams> params;
  for (const auto& path : inputs) {
    PublicInputFile f = decode_public_input(read_file(path));
    if (params && !(*params == f.params)) throw ParameterError("public inputs use different parameters");
    params = f.params;
    parts.push_back(std::move(f.pub));
  }
  AggregateFile agg{*params, aggregate(std::move(parts))};
  write_file(out, encode(agg));
  const HashWatermark wm = hash_watermark(agg.agg, n);
  const std::string json = encode_watermark_json(wm);
  if (!wm_out.empty()) write_text(wm_out, json + "\n");
  std::cout << json << "\n";
  return 0;
}

int cmd_check(const fs::path& wm_path, const fs::path& agg_path, const fs::path& own_path, std::size_t clients) {
  const HashWatermark wm = decode_watermark_json(read_text(wm_path));
  const AggregateFile agg = decode_aggregate(read_file(agg_path));
  const PublicInputFile own = decode_public_input(read_file(own_path));
  const ClientCheckResult res = client_check(wm, agg.agg, own.pub, clients);
  std::cout << to_string(res.status) << "\n";
  return res.ok() ? 0 : kExitNegative;
}

int cmd_train(const fs::path& wm_path, const fs::path& out, const fs::path& history, std::size_t clients,
              std::size_t rounds, std::size_t local_epochs, std::uint64_t projection_seed, const ModelOptions& o,
              std::optional<std::uint64_t> seed) {
  const HashWatermark wm = decode_watermark_json(read_text(wm_path));
  Rng rng = make_rng(seed);
  const BlobTask task = task_for(o);
  ModelShape shape{o.input_dim, o.hidden, o.classes};
  const ModelState init = init_model(shape, rng, o.readout_scale);
  WatermarkTarget target{projection_matrix(o.hidden, wm.n(), projection_seed), wm.h};
  FederationConfig cfg{clients, rounds, local_epochs, o.train};
  const FederationResult res = run_federation(init, task, target, cfg, rng);
  write_file(out, encode(Checkpoint{res.state, wm.n(), projection_seed}));
  std::ostringstream csv;
  csv << "round,r,accuracy\n";
  for (const auto& h : res.history) csv << h.round << "," << h.detection.r << "," << h.accuracy << "\n";
  if (!history.empty()) write_text(history, csv.str());
  std::cout << csv.str();
  return 0;
}

int cmd_extract(const fs::path& model, const fs::path& agg_path) {
  const Checkpoint ck = decode_checkpoint(read_file(model));
  const HashWatermark wm{checkpoint_watermark(ck)};
  std::cout << encode_watermark_json(wm) << "\n";
  if (!agg_path.empty()) {
    const AggregateFile agg = decode_aggregate(read_file(agg_path));
    std::cout << "distance " << watermark_distance(wm.h, agg.agg) << "\n";
  }
  return 0;
}

std::size_t resolve_err_n(std::size_t n, const std::string& pr, std::optional<std::size_t> err_n) {
  if (err_n) return *err_n;
  return compute_err_n(n, parse_probability(pr));
}

int cmd_verifier(const std::string& listen, const fs::path& model, const std::string& pr,
                 std::optional<std::size_t> err_n, std::size_t rounds, const std::string& tau_text,
                 std::size_t sessions, const fs::path& port_file, std::optional<std::uint64_t> seed) {
  const Checkpoint ck = decode_checkpoint(read_file(model));
  const Tau tau = parse_tau(tau_text);
  VerifierConfig cfg{tau.num, tau.den, resolve_err_n(ck.n, pr, err_n), rounds};
  const auto [host, port] = parse_address(listen);
  TcpListener listener(host, port);
  if (!port_file.empty()) write_text(port_file, std::to_string(listener.port()) + "\n");
  std::cerr << "listening on " << host << ":" << listener.port() << "\n";
  Rng rng = make_rng(seed);
  bool all_accepted = true;
  bool any_aborted = false;
  run_verifier_endpoint(listener, ck, cfg, sessions, rng, [&](const SessionOutcome& o) {
    std::cout << "session " << o.session_id << " " << to_string(o.status) << " distance=" << o.distance
              << " rounds=" << o.rounds_completed << (o.reason.empty() ? "" : " reason=" + o.reason) << std::endl;
    all_accepted = all_accepted && o.accepted();
    any_aborted = any_aborted || o.status == SessionStatus::aborted;
  });
  if (any_aborted) return kExitAborted;
  return all_accepted ? 0 : kExitNegative;
}

int cmd_prover(const std::string& connect, const fs::path& cred_path, const fs::path& agg_path,
               std::optional<std::size_t> index, std::optional<std::uint64_t> seed) {
  const CredentialFile cred = decode_credential(read_file(cred_path));
  const AggregateFile agg = decode_aggregate(read_file(agg_path));
  const auto [host, port] = parse_address(connect);
  Rng rng = make_rng(seed);
  const SessionOutcome o = run_prover_endpoint(host, port, cred, agg, index.value_or(cred.index), rng);
  std::cout << "session " << o.session_id << " " << to_string(o.status) << " validity="
            << (o.validity_passed ? "passed" : "failed") << " rounds=" << o.rounds_completed
            << (o.reason.empty() ? "" : " reason=" + o.reason) << "\n";
  if (o.status == SessionStatus::aborted) return kExitAborted;
  return o.accepted() ? 0 : kExitNegative;
}

int cmd_model_attack(AttackKind kind, const fs::path& model, const fs::path& wm_path, const std::string& values,
                     const ModelOptions& o, std::optional<std::uint64_t> seed) {
  const Checkpoint ck = decode_checkpoint(read_file(model));
  const HashWatermark wm = decode_watermark_json(read_text(wm_path));
  if (wm.n() != ck.n) throw ParameterError("watermark length differs from the checkpoint");
  const BlobTask task = task_for(o);
  const WatermarkTarget target{projection_matrix(ck.state.shape.hidden, ck.n, ck.projection_seed), wm.h};
  const AttackEval eval{target, task.test};
  Rng rng = make_rng(seed);
  std::cout << "parameter,r,accuracy\n";
  const AttackReport base = measure(kind, 0.0, ck.state, eval);
  std::cout << "baseline," << base.detection.r << "," << base.accuracy << "\n";
  for (double v : parse_list(values)) {
    AttackReport rep;
    switch (kind) {
      case AttackKind::finetune:
        if (v < 0) throw ParameterError("epochs must be non-negative");
        rep = finetune_attack(ck.state, task.train, static_cast<std::size_t>(v), eval, rng, o.train).second;
        break;
      case AttackKind::prune: rep = prune_attack(ck.state, v, eval).second; break;
      case AttackKind::noise: rep = targeted_destruction(ck.state, v, eval, rng).second; break;
    }
    std::cout << v << "," << rep.detection.r << "," << rep.accuracy << "\n";
  }
  return 0;
}

int cmd_game(const GameConfig& cfg, std::size_t games, std::optional<std::uint64_t> seed) {
  Rng rng = make_rng(seed);
  std::size_t wins = 0;
  std::size_t e1 = 0;
  for (std::size_t g = 0; g < games; ++g) {
    const GameOutcome o = run_security_game(cfg, rng);
    wins += o.won() ? 1 : 0;
    e1 += o.won_challenge1 ? 1 : 0;
  }
  const Rational bound = advantage_bound(cfg.k, cfg.q, cfg.params.n, cfg.params.err_n, cfg.d);
  std::cout << "games,wins,challenge1_wins,win_rate,advantage_bound\n"
            << games << "," << wins << "," << e1 << "," << static_cast<double>(wins) / static_cast<double>(games)
            << "," << to_double(bound) << "\n";
  return 0;
}

int cmd_bounds(std::size_t n, const std::string& pr, std::size_t k, std::size_t q, std::size_t d) {
  const SecurityParams sp = make_security_params(n, parse_probability(pr));
  const Rational adv = advantage_bound(k, q, n, sp.err_n, d);
  std::cout << "n,p_r,err_n,r_n,advantage\n";
  std::printf("%zu,%s,%zu,%.6f,%.6g\n", n, format_probability(sp.p_r).c_str(), sp.err_n, to_double(sp.r_n),
              to_double(adv));
  return 0;
}

int cmd_costs(std::size_t m, std::size_t l, std::size_t k, std::size_t d, std::size_t lcom) {
  const CostReport rep = cost_report(k, m, l, d, lcom);
  std::cout << "memory_bits,memory_mb,communication_bits,communication_kb\n";
  std::printf("%s,%.2f,%s,%.0f\n", format_bits(rep.memory_bits).c_str(), rep.memory_mib(),
              format_bits(rep.communication_bits).c_str(), rep.communication_kib());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ownership verification for federated models with xLPN zero-knowledge proofs"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "RNG seed (default: FEDZKP_SEED, else random)");

  std::function<int()> run;

  // keygen
  std::size_t kg_clients = 10, kg_m = 800, kg_l = 700;
  std::string kg_tau = "1/4";
  std::string kg_dir = "keys";
  auto* keygen = app.add_subcommand("keygen", "Generate per-client xLPN credentials");
  keygen->add_option("--clients,-K", kg_clients)->capture_default_str();
  keygen->add_option("--m", kg_m)->capture_default_str();
  keygen->add_option("--l", kg_l)->capture_default_str();
  keygen->add_option("--tau", kg_tau)->capture_default_str();
  keygen->add_option("--out-dir", kg_dir)->capture_default_str();
  keygen->callback([&] { run = [&] { return cmd_keygen(kg_clients, kg_m, kg_l, kg_tau, kg_dir, seed); }; });

  // aggregate
  std::vector<std::string> ag_inputs;
  std::string ag_out = "aggregate.bin", ag_wm;
  std::size_t ag_n = kDefaultWatermarkBits;
  auto* agg = app.add_subcommand("aggregate", "Aggregate public inputs and derive the watermark");
  agg->add_option("inputs", ag_inputs, "Public input files in client order")->required();
  agg->add_option("--out", ag_out)->capture_default_str();
  agg->add_option("--n", ag_n, "Watermark bits")->capture_default_str();
  agg->add_option("--watermark", ag_wm, "Write the watermark JSON here");
  agg->callback([&] { run = [&] { return cmd_aggregate(ag_inputs, ag_out, ag_n, ag_wm); }; });

  // check
  std::string ck_wm, ck_agg, ck_own;
  std::size_t ck_clients = 0;
  auto* check = app.add_subcommand("check", "Client-side check of a server-issued watermark");
  check->add_option("--watermark", ck_wm)->required();
  check->add_option("--aggregate", ck_agg)->required();
  check->add_option("--public", ck_own, "This client's public input")->required();
  check->add_option("--clients,-K", ck_clients)->required();
  check->callback([&] { run = [&] { return cmd_check(ck_wm, ck_agg, ck_own, ck_clients); }; });

  // train
  ModelOptions tr_opts;
  std::string tr_wm, tr_out = "model.ckpt", tr_hist;
  std::size_t tr_clients = 10, tr_rounds = 5, tr_epochs = 1;
  std::uint64_t tr_proj = 7;
  auto* train = app.add_subcommand("train", "Federated training with the watermark embedded");
  train->add_option("--watermark", tr_wm)->required();
  train->add_option("--out", tr_out)->capture_default_str();
  train->add_option("--history", tr_hist, "Write round,r,accuracy CSV here");
  train->add_option("--clients,-K", tr_clients)->capture_default_str();
  train->add_option("--rounds", tr_rounds)->capture_default_str();
  train->add_option("--local-epochs", tr_epochs)->capture_default_str();
  train->add_option("--projection-seed", tr_proj)->capture_default_str();
  add_model_options(train, tr_opts);
  train->callback([&] {
    run = [&] { return cmd_train(tr_wm, tr_out, tr_hist, tr_clients, tr_rounds, tr_epochs, tr_proj, tr_opts, seed); };
  });

  // extract
  std::string ex_model, ex_agg;
  auto* extract = app.add_subcommand("extract", "Extract the watermark from a checkpoint");
  extract->add_option("--model", ex_model)->required();
  extract->add_option("--aggregate", ex_agg, "Also report the distance to this aggregate");
  extract->callback([&] { run = [&] { return cmd_extract(ex_model, ex_agg); }; });

  // verify-verifier
  std::string vv_listen = "127.0.0.1:0", vv_model, vv_pr = "2^-128", vv_tau = "1/4", vv_portfile;
  std::optional<std::size_t> vv_errn;
  std::size_t vv_rounds = 300, vv_sessions = 1;
  auto* vver = app.add_subcommand("verify-verifier", "Serve ownership verification sessions");
  vver->add_option("--listen", vv_listen)->capture_default_str();
  vver->add_option("--model", vv_model)->required();
  vver->add_option("--pr", vv_pr, "Required near-collision probability")->capture_default_str();
  vver->add_option("--err-n", vv_errn, "Override the derived err_n");
  vver->add_option("--rounds,-d", vv_rounds)->capture_default_str();
  vver->add_option("--tau", vv_tau)->capture_default_str();
  vver->add_option("--sessions", vv_sessions, "0 serves forever")->capture_default_str();
  vver->add_option("--port-file", vv_portfile, "Write the bound port here");
  vver->callback([&] {
    run = [&] {
      return cmd_verifier(vv_listen, vv_model, vv_pr, vv_errn, vv_rounds, vv_tau, vv_sessions, vv_portfile, seed);
    };
  });

  // verify-prover
  std::string vp_connect, vp_cred, vp_agg;
  std::optional<std::size_t> vp_index;
  auto* vpro = app.add_subcommand("verify-prover", "Prove ownership to a verifier");
  vpro->add_option("--connect", vp_connect)->required();
  vpro->add_option("--credential", vp_cred)->required();
  vpro->add_option("--aggregate", vp_agg)->required();
  vpro->add_option("--index", vp_index, "Component to claim (default: the credential's)");
  vpro->callback([&] { run = [&] { return cmd_prover(vp_connect, vp_cred, vp_agg, vp_index, seed); }; });

  // attack
  auto* attack = app.add_subcommand("attack", "Watermark removal attacks and the forgery game");
  attack->require_subcommand(1);
  ModelOptions at_opts;
  std::string at_model, at_wm, at_values;
  struct ModelAttack {
    const char* name;
    const char* help;
    AttackKind kind;
    const char* default_values;
  };
  static const ModelAttack kModelAttacks[] = {
      {"finetune", "Fine-tune without the hinge term; values are epochs", AttackKind::finetune, "1,10,50"},
      {"prune", "Global magnitude pruning; values are rates", AttackKind::prune, "0.1,0.3,0.5,0.7,0.9"},
      {"noise", "Gaussian noise on W_gamma; values are phi", AttackKind::noise, "0.05,0.1,0.2,0.5,0.9"},
  };
  for (const auto& spec : kModelAttacks) {
    auto* sub = attack->add_subcommand(spec.name, spec.help);
    sub->add_option("--model", at_model)->required();
    sub->add_option("--watermark", at_wm)->required();
    sub->add_option("--values", at_values, std::string("Comma separated (default ") + spec.default_values + ")");
    add_model_options(sub, at_opts);
    const AttackKind kind = spec.kind;
    const std::string defaults = spec.default_values;
    sub->callback([&, kind, defaults] {
      run = [&, kind, defaults] {
        return cmd_model_attack(kind, at_model, at_wm, at_values.empty() ? defaults : at_values, at_opts, seed);
      };
    });
  }
  GameConfig gm_cfg;
  std::size_t gm_games = 500, gm_m = 16, gm_l = 8;
  std::string gm_pr = "2^-12";
  auto* game = attack->add_subcommand("game", "Play the ownership forgery game repeatedly");
  game->add_option("--q", gm_cfg.q)->capture_default_str();
  game->add_option("--k", gm_cfg.k)->capture_default_str();
  game->add_option("--d", gm_cfg.d)->capture_default_str();
  game->add_option("--n", gm_cfg.params.n)->capture_default_str();
  game->add_option("--pr", gm_pr, "Derives err_n")->capture_default_str();
  game->add_option("--m", gm_m)->capture_default_str();
  game->add_option("--l", gm_l)->capture_default_str();
  game->add_option("--games", gm_games)->capture_default_str();
  game->add_flag("--with-credential", gm_cfg.adversary_has_credential, "Control run");
  game->callback([&] {
    run = [&] {
      gm_cfg.params.xlpn = XlpnParams{gm_m, gm_l, 1, 4};
      gm_cfg.params.err_n = compute_err_n(gm_cfg.params.n, parse_probability(gm_pr));
      return cmd_game(gm_cfg, gm_games, seed);
    };
  });

  // bounds
  std::size_t bd_n = 1024, bd_k = 1, bd_q = 1, bd_d = 300;
  std::string bd_pr = "2^-128";
  auto* bounds = app.add_subcommand("bounds", "Security boundary err_n, floor r_n and advantage bound");
  bounds->add_option("--n", bd_n)->capture_default_str();
  bounds->add_option("--pr", bd_pr)->capture_default_str();
  bounds->add_option("--k", bd_k)->capture_default_str();
  bounds->add_option("--q", bd_q)->capture_default_str();
  bounds->add_option("--d", bd_d)->capture_default_str();
  bounds->callback([&] { run = [&] { return cmd_bounds(bd_n, bd_pr, bd_k, bd_q, bd_d); }; });

  // costs
  std::size_t cs_m = 800, cs_l = 700, cs_k = 10, cs_d = 300, cs_lcom = kDefaultCommitBits;
  auto* costs = app.add_subcommand("costs", "Closed-form memory and communication cost");
  costs->add_option("--m", cs_m)->capture_default_str();
  costs->add_option("--l", cs_l)->capture_default_str();
  costs->add_option("--K", cs_k)->capture_default_str();
  costs->add_option("--d", cs_d)->capture_default_str();
  costs->add_option("--lcom", cs_lcom)->capture_default_str();
  costs->callback([&] { run = [&] { return cmd_costs(cs_m, cs_l, cs_k, cs_d, cs_lcom); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return run ? run() : kExitUsage;
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitAborted;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
