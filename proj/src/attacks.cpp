#include "fedzkp/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fedzkp/error.hpp"

namespace fedzkp {

const char* to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::finetune: return "finetune";
    case AttackKind::prune: return "prune";
    case AttackKind::noise: return "noise";
  }
  return "unknown";
}

AttackReport measure(AttackKind kind, double parameter, const ModelState& state, const AttackEval& eval) {
  AttackReport rep;
  rep.kind = kind;
  rep.parameter = parameter;
  rep.detection = detection_rate(eval.target.h, extract_watermark(state.gamma, eval.target.e));
  rep.accuracy = accuracy(state, eval.test);
  return rep;
}

std::pair<ModelState, AttackReport> finetune_attack(const ModelState& state, const Dataset& data,
                                                    std::size_t epochs, const AttackEval& eval,
                                                    Rng& rng, TrainConfig config) {
  config.lambda = 0.0;
  ModelState out = epochs == 0 ? state : local_update(state, data, nullptr, config, epochs, rng);
  AttackReport rep = measure(AttackKind::finetune, static_cast<double>(epochs), out, eval);
  return {std::move(out), rep};
}

std::pair<ModelState, AttackReport> prune_attack(const ModelState& state, double rate,
                                                 const AttackEval& eval) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw ParameterError("prune_attack: rate must lie in [0, 1]");
  ModelState out = state;
  const std::size_t nt = static_cast<std::size_t>(out.theta.size());
  const std::size_t total = nt + static_cast<std::size_t>(out.gamma.size());
  auto at = [&](std::size_t i) -> double& {
    return i < nt ? out.theta(static_cast<Eigen::Index>(i)) : out.gamma(static_cast<Eigen::Index>(i - nt));
  };
  const auto cut = static_cast<std::size_t>(std::floor(rate * static_cast<double>(total)));
  if (cut > 0) {
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto by_magnitude = [&](std::size_t a, std::size_t b) {
      const double ma = std::abs(at(a));
      const double mb = std::abs(at(b));
      return ma < mb || (ma == mb && a < b);
    };
    if (cut < total) std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(cut), idx.end(), by_magnitude);
    for (std::size_t i = 0; i < cut; ++i) at(idx[i]) = 0.0;
  }
  AttackReport rep = measure(AttackKind::prune, rate, out, eval);
  return {std::move(out), rep};
}

std::pair<ModelState, AttackReport> targeted_destruction(const ModelState& state, double phi,
                                                         const AttackEval& eval, Rng& rng) {
  if (!(phi > 0.0 && phi < 1.0)) throw ParameterError("targeted_destruction: phi must lie in (0, 1)");
  const double mu = state.gamma.mean();
  const double var = (state.gamma.array() - mu).square().mean();
  if (state.gamma.size() == 0 || state.gamma.maxCoeff() == state.gamma.minCoeff()) {
    throw ParameterError("targeted_destruction: W_gamma has zero variance");
  }
  ModelState out = state;
  std::normal_distribution<double> noise(mu, std::sqrt(phi * var));
  for (Eigen::Index i = 0; i < out.gamma.size(); ++i) out.gamma(i) += noise(rng);
  AttackReport rep = measure(AttackKind::noise, phi, out, eval);
  return {std::move(out), rep};
}

namespace {

struct InstanceSet {
  AggregatedInput aggregate;
  std::vector<Credential> credentials;
};

InstanceSet fresh_instances(const ForgeryParams& params, Rng& rng) {
  std::vector<PublicInput> parts;
  std::vector<Credential> creds;
  parts.reserve(params.clients);
  creds.reserve(params.clients);
  for (std::size_t c = 0; c < params.clients; ++c) {
    XlpnInstance inst = gen_instance(params.xlpn, rng);
    parts.push_back(std::move(inst.pub));
    creds.push_back(std::move(inst.cred));
  }
  return {AggregatedInput(std::move(parts)), std::move(creds)};
}

}  // namespace

std::optional<Forgery> bruteforce_near_collision(const std::vector<HashWatermark>& targets,
                                                 std::size_t budget, const ForgeryParams& params,
                                                 Rng& rng) {
  if (params.clients == 0) throw ParameterError("bruteforce_near_collision: clients must be positive");
  for (const auto& t : targets) {
    if (t.n() != params.n) throw DimensionError("bruteforce_near_collision: target length differs from n");
  }
  const std::size_t radius = 2 * params.err_n;
  for (std::size_t attempt = 1; attempt <= budget; ++attempt) {
    InstanceSet set = fresh_instances(params, rng);
    const HashWatermark h = hash_watermark(set.aggregate, params.n);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (hamming_distance(h.h, targets[j].h) <= radius) {
        return Forgery{std::move(set.aggregate), std::move(set.credentials), j, attempt};
      }
    }
  }
  return std::nullopt;
}

std::size_t count_near_collisions(const BitVec& target, std::size_t radius, std::size_t trials,
                                  const ForgeryParams& params, Rng& rng) {
  if (target.size() != params.n) throw DimensionError("count_near_collisions: target length differs from n");
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const InstanceSet set = fresh_instances(params, rng);
    if (hamming_distance(hash_watermark(set.aggregate, params.n).h, target) <= radius) ++hits;
  }
  return hits;
}

}  // namespace fedzkp
