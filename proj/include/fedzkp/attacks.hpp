#pragma once

// Watermark removal attacks on a trained model and hash forgery by brute force.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fedzkp/model.hpp"
#include "fedzkp/watermark.hpp"
#include "fedzkp/xlpn.hpp"

namespace fedzkp {

enum class AttackKind { finetune, prune, noise };

const char* to_string(AttackKind kind);

/// Detection and accuracy are always measured on the attacked state itself.
struct AttackReport {
  AttackKind kind = AttackKind::finetune;
  double parameter = 0.0;
  DetectionReport detection;
  double accuracy = 0.0;
};

/// What the attacker is scored against. Never modified by an attack.
struct AttackEval {
  const WatermarkTarget& target;
  const Dataset& test;
};

AttackReport measure(AttackKind kind, double parameter, const ModelState& state, const AttackEval& eval);

/// Main-task training only (lambda = 0). epochs = 0 returns the state unchanged.
std::pair<ModelState, AttackReport> finetune_attack(const ModelState& state, const Dataset& data,
                                                    std::size_t epochs, const AttackEval& eval,
                                                    Rng& rng, TrainConfig config = {});

/// Zeroes the floor(rate * N) smallest-magnitude entries over theta and W_gamma together.
std::pair<ModelState, AttackReport> prune_attack(const ModelState& state, double rate,
                                                 const AttackEval& eval);

/// W_gamma + noise with noise_i ~ N(mu, phi sigma^2), mu and sigma^2 taken from W_gamma.
std::pair<ModelState, AttackReport> targeted_destruction(const ModelState& state, double phi,
                                                         const AttackEval& eval, Rng& rng);

/// Shape of the instance sets an attacker generates while searching.
struct ForgeryParams {
  XlpnParams xlpn{16, 8, 1, 4};
  std::size_t clients = 1;
  std::size_t n = 12;
  std::size_t err_n = 0;
};

struct Forgery {
  AggregatedInput aggregate;
  std::vector<Credential> credentials;
  std::size_t target_index = 0;
  std::size_t attempts = 0;
};

/// Up to `budget` fresh instance sets; returns the first whose hash lies
/// within 2 err_n of any target.
std::optional<Forgery> bruteforce_near_collision(const std::vector<HashWatermark>& targets,
                                                 std::size_t budget, const ForgeryParams& params,
                                                 Rng& rng);

/// Hashes `trials` fresh instance sets and counts digests within `radius` of target.
std::size_t count_near_collisions(const BitVec& target, std::size_t radius, std::size_t trials,
                                  const ForgeryParams& params, Rng& rng);

}  // namespace fedzkp
