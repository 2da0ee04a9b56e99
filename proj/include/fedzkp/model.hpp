#pragma once

// Toy federated model carrying a sign watermark in its per-unit scales.
//
//   logits = W2 (gamma .* relu(W1 x + b1)) + b2
//
// theta packs W1, b1, W2, b2 (column-major blocks, in that order). gamma is
// the watermark-carrying vector W_gamma; the embedded bits are
// sgn(W_gamma^T E) for a fixed Gaussian projection E of shape hidden x n.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fedzkp/gf2.hpp"
#include "fedzkp/rng.hpp"

namespace fedzkp {

struct ModelShape {
  std::size_t input_dim = 16;
  std::size_t hidden = 4096;
  std::size_t classes = 10;

  std::size_t theta_size() const { return hidden * input_dim + hidden + classes * hidden + classes; }
  friend bool operator==(const ModelShape&, const ModelShape&) = default;
};

struct ModelState {
  ModelShape shape;
  Eigen::VectorXd theta;
  Eigen::VectorXd gamma;
};

/// He-initialized first layer, readout N(0, (readout_scale / sqrt(hidden))^2),
/// gamma ~ N(0, 1) so its mean starts near zero.
ModelState init_model(const ModelShape& shape, Rng& rng, double readout_scale = 16.0);

struct Dataset {
  Eigen::MatrixXd x;  // features x samples
  std::vector<int> y;

  std::size_t size() const { return y.size(); }
};

struct BlobSpec {
  std::size_t classes = 10;
  std::size_t input_dim = 16;
  std::size_t train_samples = 2000;
  std::size_t test_samples = 1000;
  double center_spread = 1.0;
  std::uint64_t generator_seed = 1234;
};

struct BlobTask {
  Dataset train;
  Dataset test;
};

/// Gaussian blobs with unit noise around centers drawn from the generator seed.
BlobTask make_blob_task(const BlobSpec& spec = {});

/// Round-robin split into k shards; shards may be empty when k > samples.
std::vector<Dataset> shard(const Dataset& data, std::size_t k);

double accuracy(const ModelState& state, const Dataset& data);

/// Projection matrix E (hidden x n), entries N(0, 1), reproducible from seed.
Eigen::MatrixXd projection_matrix(std::size_t hidden, std::size_t n, std::uint64_t seed);

/// bit i = 1 iff (W_gamma^T E)_i > 0.
BitVec extract_watermark(const Eigen::VectorXd& w_gamma, const Eigen::MatrixXd& e);

struct HingeResult {
  double loss = 0.0;
  Eigen::VectorXd grad;
};

/// Targets t_i = +1 for bit 1, -1 for bit 0; loss = sum max(mu - t_i p_i, 0).
HingeResult hinge_loss_and_grad(const Eigen::VectorXd& w_gamma, const Eigen::MatrixXd& e,
                                const BitVec& h, double mu_hinge);

struct WatermarkTarget {
  Eigen::MatrixXd e;
  BitVec h;
};

struct TrainConfig {
  double learning_rate = 0.01;
  double lambda = 1.0;
  double mu_hinge = 16.0;
  std::size_t batch_size = 32;
};

/// Minibatch SGD on cross-entropy + lambda * hinge. With an empty shard each
/// epoch is a single hinge-only step. Throws DivergenceError on a non-finite loss.
ModelState local_update(const ModelState& state, const Dataset& data,
                        const WatermarkTarget* target, const TrainConfig& config,
                        std::size_t epochs, Rng& rng);

/// sum_k (lambda_k / K) W_k. Empty lambdas means all ones.
ModelState fedavg(const std::vector<ModelState>& states, const std::vector<double>& lambdas = {});

struct DetectionReport {
  std::size_t err = 0;
  double r = 0.0;
};

DetectionReport detection_rate(const BitVec& target, const BitVec& extracted);

struct RoundRecord {
  std::size_t round = 0;
  DetectionReport detection;
  double accuracy = 0.0;
};

struct FederationConfig {
  std::size_t clients = 10;
  std::size_t rounds = 5;
  std::size_t local_epochs = 1;
  TrainConfig train;
};

struct FederationResult {
  ModelState state;
  std::vector<RoundRecord> history;
};

/// Each round: every client trains on its shard from the global state, then
/// fedavg in client order. Client streams are forked from rng in order.
FederationResult run_federation(const ModelState& initial, const BlobTask& task,
                                const WatermarkTarget& target, const FederationConfig& config,
                                Rng& rng);

}  // namespace fedzkp
