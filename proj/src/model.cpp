#include "fedzkp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fedzkp/error.hpp"

namespace fedzkp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ConstView {
  Eigen::Map<const MatrixXd> w1;
  Eigen::Map<const VectorXd> b1;
  Eigen::Map<const MatrixXd> w2;
  Eigen::Map<const VectorXd> b2;
};

struct View {
  Eigen::Map<MatrixXd> w1;
  Eigen::Map<VectorXd> b1;
  Eigen::Map<MatrixXd> w2;
  Eigen::Map<VectorXd> b2;
};

template <typename V, typename Ptr>
V make_view(Ptr base, const ModelShape& s) {
  const auto h = static_cast<Eigen::Index>(s.hidden);
  const auto d = static_cast<Eigen::Index>(s.input_dim);
  const auto c = static_cast<Eigen::Index>(s.classes);
  Ptr p_w1 = base;
  Ptr p_b1 = p_w1 + h * d;
  Ptr p_w2 = p_b1 + h;
  Ptr p_b2 = p_w2 + c * h;
  return V{{p_w1, h, d}, {p_b1, h}, {p_w2, c, h}, {p_b2, c}};
}

ConstView view(const ModelState& s) { return make_view<ConstView>(s.theta.data(), s.shape); }
View view(ModelState& s) { return make_view<View>(s.theta.data(), s.shape); }

void check_state(const ModelState& s) {
  if (static_cast<std::size_t>(s.theta.size()) != s.shape.theta_size() ||
      static_cast<std::size_t>(s.gamma.size()) != s.shape.hidden) {
    throw DimensionError("ModelState: parameter sizes do not match shape");
  }
}

MatrixXd logits(const ModelState& s, const MatrixXd& x) {
  const ConstView v = view(s);
  MatrixXd z = v.w1 * x;
  z.colwise() += v.b1;
  MatrixXd g = z.cwiseMax(0.0).array().colwise() * s.gamma.array();
  MatrixXd out = v.w2 * g;
  out.colwise() += v.b2;
  return out;
}

// One SGD step on the batch; returns the cross-entropy part of the loss.
double sgd_step(ModelState& s, const MatrixXd& x, const std::vector<int>& y,
                const WatermarkTarget* target, const TrainConfig& cfg, double& hinge_out) {
  View v = view(s);
  const auto batch = x.cols();
  MatrixXd z = v.w1 * x;
  z.colwise() += v.b1;
  const MatrixXd act = z.cwiseMax(0.0);
  const MatrixXd g = act.array().colwise() * s.gamma.array();
  MatrixXd p = v.w2 * g;
  p.colwise() += v.b2;

  double ce = 0.0;
  for (Eigen::Index j = 0; j < batch; ++j) {
    auto col = p.col(j);
    const double mx = col.maxCoeff();
    col = (col.array() - mx).exp();
    const double sum = col.sum();
    col /= sum;
    const auto label = static_cast<Eigen::Index>(y[static_cast<std::size_t>(j)]);
    ce -= std::log(std::max(col(label), 1e-300));
    col(label) -= 1.0;
  }
  ce /= static_cast<double>(batch);
  p /= static_cast<double>(batch);  // now dLoss/dlogits

  const MatrixXd d_w2 = p * g.transpose();
  const VectorXd d_b2 = p.rowwise().sum();
  const MatrixXd d_g = v.w2.transpose() * p;
  VectorXd d_gamma = d_g.cwiseProduct(act).rowwise().sum();
  MatrixXd d_z = d_g.array().colwise() * s.gamma.array();
  d_z = (z.array() > 0.0).select(d_z, 0.0);
  const MatrixXd d_w1 = d_z * x.transpose();
  const VectorXd d_b1 = d_z.rowwise().sum();

  hinge_out = 0.0;
  if (target != nullptr && cfg.lambda != 0.0) {
    HingeResult hr = hinge_loss_and_grad(s.gamma, target->e, target->h, cfg.mu_hinge);
    hinge_out = hr.loss;
    d_gamma += cfg.lambda * hr.grad;
  }

  const double lr = cfg.learning_rate;
  v.w1 -= lr * d_w1;
  v.b1 -= lr * d_b1;
  v.w2 -= lr * d_w2;
  v.b2 -= lr * d_b2;
  s.gamma -= lr * d_gamma;
  return ce;
}

}  // namespace

ModelState init_model(const ModelShape& shape, Rng& rng, double readout_scale) {
  if (shape.input_dim == 0 || shape.hidden == 0 || shape.classes < 2) {
    throw ParameterError("init_model: degenerate shape");
  }
  ModelState s{shape, VectorXd::Zero(static_cast<Eigen::Index>(shape.theta_size())),
               VectorXd(static_cast<Eigen::Index>(shape.hidden))};
  std::normal_distribution<double> normal(0.0, 1.0);
  View v = view(s);
  const double w1_scale = std::sqrt(2.0 / static_cast<double>(shape.input_dim));
  const double w2_scale = readout_scale / std::sqrt(static_cast<double>(shape.hidden));
  for (Eigen::Index i = 0; i < v.w1.size(); ++i) v.w1.data()[i] = w1_scale * normal(rng);
  for (Eigen::Index i = 0; i < v.w2.size(); ++i) v.w2.data()[i] = w2_scale * normal(rng);
  for (Eigen::Index i = 0; i < s.gamma.size(); ++i) s.gamma(i) = normal(rng);
  return s;
}

BlobTask make_blob_task(const BlobSpec& spec) {
  if (spec.classes < 2 || spec.input_dim == 0) throw ParameterError("make_blob_task: degenerate spec");
  Rng rng(spec.generator_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(spec.input_dim);
  MatrixXd centers(d, static_cast<Eigen::Index>(spec.classes));
  for (Eigen::Index i = 0; i < centers.size(); ++i) centers.data()[i] = spec.center_spread * normal(rng);

  auto draw = [&](std::size_t n) {
    Dataset ds{MatrixXd(d, static_cast<Eigen::Index>(n)), std::vector<int>(n)};
    for (std::size_t j = 0; j < n; ++j) {
      const int label = static_cast<int>(uniform_below(rng, spec.classes));
      ds.y[j] = label;
      for (Eigen::Index i = 0; i < d; ++i) {
        ds.x(i, static_cast<Eigen::Index>(j)) = centers(i, label) + normal(rng);
      }
    }
    return ds;
  };
  BlobTask task;
  task.train = draw(spec.train_samples);
  task.test = draw(spec.test_samples);
  return task;
}

std::vector<Dataset> shard(const Dataset& data, std::size_t k) {
  if (k == 0) throw ParameterError("shard: k must be positive");
  std::vector<Dataset> out(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t count = data.size() > c ? (data.size() - c + k - 1) / k : 0;
    out[c].x.resize(data.x.rows(), static_cast<Eigen::Index>(count));
    out[c].y.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t src = c + j * k;
      out[c].x.col(static_cast<Eigen::Index>(j)) = data.x.col(static_cast<Eigen::Index>(src));
      out[c].y[j] = data.y[src];
    }
  }
  return out;
}

double accuracy(const ModelState& state, const Dataset& data) {
  check_state(state);
  if (data.size() == 0) return 0.0;
  if (static_cast<std::size_t>(data.x.rows()) != state.shape.input_dim) {
    throw DimensionError("accuracy: feature dimension mismatch");
  }
  const MatrixXd out = logits(state, data.x);
  std::size_t correct = 0;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    Eigen::Index arg = 0;
    out.col(j).maxCoeff(&arg);
    if (arg == data.y[static_cast<std::size_t>(j)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

MatrixXd projection_matrix(std::size_t hidden, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd e(static_cast<Eigen::Index>(hidden), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < e.size(); ++i) e.data()[i] = normal(rng);
  return e;
}

BitVec extract_watermark(const VectorXd& w_gamma, const MatrixXd& e) {
  if (w_gamma.size() != e.rows()) throw DimensionError("extract_watermark: W_gamma.len != E.rows");
  const VectorXd proj = e.transpose() * w_gamma;
  BitVec bits(static_cast<std::size_t>(proj.size()));
  for (Eigen::Index i = 0; i < proj.size(); ++i) {
    if (proj(i) > 0.0) bits.set(static_cast<std::size_t>(i), true);
  }
  return bits;
}

HingeResult hinge_loss_and_grad(const VectorXd& w_gamma, const MatrixXd& e, const BitVec& h,
                                double mu_hinge) {
  if (w_gamma.size() != e.rows() || static_cast<std::size_t>(e.cols()) != h.size()) {
    throw DimensionError("hinge_loss_and_grad: shape mismatch");
  }
  const VectorXd proj = e.transpose() * w_gamma;
  VectorXd coef = VectorXd::Zero(proj.size());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < proj.size(); ++i) {
    const double t = h.get(static_cast<std::size_t>(i)) ? 1.0 : -1.0;
    const double slack = mu_hinge - t * proj(i);
    if (slack > 0.0) {
      loss += slack;
      coef(i) = -t;
    }
  }
  return {loss, e * coef};
}

ModelState local_update(const ModelState& state, const Dataset& data, const WatermarkTarget* target,
                        const TrainConfig& config, std::size_t epochs, Rng& rng) {
  check_state(state);
  if (config.batch_size == 0 || !(config.learning_rate > 0.0)) {
    throw ParameterError("local_update: invalid config");
  }
  if (data.size() > 0 && static_cast<std::size_t>(data.x.rows()) != state.shape.input_dim) {
    throw DimensionError("local_update: feature dimension mismatch");
  }
  ModelState s = state;
  auto check = [](double loss) {
    if (!std::isfinite(loss)) throw DivergenceError("local_update: loss is not finite");
  };

  if (data.size() == 0) {
    if (target == nullptr || config.lambda == 0.0) return s;
    for (std::size_t ep = 0; ep < epochs; ++ep) {
      HingeResult hr = hinge_loss_and_grad(s.gamma, target->e, target->h, config.mu_hinge);
      check(hr.loss);
      s.gamma -= config.learning_rate * config.lambda * hr.grad;
    }
    return s;
  }

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto rows = data.x.rows();
  for (std::size_t ep = 0; ep < epochs; ++ep) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t b = std::min(config.batch_size, order.size() - start);
      MatrixXd x(rows, static_cast<Eigen::Index>(b));
      std::vector<int> y(b);
      for (std::size_t j = 0; j < b; ++j) {
        x.col(static_cast<Eigen::Index>(j)) = data.x.col(static_cast<Eigen::Index>(order[start + j]));
        y[j] = data.y[order[start + j]];
      }
      double hinge = 0.0;
      const double ce = sgd_step(s, x, y, target, config, hinge);
      check(ce + config.lambda * hinge);
    }
  }
  if (!s.theta.allFinite() || !s.gamma.allFinite()) {
    throw DivergenceError("local_update: parameters are not finite");
  }
  return s;
}

ModelState fedavg(const std::vector<ModelState>& states, const std::vector<double>& lambdas) {
  if (states.empty()) throw ParameterError("fedavg: no client states");
  const std::size_t k = states.size();
  std::vector<double> lam = lambdas.empty() ? std::vector<double>(k, 1.0) : lambdas;
  if (lam.size() != k) throw ParameterError("fedavg: one weight per client required");
  const double sum = std::accumulate(lam.begin(), lam.end(), 0.0);
  if (std::abs(sum - static_cast<double>(k)) > 1e-9 * static_cast<double>(k)) {
    throw ParameterError("fedavg: weights must sum to the number of clients");
  }
  for (const auto& s : states) {
    check_state(s);
    if (!(s.shape == states.front().shape)) throw DimensionError("fedavg: client shapes differ");
  }
  ModelState out{states.front().shape, VectorXd::Zero(states.front().theta.size()),
                 VectorXd::Zero(states.front().gamma.size())};
  for (std::size_t c = 0; c < k; ++c) {
    const double wgt = lam[c] / static_cast<double>(k);
    out.theta += wgt * states[c].theta;
    out.gamma += wgt * states[c].gamma;
  }
  return out;
}

DetectionReport detection_rate(const BitVec& target, const BitVec& extracted) {
  if (target.size() == 0) throw ParameterError("detection_rate: empty watermark");
  const std::size_t err = hamming_distance(target, extracted);
  return {err, 1.0 - static_cast<double>(err) / static_cast<double>(target.size())};
}

FederationResult run_federation(const ModelState& initial, const BlobTask& task,
                                const WatermarkTarget& target, const FederationConfig& config,
                                Rng& rng) {
  if (config.clients == 0) throw ParameterError("run_federation: need at least one client");
  const std::vector<Dataset> shards = shard(task.train, config.clients);
  FederationResult result{initial, {}};
  for (std::size_t round = 1; round <= config.rounds; ++round) {
    std::vector<Rng> streams;
    streams.reserve(config.clients);
    for (std::size_t c = 0; c < config.clients; ++c) streams.push_back(fork(rng));
    std::vector<ModelState> local;
    local.reserve(config.clients);
    for (std::size_t c = 0; c < config.clients; ++c) {
      local.push_back(local_update(result.state, shards[c], &target, config.train,
                                   config.local_epochs, streams[c]));
    }
    result.state = fedavg(local);
    result.history.push_back({round, detection_rate(target.h, extract_watermark(result.state.gamma, target.e)),
                              accuracy(result.state, task.test)});
  }
  return result;
}

}  // namespace fedzkp
