#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cutbench/errors.hpp"
#include "cutbench/graph.hpp"
#include "cutbench/qubo.hpp"
#include "cutbench/rng.hpp"

namespace cutbench {

struct GnnConfig {
  int embed_dim = 369;   // d0
  int hidden_dim = 5;    // d1; the output layer is fixed at size 1
  double learning_rate = 0.00467;
  int max_epochs = 10000;
  double early_stop_tolerance = 1e-5;
  int early_stop_patience = 500;
  bool weighted_adjacency = true;
  std::uint64_t seed = 0;
};

struct GnnModel {
  Eigen::MatrixXd embeddings;  // n x d0, trainable input features
  Eigen::MatrixXd w1;          // d0 x d1
  Eigen::MatrixXd w2;          // d1 x 1
};

struct GnnGradients {
  Eigen::MatrixXd d_embeddings;
  Eigen::MatrixXd d_w1;
  Eigen::MatrixXd d_w2;
};

struct GnnRunResult {
  CutAssignment best;
  std::vector<double> loss_history;  // relaxed objective per epoch
  int epochs_executed = 0;
};

/// Symmetrically normalized adjacency with self-loops:
/// A_hat = D~^{-1/2} (A + I) D~^{-1/2}, where A holds the edge weights (or 1s
/// when weighted is false) and D~ is the row-sum degree matrix of A + I.
inline Eigen::MatrixXd normalized_adjacency(const WeightedGraph& g, bool weighted = true) {
  const int n = g.n();
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (const auto& e : g.edges()) {
    const double w = weighted ? e.w : 1.0;
    a(e.u, e.v) += w;
    a(e.v, e.u) += w;
  }
  const Eigen::VectorXd inv_sqrt_deg = a.rowwise().sum().cwiseSqrt().cwiseInverse();
  return inv_sqrt_deg.asDiagonal() * a * inv_sqrt_deg.asDiagonal();
}

/// Deterministic initialization: embeddings ~ N(0, 0.01), enough noise to
/// break the p = 1/2 symmetry of the relaxed objective (whose gradient
/// vanishes at uniform p because every row of Q sums to zero); W1 and W2 by
/// Glorot-uniform limits sqrt(6 / (fan_in + fan_out)). Draw order is fixed
/// (embeddings row-major, then W1, then W2) so a seed fixes the model.
inline GnnModel gnn_init(int n, const GnnConfig& cfg, Rng& rng) {
  if (n < 1) throw std::invalid_argument("gnn_init: need at least one node");
  if (cfg.embed_dim < 1 || cfg.hidden_dim < 1)
    throw std::invalid_argument("gnn_init: layer dimensions must be positive");
  GnnModel m;
  m.embeddings.resize(n, cfg.embed_dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < cfg.embed_dim; ++j) m.embeddings(i, j) = rng.normal(0.0, 0.01);
  const double lim1 = std::sqrt(6.0 / (cfg.embed_dim + cfg.hidden_dim));
  m.w1.resize(cfg.embed_dim, cfg.hidden_dim);
  for (int i = 0; i < cfg.embed_dim; ++i)
    for (int j = 0; j < cfg.hidden_dim; ++j) m.w1(i, j) = rng.uniform(-lim1, lim1);
  const double lim2 = std::sqrt(6.0 / (cfg.hidden_dim + 1));
  m.w2.resize(cfg.hidden_dim, 1);
  for (int i = 0; i < cfg.hidden_dim; ++i) m.w2(i, 0) = rng.uniform(-lim2, lim2);
  return m;
}

/// p = sigmoid( A_hat * ReLU(A_hat * E * W1) * W2 ).
inline Eigen::VectorXd gnn_forward(const GnnModel& m, const Eigen::MatrixXd& a_hat) {
  const Eigen::MatrixXd z1 = a_hat * (m.embeddings * m.w1);
  const Eigen::MatrixXd h1 = z1.cwiseMax(0.0);
  const Eigen::VectorXd z2 = a_hat * (h1 * m.w2);
  return z2.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

/// Relaxed objective p^T Q p and its closed-form gradients with respect to
/// the embeddings, W1, and W2 (reverse-mode through both layers by hand).
inline double gnn_loss_and_gradients(const GnnModel& m, const Eigen::MatrixXd& a_hat,
                                     const QuboMatrix& qubo, GnnGradients& out) {
  const Eigen::MatrixXd z1 = a_hat * (m.embeddings * m.w1);  // n x d1
  const Eigen::MatrixXd h1 = z1.cwiseMax(0.0);
  const Eigen::VectorXd z2 = a_hat * (h1 * m.w2);  // n x 1
  const Eigen::VectorXd p = z2.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });

  const Eigen::VectorXd qp = qubo.q * p;
  const double loss = p.dot(qp);

  // dL/dz2 = (2 Q p) .* p .* (1 - p)
  const Eigen::VectorXd g_s =
      (2.0 * qp).cwiseProduct(p).cwiseProduct(Eigen::VectorXd::Ones(p.size()) - p);
  const Eigen::VectorXd a_gs = a_hat * g_s;  // A_hat symmetric
  out.d_w2 = h1.transpose() * a_gs;
  const Eigen::MatrixXd d_h1 = a_gs * m.w2.transpose();
  const Eigen::MatrixXd g_z =
      d_h1.cwiseProduct((z1.array() > 0.0).cast<double>().matrix());
  const Eigen::MatrixXd a_gz = a_hat * g_z;
  out.d_w1 = m.embeddings.transpose() * a_gz;
  out.d_embeddings = a_gz * m.w1.transpose();
  return loss;
}

/// Trains the relaxation with Adam and projects the best-loss probabilities
/// to bits (x_i = 1 iff p_i > 0.5; ties to 0). Early stopping: an epoch whose
/// loss improves the best seen by more than early_stop_tolerance resets the
/// patience counter; otherwise training stops after early_stop_patience
/// stagnant epochs. A non-finite loss aborts the run.
inline GnnRunResult gnn_train_and_project(const WeightedGraph& g, const GnnConfig& cfg) {
  if (cfg.learning_rate <= 0.0) throw std::invalid_argument("gnn: learning_rate must be > 0");
  if (cfg.max_epochs < 1) throw std::invalid_argument("gnn: max_epochs must be >= 1");
  if (cfg.early_stop_patience < 1) throw std::invalid_argument("gnn: patience must be >= 1");
  if (cfg.early_stop_tolerance < 0.0) throw std::invalid_argument("gnn: tolerance must be >= 0");

  const Eigen::MatrixXd a_hat = normalized_adjacency(g, cfg.weighted_adjacency);
  const QuboMatrix qubo = build_qubo(g);
  Rng rng(cfg.seed);
  GnnModel model = gnn_init(g.n(), cfg, rng);

  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  GnnGradients grad;
  Eigen::MatrixXd m_e = Eigen::MatrixXd::Zero(model.embeddings.rows(), model.embeddings.cols());
  Eigen::MatrixXd v_e = m_e;
  Eigen::MatrixXd m_w1 = Eigen::MatrixXd::Zero(model.w1.rows(), model.w1.cols());
  Eigen::MatrixXd v_w1 = m_w1;
  Eigen::MatrixXd m_w2 = Eigen::MatrixXd::Zero(model.w2.rows(), model.w2.cols());
  Eigen::MatrixXd v_w2 = m_w2;

  auto adam_step = [&](Eigen::MatrixXd& theta, const Eigen::MatrixXd& grad_theta,
                       Eigen::MatrixXd& m_buf, Eigen::MatrixXd& v_buf, double bc1, double bc2) {
    m_buf = beta1 * m_buf + (1.0 - beta1) * grad_theta;
    v_buf = beta2 * v_buf + (1.0 - beta2) * grad_theta.cwiseProduct(grad_theta);
    theta.array() -=
        cfg.learning_rate * (m_buf.array() / bc1) / ((v_buf.array() / bc2).sqrt() + eps);
  };

  GnnRunResult result;
  result.loss_history.reserve(static_cast<std::size_t>(std::min(cfg.max_epochs, 16384)));
  double best_loss = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_p = gnn_forward(model, a_hat);
  int stagnant = 0;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    const double loss = gnn_loss_and_gradients(model, a_hat, qubo, grad);
    if (!std::isfinite(loss)) throw SolverFailure("gnn: non-finite loss during training");
    result.loss_history.push_back(loss);
    ++result.epochs_executed;

    if (loss < best_loss - cfg.early_stop_tolerance) {
      stagnant = 0;
    } else {
      ++stagnant;
    }
    if (loss < best_loss) {
      best_loss = loss;
      best_p = gnn_forward(model, a_hat);
    }
    if (stagnant >= cfg.early_stop_patience) break;

    const double bc1 = 1.0 - std::pow(beta1, epoch);
    const double bc2 = 1.0 - std::pow(beta2, epoch);
    adam_step(model.embeddings, grad.d_embeddings, m_e, v_e, bc1, bc2);
    adam_step(model.w1, grad.d_w1, m_w1, v_w1, bc1, bc2);
    adam_step(model.w2, grad.d_w2, m_w2, v_w2, bc1, bc2);
  }

  result.best.bits.resize(static_cast<std::size_t>(g.n()));
  for (int i = 0; i < g.n(); ++i)
    result.best.bits[static_cast<std::size_t>(i)] = best_p[i] > 0.5 ? 1 : 0;
  result.best.cut_value = cut_value(g, result.best.bits);
  return result;
}

}  // namespace cutbench
