#pragma once

#include <Eigen/Core>

#include "cutbench/graph.hpp"

namespace cutbench {

/// Dense symmetric QUBO matrix satisfying x^T Q x == -cut_value(g, x) for
/// every binary x, so minimizing the quadratic form maximizes the cut.
struct QuboMatrix {
  int n = 0;
  Eigen::MatrixXd q;
};

inline QuboMatrix build_qubo(const WeightedGraph& g) {
  const int n = g.n();
  QuboMatrix out{n, Eigen::MatrixXd::Zero(n, n)};
  for (const auto& e : g.edges()) {
    out.q(e.u, e.v) += e.w;
    out.q(e.v, e.u) += e.w;
    out.q(e.u, e.u) -= e.w;
    out.q(e.v, e.v) -= e.w;
  }
  return out;
}

inline double qubo_energy(const QuboMatrix& q, std::span<const std::uint8_t> bits) {
  if (static_cast<int>(bits.size()) != q.n)
    throw std::invalid_argument("qubo_energy: assignment length does not match dimension");
  Eigen::VectorXd x(q.n);
  for (int i = 0; i < q.n; ++i) x[i] = bits[static_cast<std::size_t>(i)];
  return x.dot(q.q * x);
}

}  // namespace cutbench
