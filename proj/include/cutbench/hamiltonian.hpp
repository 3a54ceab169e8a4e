#pragma once

#include <Eigen/Core>

#include "cutbench/graph.hpp"

namespace cutbench {

/// Diagonal of the spin Hamiltonian in the computational basis: the entry for
/// basis state x is -cut_value(g, x). The operator contains only identity and
/// Pauli-Z content, so the diagonal determines it completely.
///
/// Basis convention: site 0 is the most significant bit of the state index,
/// i.e. bit(i) = (index >> (m - 1 - i)) & 1.
///
/// With fix_last set, node n-1 is pinned to partition 0 and the diagonal runs
/// over the remaining m = n - 1 sites.
inline Eigen::VectorXd build_dense_hamiltonian(const WeightedGraph& g, bool fix_last = false) {
  const int m = fix_last ? g.n() - 1 : g.n();
  if (m > 24) throw std::length_error("build_dense_hamiltonian: more than 24 sites");
  if (m < 0) throw std::invalid_argument("build_dense_hamiltonian: empty system");
  const std::size_t dim = std::size_t{1} << m;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(g.n()), 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    for (int i = 0; i < m; ++i)
      bits[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>((idx >> (m - 1 - i)) & 1u);
    if (fix_last) bits[static_cast<std::size_t>(g.n() - 1)] = 0;
    diag[static_cast<Eigen::Index>(idx)] = -cut_value(g, bits);
  }
  return diag;
}

}  // namespace cutbench
