#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cutbench/graph.hpp"

namespace cutbench {

/// Spin form of -Cut on m = n-1 sites after pinning node n-1 to partition 0
/// (its spin fixed to +1, allowed by the global flip symmetry):
///   H = constant + sum_i h(i) Z_i + sum_{i<j} j(i,j) Z_i Z_j
/// with constant = -W/2 (W the total weight), h(i) = w_{i,n-1}/2, and
/// j(i,j) = w_{ij}/2. Its minimum eigenvalue is -maxcut(g).
struct ReducedIsing {
  int m = 0;
  double constant = 0.0;
  Eigen::VectorXd h;   // length m
  Eigen::MatrixXd j;   // m x m, symmetric, zero diagonal
};

inline ReducedIsing reduce_by_symmetry(const WeightedGraph& g) {
  const int n = g.n();
  if (n < 2) throw std::invalid_argument("reduce_by_symmetry: need at least 2 nodes");
  ReducedIsing red;
  red.m = n - 1;
  red.constant = -g.total_weight() / 2.0;
  red.h = Eigen::VectorXd::Zero(red.m);
  red.j = Eigen::MatrixXd::Zero(red.m, red.m);
  for (const auto& e : g.edges()) {
    if (e.v == n - 1) {
      red.h[e.u] += e.w / 2.0;
    } else {
      red.j(e.u, e.v) += e.w / 2.0;
      red.j(e.v, e.u) += e.w / 2.0;
    }
  }
  return red;
}

/// One MPO site of a physically diagonal operator (identity/Z content only).
/// Each entry is one automaton transition: channel `row` at the left bond
/// feeds channel `col` at the right bond with the 2x2 physical matrix
/// c_i * I + c_z * Z. The rank-4 tensor (b_left, 2, 2, b_right) is
/// materialized on demand by dense().
struct MpoSite {
  struct Entry {
    int row = 0;
    int col = 0;
    double c_i = 0.0;
    double c_z = 0.0;
  };
  int b_left = 1;
  int b_right = 1;
  std::vector<Entry> entries;

  /// Physical block (q_row, q_col) as a (b_left x b_right) matrix.
  Eigen::MatrixXd dense(int q_row, int q_col) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(b_left, b_right);
    if (q_row != q_col) return out;  // I and Z are diagonal
    const double z = q_row == 0 ? 1.0 : -1.0;
    for (const auto& e : entries) out(e.row, e.col) += e.c_i + e.c_z * z;
    return out;
  }
};

struct Mpo {
  std::vector<MpoSite> sites;
  int length() const { return static_cast<int>(sites.size()); }
};

inline std::vector<int> mpo_bond_dims(const Mpo& op) {
  std::vector<int> dims;
  dims.reserve(op.sites.size() + 1);
  dims.push_back(1);
  for (const auto& s : op.sites) dims.push_back(s.b_right);
  return dims;
}

/// Finite-automaton MPO construction. Channels at each bond: a prefix channel
/// P (nothing emitted yet), a done channel D (a full term emitted), and one
/// open channel per earlier site that still awaits a ZZ partner. Site k
/// routes P->P and D->D with I, P->open_k with Z, open_j->D with j(j,k)*Z,
/// and P->D with h(k)*Z plus an even share constant/m of the constant. Open
/// channels are pruned the moment their last partner is passed, so the bond
/// dimension never exceeds m + 1. The result is exact, not an approximation.
inline Mpo build_mpo(const ReducedIsing& red) {
  const int m = red.m;
  if (m < 1) throw std::invalid_argument("build_mpo: need at least one site");

  // last_partner[i]: largest k > i with j(i,k) != 0, or -1 when none.
  std::vector<int> last_partner(static_cast<std::size_t>(m), -1);
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k)
      if (red.j(i, k) != 0.0) last_partner[static_cast<std::size_t>(i)] = k;

  // Channel layout at bond t (0..m): P and D where present, then the open
  // channels in increasing site order. open(i) lives at bonds i+1 .. last_partner(i).
  struct Layout {
    int p = -1, d = -1;
    std::vector<int> open_site;   // open channel -> site index
    std::vector<int> open_index;  // site index -> channel, -1 if absent
    int dim = 0;
  };
  std::vector<Layout> bonds(static_cast<std::size_t>(m) + 1);
  for (int t = 0; t <= m; ++t) {
    auto& b = bonds[static_cast<std::size_t>(t)];
    b.open_index.assign(static_cast<std::size_t>(m), -1);
    int next = 0;
    if (t < m) b.p = next++;
    if (t > 0) b.d = next++;
    for (int i = 0; i < t; ++i)
      if (last_partner[static_cast<std::size_t>(i)] >= t) {
        b.open_index[static_cast<std::size_t>(i)] = next;
        b.open_site.push_back(i);
        ++next;
      }
    b.dim = next;
  }

  Mpo op;
  op.sites.resize(static_cast<std::size_t>(m));
  const double constant_share = red.constant / m;
  for (int k = 0; k < m; ++k) {
    const auto& left = bonds[static_cast<std::size_t>(k)];
    const auto& right = bonds[static_cast<std::size_t>(k) + 1];
    auto& site = op.sites[static_cast<std::size_t>(k)];
    site.b_left = left.dim;
    site.b_right = right.dim;
    if (right.p >= 0) site.entries.push_back({left.p, right.p, 1.0, 0.0});   // P -> P
    if (left.d >= 0) site.entries.push_back({left.d, right.d, 1.0, 0.0});    // D -> D
    // P -> D: this site's single-Z term plus the constant share.
    site.entries.push_back({left.p, right.d, constant_share, red.h[k]});
    // Open a channel for this site's forthcoming ZZ partners.
    if (right.open_index[static_cast<std::size_t>(k)] >= 0)
      site.entries.push_back({left.p, right.open_index[static_cast<std::size_t>(k)], 0.0, 1.0});
    // Earlier open channels: close with this site or pass through.
    for (int i : left.open_site) {
      const int from = left.open_index[static_cast<std::size_t>(i)];
      if (red.j(i, k) != 0.0)
        site.entries.push_back({from, right.d, 0.0, red.j(i, k)});  // close pair (i, k)
      if (right.open_index[static_cast<std::size_t>(i)] >= 0)
        site.entries.push_back(
            {from, right.open_index[static_cast<std::size_t>(i)], 1.0, 0.0});  // persist
    }
  }
  return op;
}

/// Diagonal of the operator in the computational basis (big-endian site
/// order), valid because every site is physically diagonal. m <= 24.
inline Eigen::VectorXd mpo_diagonal(const Mpo& op) {
  const int m = op.length();
  if (m > 24) throw std::length_error("mpo_diagonal: more than 24 sites");
  const std::size_t dim = std::size_t{1} << m;
  Eigen::VectorXd out(static_cast<Eigen::Index>(dim));
  std::vector<double> vec, next;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    vec.assign(1, 1.0);  // bond-0 channel (prefix)
    for (int k = 0; k < m; ++k) {
      const auto& site = op.sites[static_cast<std::size_t>(k)];
      const double z = ((idx >> (m - 1 - k)) & 1u) == 0 ? 1.0 : -1.0;
      next.assign(static_cast<std::size_t>(site.b_right), 0.0);
      for (const auto& e : site.entries)
        next[static_cast<std::size_t>(e.col)] +=
            (e.c_i + e.c_z * z) * vec[static_cast<std::size_t>(e.row)];
      vec.swap(next);
    }
    out[static_cast<Eigen::Index>(idx)] = vec[0];
  }
  return out;
}

}  // namespace cutbench
