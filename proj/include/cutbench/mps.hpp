#pragma once

#include <Eigen/Core>
#include <Eigen/QR>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cutbench/rng.hpp"

namespace cutbench {

/// One MPS site: per physical value q in {0,1}, a (chi_left x chi_right)
/// matrix. Site k of an m-site chain represents the rank-3 tensor
/// A^{q}(l, r); boundary bonds have dimension 1.
using MpsSite = std::array<Eigen::MatrixXd, 2>;

struct Mps {
  std::vector<MpsSite> sites;
  int length() const { return static_cast<int>(sites.size()); }
};

/// Bond dimensions, length m+1 (bond k sits left of site k).
inline std::vector<int> bond_dims(const Mps& psi) {
  std::vector<int> dims;
  dims.reserve(psi.sites.size() + 1);
  dims.push_back(1);
  for (const auto& s : psi.sites) dims.push_back(static_cast<int>(s[0].cols()));
  return dims;
}

/// Maximal useful bond profile: bond k carries min(2^k, 2^(m-k), chi).
inline std::vector<int> mps_bond_profile(int m, int chi) {
  if (m < 1) throw std::invalid_argument("mps_bond_profile: need m >= 1");
  if (chi < 1) throw std::invalid_argument("mps_bond_profile: need chi >= 1");
  std::vector<int> dims(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    const int left = k < 31 ? (1 << k) : chi;
    const int right = (m - k) < 31 ? (1 << (m - k)) : chi;
    dims[static_cast<std::size_t>(k)] = std::min({left, right, chi});
  }
  return dims;
}

/// Squared norm <psi|psi> computed by a transfer contraction with per-site
/// rescaling, so very long random chains neither overflow nor underflow.
/// Returns log(<psi|psi>).
inline double log_norm_squared(const Mps& psi) {
  Eigen::MatrixXd env = Eigen::MatrixXd::Ones(1, 1);
  double log_scale = 0.0;
  for (const auto& s : psi.sites) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(s[0].cols(), s[0].cols());
    for (const auto& mq : s) next.noalias() += mq.transpose() * env * mq;
    const double scale = next.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) return -std::numeric_limits<double>::infinity();
    next /= scale;
    log_scale += std::log(scale);
    env = std::move(next);
  }
  return log_scale + std::log(env(0, 0));
}

inline double norm(const Mps& psi) { return std::exp(0.5 * log_norm_squared(psi)); }

/// Random MPS: entries i.i.d. uniform [0,1) in a fixed draw order (site by
/// site, physical value 0 then 1, row-major), bond profile
/// min(2^k, 2^(m-k), chi), then rescaled to unit norm (a single uniform
/// factor per site, so relative entries are preserved).
inline Mps random_mps(int m, int chi, std::uint64_t seed) {
  const auto dims = mps_bond_profile(m, chi);
  Rng rng(seed);
  Mps psi;
  psi.sites.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    auto& site = psi.sites[static_cast<std::size_t>(k)];
    const int l = dims[static_cast<std::size_t>(k)];
    const int r = dims[static_cast<std::size_t>(k) + 1];
    for (auto& mq : site) mq.resize(l, r);
    for (auto& mq : site)
      for (int i = 0; i < l; ++i)
        for (int j = 0; j < r; ++j) mq(i, j) = rng.uniform01();
  }
  const double site_scale = std::exp(-0.5 * log_norm_squared(psi) / m);
  for (auto& site : psi.sites)
    for (auto& mq : site) mq *= site_scale;
  return psi;
}

namespace detail {

// Thin QR: A (rows x cols) = Q R with Q (rows x r), R (r x cols), r = min.
inline void thin_qr(const Eigen::MatrixXd& a, Eigen::MatrixXd& q, Eigen::MatrixXd& r) {
  const auto rank = std::min(a.rows(), a.cols());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  q = qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), rank);
  r = qr.matrixQR().topRows(rank).triangularView<Eigen::Upper>();
}

}  // namespace detail

/// Puts the state into mixed-canonical form around `center`: sites left of it
/// become left-isometric (sum_q M_q^T M_q = I), sites right of it
/// right-isometric (sum_q M_q M_q^T = I). The state is unchanged up to the
/// usual gauge freedom; its full weight ends up in the center tensor.
inline void canonicalize(Mps& psi, int center) {
  const int m = psi.length();
  if (center < 0 || center >= m) throw std::invalid_argument("canonicalize: center out of range");
  // Left-to-right QR up to the center.
  for (int k = 0; k < center; ++k) {
    auto& site = psi.sites[static_cast<std::size_t>(k)];
    const auto l = site[0].rows();
    const auto r = site[0].cols();
    Eigen::MatrixXd stacked(2 * l, r);  // rows grouped q-major: row = q*l + i
    stacked.topRows(l) = site[0];
    stacked.bottomRows(l) = site[1];
    Eigen::MatrixXd q, rr;
    detail::thin_qr(stacked, q, rr);
    const auto new_r = q.cols();
    site[0] = q.topRows(l);
    site[1] = q.bottomRows(l);
    auto& next = psi.sites[static_cast<std::size_t>(k) + 1];
    next[0] = rr * next[0];
    next[1] = rr * next[1];
    (void)new_r;
  }
  // Right-to-left LQ down to the center.
  for (int k = m - 1; k > center; --k) {
    auto& site = psi.sites[static_cast<std::size_t>(k)];
    const auto l = site[0].rows();
    const auto r = site[0].cols();
    Eigen::MatrixXd stacked(l, 2 * r);  // cols grouped q-major: col = q*r + j
    stacked.leftCols(r) = site[0];
    stacked.rightCols(r) = site[1];
    // LQ via QR of the transpose: stacked = (Q R)^T = R^T Q^T.
    Eigen::MatrixXd q, rr;
    detail::thin_qr(stacked.transpose(), q, rr);
    site[0] = q.transpose().leftCols(r);
    site[1] = q.transpose().rightCols(r);
    auto& prev = psi.sites[static_cast<std::size_t>(k) - 1];
    prev[0] = prev[0] * rr.transpose();
    prev[1] = prev[1] * rr.transpose();
  }
}

/// Scales the center (or any single) site so the norm becomes exactly 1.
/// Intended for states already in canonical form around `center`.
inline void normalize_at(Mps& psi, int center) {
  auto& site = psi.sites[static_cast<std::size_t>(center)];
  const double f = std::sqrt(site[0].squaredNorm() + site[1].squaredNorm());
  if (!(f > 0.0)) throw std::runtime_error("normalize_at: zero-norm center tensor");
  site[0] /= f;
  site[1] /= f;
}

/// Dense amplitude vector, big-endian physical index (site 0 is the most
/// significant bit). Guarded to m <= 20.
inline Eigen::VectorXd mps_to_dense(const Mps& psi) {
  const int m = psi.length();
  if (m > 20) throw std::length_error("mps_to_dense: more than 20 sites");
  const std::size_t dim = std::size_t{1} << m;
  Eigen::VectorXd out(static_cast<Eigen::Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Ones(1, 1);
    for (int k = 0; k < m; ++k) {
      const std::size_t q = (idx >> (m - 1 - k)) & 1u;
      acc = acc * psi.sites[static_cast<std::size_t>(k)][q];
    }
    out[static_cast<Eigen::Index>(idx)] = acc(0, 0);
  }
  return out;
}

}  // namespace cutbench
