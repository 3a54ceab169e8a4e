#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cutbench/errors.hpp"
#include "cutbench/graph.hpp"
#include "cutbench/lanczos.hpp"
#include "cutbench/mpo.hpp"
#include "cutbench/mps.hpp"
#include "cutbench/rng.hpp"

namespace cutbench {

struct DmrgConfig {
  int chi = 2;                      // max MPS bond dimension
  int max_sweeps = 20;              // one sweep = left-to-right plus right-to-left
  double energy_tolerance = 1e-8;   // stop when a sweep improves the energy by less
  int lanczos_iters = 40;           // Krylov budget per local eigenproblem
  std::uint64_t seed = 0;
};

struct DmrgResult {
  double energy = 0.0;              // best variational energy reached (== -cut at optimum)
  CutAssignment assignment;         // bits for all n nodes, cut recomputed exactly
  int sweeps_used = 0;
  std::vector<double> energy_history;  // best energy after each sweep (non-increasing)
};

namespace detail {

/// Per-channel left environment step: out[c] = sum_{entries, q} coeff * A_q^T env[r] A_q.
inline std::vector<Eigen::MatrixXd> mpo_env_left(const std::vector<Eigen::MatrixXd>& env,
                                                 const MpoSite& w, const MpsSite& a) {
  const Eigen::Index rdim = a[0].cols();
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(w.b_right),
                                   Eigen::MatrixXd::Zero(rdim, rdim));
  for (const auto& e : w.entries)
    for (int q = 0; q < 2; ++q) {
      const double coeff = e.c_i + e.c_z * (q == 0 ? 1.0 : -1.0);
      if (coeff == 0.0) continue;
      out[static_cast<std::size_t>(e.col)].noalias() +=
          coeff * (a[static_cast<std::size_t>(q)].transpose() *
                   env[static_cast<std::size_t>(e.row)] * a[static_cast<std::size_t>(q)]);
    }
  return out;
}

/// Per-channel right environment step: out[r] = sum_{entries, q} coeff * A_q env[c] A_q^T.
inline std::vector<Eigen::MatrixXd> mpo_env_right(const std::vector<Eigen::MatrixXd>& env,
                                                  const MpoSite& w, const MpsSite& a) {
  const Eigen::Index ldim = a[0].rows();
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(w.b_left),
                                   Eigen::MatrixXd::Zero(ldim, ldim));
  for (const auto& e : w.entries)
    for (int q = 0; q < 2; ++q) {
      const double coeff = e.c_i + e.c_z * (q == 0 ? 1.0 : -1.0);
      if (coeff == 0.0) continue;
      out[static_cast<std::size_t>(e.row)].noalias() +=
          coeff * (a[static_cast<std::size_t>(q)] * env[static_cast<std::size_t>(e.col)] *
                   a[static_cast<std::size_t>(q)].transpose());
    }
  return out;
}

/// Effective two-site operator sandwiched between cached environments.
/// State vector layout: block (q1, q2) holds a chi_l x chi_r matrix stored
/// column-major at offset (2*q1 + q2) * chi_l * chi_r. The matvec is staged
/// through the middle MPO bond so its cost is linear, not quadratic, in the
/// number of MPO channels.
class TwoSiteOperator {
 public:
  TwoSiteOperator(const MpoSite& w1, const MpoSite& w2, const std::vector<Eigen::MatrixXd>& lenv,
                  const std::vector<Eigen::MatrixXd>& renv, Eigen::Index chi_l,
                  Eigen::Index chi_r)
      : w1_(w1), w2_(w2), lenv_(lenv), renv_(renv), chi_l_(chi_l), chi_r_(chi_r) {
    mid_.resize(static_cast<std::size_t>(w1.b_right));
    touched_.assign(static_cast<std::size_t>(w1.b_right), false);
  }

  Eigen::Index dim() const { return 4 * chi_l_ * chi_r_; }

  Eigen::VectorXd operator()(const Eigen::VectorXd& v) const {
    const Eigen::Index block = chi_l_ * chi_r_;
    std::fill(touched_.begin(), touched_.end(), false);
    for (int q1 = 0; q1 < 2; ++q1)
      for (int q2 = 0; q2 < 2; ++q2) {
        const Eigen::Map<const Eigen::MatrixXd> theta(v.data() + (2 * q1 + q2) * block, chi_l_,
                                                      chi_r_);
        for (const auto& e : w1_.entries) {
          const double coeff = e.c_i + e.c_z * (q1 == 0 ? 1.0 : -1.0);
          if (coeff == 0.0) continue;
          auto& slot = mid_[static_cast<std::size_t>(e.col)];
          auto& mat = slot[static_cast<std::size_t>(2 * q1 + q2)];
          if (!touched_[static_cast<std::size_t>(e.col)]) {
            for (auto& s : slot) s.setZero(chi_l_, chi_r_);
            touched_[static_cast<std::size_t>(e.col)] = true;
          }
          mat.noalias() += coeff * (lenv_[static_cast<std::size_t>(e.row)] * theta);
        }
      }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    for (int q1 = 0; q1 < 2; ++q1)
      for (int q2 = 0; q2 < 2; ++q2) {
        Eigen::Map<Eigen::MatrixXd> res(out.data() + (2 * q1 + q2) * block, chi_l_, chi_r_);
        for (const auto& e : w2_.entries) {
          if (!touched_[static_cast<std::size_t>(e.row)]) continue;
          const double coeff = e.c_i + e.c_z * (q2 == 0 ? 1.0 : -1.0);
          if (coeff == 0.0) continue;
          res.noalias() += coeff * (mid_[static_cast<std::size_t>(e.row)]
                                        [static_cast<std::size_t>(2 * q1 + q2)] *
                                    renv_[static_cast<std::size_t>(e.col)].transpose());
        }
      }
    return out;
  }

 private:
  const MpoSite& w1_;
  const MpoSite& w2_;
  const std::vector<Eigen::MatrixXd>& lenv_;
  const std::vector<Eigen::MatrixXd>& renv_;
  Eigen::Index chi_l_, chi_r_;
  mutable std::vector<std::array<Eigen::MatrixXd, 4>> mid_;
  mutable std::vector<bool> touched_;
};

}  // namespace detail

/// Rayleigh quotient <psi|H|psi> / <psi|psi> by a single left-to-right pass
/// of per-channel environments.
inline double expectation(const Mps& psi, const Mpo& op) {
  if (psi.length() != op.length())
    throw std::invalid_argument("expectation: MPS and MPO lengths differ");
  std::vector<Eigen::MatrixXd> env{Eigen::MatrixXd::Ones(1, 1)};
  Eigen::MatrixXd nrm = Eigen::MatrixXd::Ones(1, 1);
  for (int k = 0; k < psi.length(); ++k) {
    const auto& a = psi.sites[static_cast<std::size_t>(k)];
    env = detail::mpo_env_left(env, op.sites[static_cast<std::size_t>(k)], a);
    Eigen::MatrixXd next = a[0].transpose() * nrm * a[0];
    next.noalias() += a[1].transpose() * nrm * a[1];
    nrm = std::move(next);
  }
  const double norm_sq = nrm(0, 0);
  if (!std::isfinite(norm_sq) || norm_sq <= 0.0)
    throw std::invalid_argument("expectation: zero-norm state");
  return env.back()(0, 0) / norm_sq;  // final bond holds the single done channel
}

/// Two-site DMRG ground-state search for -Cut on the reduced m = n-1 sites,
/// followed by bit extraction from single-site <Z> signs. The last node's bit
/// is pinned to 0 (the symmetry gauge) and the cut is recomputed exactly.
inline DmrgResult dmrg_solve(const WeightedGraph& g, const DmrgConfig& cfg) {
  if (cfg.chi < 1) throw std::invalid_argument("dmrg_solve: chi must be >= 1");
  if (cfg.max_sweeps < 1) throw std::invalid_argument("dmrg_solve: max_sweeps must be >= 1");
  if (!(cfg.energy_tolerance > 0.0))
    throw std::invalid_argument("dmrg_solve: energy_tolerance must be positive");
  if (cfg.lanczos_iters < 1)
    throw std::invalid_argument("dmrg_solve: lanczos_iters must be >= 1");

  const ReducedIsing red = reduce_by_symmetry(g);
  const int m = red.m;
  const int n = g.n();
  DmrgResult result;

  if (m == 1) {
    // One free spin: minimize constant + h*z over z = +-1 directly.
    const double up = red.constant + red.h[0];    // z = +1, bit 0
    const double down = red.constant - red.h[0];  // z = -1, bit 1
    std::vector<std::uint8_t> bits(2, 0);
    bits[0] = up <= down ? 0 : 1;
    result.energy = std::min(up, down);
    result.energy_history.push_back(result.energy);
    result.sweeps_used = 0;
    result.assignment.bits = bits;
    result.assignment.cut_value = cut_value(g, bits);
    return result;
  }

  const Mpo op = build_mpo(red);
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);  // stream for Lanczos restarts only
  Mps psi = random_mps(m, cfg.chi, cfg.seed);
  canonicalize(psi, 0);
  normalize_at(psi, 0);

  // Per-bond, per-channel environments. lenv[t] covers sites < t, renv[t]
  // covers sites >= t; entries are (bra x ket) matrices at bond t.
  std::vector<std::vector<Eigen::MatrixXd>> lenv(static_cast<std::size_t>(m) + 1);
  std::vector<std::vector<Eigen::MatrixXd>> renv(static_cast<std::size_t>(m) + 1);
  lenv[0] = {Eigen::MatrixXd::Ones(1, 1)};
  renv[static_cast<std::size_t>(m)] = {Eigen::MatrixXd::Ones(1, 1)};
  for (int t = m - 1; t >= 2; --t)
    renv[static_cast<std::size_t>(t)] =
        detail::mpo_env_right(renv[static_cast<std::size_t>(t) + 1],
                              op.sites[static_cast<std::size_t>(t)],
                              psi.sites[static_cast<std::size_t>(t)]);

  const double lanczos_tol = std::max(1e-14, cfg.energy_tolerance * 1e-2);

  // Optimize sites (k, k+1); move the center right or left afterwards.
  auto update_bond = [&](int k, bool to_right) {
    auto& left_site = psi.sites[static_cast<std::size_t>(k)];
    auto& right_site = psi.sites[static_cast<std::size_t>(k) + 1];
    const Eigen::Index chi_l = left_site[0].rows();
    const Eigen::Index chi_r = right_site[0].cols();
    const Eigen::Index block = chi_l * chi_r;
    detail::TwoSiteOperator h_eff(op.sites[static_cast<std::size_t>(k)],
                                  op.sites[static_cast<std::size_t>(k) + 1],
                                  lenv[static_cast<std::size_t>(k)],
                                  renv[static_cast<std::size_t>(k) + 2], chi_l, chi_r);
    const Eigen::Index dim = h_eff.dim();

    // Warm start from the current two-site tensor, plus a tiny noise kick.
    // The effective operator is a rotated diagonal matrix, so a Krylov space
    // grown from a vector with exact zeros along some eigendirections can
    // never reach them; the noise guarantees overlap with every direction.
    Eigen::VectorXd v0(dim);
    for (int q1 = 0; q1 < 2; ++q1)
      for (int q2 = 0; q2 < 2; ++q2)
        Eigen::Map<Eigen::MatrixXd>(v0.data() + (2 * q1 + q2) * block, chi_l, chi_r).noalias() =
            left_site[static_cast<std::size_t>(q1)] * right_site[static_cast<std::size_t>(q2)];
    for (Eigen::Index i = 0; i < dim; ++i) v0[i] += 1e-8 * rng.normal();

    Eigen::VectorXd ground;
    if (dim <= 100) {
      Eigen::MatrixXd dense(dim, dim);
      Eigen::VectorXd unit = Eigen::VectorXd::Zero(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        unit[i] = 1.0;
        dense.col(i) = h_eff(unit);
        unit[i] = 0.0;
      }
      dense = 0.5 * (dense + dense.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
      ground = es.eigenvectors().col(0);
    } else {
      const LanczosResult lr =
          lanczos_lowest(h_eff, v0, std::min<int>(cfg.lanczos_iters, static_cast<int>(dim)),
                         lanczos_tol, rng);
      ground = lr.eigenvector;
    }
    if (!ground.allFinite()) throw SolverFailure("dmrg_solve: non-finite local ground state");

    // SVD split of the q-major (2 chi_l) x (2 chi_r) matrix.
    Eigen::MatrixXd theta(2 * chi_l, 2 * chi_r);
    for (int q1 = 0; q1 < 2; ++q1)
      for (int q2 = 0; q2 < 2; ++q2)
        theta.block(q1 * chi_l, q2 * chi_r, chi_l, chi_r) =
            Eigen::Map<const Eigen::MatrixXd>(ground.data() + (2 * q1 + q2) * block, chi_l,
                                              chi_r);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    // Truncate to chi but never below: discarding numerically tiny singular
    // values would shrink the left/right subspaces and can freeze the sweep
    // into a suboptimal basis state once the state nears a product state.
    const Eigen::Index rank = std::min<Eigen::Index>(cfg.chi, sv.size());
    Eigen::VectorXd kept = sv.head(rank);
    const double kept_norm = kept.norm();
    if (!(kept_norm > 0.0)) throw SolverFailure("dmrg_solve: vanishing singular values");
    kept /= kept_norm;

    const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
    const Eigen::MatrixXd vt = svd.matrixV().leftCols(rank).transpose();
    if (to_right) {
      const Eigen::MatrixXd carry = kept.asDiagonal() * vt;
      for (int q = 0; q < 2; ++q) {
        left_site[static_cast<std::size_t>(q)] = u.middleRows(q * chi_l, chi_l);
        right_site[static_cast<std::size_t>(q)] = carry.middleCols(q * chi_r, chi_r);
      }
      lenv[static_cast<std::size_t>(k) + 1] =
          detail::mpo_env_left(lenv[static_cast<std::size_t>(k)],
                               op.sites[static_cast<std::size_t>(k)], left_site);
    } else {
      const Eigen::MatrixXd carry = u * kept.asDiagonal();
      for (int q = 0; q < 2; ++q) {
        left_site[static_cast<std::size_t>(q)] = carry.middleRows(q * chi_l, chi_l);
        right_site[static_cast<std::size_t>(q)] = vt.middleCols(q * chi_r, chi_r);
      }
      renv[static_cast<std::size_t>(k) + 1] =
          detail::mpo_env_right(renv[static_cast<std::size_t>(k) + 2],
                                op.sites[static_cast<std::size_t>(k) + 1], right_site);
    }
  };

  double best = std::numeric_limits<double>::infinity();
  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    for (int k = 0; k + 1 < m; ++k) update_bond(k, true);
    for (int k = m - 2; k >= 0; --k) update_bond(k, false);
    const double e = expectation(psi, op);
    if (!std::isfinite(e)) throw SolverFailure("dmrg_solve: non-finite sweep energy");
    best = std::min(best, e);
    result.energy_history.push_back(best);
    result.sweeps_used = sweep;
    const std::size_t s = result.energy_history.size();
    if (s >= 2 && result.energy_history[s - 2] - result.energy_history[s - 1] <
                      cfg.energy_tolerance)
      break;
  }
  result.energy = best;

  // Single-site <Z_i> via plain transfer matrices, then sign rounding
  // (<Z> >= 0 -> partition 0). Node n-1 is pinned to partition 0.
  std::vector<Eigen::MatrixXd> lt(static_cast<std::size_t>(m) + 1);
  std::vector<Eigen::MatrixXd> rt(static_cast<std::size_t>(m) + 1);
  lt[0] = Eigen::MatrixXd::Ones(1, 1);
  rt[static_cast<std::size_t>(m)] = Eigen::MatrixXd::Ones(1, 1);
  for (int t = 0; t < m; ++t) {
    const auto& a = psi.sites[static_cast<std::size_t>(t)];
    lt[static_cast<std::size_t>(t) + 1] = a[0].transpose() * lt[static_cast<std::size_t>(t)] * a[0];
    lt[static_cast<std::size_t>(t) + 1].noalias() +=
        a[1].transpose() * lt[static_cast<std::size_t>(t)] * a[1];
  }
  for (int t = m - 1; t >= 0; --t) {
    const auto& a = psi.sites[static_cast<std::size_t>(t)];
    rt[static_cast<std::size_t>(t)] = a[0] * rt[static_cast<std::size_t>(t) + 1] * a[0].transpose();
    rt[static_cast<std::size_t>(t)].noalias() +=
        a[1] * rt[static_cast<std::size_t>(t) + 1] * a[1].transpose();
  }
  const double norm_sq = lt[static_cast<std::size_t>(m)](0, 0);
  if (!std::isfinite(norm_sq) || norm_sq <= 0.0)
    throw SolverFailure("dmrg_solve: degenerate final state norm");

  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < m; ++i) {
    const auto& a = psi.sites[static_cast<std::size_t>(i)];
    double z = (a[0].transpose() * lt[static_cast<std::size_t>(i)] * a[0] *
                rt[static_cast<std::size_t>(i) + 1])
                   .trace();
    z -= (a[1].transpose() * lt[static_cast<std::size_t>(i)] * a[1] *
          rt[static_cast<std::size_t>(i) + 1])
             .trace();
    bits[static_cast<std::size_t>(i)] = z / norm_sq >= 0.0 ? 0 : 1;
  }
  result.assignment.bits = bits;
  result.assignment.cut_value = cut_value(g, bits);
  return result;
}

}  // namespace cutbench
