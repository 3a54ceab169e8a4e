#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cutbench/errors.hpp"
#include "cutbench/rng.hpp"

namespace cutbench {

struct LanczosResult {
  double eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;
  int iterations = 0;
  bool converged = false;
};

/// Lowest eigenpair of a symmetric operator given only as a matvec closure
/// `apply(x) -> A*x`. Full reorthogonalization keeps the Krylov basis usable
/// at the small iteration counts used here. Convergence is declared when the
/// residual bound |beta * s_last| drops below tol * max(1, |theta|) for the
/// lowest Ritz pair (theta, s). If the starting vector is degenerate the run
/// restarts from a random perturbation (at most 3 times).
template <typename Apply>
LanczosResult lanczos_lowest(const Apply& apply, const Eigen::VectorXd& v0, int max_iters,
                             double tol, Rng& rng) {
  const Eigen::Index dim = v0.size();
  if (dim < 1) throw std::invalid_argument("lanczos_lowest: empty starting vector");
  if (max_iters < 1) throw std::invalid_argument("lanczos_lowest: max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("lanczos_lowest: tol must be positive");

  Eigen::VectorXd start = v0;
  LanczosResult result;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    double start_norm = start.norm();
    if (!std::isfinite(start_norm) || start_norm <= 0.0) {
      for (Eigen::Index i = 0; i < dim; ++i) start[i] = rng.normal();
      start_norm = start.norm();
    }

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(static_cast<std::size_t>(max_iters));
    std::vector<double> alpha, beta;  // beta[i] links basis[i] and basis[i+1]
    basis.push_back(start / start_norm);

    bool exhausted_subspace = false;
    for (int it = 0; it < max_iters && it < dim; ++it) {
      Eigen::VectorXd w = apply(basis.back());
      if (!w.allFinite()) throw SolverFailure("lanczos_lowest: operator produced non-finite values");
      const double a = basis.back().dot(w);
      alpha.push_back(a);
      // Full reorthogonalization, twice for numerical safety.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) w -= q.dot(w) * q;
      const double b = w.norm();

      // Ritz values of the current tridiagonal matrix.
      const int k = static_cast<int>(alpha.size());
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
      for (int i = 0; i < k; ++i) {
        tri(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < k) {
          tri(i, i + 1) = beta[static_cast<std::size_t>(i)];
          tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
      const double theta = es.eigenvalues()[0];
      const Eigen::VectorXd s = es.eigenvectors().col(0);
      result.eigenvalue = theta;
      result.eigenvector = Eigen::VectorXd::Zero(dim);
      for (int i = 0; i < k; ++i)
        result.eigenvector += s[i] * basis[static_cast<std::size_t>(i)];
      result.eigenvector.normalize();
      result.iterations = k;

      const double residual = std::abs(b * s[k - 1]);
      if (!std::isfinite(theta) || !std::isfinite(residual))
        throw SolverFailure("lanczos_lowest: non-finite Ritz data");
      if (k >= dim) {
        // A full orthonormal basis: the Ritz pair is exact.
        result.converged = true;
        return result;
      }
      if (b <= 1e-14) {
        // The Krylov space closed inside a proper invariant subspace. The
        // Ritz pair is exact there but may miss the global minimum, so
        // restart from a perturbed vector instead of trusting the zero
        // residual.
        exhausted_subspace = true;
        break;
      }
      if (residual <= tol * std::max(1.0, std::abs(theta))) {
        result.converged = true;
        return result;
      }
      beta.push_back(b);
      basis.push_back(w / b);
    }

    if (!exhausted_subspace) return result;  // ran out of iterations: best effort
    start = result.eigenvector;
    for (Eigen::Index i = 0; i < dim; ++i) start[i] += 1e-6 * rng.normal();
  }
  return result;
}

}  // namespace cutbench
