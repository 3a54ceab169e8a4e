#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace cutbench {

namespace detail {

// Regularized lower incomplete gamma P(a, x) by power series; valid for x < a + 1.
inline double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued
// fraction; valid for x >= a + 1.
inline double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

/// Survival function of the chi-square distribution: P(X >= x) with `dof`
/// degrees of freedom, computed as the regularized upper incomplete gamma
/// Q(dof/2, x/2).
inline double chi_squared_sf(double x, double dof) {
  if (dof <= 0.0) throw std::invalid_argument("chi_squared_sf: dof must be positive");
  if (!(x > 0.0)) return 1.0;
  const double a = dof / 2.0;
  const double xx = x / 2.0;
  if (xx < a + 1.0) return 1.0 - detail::gamma_p_series(a, xx);
  return detail::gamma_q_continued_fraction(a, xx);
}

/// Ranks one row of observations. Rank 1 goes to the best value (the largest
/// when higher_is_better, the smallest otherwise); tied values receive the
/// average of the positions they span.
inline std::vector<double> row_ranks(std::span<const double> values, bool higher_is_better) {
  const std::size_t k = values.size();
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("row_ranks: values must be finite");
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return higher_is_better ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<double> ranks(k, 0.0);
  std::size_t i = 0;
  while (i < k) {
    std::size_t j = i;
    while (j + 1 < k && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

struct FriedmanResult {
  double chi2_f = 0.0;
  double p_value = 1.0;
  std::vector<double> avg_ranks;  // one per column, rank 1 = best
};

/// Friedman rank test over an n-instances x k-solvers table of mean metrics.
/// chi2_F = (12n / (k(k+1))) * (sum_j Rbar_j^2 - k(k+1)^2/4), where Rbar_j is
/// solver j's average rank; the p-value is the chi-square survival at chi2_F
/// with k-1 degrees of freedom.
inline FriedmanResult friedman_test(const Eigen::MatrixXd& table, bool higher_is_better) {
  const auto n = static_cast<int>(table.rows());
  const auto k = static_cast<int>(table.cols());
  if (n < 2) throw std::invalid_argument("friedman_test: need at least 2 instances (rows)");
  if (k < 2) throw std::invalid_argument("friedman_test: need at least 2 solvers (columns)");

  std::vector<double> avg(static_cast<std::size_t>(k), 0.0);
  std::vector<double> row(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) row[static_cast<std::size_t>(j)] = table(i, j);
    const auto ranks = row_ranks(row, higher_is_better);
    for (int j = 0; j < k; ++j) avg[static_cast<std::size_t>(j)] += ranks[static_cast<std::size_t>(j)];
  }
  for (auto& r : avg) r /= n;

  double sum_sq = 0.0;
  for (double r : avg) sum_sq += r * r;
  const double kk = static_cast<double>(k);
  const double chi2 = (12.0 * n / (kk * (kk + 1.0))) * (sum_sq - kk * (kk + 1.0) * (kk + 1.0) / 4.0);
  const double chi2_clamped = std::max(chi2, 0.0);  // guard tiny negative round-off
  return FriedmanResult{chi2_clamped, chi_squared_sf(chi2_clamped, kk - 1.0), std::move(avg)};
}

/// Nemenyi critical difference CD = q_{alpha,k} * sqrt(k(k+1) / (6n)) at
/// alpha = 0.05, with the studentized-range constants for k = 2..10.
inline double nemenyi_critical_difference(int k, int n, double alpha = 0.05) {
  if (alpha != 0.05)
    throw std::invalid_argument("nemenyi_critical_difference: only alpha = 0.05 is tabulated");
  if (k < 2 || k > 10)
    throw std::invalid_argument("nemenyi_critical_difference: k must be in [2, 10]");
  if (n < 1) throw std::invalid_argument("nemenyi_critical_difference: n must be >= 1");
  static constexpr double q_005[] = {1.960, 2.343, 2.569, 2.728, 2.850,
                                     2.949, 3.031, 3.102, 3.164};  // k = 2..10
  const double kk = static_cast<double>(k);
  return q_005[k - 2] * std::sqrt(kk * (kk + 1.0) / (6.0 * static_cast<double>(n)));
}

}  // namespace cutbench
