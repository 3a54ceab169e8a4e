#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "cutbench/cd_report.hpp"
#include "cutbench/friedman.hpp"
#include "cutbench/metrics.hpp"
#include "fixtures.hpp"

using cutbench::friedman_test;

TEST_CASE("chi-square survival function reference values", "[stats]") {
  // Exponential special case: dof = 2 gives sf(x) = exp(-x/2); exercises the
  // series branch (x/2 < dof/2 + 1) and large-x continued-fraction branch.
  REQUIRE(cutbench::chi_squared_sf(3.0, 2.0) == Catch::Approx(std::exp(-1.5)).epsilon(1e-12));
  REQUIRE(cutbench::chi_squared_sf(40.0, 2.0) == Catch::Approx(std::exp(-20.0)).epsilon(1e-10));
  // Critical value of the chi-square with 7 dof at the 5% level.
  REQUIRE(cutbench::chi_squared_sf(14.067, 7.0) == Catch::Approx(0.05).margin(1e-4));
  REQUIRE(cutbench::chi_squared_sf(0.0, 5.0) == 1.0);
  REQUIRE(cutbench::chi_squared_sf(-3.0, 5.0) == 1.0);
  REQUIRE_THROWS_AS(cutbench::chi_squared_sf(1.0, 0.0), std::invalid_argument);
  // dof = 1: sf(x) = erfc(sqrt(x/2)).
  REQUIRE(cutbench::chi_squared_sf(4.0, 1.0) ==
          Catch::Approx(std::erfc(std::sqrt(2.0))).epsilon(1e-10));
}

TEST_CASE("row ranks average ties and preserve the rank sum", "[stats]") {
  const std::vector<double> row{1.0, 2.0, 2.0, 3.0};
  const auto hi = cutbench::row_ranks(row, true);
  REQUIRE(hi == std::vector<double>{4.0, 2.5, 2.5, 1.0});
  const auto lo = cutbench::row_ranks(row, false);
  REQUIRE(lo == std::vector<double>{1.0, 2.5, 2.5, 4.0});
  const std::vector<double> constant{5.0, 5.0, 5.0};
  const auto all_tied = cutbench::row_ranks(constant, true);
  REQUIRE(all_tied == std::vector<double>{2.0, 2.0, 2.0});
  double sum = 0.0;
  for (double r : hi) sum += r;
  REQUIRE(sum == Catch::Approx(4.0 * 5.0 / 2.0));
}

TEST_CASE("dominant solver yields rank one and the closed-form statistic", "[stats]") {
  // One solver strictly best in every row, the other two alternating: with
  // k=3 and fixed per-row ranks {1, 2, 3}, chi2 = 20 when the same column is
  // always ranked 2 (n = 10).
  Eigen::MatrixXd t(10, 3);
  for (int i = 0; i < 10; ++i) {
    t(i, 0) = 10.0;  // dominant
    t(i, 1) = 5.0;
    t(i, 2) = 1.0;
  }
  const auto res = friedman_test(t, true);
  REQUIRE(res.avg_ranks[0] == Catch::Approx(1.0));
  REQUIRE(res.avg_ranks[1] == Catch::Approx(2.0));
  REQUIRE(res.avg_ranks[2] == Catch::Approx(3.0));
  REQUIRE(res.chi2_f == Catch::Approx(20.0).margin(1e-10));
}

TEST_CASE("identical columns give a zero statistic and p-value one", "[stats]") {
  Eigen::MatrixXd t(6, 4);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 4; ++j) t(i, j) = static_cast<double>(i);
  const auto res = friedman_test(t, true);
  REQUIRE(res.chi2_f == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(res.p_value == Catch::Approx(1.0).margin(1e-12));
  for (double r : res.avg_ranks) REQUIRE(r == Catch::Approx(2.5));
}

TEST_CASE("reference AR table reproduces the frozen statistics", "[stats]") {
  const auto res = friedman_test(cutbench_tests::reference_ar_table(), true);
  REQUIRE(res.chi2_f == Catch::Approx(52.105556).margin(1e-4));
  REQUIRE(res.p_value == Catch::Approx(5.5655e-9).epsilon(1e-3));
  const std::vector<double> expected{2.1, 3.366667, 3.166667, 7.233333,
                                     4.066667, 6.5, 5.1, 4.466667};
  REQUIRE(res.avg_ranks.size() == expected.size());
  for (std::size_t j = 0; j < expected.size(); ++j)
    REQUIRE(res.avg_ranks[j] == Catch::Approx(expected[j]).margin(1e-4));
  double sum = 0.0;
  for (double r : res.avg_ranks) sum += r;
  REQUIRE(sum == Catch::Approx(8.0 * 9.0 / 2.0).margin(1e-10));
}

TEST_CASE("friedman test is invariant under monotone row transformations", "[stats]") {
  const auto& table = cutbench_tests::reference_ar_table();
  Eigen::MatrixXd warped = table;
  for (Eigen::Index i = 0; i < warped.rows(); ++i)
    for (Eigen::Index j = 0; j < warped.cols(); ++j)
      warped(i, j) = std::exp(3.0 * warped(i, j));  // strictly increasing
  const auto a = friedman_test(table, true);
  const auto b = friedman_test(warped, true);
  REQUIRE(b.chi2_f == Catch::Approx(a.chi2_f).margin(1e-9));
  for (std::size_t j = 0; j < a.avg_ranks.size(); ++j)
    REQUIRE(b.avg_ranks[j] == Catch::Approx(a.avg_ranks[j]).margin(1e-12));
}

TEST_CASE("permuting columns permutes ranks and keeps the statistic", "[stats]") {
  const auto& table = cutbench_tests::reference_ar_table();
  Eigen::MatrixXd permuted(table.rows(), table.cols());
  const int k = static_cast<int>(table.cols());
  for (int j = 0; j < k; ++j) permuted.col(j) = table.col((j + 3) % k);
  const auto a = friedman_test(table, true);
  const auto b = friedman_test(permuted, true);
  REQUIRE(b.chi2_f == Catch::Approx(a.chi2_f).margin(1e-9));
  for (int j = 0; j < k; ++j)
    REQUIRE(b.avg_ranks[static_cast<std::size_t>(j)] ==
            Catch::Approx(a.avg_ranks[static_cast<std::size_t>((j + 3) % k)]).margin(1e-12));
}

TEST_CASE("lower-is-better flag reverses the ranking direction", "[stats]") {
  Eigen::MatrixXd t(3, 2);
  t << 1.0, 2.0, 1.0, 2.0, 1.0, 2.0;
  const auto hi = friedman_test(t, true);
  const auto lo = friedman_test(t, false);
  REQUIRE(hi.avg_ranks[0] == Catch::Approx(2.0));
  REQUIRE(hi.avg_ranks[1] == Catch::Approx(1.0));
  REQUIRE(lo.avg_ranks[0] == Catch::Approx(1.0));
  REQUIRE(lo.avg_ranks[1] == Catch::Approx(2.0));
}

TEST_CASE("friedman test rejects degenerate tables", "[stats]") {
  Eigen::MatrixXd one_row(1, 3);
  one_row << 1.0, 2.0, 3.0;
  REQUIRE_THROWS_AS(friedman_test(one_row, true), std::invalid_argument);
  Eigen::MatrixXd one_col(3, 1);
  one_col << 1.0, 2.0, 3.0;
  REQUIRE_THROWS_AS(friedman_test(one_col, true), std::invalid_argument);
}

TEST_CASE("Nemenyi critical difference formula and table", "[stats]") {
  // k = 2 collapses to 1.960/sqrt(n).
  REQUIRE(cutbench::nemenyi_critical_difference(2, 4) == Catch::Approx(1.960 / 2.0));
  REQUIRE(cutbench::nemenyi_critical_difference(2, 100) == Catch::Approx(0.196));
  REQUIRE(cutbench::nemenyi_critical_difference(8, 15) == Catch::Approx(2.711009).margin(1e-4));
  // Doubling n divides CD by sqrt(2).
  const double cd1 = cutbench::nemenyi_critical_difference(5, 20);
  const double cd2 = cutbench::nemenyi_critical_difference(5, 40);
  REQUIRE(cd1 / cd2 == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
  REQUIRE_THROWS_AS(cutbench::nemenyi_critical_difference(1, 10), std::invalid_argument);
  REQUIRE_THROWS_AS(cutbench::nemenyi_critical_difference(11, 10), std::invalid_argument);
  REQUIRE_THROWS_AS(cutbench::nemenyi_critical_difference(8, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(cutbench::nemenyi_critical_difference(8, 15, 0.01), std::invalid_argument);
}

TEST_CASE("approximation ratio mean and population std", "[stats]") {
  const std::vector<double> perfect{10.0, 10.0, 10.0};
  const auto a = cutbench::approximation_ratio(perfect, 10.0);
  REQUIRE(a.mean == Catch::Approx(1.0));
  REQUIRE(a.stddev == Catch::Approx(0.0));
  const std::vector<double> two{9.0, 10.0};
  const auto b = cutbench::approximation_ratio(two, 10.0);
  REQUIRE(b.mean == Catch::Approx(0.95));
  REQUIRE(b.stddev == Catch::Approx(0.05));
  REQUIRE_THROWS_AS(cutbench::approximation_ratio(two, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(cutbench::approximation_ratio(two, -1.0), std::invalid_argument);
  const std::vector<double> neg{-1.0};
  REQUIRE_THROWS_AS(cutbench::approximation_ratio(neg, 1.0), std::invalid_argument);
  const std::vector<double> empty;
  REQUIRE_THROWS_AS(cutbench::approximation_ratio(empty, 1.0), std::invalid_argument);
}

TEST_CASE("solver run records round-trip through JSON", "[stats]") {
  cutbench::SolverRunRecord r;
  r.instance_id = "er-n20-s7";
  r.solver_id = "dmrg-chi2";
  r.params = "chi=2 sweeps=8";
  r.run_index = 3;
  r.seed = 0xdeadbeefcafe1234ull;
  r.best_cut = 123.456;
  r.time_ms = 17.25;
  r.peak_mem_bytes = 1048576;
  r.status = "ok";
  r.n = 20;
  r.optimum = 130.0;
  r.optimum_mode = "exact";
  r.mem_mode = "tracked";
  const auto j = cutbench::to_json(r);
  // Stability contract for record field names.
  for (const char* key : {"instance_id", "solver_id", "params", "run_index", "seed", "best_cut",
                          "time_ms", "peak_mem_bytes", "status"})
    REQUIRE(j.contains(key));
  const auto s = j.dump();
  const auto back = cutbench::record_from_json(nlohmann::json::parse(s));
  REQUIRE(back.instance_id == r.instance_id);
  REQUIRE(back.solver_id == r.solver_id);
  REQUIRE(back.params == r.params);
  REQUIRE(back.run_index == r.run_index);
  REQUIRE(back.seed == r.seed);
  REQUIRE(back.best_cut == r.best_cut);
  REQUIRE(back.time_ms == r.time_ms);
  REQUIRE(back.peak_mem_bytes == r.peak_mem_bytes);
  REQUIRE(back.status == r.status);
  REQUIRE(back.n == r.n);
  REQUIRE(back.optimum == r.optimum);
  REQUIRE(back.optimum_mode == r.optimum_mode);
  REQUIRE(back.mem_mode == r.mem_mode);
}

TEST_CASE("CD groups merge solvers within the critical difference", "[stats]") {
  using groups_t = std::vector<std::vector<std::string>>;
  // Two solvers inside CD: one connected group.
  REQUIRE(cutbench::cd_groups({"a", "b"}, {1.0, 2.0}, 1.5) == groups_t{{"a", "b"}});
  // Two solvers farther apart than CD: two singleton groups.
  REQUIRE(cutbench::cd_groups({"a", "b"}, {1.0, 3.0}, 1.5) == groups_t{{"a"}, {"b"}});
  // Overlapping chains produce maximal windows, not contained duplicates.
  REQUIRE(cutbench::cd_groups({"a", "b", "c"}, {1.0, 2.0, 3.0}, 1.5) ==
          groups_t{{"a", "b"}, {"b", "c"}});
  // Input order does not matter; ranks sort ascending.
  REQUIRE(cutbench::cd_groups({"b", "a"}, {2.0, 1.0}, 1.5) == groups_t{{"a", "b"}});
  REQUIRE_THROWS_AS(cutbench::cd_groups({"a"}, {1.0, 2.0}, 1.0), std::invalid_argument);
}

TEST_CASE("CD diagram data is sorted ascending with the frozen reference order", "[stats]") {
  const auto res = friedman_test(cutbench_tests::reference_ar_table(), true);
  const double cd = cutbench::nemenyi_critical_difference(8, 15);
  const auto data =
      cutbench::cd_diagram_data(cutbench_tests::reference_solver_ids(), res.avg_ranks, cd);
  REQUIRE(data.at("cd").get<double>() == Catch::Approx(2.711009).margin(1e-4));
  const auto& ranking = data.at("ranking");
  REQUIRE(ranking.size() == 8);
  // Best (lowest average rank) first: the chi=2 tensor-network config leads,
  // then the other tensor-network variants and the refined GA.
  REQUIRE(ranking[0].at("solver_id").get<std::string>() == "dmrg-chi2");
  REQUIRE(ranking[1].at("solver_id").get<std::string>() == "dmrg-chi20p");
  REQUIRE(ranking[2].at("solver_id").get<std::string>() == "dmrg-chi10p");
  REQUIRE(ranking[3].at("solver_id").get<std::string>() == "gaoc");
  double prev = 0.0;
  for (const auto& item : ranking) {
    REQUIRE(item.at("avg_rank").get<double>() >= prev);
    prev = item.at("avg_rank").get<double>();
  }
  std::ostringstream out;
  cutbench::emit_cd_diagram_data(cutbench_tests::reference_solver_ids(), res.avg_ranks, cd, out);
  REQUIRE(out.str().find("\"groups\"") != std::string::npos);
}
