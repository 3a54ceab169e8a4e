#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cutbench/brute_force.hpp"
#include "cutbench/dmrg.hpp"
#include "cutbench/generate.hpp"
#include "cutbench/graph.hpp"
#include "cutbench/hamiltonian.hpp"
#include "cutbench/mpo.hpp"
#include "cutbench/mps.hpp"
#include "cutbench/rng.hpp"

namespace {

cutbench::WeightedGraph random_graph(int n, std::uint64_t seed) {
  cutbench::GeneratorConfig cfg;
  cfg.n = n;
  cfg.edge_probability = 0.8;
  cfg.weight_min = 0.0;
  cfg.weight_max = 2.0;
  cfg.seed = seed;
  return cutbench::generate(cfg);
}

cutbench::Mps basis_mps(const std::vector<std::uint8_t>& bits) {
  cutbench::Mps psi;
  psi.sites.resize(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k)
    for (int q = 0; q < 2; ++q)
      psi.sites[k][static_cast<std::size_t>(q)] =
          Eigen::MatrixXd::Constant(1, 1, bits[k] == q ? 1.0 : 0.0);
  return psi;
}

}  // namespace

TEST_CASE("expectation of basis states equals minus the cut", "[dmrg]") {
  const auto zero_state = basis_mps({0, 0, 0, 0});
  const auto g0 = random_graph(5, 12);
  CHECK(cutbench::expectation(zero_state, cutbench::build_mpo(cutbench::reduce_by_symmetry(g0))) ==
        Catch::Approx(0.0).margin(1e-12));

  cutbench::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(8));  // n in [3, 10]
    const auto g = random_graph(n, 900 + static_cast<std::uint64_t>(trial));
    std::vector<std::uint8_t> reduced_bits(static_cast<std::size_t>(n - 1));
    for (auto& b : reduced_bits) b = rng.bernoulli(0.5) ? 1 : 0;
    std::vector<std::uint8_t> full_bits = reduced_bits;
    full_bits.push_back(0);
    const auto op = cutbench::build_mpo(cutbench::reduce_by_symmetry(g));
    const double e = cutbench::expectation(basis_mps(reduced_bits), op);
    CHECK(e == Catch::Approx(-cutbench::cut_value(g, full_bits)).margin(1e-9));
  }
}

TEST_CASE("expectation matches dense Rayleigh quotient on random states", "[dmrg]") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const int n = 4 + static_cast<int>(seed);  // n in [4, 8]
    const auto g = random_graph(n, 70 + seed);
    const auto op = cutbench::build_mpo(cutbench::reduce_by_symmetry(g));
    const auto psi = cutbench::random_mps(n - 1, 4, 5000 + seed);
    const Eigen::VectorXd v = cutbench::mps_to_dense(psi);
    const Eigen::VectorXd h = cutbench::build_dense_hamiltonian(g, true);
    const double dense_e = v.dot(h.asDiagonal() * v) / v.squaredNorm();
    CHECK(cutbench::expectation(psi, op) == Catch::Approx(dense_e).margin(1e-10));
  }
}

TEST_CASE("expectation rejects bad input", "[dmrg]") {
  const auto g = random_graph(5, 3);
  const auto op = cutbench::build_mpo(cutbench::reduce_by_symmetry(g));
  CHECK_THROWS_AS(cutbench::expectation(basis_mps({0, 0}), op), std::invalid_argument);

  auto zero = basis_mps({0, 0, 0, 0});
  for (auto& site : zero.sites)
    for (auto& mq : site) mq.setZero();
  CHECK_THROWS_AS(cutbench::expectation(zero, op), std::invalid_argument);
}

TEST_CASE("single edge is solved exactly", "[dmrg]") {
  const cutbench::WeightedGraph g(2, {{0, 1, 1.3}});
  cutbench::DmrgConfig cfg;
  cfg.chi = 2;
  cfg.seed = 5;
  const auto res = cutbench::dmrg_solve(g, cfg);
  CHECK(res.energy == Catch::Approx(-1.3));
  CHECK(res.assignment.cut_value == Catch::Approx(1.3));
  REQUIRE(res.assignment.bits.size() == 2);
  CHECK(res.assignment.bits[0] != res.assignment.bits[1]);
  CHECK(res.assignment.bits[1] == 0);
}

TEST_CASE("three-node path engages the sweep machinery", "[dmrg]") {
  const cutbench::WeightedGraph g(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  cutbench::DmrgConfig cfg;
  cfg.chi = 2;
  cfg.seed = 11;
  const auto res = cutbench::dmrg_solve(g, cfg);
  CHECK(res.assignment.cut_value == Catch::Approx(3.0));  // node 1 alone
  CHECK(res.energy == Catch::Approx(-3.0).margin(1e-7));
}

TEST_CASE("untruncated chi reaches the dense ground energy", "[dmrg]") {
  int hits = 0;
  const int trials = 10;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 4 + (trial % 9);  // n in [4, 12]
    const auto g = random_graph(n, 8800 + static_cast<std::uint64_t>(trial));
    const int m = n - 1;
    cutbench::DmrgConfig cfg;
    cfg.chi = 1 << ((m + 1) / 2);
    cfg.seed = 17 + static_cast<std::uint64_t>(trial);
    const auto res = cutbench::dmrg_solve(g, cfg);
    const double exact = cutbench::build_dense_hamiltonian(g, true).minCoeff();
    if (std::abs(res.energy - exact) < 1e-7) ++hits;
    // The optimum cut value always bounds the variational energy.
    CHECK(res.energy >= exact - 1e-7);
  }
  CHECK(hits >= 9);
}

TEST_CASE("energy history is monotone and bounded", "[dmrg]") {
  const auto g = random_graph(12, 321);
  cutbench::DmrgConfig cfg;
  cfg.chi = 4;
  cfg.seed = 9;
  const auto res = cutbench::dmrg_solve(g, cfg);
  REQUIRE(res.sweeps_used >= 1);
  REQUIRE(res.energy_history.size() == static_cast<std::size_t>(res.sweeps_used));
  for (std::size_t s = 1; s < res.energy_history.size(); ++s)
    CHECK(res.energy_history[s] <= res.energy_history[s - 1] + 1e-8);
  CHECK(res.energy == res.energy_history.back());
  CHECK(res.energy <= 0.0);
  CHECK(res.energy >= -g.total_weight());

  // Extraction consistency: the reported cut is recomputed from the bits.
  REQUIRE(res.assignment.bits.size() == 12);
  CHECK(res.assignment.bits.back() == 0);
  CHECK(res.assignment.cut_value ==
        Catch::Approx(cutbench::cut_value(g, res.assignment.bits)));
}

TEST_CASE("chi=2 stays close to the optimum at n=10", "[dmrg]") {
  const auto g = random_graph(10, 246);
  const double optimum = cutbench::brute_force_optimum(g).cut_value;
  double total_ratio = 0.0;
  const int seeds = 10;
  for (int s = 0; s < seeds; ++s) {
    cutbench::DmrgConfig cfg;
    cfg.chi = 2;
    cfg.seed = static_cast<std::uint64_t>(s);
    const auto res = cutbench::dmrg_solve(g, cfg);
    CHECK(res.assignment.cut_value <= optimum + 1e-9);
    total_ratio += res.assignment.cut_value / optimum;
  }
  CHECK(total_ratio / seeds >= 0.98);
}

TEST_CASE("identical seeds give identical runs", "[dmrg]") {
  const auto g = random_graph(11, 77);
  cutbench::DmrgConfig cfg;
  cfg.chi = 3;
  cfg.seed = 1234;
  const auto a = cutbench::dmrg_solve(g, cfg);
  const auto b = cutbench::dmrg_solve(g, cfg);
  CHECK(a.energy == b.energy);
  CHECK(a.assignment.bits == b.assignment.bits);
  CHECK(a.energy_history == b.energy_history);

  cfg.seed = 4321;
  const auto c = cutbench::dmrg_solve(g, cfg);
  CHECK(c.assignment.cut_value <= cutbench::brute_force_optimum(g).cut_value + 1e-9);
}

TEST_CASE("configuration validation", "[dmrg]") {
  const auto g = random_graph(6, 8);
  cutbench::DmrgConfig cfg;
  cfg.chi = 0;
  CHECK_THROWS_AS(cutbench::dmrg_solve(g, cfg), std::invalid_argument);
  cfg.chi = 2;
  cfg.max_sweeps = 0;
  CHECK_THROWS_AS(cutbench::dmrg_solve(g, cfg), std::invalid_argument);
  cfg.max_sweeps = 20;
  cfg.energy_tolerance = 0.0;
  CHECK_THROWS_AS(cutbench::dmrg_solve(g, cfg), std::invalid_argument);
  cfg.energy_tolerance = 1e-8;
  cfg.lanczos_iters = 0;
  CHECK_THROWS_AS(cutbench::dmrg_solve(g, cfg), std::invalid_argument);
  cfg.lanczos_iters = 40;
  CHECK_THROWS_AS(cutbench::dmrg_solve(cutbench::WeightedGraph(1, {}), cfg),
                  std::invalid_argument);
}
