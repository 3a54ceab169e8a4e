#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "cutbench/generate.hpp"
#include "cutbench/graph.hpp"
#include "cutbench/hamiltonian.hpp"
#include "cutbench/mpo.hpp"

namespace {

// Independent oracle: evaluate constant + sum h_i z_i + sum_{i<j} j_ij z_i z_j
// for every basis index (site 0 = most significant bit, bit 0 -> z = +1).
Eigen::VectorXd reduced_dense(const cutbench::ReducedIsing& red) {
  const std::size_t dim = std::size_t{1} << red.m;
  Eigen::VectorXd out(static_cast<Eigen::Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::vector<double> z(static_cast<std::size_t>(red.m));
    for (int i = 0; i < red.m; ++i)
      z[static_cast<std::size_t>(i)] = ((idx >> (red.m - 1 - i)) & 1u) ? -1.0 : 1.0;
    double e = red.constant;
    for (int i = 0; i < red.m; ++i) e += red.h[i] * z[static_cast<std::size_t>(i)];
    for (int i = 0; i < red.m; ++i)
      for (int j = i + 1; j < red.m; ++j)
        e += red.j(i, j) * z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(j)];
    out[static_cast<Eigen::Index>(idx)] = e;
  }
  return out;
}

Eigen::MatrixXd kron2(const Eigen::MatrixXd& a, const Eigen::Matrix2d& b) {
  Eigen::MatrixXd out(a.rows() * 2, a.cols() * 2);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  return out;
}

// Independent full contraction: accumulate 2^t x 2^t blocks per right channel,
// appending each site as the least significant bit.
Eigen::MatrixXd mpo_full(const cutbench::Mpo& op) {
  std::vector<Eigen::MatrixXd> acc{Eigen::MatrixXd::Ones(1, 1)};
  for (const auto& site : op.sites) {
    const Eigen::Index d = acc[0].rows() * 2;
    std::vector<Eigen::MatrixXd> next(static_cast<std::size_t>(site.b_right),
                                      Eigen::MatrixXd::Zero(d, d));
    for (const auto& e : site.entries) {
      Eigen::Matrix2d b;
      b << e.c_i + e.c_z, 0.0, 0.0, e.c_i - e.c_z;
      next[static_cast<std::size_t>(e.col)] += kron2(acc[static_cast<std::size_t>(e.row)], b);
    }
    acc = std::move(next);
  }
  REQUIRE(acc.size() == 1);
  return acc[0];
}

cutbench::WeightedGraph random_graph(int n, std::uint64_t seed) {
  cutbench::GeneratorConfig cfg;
  cfg.n = n;
  cfg.edge_probability = 0.8;
  cfg.weight_min = 0.0;
  cfg.weight_max = 2.0;
  cfg.seed = seed;
  return cutbench::generate(cfg);
}

}  // namespace

TEST_CASE("symmetry reduction of a single edge", "[mpo]") {
  const cutbench::WeightedGraph g(2, {{0, 1, 1.7}});
  const auto red = cutbench::reduce_by_symmetry(g);
  REQUIRE(red.m == 1);
  CHECK(red.constant == Catch::Approx(-0.85));
  CHECK(red.h[0] == Catch::Approx(0.85));
  // Spectrum {0, -w}: z=+1 keeps both nodes together (cut 0), z=-1 cuts the edge.
  CHECK(red.constant + red.h[0] == Catch::Approx(0.0).margin(1e-12));
  CHECK(red.constant - red.h[0] == Catch::Approx(-1.7));
}

TEST_CASE("symmetry reduction of the unit triangle", "[mpo]") {
  const cutbench::WeightedGraph g(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  const auto red = cutbench::reduce_by_symmetry(g);
  REQUIRE(red.m == 2);
  CHECK(red.constant == Catch::Approx(-1.5));
  CHECK(red.h[0] == Catch::Approx(0.5));
  CHECK(red.h[1] == Catch::Approx(0.5));
  CHECK(red.j(0, 1) == Catch::Approx(0.5));
  const Eigen::VectorXd dense = reduced_dense(red);
  CHECK(dense.minCoeff() == Catch::Approx(-2.0));  // max cut of the unit triangle
}

TEST_CASE("reduced operator equals the node-fixed dense Hamiltonian", "[mpo]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 11);  // n in [2, 12]
    const auto g = random_graph(n, 1000 + seed);
    const auto red = cutbench::reduce_by_symmetry(g);
    const Eigen::VectorXd via_reduction = reduced_dense(red);
    const Eigen::VectorXd via_fixing = cutbench::build_dense_hamiltonian(g, true);
    REQUIRE(via_reduction.size() == via_fixing.size());
    CHECK((via_reduction - via_fixing).cwiseAbs().maxCoeff() < 1e-9);
  }
  CHECK_THROWS_AS(cutbench::reduce_by_symmetry(cutbench::WeightedGraph(1, {})),
                  std::invalid_argument);
}

TEST_CASE("single-site MPO equals c*I + h*Z", "[mpo]") {
  const cutbench::WeightedGraph g(2, {{0, 1, 0.9}});
  const auto op = cutbench::build_mpo(cutbench::reduce_by_symmetry(g));
  REQUIRE(op.length() == 1);
  CHECK(op.sites[0].b_left == 1);
  CHECK(op.sites[0].b_right == 1);
  const Eigen::VectorXd diag = cutbench::mpo_diagonal(op);
  CHECK(diag[0] == Catch::Approx(0.0).margin(1e-12));
  CHECK(diag[1] == Catch::Approx(-0.9));
}

TEST_CASE("complete graph bond profile and the n bound", "[mpo]") {
  std::vector<cutbench::Edge> edges;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) edges.push_back({u, v, 1.0});
  const cutbench::WeightedGraph g(6, edges);
  const auto op = cutbench::build_mpo(cutbench::reduce_by_symmetry(g));
  CHECK(cutbench::mpo_bond_dims(op) == std::vector<int>{1, 3, 4, 5, 6, 1});

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 13);  // n in [2, 14]
    const auto g2 = random_graph(n, 400 + seed);
    const auto dims = cutbench::mpo_bond_dims(cutbench::build_mpo(cutbench::reduce_by_symmetry(g2)));
    int max_dim = 0;
    for (int d : dims) max_dim = std::max(max_dim, d);
    CHECK(max_dim <= n);
  }
}

TEST_CASE("sparse coupling patterns prune open channels", "[mpo]") {
  // Path 0-1-2-3: after fixing node 3, only one ZZ pair is ever open at a time.
  const cutbench::WeightedGraph path(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
  const auto op = cutbench::build_mpo(cutbench::reduce_by_symmetry(path));
  CHECK(cutbench::mpo_bond_dims(op) == std::vector<int>{1, 3, 3, 1});

  // No edges at all: just prefix and done channels.
  const cutbench::WeightedGraph empty(3, {});
  const auto op2 = cutbench::build_mpo(cutbench::reduce_by_symmetry(empty));
  CHECK(cutbench::mpo_bond_dims(op2) == std::vector<int>{1, 2, 1});
  CHECK(cutbench::mpo_diagonal(op2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("full MPO contraction reproduces the dense operator", "[mpo]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 2 + static_cast<int>(seed % 8);  // n in [2, 9] -> m <= 8
    const auto g = random_graph(n, 777 + seed);
    const auto op = cutbench::build_mpo(cutbench::reduce_by_symmetry(g));
    const Eigen::MatrixXd full = mpo_full(op);
    const Eigen::VectorXd dense = cutbench::build_dense_hamiltonian(g, true);
    REQUIRE(full.rows() == dense.size());
    double max_err = 0.0;
    for (Eigen::Index r = 0; r < full.rows(); ++r)
      for (Eigen::Index c = 0; c < full.cols(); ++c) {
        const double want = r == c ? dense[r] : 0.0;
        max_err = std::max(max_err, std::abs(full(r, c) - want));
      }
    CHECK(max_err < 1e-9);
  }
}

TEST_CASE("MPO diagonal matches the dense Hamiltonian up to n = 12", "[mpo]") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int n = 5 + static_cast<int>(seed);  // n in [5, 12]
    const auto g = random_graph(n, 51 + seed);
    const auto op = cutbench::build_mpo(cutbench::reduce_by_symmetry(g));
    const Eigen::VectorXd diag = cutbench::mpo_diagonal(op);
    const Eigen::VectorXd dense = cutbench::build_dense_hamiltonian(g, true);
    CHECK((diag - dense).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("MPO sites are physically diagonal", "[mpo]") {
  const auto g = random_graph(9, 4242);
  const auto op = cutbench::build_mpo(cutbench::reduce_by_symmetry(g));
  for (const auto& site : op.sites) {
    CHECK(site.dense(0, 1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(site.dense(1, 0).cwiseAbs().maxCoeff() == 0.0);
  }
}
