#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "cutbench/generate.hpp"
#include "cutbench/qubo.hpp"

using cutbench::WeightedGraph;

namespace {

// Edge-scan cut, written directly against the edge list.
double cut_direct(const WeightedGraph& g, const std::vector<std::uint8_t>& x) {
  double cut = 0.0;
  for (const auto& e : g.edges())
    if (x[static_cast<std::size_t>(e.u)] != x[static_cast<std::size_t>(e.v)]) cut += e.w;
  return cut;
}

// Scalar-loop quadratic form, independent of Eigen.
double quad_form(const cutbench::QuboMatrix& q, const std::vector<std::uint8_t>& x) {
  double acc = 0.0;
  for (int i = 0; i < q.n; ++i)
    for (int j = 0; j < q.n; ++j)
      acc += q.q(i, j) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
  return acc;
}

}  // namespace

TEST_CASE("single-edge QUBO matrix", "[qubo]") {
  WeightedGraph g(2, {{0, 1, 1.0}});
  const auto q = cutbench::build_qubo(g);
  REQUIRE(q.n == 2);
  REQUIRE(q.q(0, 0) == -1.0);
  REQUIRE(q.q(1, 1) == -1.0);
  REQUIRE(q.q(0, 1) == 1.0);
  REQUIRE(q.q(1, 0) == 1.0);
}

TEST_CASE("QUBO energy equals minus the cut for every assignment", "[qubo]") {
  cutbench::GeneratorConfig cfg;
  cfg.n = 8;
  cfg.edge_probability = 0.8;
  cfg.seed = 17;
  const WeightedGraph g = cutbench::generate(cfg);
  const auto q = cutbench::build_qubo(g);
  const int n = g.n();
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    const double cut = cut_direct(g, bits);
    REQUIRE(quad_form(q, bits) == Catch::Approx(-cut).margin(1e-10));
    REQUIRE(cutbench::qubo_energy(q, bits) == Catch::Approx(-cut).margin(1e-10));
  }
}

TEST_CASE("QUBO matrix is symmetric with zero row sums", "[qubo]") {
  cutbench::GeneratorConfig cfg;
  cfg.n = 12;
  cfg.seed = 3;
  const auto q = cutbench::build_qubo(cutbench::generate(cfg));
  for (int i = 0; i < q.n; ++i) {
    double row = 0.0;
    for (int j = 0; j < q.n; ++j) {
      REQUIRE(q.q(i, j) == q.q(j, i));
      row += q.q(i, j);
    }
    REQUIRE(row == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("QUBO diagonal is minus the weighted degree", "[qubo]") {
  WeightedGraph g(3, {{0, 1, 2.0}, {0, 2, 3.0}});
  const auto q = cutbench::build_qubo(g);
  REQUIRE(q.q(0, 0) == Catch::Approx(-5.0));
  REQUIRE(q.q(1, 1) == Catch::Approx(-2.0));
  REQUIRE(q.q(2, 2) == Catch::Approx(-3.0));
}
