// Minimal tour of the instance layer: generate a random weighted graph,
// score a random assignment, and compare against the exhaustive optimum.
#include <cstdio>
#include <vector>

#include "cutbench/brute_force.hpp"
#include "cutbench/generate.hpp"
#include "cutbench/graph_io.hpp"
#include "cutbench/qubo.hpp"
#include "cutbench/rng.hpp"

int main() {
  cutbench::GeneratorConfig cfg;
  cfg.n = 12;
  cfg.edge_probability = 0.8;
  cfg.weight_min = 0.0;
  cfg.weight_max = 2.0;
  cfg.seed = 42;
  cutbench::WeightedGraph g = cutbench::generate(cfg);
  std::printf("generated: n=%d, m=%zu, total weight=%.4f\n", g.n(), g.edges().size(),
              g.total_weight());

  cutbench::Rng rng(7);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(g.n()));
  for (auto& b : bits) b = rng.bernoulli(0.5) ? 1 : 0;
  const double random_cut = cutbench::cut_value(g, bits);

  const auto opt = cutbench::brute_force_optimum(g);
  std::printf("random assignment cut: %.6f\n", random_cut);
  std::printf("optimal cut:           %.6f\n", opt.cut_value);

  const auto q = cutbench::build_qubo(g);
  std::printf("QUBO energy at optimum (should be -optimal cut): %.6f\n",
              cutbench::qubo_energy(q, opt.bits));
  return 0;
}
