// Runs every solver family on one generated instance and prints a small
// comparison table: best cut, approximation ratio, and wall time per preset.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "cutbench/brute_force.hpp"
#include "cutbench/generate.hpp"
#include "cutbench/presets.hpp"

int main() {
  cutbench::GeneratorConfig cfg;
  cfg.n = 14;
  cfg.edge_probability = 0.8;
  cfg.weight_min = 0.0;
  cfg.weight_max = 2.0;
  cfg.seed = 27;
  const cutbench::WeightedGraph g = cutbench::generate(cfg);

  const auto opt = cutbench::brute_force_optimum(g);
  std::printf("instance: n=%d, m=%zu, exhaustive optimum %.6f\n\n", g.n(),
              g.edges().size(), opt.cut_value);
  std::printf("%-12s %12s %8s %10s\n", "preset", "best cut", "AR", "time");

  const std::vector<std::string> presets = {"dmrg-chi2", "gnn", "gaoc", "cga-500"};
  for (const auto& preset : presets) {
    const auto t0 = std::chrono::steady_clock::now();
    const cutbench::CutAssignment best = cutbench::run_preset(preset, g, /*seed=*/1);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::printf("%-12s %12.6f %8.4f %8.1fms\n", preset.c_str(), best.cut_value,
                best.cut_value / opt.cut_value, ms);
  }
  return 0;
}
