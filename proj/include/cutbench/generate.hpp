#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cutbench/graph.hpp"
#include "cutbench/rng.hpp"

namespace cutbench {

/// Erdos-Renyi G(n, p) instance generator with uniform edge weights.
struct GeneratorConfig {
  int n = 10;
  double edge_probability = 0.8;
  double weight_min = 0.0;
  double weight_max = 2.0;
  std::uint64_t seed = 0;
};

/// Fully determined by the config: pairs (u, v) with u < v are visited in
/// lexicographic order; each pair draws one uniform for presence and, when
/// present, one uniform for the weight.
inline WeightedGraph generate(const GeneratorConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("generate: need at least 2 nodes");
  if (!(cfg.edge_probability > 0.0) || cfg.edge_probability > 1.0)
    throw std::invalid_argument("generate: edge probability must be in (0, 1]");
  if (cfg.weight_min < 0.0 || cfg.weight_min > cfg.weight_max)
    throw std::invalid_argument("generate: need 0 <= weight_min <= weight_max");
  Rng rng(cfg.seed);
  std::vector<Edge> edges;
  for (int u = 0; u < cfg.n; ++u) {
    for (int v = u + 1; v < cfg.n; ++v) {
      if (rng.uniform01() < cfg.edge_probability)
        edges.push_back({u, v, rng.uniform(cfg.weight_min, cfg.weight_max)});
    }
  }
  return WeightedGraph(cfg.n, std::move(edges));
}

}  // namespace cutbench
