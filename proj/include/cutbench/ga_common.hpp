#pragma once

#include <cstdint>
#include <vector>

#include "cutbench/graph.hpp"
#include "cutbench/rng.hpp"

namespace cutbench {

/// Outcome of a genetic-algorithm run.
struct GaRunResult {
  CutAssignment best;
  std::vector<double> fitness_history;  // best fitness after each generation/iteration
  int generations_executed = 0;
};

namespace detail {

inline std::vector<std::uint8_t> random_individual(int n, Rng& rng) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (auto& b : bits) b = rng.bernoulli(0.5) ? 1 : 0;
  return bits;
}

}  // namespace detail

}  // namespace cutbench
