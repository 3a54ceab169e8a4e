#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cutbench/ga_common.hpp"

namespace cutbench {

struct CgaConfig {
  int population_size = 500;
  double mutation_prob = 0.1;
  double elitism_fraction = 0.02;  // elite count = max(1, round(fraction * pop))
  int generations = 1000;
  std::uint64_t seed = 0;
};

/// Canonical generational GA: uniform-random init, fitness = cut value,
/// roulette-wheel selection (uniform fallback when total fitness is zero),
/// single-point crossover at a random split in [1, n-1], per-gene bit-flip
/// mutation, elites copied unchanged. Runs exactly cfg.generations
/// generations; deterministic given the seed.
inline GaRunResult cga_solve(const WeightedGraph& g, const CgaConfig& cfg) {
  if (cfg.population_size < 1) throw std::invalid_argument("cga: population_size must be >= 1");
  if (cfg.mutation_prob < 0.0 || cfg.mutation_prob > 1.0)
    throw std::invalid_argument("cga: mutation_prob must be in [0, 1]");
  if (cfg.elitism_fraction < 0.0 || cfg.elitism_fraction >= 1.0)
    throw std::invalid_argument("cga: elitism_fraction must be in [0, 1)");
  if (cfg.generations < 1) throw std::invalid_argument("cga: generations must be >= 1");

  const int n = g.n();
  const auto pop_size = static_cast<std::size_t>(cfg.population_size);
  const std::size_t elite_count = std::min(
      pop_size,
      std::max(std::size_t{1},
               static_cast<std::size_t>(std::llround(cfg.elitism_fraction * cfg.population_size))));
  Rng rng(cfg.seed);

  std::vector<std::vector<std::uint8_t>> pop(pop_size);
  for (auto& ind : pop) ind = detail::random_individual(n, rng);
  std::vector<double> fitness(pop_size);
  std::vector<std::size_t> order(pop_size);

  auto evaluate = [&] {
    for (std::size_t i = 0; i < pop_size; ++i) fitness[i] = cut_value(g, pop[i]);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return fitness[a] != fitness[b] ? fitness[a] > fitness[b] : a < b;
    });
  };

  evaluate();
  GaRunResult result;
  result.best.bits = pop[order[0]];
  result.best.cut_value = fitness[order[0]];
  result.fitness_history.reserve(static_cast<std::size_t>(cfg.generations));

  std::vector<double> cumulative(pop_size);
  std::vector<std::vector<std::uint8_t>> next;
  next.reserve(pop_size);

  auto select_parent = [&](double total) -> const std::vector<std::uint8_t>& {
    if (total <= 0.0) return pop[rng.below(pop_size)];  // uniform fallback
    const double r = rng.uniform01() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    const auto idx = std::min(pop_size - 1,
                              static_cast<std::size_t>(std::distance(cumulative.begin(), it)));
    return pop[idx];
  };

  for (int gen = 0; gen < cfg.generations; ++gen) {
    double total = 0.0;
    for (std::size_t i = 0; i < pop_size; ++i) {
      total += fitness[i];
      cumulative[i] = total;
    }

    next.clear();
    for (std::size_t e = 0; e < elite_count; ++e) next.push_back(pop[order[e]]);
    while (next.size() < pop_size) {
      auto child_a = select_parent(total);
      auto child_b = select_parent(total);
      if (n >= 2) {
        const auto split = static_cast<std::size_t>(
            1 + rng.below(static_cast<std::uint64_t>(n - 1)));  // split in [1, n-1]
        for (std::size_t i = split; i < static_cast<std::size_t>(n); ++i)
          std::swap(child_a[i], child_b[i]);
      }
      for (auto& b : child_a)
        if (rng.bernoulli(cfg.mutation_prob)) b ^= 1;
      next.push_back(std::move(child_a));
      if (next.size() < pop_size) {
        for (auto& b : child_b)
          if (rng.bernoulli(cfg.mutation_prob)) b ^= 1;
        next.push_back(std::move(child_b));
      }
    }
    pop.swap(next);

    evaluate();
    if (fitness[order[0]] > result.best.cut_value) {
      result.best.bits = pop[order[0]];
      result.best.cut_value = fitness[order[0]];
    }
    result.fitness_history.push_back(fitness[order[0]]);
  }
  result.generations_executed = cfg.generations;
  return result;
}

}  // namespace cutbench
