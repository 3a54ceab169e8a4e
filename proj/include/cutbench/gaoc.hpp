#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cutbench/ga_common.hpp"

namespace cutbench {

struct GaOcConfig {
  int population_size = 300;
  int offspring_per_iter = 50;
  int tournament_size = 4;
  double population_mutation_fraction = 0.20;
  double gene_mutation_prob = 0.10;
  double fitter_bias = 0.7;  // chance a disagreeing gene comes from the fitter parent
  int iterations = 1000;
  std::uint64_t seed = 0;
};

/// Greedy 1-flip refinement: sweep the nodes in order; flipping node i changes
/// the cut by gain(i) = sum_j w_ij * (1 - 2*[x_i != x_j]); flip whenever the
/// gain is positive. Sweeps repeat until one makes no flip or n sweeps ran, so
/// the output has no improving single flip unless capped.
inline std::vector<std::uint8_t> gaoc_refine(const WeightedGraph& g,
                                             std::vector<std::uint8_t> bits) {
  const int n = g.n();
  if (static_cast<int>(bits.size()) != n)
    throw std::invalid_argument("gaoc_refine: assignment length does not match node count");
  for (int pass = 0; pass < n; ++pass) {
    bool flipped = false;
    for (int i = 0; i < n; ++i) {
      double gain = 0.0;
      for (const auto& [j, w] : g.neighbors(i))
        gain += w * (bits[static_cast<std::size_t>(i)] != bits[static_cast<std::size_t>(j)]
                         ? -1.0
                         : 1.0);
      if (gain > 0.0) {
        bits[static_cast<std::size_t>(i)] ^= 1;
        flipped = true;
      }
    }
    if (!flipped) break;
  }
  return bits;
}

/// Steady-state GA with greedy refinement. Each iteration builds
/// offspring_per_iter children: two tournament winners (tournament_size
/// distinct candidates, best wins) recombine by biased uniform crossover —
/// agreeing genes are copied, disagreeing genes come from the fitter parent
/// with probability fitter_bias — and every child is refined. Afterwards a
/// population_mutation_fraction share of the population (never the current
/// best) mutates per-gene, and the children replace the worst individuals.
inline GaRunResult gaoc_solve(const WeightedGraph& g, const GaOcConfig& cfg) {
  if (cfg.population_size < 1) throw std::invalid_argument("gaoc: population_size must be >= 1");
  if (cfg.offspring_per_iter < 1 || cfg.offspring_per_iter > cfg.population_size)
    throw std::invalid_argument("gaoc: offspring_per_iter must be in [1, population_size]");
  if (cfg.tournament_size < 1 || cfg.tournament_size > cfg.population_size)
    throw std::invalid_argument("gaoc: tournament_size must be in [1, population_size]");
  if (cfg.population_mutation_fraction < 0.0 || cfg.population_mutation_fraction > 1.0)
    throw std::invalid_argument("gaoc: population_mutation_fraction must be in [0, 1]");
  if (cfg.gene_mutation_prob < 0.0 || cfg.gene_mutation_prob > 1.0)
    throw std::invalid_argument("gaoc: gene_mutation_prob must be in [0, 1]");
  if (cfg.fitter_bias < 0.5 || cfg.fitter_bias > 1.0)
    throw std::invalid_argument("gaoc: fitter_bias must be in [0.5, 1]");
  if (cfg.iterations < 1) throw std::invalid_argument("gaoc: iterations must be >= 1");

  const int n = g.n();
  const auto pop_size = static_cast<std::size_t>(cfg.population_size);
  Rng rng(cfg.seed);

  std::vector<std::vector<std::uint8_t>> pop(pop_size);
  std::vector<double> fitness(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    pop[i] = detail::random_individual(n, rng);
    fitness[i] = cut_value(g, pop[i]);
  }

  auto best_index = [&] {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop_size; ++i)
      if (fitness[i] > fitness[best]) best = i;
    return best;
  };

  // Tournament over tournament_size distinct population indices.
  std::vector<std::size_t> sample(static_cast<std::size_t>(cfg.tournament_size));
  auto tournament_winner = [&]() -> std::size_t {
    for (std::size_t t = 0; t < sample.size(); ++t) {
      std::size_t idx;
      bool fresh;
      do {
        idx = static_cast<std::size_t>(rng.below(pop_size));
        fresh = true;
        for (std::size_t s = 0; s < t; ++s)
          if (sample[s] == idx) fresh = false;
      } while (!fresh);
      sample[t] = idx;
    }
    std::size_t win = sample[0];
    for (std::size_t t = 1; t < sample.size(); ++t)
      if (fitness[sample[t]] > fitness[win]) win = sample[t];
    return win;
  };

  GaRunResult result;
  {
    const std::size_t b = best_index();
    result.best.bits = pop[b];
    result.best.cut_value = fitness[b];
  }
  result.fitness_history.reserve(static_cast<std::size_t>(cfg.iterations));

  const auto offspring = static_cast<std::size_t>(cfg.offspring_per_iter);
  std::vector<std::vector<std::uint8_t>> children(offspring);
  std::vector<double> child_fit(offspring);
  const auto mutants = static_cast<std::size_t>(
      std::llround(cfg.population_mutation_fraction * cfg.population_size));
  std::vector<std::size_t> shuffle_idx(pop_size);
  std::vector<std::size_t> order(pop_size);

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    for (std::size_t c = 0; c < offspring; ++c) {
      const std::size_t pa = tournament_winner();
      const std::size_t pb = tournament_winner();
      const std::size_t fitter = fitness[pa] >= fitness[pb] ? pa : pb;
      const std::size_t other = fitter == pa ? pb : pa;
      std::vector<std::uint8_t> child(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < child.size(); ++i) {
        if (pop[pa][i] == pop[pb][i])
          child[i] = pop[pa][i];
        else
          child[i] = rng.bernoulli(cfg.fitter_bias) ? pop[fitter][i] : pop[other][i];
      }
      children[c] = gaoc_refine(g, std::move(child));
      child_fit[c] = cut_value(g, children[c]);
    }

    // Mutate a fixed share of the population, sparing the current best.
    if (mutants > 0 && pop_size > 1) {
      const std::size_t best = best_index();
      std::iota(shuffle_idx.begin(), shuffle_idx.end(), std::size_t{0});
      std::swap(shuffle_idx[best], shuffle_idx[pop_size - 1]);  // exclude best from the pool
      const std::size_t pool = pop_size - 1;
      const std::size_t picks = std::min(mutants, pool);
      for (std::size_t t = 0; t < picks; ++t) {
        const std::size_t r = t + static_cast<std::size_t>(rng.below(pool - t));
        std::swap(shuffle_idx[t], shuffle_idx[r]);
        const std::size_t victim = shuffle_idx[t];
        bool changed = false;
        for (auto& b : pop[victim])
          if (rng.bernoulli(cfg.gene_mutation_prob)) {
            b ^= 1;
            changed = true;
          }
        if (changed) fitness[victim] = cut_value(g, pop[victim]);
      }
    }

    // Children replace the worst individuals.
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return fitness[a] != fitness[b] ? fitness[a] < fitness[b] : a < b;
    });
    for (std::size_t c = 0; c < offspring; ++c) {
      const std::size_t victim = order[c];
      pop[victim] = std::move(children[c]);
      fitness[victim] = child_fit[c];
    }

    const std::size_t b = best_index();
    if (fitness[b] > result.best.cut_value) {
      result.best.bits = pop[b];
      result.best.cut_value = fitness[b];
    }
    result.fitness_history.push_back(result.best.cut_value);
  }
  result.generations_executed = cfg.iterations;
  return result;
}

}  // namespace cutbench
