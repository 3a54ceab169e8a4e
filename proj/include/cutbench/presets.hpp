#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutbench/cga.hpp"
#include "cutbench/dmrg.hpp"
#include "cutbench/gaoc.hpp"
#include "cutbench/gnn.hpp"
#include "cutbench/graph.hpp"

namespace cutbench {

/// The eight benchmark solver configurations, one per comparison column.
inline const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids = {"dmrg-chi2", "dmrg-chi10p", "dmrg-chi20p",
                                               "gnn",       "gaoc",        "cga-500",
                                               "cga-1000",  "cga-2000"};
  return ids;
}

inline bool is_preset(const std::string& id) {
  const auto& ids = preset_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace detail {

inline int preset_chi(const std::string& id, int n) {
  if (id == "dmrg-chi2") return 2;
  const double fraction = id == "dmrg-chi10p" ? 0.10 : 0.20;
  return std::max(1, static_cast<int>(std::ceil(fraction * n)));
}

inline int preset_population(const std::string& id) {
  if (id == "cga-500") return 500;
  if (id == "cga-1000") return 1000;
  return 2000;
}

}  // namespace detail

/// Human-readable parameter summary recorded with every run.
inline std::string preset_params(const std::string& id, int n) {
  if (id.rfind("dmrg-", 0) == 0) return "chi=" + std::to_string(detail::preset_chi(id, n));
  if (id == "gnn") return "embed=369,hidden=5,lr=0.00467,epochs=10000";
  if (id == "gaoc") return "pop=300,offspring=50,iters=1000";
  if (id.rfind("cga-", 0) == 0)
    return "pop=" + std::to_string(detail::preset_population(id)) + ",gens=1000";
  throw std::invalid_argument("preset_params: unknown preset '" + id + "'");
}

/// Documented capacity-based peak-memory estimates, used when allocation
/// instrumentation is off. DMRG: two stacks of per-channel chi x chi
/// environment matrices (channel count grows with n). GNN: normalized
/// adjacency plus parameter/optimizer state. GAs: population and offspring
/// buffers plus fitness arrays.
inline std::uint64_t estimate_bytes_dmrg(int n, int chi) {
  return static_cast<std::uint64_t>(8.0 * n * n * chi * chi);
}

inline std::uint64_t estimate_bytes_gnn(int n, int embed_dim, int hidden_dim) {
  const double d0 = embed_dim, d1 = hidden_dim;
  return static_cast<std::uint64_t>(
      8.0 * (static_cast<double>(n) * n + 3.0 * n * d0 + 3.0 * d0 * d1 + 2.0 * n * d1));
}

inline std::uint64_t estimate_bytes_ga(int n, int population_like) {
  return static_cast<std::uint64_t>(2.0 * population_like * (n + 8.0));
}

inline std::uint64_t preset_estimate_bytes(const std::string& id, int n) {
  if (id.rfind("dmrg-", 0) == 0) return estimate_bytes_dmrg(n, detail::preset_chi(id, n));
  if (id == "gnn") return estimate_bytes_gnn(n, 369, 5);
  if (id == "gaoc") return estimate_bytes_ga(n, 300 + 50);
  if (id.rfind("cga-", 0) == 0) return estimate_bytes_ga(n, detail::preset_population(id));
  throw std::invalid_argument("preset_estimate_bytes: unknown preset '" + id + "'");
}

/// Run one preset on one instance with one seed.
inline CutAssignment run_preset(const std::string& id, const WeightedGraph& g,
                                std::uint64_t seed) {
  if (id.rfind("dmrg-", 0) == 0) {
    DmrgConfig cfg;
    cfg.chi = detail::preset_chi(id, g.n());
    cfg.seed = seed;
    return dmrg_solve(g, cfg).assignment;
  }
  if (id == "gnn") {
    GnnConfig cfg;
    cfg.seed = seed;
    return gnn_train_and_project(g, cfg).best;
  }
  if (id == "gaoc") {
    GaOcConfig cfg;
    cfg.seed = seed;
    return gaoc_solve(g, cfg).best;
  }
  if (id.rfind("cga-", 0) == 0) {
    CgaConfig cfg;
    cfg.population_size = detail::preset_population(id);
    cfg.seed = seed;
    return cga_solve(g, cfg).best;
  }
  throw std::invalid_argument("run_preset: unknown preset '" + id + "'");
}

}  // namespace cutbench
