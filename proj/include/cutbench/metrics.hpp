#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cutbench {

struct ArSummary {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

/// Averaged approximation ratio over repeated runs: mean of cut_r / optimum
/// and the population standard deviation of those ratios.
inline ArSummary approximation_ratio(std::span<const double> runs, double optimum) {
  if (!(optimum > 0.0)) throw std::invalid_argument("approximation_ratio: optimum must be > 0");
  if (runs.empty()) throw std::invalid_argument("approximation_ratio: need at least one run");
  double mean = 0.0;
  for (double c : runs) {
    if (c < 0.0) throw std::invalid_argument("approximation_ratio: cut values must be >= 0");
    mean += c / optimum;
  }
  mean /= static_cast<double>(runs.size());
  double var = 0.0;
  for (double c : runs) {
    const double d = c / optimum - mean;
    var += d * d;
  }
  var /= static_cast<double>(runs.size());
  return ArSummary{mean, std::sqrt(var)};
}

/// One solver run's outcome. The JSON field names are a stability contract
/// for the results files (one JSON object per line).
struct SolverRunRecord {
  std::string instance_id;
  std::string solver_id;
  std::string params;     // human-readable parameter summary
  int run_index = 1;      // 1..R
  std::uint64_t seed = 0;
  double best_cut = 0.0;
  double time_ms = 0.0;
  std::uint64_t peak_mem_bytes = 0;
  std::string status = "ok";  // "ok" or "failed"
  // Optional context stamped by the bench harness.
  int n = 0;                     // node count, 0 if unknown
  double optimum = 0.0;          // reference cut for AR, 0 if unknown
  std::string optimum_mode;      // "exact", "best-known", or empty
  std::string mem_mode;          // "tracked", "estimated", or empty
};

inline nlohmann::json to_json(const SolverRunRecord& r) {
  nlohmann::json j{{"instance_id", r.instance_id},
                   {"solver_id", r.solver_id},
                   {"params", r.params},
                   {"run_index", r.run_index},
                   {"seed", r.seed},
                   {"best_cut", r.best_cut},
                   {"time_ms", r.time_ms},
                   {"peak_mem_bytes", r.peak_mem_bytes},
                   {"status", r.status}};
  if (r.n > 0) j["n"] = r.n;
  if (r.optimum > 0.0) j["optimum"] = r.optimum;
  if (!r.optimum_mode.empty()) j["optimum_mode"] = r.optimum_mode;
  if (!r.mem_mode.empty()) j["mem_mode"] = r.mem_mode;
  return j;
}

inline SolverRunRecord record_from_json(const nlohmann::json& j) {
  SolverRunRecord r;
  r.instance_id = j.at("instance_id").get<std::string>();
  r.solver_id = j.at("solver_id").get<std::string>();
  r.params = j.value("params", std::string{});
  r.run_index = j.at("run_index").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.best_cut = j.at("best_cut").get<double>();
  r.time_ms = j.at("time_ms").get<double>();
  r.peak_mem_bytes = j.at("peak_mem_bytes").get<std::uint64_t>();
  r.status = j.at("status").get<std::string>();
  r.n = j.value("n", 0);
  r.optimum = j.value("optimum", 0.0);
  r.optimum_mode = j.value("optimum_mode", std::string{});
  r.mem_mode = j.value("mem_mode", std::string{});
  return r;
}

/// Mean metric per (instance, solver) cell, feeding the Friedman test.
struct RankTable {
  std::vector<std::string> solver_ids;    // k columns
  std::vector<std::string> instance_ids;  // n rows
  Eigen::MatrixXd means;                  // n x k
};

}  // namespace cutbench
