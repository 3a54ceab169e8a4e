#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cutbench/brute_force.hpp"
#include "cutbench/cd_report.hpp"
#include "cutbench/errors.hpp"
#include "cutbench/friedman.hpp"
#include "cutbench/generate.hpp"
#include "cutbench/graph.hpp"
#include "cutbench/graph_io.hpp"
#include "cutbench/measure.hpp"
#include "cutbench/metrics.hpp"
#include "cutbench/presets.hpp"
#include "cutbench/rng.hpp"

namespace cutbench {

/// One benchmark instance: either a graph file or a generator request.
struct InstanceSpec {
  std::string id;
  bool from_file = false;
  std::string path;    // used when from_file
  GeneratorConfig gen; // used otherwise
};

/// A parsed suite description: which instances, which solvers, how many
/// repeats, and where the outputs go.
struct SuiteConfig {
  int runs = 10;
  std::uint64_t base_seed = 0;
  std::string output_dir = "bench-out";
  std::vector<InstanceSpec> instances;
  std::vector<std::string> solvers;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::string format_compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline double parse_suite_double(const std::string& text, int line, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, what + ": expected a number, got '" + text + "'");
  }
}

inline long long parse_suite_int(const std::string& text, int line, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, what + ": expected an integer, got '" + text + "'");
  }
}

inline std::uint64_t parse_suite_u64(const std::string& text, int line, const std::string& what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ParseError(line, what + ": expected a non-negative integer, got '" + text + "'");
  }
}

}  // namespace detail

/// Parse a suite description. Format, one directive per line:
///
///   # comment (full line)
///   runs = R
///   base_seed = S
///   output = DIR
///   instance gen n=10 p=0.8 wmin=0 wmax=2 seed=1
///   instance file path/to/graph.edg
///   solver dmrg-chi2
///
/// Generator keys are optional and default to n=10, p=0.8, wmin=0, wmax=2,
/// seed=0. Generated instances are named "nN-pP-sS"; file instances take the
/// file stem. Duplicate instance ids or solver ids are rejected.
inline SuiteConfig parse_suite(std::istream& in) {
  SuiteConfig cfg;
  std::string raw;
  int line_no = 0;
  bool saw_runs = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;

    std::istringstream ls(line);
    std::string head;
    ls >> head;

    if (head == "runs" || head == "base_seed" || head == "output") {
      std::string eq;
      ls >> eq;
      if (eq != "=") throw ParseError(line_no, "expected '" + head + " = VALUE'");
      std::string rest;
      std::getline(ls, rest);
      rest = detail::trim(rest);
      if (rest.empty()) throw ParseError(line_no, "expected '" + head + " = VALUE'");
      if (head == "runs") {
        const long long r = detail::parse_suite_int(rest, line_no, "runs");
        if (r < 1) throw ParseError(line_no, "runs must be >= 1");
        cfg.runs = static_cast<int>(r);
        saw_runs = true;
      } else if (head == "base_seed") {
        cfg.base_seed = detail::parse_suite_u64(rest, line_no, "base_seed");
      } else {
        cfg.output_dir = rest;
      }
      continue;
    }

    if (head == "instance") {
      std::string kind;
      ls >> kind;
      InstanceSpec spec;
      if (kind == "file") {
        std::string rest;
        std::getline(ls, rest);
        rest = detail::trim(rest);
        if (rest.empty()) throw ParseError(line_no, "instance file: missing path");
        spec.from_file = true;
        spec.path = rest;
        spec.id = std::filesystem::path(rest).stem().string();
        if (spec.id.empty()) throw ParseError(line_no, "instance file: path has no stem");
      } else if (kind == "gen") {
        spec.gen = GeneratorConfig{};
        std::string kv;
        while (ls >> kv) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos || eq == 0 || eq + 1 >= kv.size())
            throw ParseError(line_no, "instance gen: expected key=value, got '" + kv + "'");
          const std::string key = kv.substr(0, eq);
          const std::string val = kv.substr(eq + 1);
          if (key == "n") {
            const long long n = detail::parse_suite_int(val, line_no, "n");
            if (n < 1) throw ParseError(line_no, "instance gen: n must be >= 1");
            spec.gen.n = static_cast<int>(n);
          } else if (key == "p") {
            spec.gen.edge_probability = detail::parse_suite_double(val, line_no, "p");
          } else if (key == "wmin") {
            spec.gen.weight_min = detail::parse_suite_double(val, line_no, "wmin");
          } else if (key == "wmax") {
            spec.gen.weight_max = detail::parse_suite_double(val, line_no, "wmax");
          } else if (key == "seed") {
            spec.gen.seed = detail::parse_suite_u64(val, line_no, "seed");
          } else {
            throw ParseError(line_no, "instance gen: unknown key '" + key + "'");
          }
        }
        if (!(spec.gen.edge_probability > 0.0) || spec.gen.edge_probability > 1.0)
          throw ParseError(line_no, "instance gen: p must be in (0, 1]");
        if (spec.gen.weight_min < 0.0 || spec.gen.weight_max < spec.gen.weight_min)
          throw ParseError(line_no, "instance gen: need 0 <= wmin <= wmax");
        spec.id = "n" + std::to_string(spec.gen.n) + "-p" +
                  detail::format_compact(spec.gen.edge_probability) + "-s" +
                  std::to_string(spec.gen.seed);
      } else {
        throw ParseError(line_no, "instance: expected 'gen' or 'file', got '" + kind + "'");
      }
      for (const auto& other : cfg.instances)
        if (other.id == spec.id)
          throw ParseError(line_no, "duplicate instance id '" + spec.id + "'");
      cfg.instances.push_back(std::move(spec));
      continue;
    }

    if (head == "solver") {
      std::string id;
      ls >> id;
      std::string extra;
      if (id.empty() || (ls >> extra))
        throw ParseError(line_no, "solver: expected exactly one solver id");
      if (!is_preset(id)) {
        std::string known;
        for (const auto& p : preset_ids()) known += (known.empty() ? "" : ", ") + p;
        throw ParseError(line_no, "unknown solver '" + id + "' (known: " + known + ")");
      }
      if (std::find(cfg.solvers.begin(), cfg.solvers.end(), id) != cfg.solvers.end())
        throw ParseError(line_no, "duplicate solver '" + id + "'");
      cfg.solvers.push_back(id);
      continue;
    }

    throw ParseError(line_no, "unknown directive '" + head + "'");
  }
  if (cfg.instances.empty()) throw ParseError(line_no, "suite defines no instances");
  if (cfg.solvers.empty()) throw ParseError(line_no, "suite defines no solvers");
  (void)saw_runs;
  return cfg;
}

inline SuiteConfig parse_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open suite file: " + path);
  return parse_suite(in);
}

/// Per-run seed: mixes the suite base seed with instance id, solver id, and
/// repeat index so every cell run draws an independent, reproducible stream.
inline std::uint64_t suite_run_seed(std::uint64_t base_seed, const std::string& instance_id,
                                    const std::string& solver_id, int run_index) {
  std::string key = instance_id;
  key += '\x1f';
  key += solver_id;
  key += '\x1f';
  key += std::to_string(run_index);
  return base_seed ^ fnv1a64(key.data(), key.size());
}

struct SuiteOutcome {
  std::vector<SolverRunRecord> records;
  std::string results_path;
  std::vector<std::string> table_paths;  // AR, time, memory
  int cells_total = 0;
  int cells_ok = 0;  // cells with at least one successful run
};

namespace detail {

struct CellStats {
  int ok = 0;
  int total = 0;
  double mean = 0.0;
  double stddev = 0.0;
  bool has_value = false;
};

inline CellStats cell_stats(const std::vector<double>& vals, int total) {
  CellStats c;
  c.total = total;
  c.ok = static_cast<int>(vals.size());
  if (vals.empty()) return c;
  for (double v : vals) c.mean += v;
  c.mean /= static_cast<double>(vals.size());
  double var = 0.0;
  for (double v : vals) var += (v - c.mean) * (v - c.mean);
  var /= static_cast<double>(vals.size());
  c.stddev = std::sqrt(var);
  c.has_value = true;
  return c;
}

inline std::string format_cell(const CellStats& c, int decimals) {
  if (!c.has_value) return c.total > 0 ? "failed" : "n/a";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*f±%.*f", decimals, c.mean, decimals, c.stddev);
  std::string s = buf;
  if (c.ok < c.total) s += " [" + std::to_string(c.ok) + "/" + std::to_string(c.total) + "]";
  return s;
}

/// Write one aligned summary table. `best_is_max` picks which row cell earns
/// the '*' marker.
inline void write_table(std::ostream& out, const std::string& title,
                        const std::vector<std::string>& instance_ids,
                        const std::vector<std::string>& solver_ids,
                        const std::vector<std::vector<CellStats>>& cells, int decimals,
                        bool best_is_max) {
  const std::size_t rows = instance_ids.size(), cols = solver_ids.size();
  std::vector<std::vector<std::string>> text(rows, std::vector<std::string>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    int best = -1;
    for (std::size_t j = 0; j < cols; ++j) {
      if (!cells[i][j].has_value) continue;
      if (best < 0 || (best_is_max ? cells[i][j].mean > cells[i][static_cast<std::size_t>(best)].mean
                                   : cells[i][j].mean < cells[i][static_cast<std::size_t>(best)].mean))
        best = static_cast<int>(j);
    }
    for (std::size_t j = 0; j < cols; ++j) {
      text[i][j] = format_cell(cells[i][j], decimals);
      if (static_cast<int>(j) == best) text[i][j] += " *";
    }
  }
  std::vector<std::size_t> width(cols + 1, 8);
  width[0] = std::string("instance").size();
  for (const auto& id : instance_ids) width[0] = std::max(width[0], id.size());
  for (std::size_t j = 0; j < cols; ++j) {
    width[j + 1] = solver_ids[j].size();
    for (std::size_t i = 0; i < rows; ++i) width[j + 1] = std::max(width[j + 1], text[i][j].size());
  }
  const auto pad = [&](const std::string& s, std::size_t w) {
    std::string p = s;
    p.resize(std::max(w, s.size()), ' ');
    return p;
  };
  out << title << '\n';
  out << pad("instance", width[0]);
  for (std::size_t j = 0; j < cols; ++j) out << "  " << pad(solver_ids[j], width[j + 1]);
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out << pad(instance_ids[i], width[0]);
    for (std::size_t j = 0; j < cols; ++j) out << "  " << pad(text[i][j], width[j + 1]);
    out << '\n';
  }
}

inline void write_text_file_atomic(const std::filesystem::path& path, const std::string& body) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << body;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

/// Load the graph behind an instance spec.
inline WeightedGraph load_instance(const InstanceSpec& spec) {
  if (spec.from_file) return read_graph(spec.path);
  return generate(spec.gen);
}

/// Execute every (instance, solver, repeat) cell of a suite, stamp reference
/// optima (exact to n = 24, best observed cut above), and write results.jsonl
/// plus the three summary tables into the suite's output directory. Solver
/// failures become status="failed" records; the suite keeps going. Memory
/// tracking serializes runs through one global allocation counter; pass
/// track_memory=false to record the documented capacity estimates instead.
inline SuiteOutcome run_suite(const SuiteConfig& cfg, bool track_memory = true,
                              std::ostream* progress = nullptr) {
  if (cfg.runs < 1) throw std::invalid_argument("run_suite: runs must be >= 1");
  if (cfg.instances.empty()) throw std::invalid_argument("run_suite: no instances");
  if (cfg.solvers.empty()) throw std::invalid_argument("run_suite: no solvers");
  for (const auto& s : cfg.solvers)
    if (!is_preset(s)) throw std::invalid_argument("run_suite: unknown solver '" + s + "'");

  SuiteOutcome outcome;
  const std::size_t cols = cfg.solvers.size();
  std::vector<std::string> instance_ids;
  std::vector<std::vector<detail::CellStats>> ar_cells, time_cells, mem_cells;

  for (const auto& spec : cfg.instances) {
    const WeightedGraph g = load_instance(spec);
    double optimum = 0.0;
    std::string optimum_mode;
    if (g.n() <= 24) {
      optimum = brute_force_optimum(g).cut_value;
      optimum_mode = "exact";
    }

    std::vector<SolverRunRecord> local;
    local.reserve(cols * static_cast<std::size_t>(cfg.runs));
    std::vector<detail::CellStats> ar_row(cols), time_row(cols), mem_row(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      const std::string& solver = cfg.solvers[j];
      std::vector<double> cuts, times, mems;
      for (int r = 1; r <= cfg.runs; ++r) {
        SolverRunRecord rec;
        rec.instance_id = spec.id;
        rec.solver_id = solver;
        rec.params = preset_params(solver, g.n());
        rec.run_index = r;
        rec.seed = suite_run_seed(cfg.base_seed, spec.id, solver, r);
        rec.n = g.n();
        try {
          auto measured = measure_run([&] { return run_preset(solver, g, rec.seed); },
                                      preset_estimate_bytes(solver, g.n()), track_memory);
          rec.best_cut = measured.result.cut_value;
          rec.time_ms = measured.time_ms;
          rec.peak_mem_bytes = measured.peak_mem_bytes;
          rec.mem_mode = measured.mem_mode;
          cuts.push_back(rec.best_cut);
          times.push_back(rec.time_ms);
          mems.push_back(static_cast<double>(rec.peak_mem_bytes) / (1024.0 * 1024.0));
        } catch (const SolverFailure& e) {
          rec.status = "failed";
          rec.params += std::string(";error=") + e.what();
        }
        local.push_back(std::move(rec));
      }
      outcome.cells_total += 1;
      if (!cuts.empty()) outcome.cells_ok += 1;
      time_row[j] = detail::cell_stats(times, cfg.runs);
      mem_row[j] = detail::cell_stats(mems, cfg.runs);
      if (progress) {
        *progress << spec.id << " x " << solver << ": " << cuts.size() << "/" << cfg.runs
                  << " ok";
        if (!cuts.empty())
          *progress << ", best cut " << *std::max_element(cuts.begin(), cuts.end());
        *progress << '\n';
      }
    }

    if (optimum_mode.empty()) {
      // Too large for the exact oracle: normalize by the best cut any solver
      // found on this instance.
      double best_known = 0.0;
      for (const auto& rec : local)
        if (rec.status == "ok") best_known = std::max(best_known, rec.best_cut);
      if (best_known > 0.0) {
        optimum = best_known;
        optimum_mode = "best-known";
      }
    }
    for (auto& rec : local) {
      rec.optimum = optimum;
      rec.optimum_mode = optimum > 0.0 ? optimum_mode : std::string{};
    }

    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<double> ars;
      if (optimum > 0.0)
        for (const auto& rec : local)
          if (rec.solver_id == cfg.solvers[j] && rec.status == "ok")
            ars.push_back(rec.best_cut / optimum);
      // total = 0 renders "n/a" (no reference optimum) rather than "failed".
      ar_row[j] = detail::cell_stats(ars, optimum > 0.0 ? cfg.runs : 0);
    }

    instance_ids.push_back(spec.id);
    ar_cells.push_back(std::move(ar_row));
    time_cells.push_back(std::move(time_row));
    mem_cells.push_back(std::move(mem_row));
    for (auto& rec : local) outcome.records.push_back(std::move(rec));
  }

  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);

  {
    std::ostringstream body;
    for (const auto& rec : outcome.records) body << to_json(rec).dump() << '\n';
    detail::write_text_file_atomic(dir / "results.jsonl", body.str());
    outcome.results_path = (dir / "results.jsonl").string();
  }

  const std::string legend = " (mean±std over successful runs; '*' best per row; [k/R] marks partial failures)";
  struct TableSpec {
    const char* file;
    std::string title;
    const std::vector<std::vector<detail::CellStats>>* cells;
    int decimals;
    bool best_is_max;
  };
  const TableSpec tables[] = {
      {"table_ar.txt", "approximation ratio" + legend, &ar_cells, 4, true},
      {"table_time.txt", "wall time, ms" + legend, &time_cells, 1, false},
      {"table_mem.txt", "peak memory, MiB" + legend, &mem_cells, 3, false},
  };
  for (const auto& t : tables) {
    std::ostringstream body;
    detail::write_table(body, t.title, instance_ids, cfg.solvers, *t.cells, t.decimals,
                        t.best_is_max);
    detail::write_text_file_atomic(dir / t.file, body.str());
    outcome.table_paths.push_back((dir / t.file).string());
  }
  return outcome;
}

/// Read records back from a results.jsonl file (one JSON object per line).
inline std::vector<SolverRunRecord> read_records_jsonl(std::istream& in) {
  std::vector<SolverRunRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(t)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, std::string("bad record: ") + e.what());
    }
  }
  return records;
}

inline std::vector<SolverRunRecord> read_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results file: " + path);
  return read_records_jsonl(in);
}

/// Aggregated cross-solver comparison over a set of run records.
struct StatsReport {
  std::vector<std::string> solver_ids;
  std::vector<std::string> instance_ids;
  Eigen::MatrixXd mean_ar;  // instances x solvers
  FriedmanResult friedman;
  double cd = 0.0;
  std::vector<std::vector<std::string>> groups;
};

/// Build the per-(instance, solver) mean-AR table from records and run the
/// rank-based comparison on it. Every instance must carry a positive
/// reference optimum and at least one successful run for every solver that
/// appears anywhere in the records; gaps are reported by name.
inline StatsReport compute_stats(const std::vector<SolverRunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("compute_stats: no records");
  StatsReport rep;
  const auto index_of = [](std::vector<std::string>& ids, const std::string& id) {
    const auto it = std::find(ids.begin(), ids.end(), id);
    if (it != ids.end()) return static_cast<std::size_t>(it - ids.begin());
    ids.push_back(id);
    return ids.size() - 1;
  };
  std::vector<std::vector<std::vector<double>>> ars;  // [instance][solver] -> run ARs
  std::vector<double> optima;
  for (const auto& rec : records) {
    const std::size_t i = index_of(rep.instance_ids, rec.instance_id);
    const std::size_t j = index_of(rep.solver_ids, rec.solver_id);
    if (ars.size() < rep.instance_ids.size()) ars.resize(rep.instance_ids.size());
    if (optima.size() < rep.instance_ids.size()) optima.resize(rep.instance_ids.size(), 0.0);
    for (auto& row : ars)
      if (row.size() < rep.solver_ids.size()) row.resize(rep.solver_ids.size());
    if (rec.optimum > 0.0) optima[i] = rec.optimum;
    if (rec.status == "ok" && rec.optimum > 0.0)
      ars[i][j].push_back(rec.best_cut / rec.optimum);
  }

  const std::size_t n = rep.instance_ids.size(), k = rep.solver_ids.size();
  rep.mean_ar.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(optima[i] > 0.0))
      throw std::invalid_argument("compute_stats: instance '" + rep.instance_ids[i] +
                                  "' has no positive reference optimum");
    for (std::size_t j = 0; j < k; ++j) {
      if (ars[i][j].empty())
        throw std::invalid_argument("compute_stats: instance '" + rep.instance_ids[i] +
                                    "' has no successful runs for solver '" + rep.solver_ids[j] +
                                    "'");
      double mean = 0.0;
      for (double v : ars[i][j]) mean += v;
      rep.mean_ar(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          mean / static_cast<double>(ars[i][j].size());
    }
  }

  rep.friedman = friedman_test(rep.mean_ar, /*higher_is_better=*/true);
  rep.cd = nemenyi_critical_difference(static_cast<int>(k), static_cast<int>(n));
  rep.groups = cd_groups(rep.solver_ids, rep.friedman.avg_ranks, rep.cd);
  return rep;
}

/// JSON form of the comparison report. The key names are a stability
/// contract: chi2_F, p_value, avg_ranks, cd, groups.
inline nlohmann::json stats_report_json(const StatsReport& rep) {
  nlohmann::json mean_ar = nlohmann::json::array();
  for (Eigen::Index i = 0; i < rep.mean_ar.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < rep.mean_ar.cols(); ++j) row.push_back(rep.mean_ar(i, j));
    mean_ar.push_back(std::move(row));
  }
  return nlohmann::json{{"chi2_F", rep.friedman.chi2_f},
                        {"p_value", rep.friedman.p_value},
                        {"avg_ranks", rep.friedman.avg_ranks},
                        {"cd", rep.cd},
                        {"groups", rep.groups},
                        {"solver_ids", rep.solver_ids},
                        {"instance_ids", rep.instance_ids},
                        {"mean_ar", std::move(mean_ar)}};
}

}  // namespace cutbench
