// Command-line workbench: generate instances, run single solves, execute
// benchmark suites, and aggregate results into rank-based comparisons.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#define CUTBENCH_MEMTRACK_IMPLEMENT
#include "cutbench/cutbench.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cutbench;

int cmd_gen(int nodes, double density, double wmin, double wmax, std::uint64_t seed,
            const std::string& out_path) {
  if (wmax < wmin) {
    std::cerr << "usage error: --wmax must be >= --wmin\n";
    return 1;
  }
  GeneratorConfig cfg;
  cfg.n = nodes;
  cfg.edge_probability = density;
  cfg.weight_min = wmin;
  cfg.weight_max = wmax;
  cfg.seed = seed;
  const WeightedGraph g = generate(cfg);
  write_graph(g, out_path);
  std::cout << "wrote " << out_path << ": " << g.n() << " nodes, " << g.edges().size()
            << " edges\n";
  return 0;
}

struct SolveFlags {
  std::string graph_path;
  std::string solver;
  std::string out_path = "results.jsonl";
  std::uint64_t seed = 0;
  bool no_mem = false;
  int pop = -1;  // resolved per solver family
  int gens = 1000;
  int offspring = 50;
  int iters = 1000;
  int chi = 2;
  int sweeps = 20;
  int embed = 369;
  int hidden = 5;
  double lr = 0.00467;
  int epochs = 10000;
};

int cmd_solve(const SolveFlags& f) {
  const WeightedGraph g = read_graph(f.graph_path);
  const int n = g.n();

  std::string params;
  std::uint64_t estimate = 0;
  std::function<CutAssignment()> run;
  if (f.solver == "cga") {
    CgaConfig cfg;
    cfg.population_size = f.pop > 0 ? f.pop : 500;
    cfg.generations = f.gens;
    cfg.seed = f.seed;
    params = "pop=" + std::to_string(cfg.population_size) +
             ",gens=" + std::to_string(cfg.generations);
    estimate = estimate_bytes_ga(n, cfg.population_size);
    run = [&g, cfg] { return cga_solve(g, cfg).best; };
  } else if (f.solver == "gaoc") {
    GaOcConfig cfg;
    cfg.population_size = f.pop > 0 ? f.pop : 300;
    cfg.offspring_per_iter = f.offspring;
    cfg.iterations = f.iters;
    cfg.seed = f.seed;
    params = "pop=" + std::to_string(cfg.population_size) +
             ",offspring=" + std::to_string(cfg.offspring_per_iter) +
             ",iters=" + std::to_string(cfg.iterations);
    estimate = estimate_bytes_ga(n, cfg.population_size + cfg.offspring_per_iter);
    run = [&g, cfg] { return gaoc_solve(g, cfg).best; };
  } else if (f.solver == "gnn") {
    GnnConfig cfg;
    cfg.embed_dim = f.embed;
    cfg.hidden_dim = f.hidden;
    cfg.learning_rate = f.lr;
    cfg.max_epochs = f.epochs;
    cfg.seed = f.seed;
    std::ostringstream ps;
    ps << "embed=" << cfg.embed_dim << ",hidden=" << cfg.hidden_dim << ",lr=" << cfg.learning_rate
       << ",epochs=" << cfg.max_epochs;
    params = ps.str();
    estimate = estimate_bytes_gnn(n, cfg.embed_dim, cfg.hidden_dim);
    run = [&g, cfg] { return gnn_train_and_project(g, cfg).best; };
  } else {  // dmrg
    DmrgConfig cfg;
    cfg.chi = f.chi;
    cfg.max_sweeps = f.sweeps;
    cfg.seed = f.seed;
    params = "chi=" + std::to_string(cfg.chi) + ",sweeps=" + std::to_string(cfg.max_sweeps);
    estimate = estimate_bytes_dmrg(n, cfg.chi);
    run = [&g, cfg] { return dmrg_solve(g, cfg).assignment; };
  }

  SolverRunRecord rec;
  rec.instance_id = std::filesystem::path(f.graph_path).stem().string();
  rec.solver_id = f.solver;
  rec.params = params;
  rec.run_index = 1;
  rec.seed = f.seed;
  rec.n = n;
  if (n <= 24) {
    rec.optimum = brute_force_optimum(g).cut_value;
    if (rec.optimum > 0.0) rec.optimum_mode = "exact";
    else rec.optimum = 0.0;
  }

  bool failed = false;
  try {
    auto measured = measure_run(run, estimate, !f.no_mem);
    rec.best_cut = measured.result.cut_value;
    rec.time_ms = measured.time_ms;
    rec.peak_mem_bytes = measured.peak_mem_bytes;
    rec.mem_mode = measured.mem_mode;
  } catch (const SolverFailure& e) {
    rec.status = "failed";
    rec.params += std::string(";error=") + e.what();
    failed = true;
  }

  const std::string line = to_json(rec).dump();
  std::cout << line << '\n';
  std::ofstream out(f.out_path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open results file: " + f.out_path);
  out << line << '\n';
  if (!out) throw std::runtime_error("write failed: " + f.out_path);
  return failed ? 2 : 0;
}

int cmd_bench(const std::string& suite_path, bool no_mem, const std::string& output_override) {
  SuiteConfig cfg = parse_suite_file(suite_path);
  if (!output_override.empty()) cfg.output_dir = output_override;
  const SuiteOutcome outcome = run_suite(cfg, !no_mem, &std::cerr);
  for (const auto& path : outcome.table_paths) {
    std::ifstream in(path);
    std::cout << in.rdbuf() << '\n';
  }
  std::cout << outcome.records.size() << " records -> " << outcome.results_path << '\n';
  if (outcome.cells_ok == 0) {
    std::cerr << "error: all " << outcome.cells_total << " cells failed\n";
    return 2;
  }
  return 0;
}

int cmd_stats(const std::vector<std::string>& results_paths, const std::string& report_path,
              const std::string& cd_path) {
  std::vector<SolverRunRecord> records;
  for (const auto& path : results_paths) {
    auto part = read_records_file(path);
    records.insert(records.end(), part.begin(), part.end());
  }
  const StatsReport rep = compute_stats(records);
  const std::string report = stats_report_json(rep).dump(2);
  std::cout << report << '\n';
  if (!report_path.empty()) detail::write_text_file_atomic(report_path, report + "\n");
  {
    std::ofstream out(cd_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open CD data file: " + cd_path);
    emit_cd_diagram_data(rep.solver_ids, rep.friedman.avg_ranks, rep.cd, out);
  }
  std::cerr << "CD diagram data -> " << cd_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Max-Cut benchmarking workbench"};
  app.require_subcommand(1);

  // gen
  int gen_nodes = 10;
  double gen_density = 0.8, gen_wmin = 0.0, gen_wmax = 2.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a random weighted graph (.edg file)");
  gen->add_option("--nodes", gen_nodes, "Number of nodes")
      ->required()
      ->check(CLI::Range(1, 1000000000));
  gen->add_option("--density", gen_density, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--wmin", gen_wmin, "Minimum edge weight")->check(CLI::NonNegativeNumber);
  gen->add_option("--wmax", gen_wmax, "Maximum edge weight")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output .edg path")->required();

  // solve
  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "Run one solver on one graph");
  solve->add_option("--graph", sf.graph_path, "Input .edg path")->required();
  solve->add_option("--solver", sf.solver, "Solver family")
      ->required()
      ->check(CLI::IsMember({"cga", "gaoc", "gnn", "dmrg"}));
  solve->add_option("--out", sf.out_path, "Results file to append to");
  solve->add_option("--seed", sf.seed, "Run seed");
  solve->add_flag("--no-mem", sf.no_mem, "Record capacity estimates instead of tracked peaks");
  solve->add_option("--pop", sf.pop, "Population size (cga, gaoc)")->check(CLI::Range(1, 1000000000));
  solve->add_option("--gens", sf.gens, "Generations (cga)")->check(CLI::Range(1, 1000000000));
  solve->add_option("--offspring", sf.offspring, "Offspring per iteration (gaoc)")
      ->check(CLI::Range(1, 1000000000));
  solve->add_option("--iters", sf.iters, "Iterations (gaoc)")->check(CLI::Range(1, 1000000000));
  solve->add_option("--chi", sf.chi, "Bond dimension (dmrg)")->check(CLI::Range(1, 1000000000));
  solve->add_option("--sweeps", sf.sweeps, "Max sweeps (dmrg)")->check(CLI::Range(1, 1000000000));
  solve->add_option("--embed", sf.embed, "Embedding dimension (gnn)")
      ->check(CLI::Range(1, 1000000000));
  solve->add_option("--hidden", sf.hidden, "Hidden dimension (gnn)")->check(CLI::Range(1, 1000000000));
  solve->add_option("--lr", sf.lr, "Learning rate (gnn)")->check(CLI::PositiveNumber);
  solve->add_option("--epochs", sf.epochs, "Max epochs (gnn)")->check(CLI::Range(1, 1000000000));

  // bench
  std::string bench_suite, bench_output;
  bool bench_no_mem = false;
  auto* bench = app.add_subcommand("bench", "Run a full benchmark suite");
  bench->add_option("--suite", bench_suite, "Suite description file")->required();
  bench->add_option("--output", bench_output, "Override the suite's output directory");
  bench->add_flag("--no-mem", bench_no_mem,
                  "Record capacity estimates instead of tracked peaks");

  // stats
  std::vector<std::string> stats_results;
  std::string stats_report, stats_cd = "cd_diagram.json";
  auto* stats = app.add_subcommand("stats", "Aggregate results into a rank-based comparison");
  stats->add_option("--results", stats_results, "results.jsonl file(s)")
      ->required()
      ->take_all();
  stats->add_option("--report", stats_report, "Also write the report JSON to this path");
  stats->add_option("--cd-data", stats_cd, "CD diagram data output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_nodes, gen_density, gen_wmin, gen_wmax, gen_seed, gen_out);
    if (solve->parsed()) return cmd_solve(sf);
    if (bench->parsed()) return cmd_bench(bench_suite, bench_no_mem, bench_output);
    if (stats->parsed()) return cmd_stats(stats_results, stats_report, stats_cd);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
