#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jssp/bench.hpp"
#include "jssp/evolve.hpp"
#include "jssp/graph.hpp"
#include "jssp/parse.hpp"

namespace {

jssp::BoundsCatalog load_catalog() { return jssp::BoundsCatalog::load_default(JSSP_DEFAULT_BOUNDS); }

jssp::EvolveParams build_params(const std::vector<std::string>& assignments) {
  jssp::EvolveParams params;
  for (const std::string& a : assignments) jssp::apply_param(params, a);
  return params;
}

int run_solve(const std::string& file, const std::string& format,
              std::optional<double> time_limit, std::uint64_t seed,
              std::optional<jssp::Time> lb, std::optional<std::int64_t> iterations,
              const std::vector<std::string>& assignments) {
  const jssp::Instance inst = jssp::load_instance(file, jssp::parse_format_name(format));
  const jssp::EvolveParams params = build_params(assignments);
  const std::string name = jssp::canonical_instance_name(file);
  if (!lb) {
    if (auto known = load_catalog().find(name)) lb = known->lb;
  }
  const double limit =
      time_limit.value_or(static_cast<double>(jssp::default_time_limit(name).count()));
  jssp::Budget budget = iterations ? jssp::Budget::work(*iterations)
                                   : jssp::Budget::wall_clock(std::chrono::duration<double>(limit));
  const jssp::EvolveResult result = jssp::evolve_run(inst, params, budget, seed, lb);
  if (!result.best) {
    std::cerr << "no schedule found within the budget\n";
    return 1;
  }
  const auto& s = result.stats;
  std::cout << "# instance " << name << ' ' << inst.n_jobs() << 'x' << inst.n_machines() << '\n'
            << "# makespan " << result.eval.makespan << '\n'
            << "# status " << jssp::to_string(s.status) << '\n'
            << "# seed " << seed << '\n';
  if (!iterations) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", s.time_to_best_s);
    std::cout << "# time_to_best_s " << buf << '\n';
  }
  std::cout << "# relinks " << s.relinks << " repairs " << s.repairs << " restarts " << s.restarts
            << " ts_iterations " << s.ts_iterations << '\n'
            << jssp::format_solution(*result.best);
  return 0;
}

int run_bench(const std::string& manifest_path, const std::string& out_path,
              const std::string& log_path, std::optional<int> runs, int jobs,
              std::uint64_t seed, std::optional<std::int64_t> iterations, bool no_stop,
              bool quiet, const std::vector<std::string>& assignments) {
  const auto manifest = jssp::load_manifest(manifest_path);
  const jssp::BoundsCatalog catalog = load_catalog();
  jssp::BenchConfig config;
  config.runs_override = runs;
  config.jobs = jobs;
  config.base_seed = seed;
  config.params = build_params(assignments);
  config.work_budget = iterations;
  config.stop_at_lb = !no_stop;
  config.catalog = &catalog;
  if (!quiet) {
    config.on_run = [](const jssp::RunRecord& r) {
      std::cerr << r.instance_name << " seed " << r.seed << ": "
                << (r.best ? std::to_string(*r.best) : "NA") << '\n';
    };
  }
  const auto reports = jssp::run_benchmark(manifest, config);
  const bool timing = !config.deterministic();
  if (out_path.empty() || out_path == "-") {
    jssp::write_report(std::cout, reports, timing);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    jssp::write_report(out, reports, timing);
  }
  if (!log_path.empty()) {
    std::ofstream log(log_path, std::ios::binary);
    if (!log) throw std::runtime_error("cannot write " + log_path);
    jssp::write_run_log(log, reports, timing);
  }
  return 0;
}

int run_check(const std::string& file, const std::string& solution_file,
              const std::string& format) {
  const jssp::Instance inst = jssp::load_instance(file, jssp::parse_format_name(format));
  const jssp::Solution sol =
      jssp::parse_solution(inst, jssp::read_text_file(solution_file));
  const jssp::ScheduleEval eval = jssp::evaluate(inst, sol);
  if (!eval.feasible) {
    std::cout << "infeasible: machine sequences create a cycle\n";
    return 1;
  }
  std::cout << "feasible makespan " << eval.makespan << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Job-shop scheduling with tabu search and path relinking"};
  app.require_subcommand(1);

  std::string file, format = "auto", solution_file, manifest, out_path, log_path;
  std::optional<double> time_limit;
  std::uint64_t seed = 1;
  std::optional<jssp::Time> lb;
  std::optional<std::int64_t> iterations;
  std::optional<int> runs;
  int jobs = 1;
  bool no_stop = false, quiet = false;
  std::vector<std::string> params;

  auto* solve = app.add_subcommand("solve", "Solve one instance and print the schedule");
  solve->add_option("file", file, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--format", format, "std, ta or auto")->check(CLI::IsMember({"std", "standard", "ta", "taillard", "auto"}));
  solve->add_option("--time-limit", time_limit, "Wall-clock limit in seconds");
  solve->add_option("--seed", seed, "Random seed");
  solve->add_option("--lb", lb, "Stop once this makespan is reached");
  solve->add_option("--iterations", iterations,
                    "Bound the run by tabu iterations instead of time (reproducible)");
  solve->add_option("--params", params, "Tunables as key=value");

  auto* bench = app.add_subcommand("bench", "Run a benchmark manifest");
  bench->add_option("manifest", manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  bench->add_option("--out", out_path, "Report CSV (default stdout)");
  bench->add_option("--log", log_path, "Per-run CSV log");
  bench->add_option("--runs", runs, "Override the run count of every entry")->check(CLI::PositiveNumber);
  bench->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "First seed for entries without one");
  bench->add_option("--iterations", iterations,
                    "Bound each run by tabu iterations instead of time (reproducible)");
  bench->add_flag("--no-stop-at-lb", no_stop, "Keep searching after reaching the lower bound");
  bench->add_flag("--quiet", quiet, "No per-run progress on stderr");
  bench->add_option("--params", params, "Tunables as key=value");

  auto* check = app.add_subcommand("check", "Verify a solution file");
  check->add_option("file", file, "Instance file")->required()->check(CLI::ExistingFile);
  check->add_option("solution", solution_file, "Solution file")->required()->check(CLI::ExistingFile);
  check->add_option("--format", format, "std, ta or auto");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(file, format, time_limit, seed, lb, iterations, params);
    if (*bench) {
      return run_bench(manifest, out_path, log_path, runs, jobs, seed, iterations, no_stop,
                       quiet, params);
    }
    return run_check(file, solution_file, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
