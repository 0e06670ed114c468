#include <benchmark/benchmark.h>

#include "jssp/graph.hpp"
#include "jssp/parse.hpp"
#include "jssp/relink.hpp"
#include "jssp/tabu.hpp"

namespace {

using namespace jssp;

const char* const kInstances[] = {"ft10", "la21", "ta41", "ta71"};

Instance instance_arg(const benchmark::State& state) {
  return load_instance(std::string(JSSP_BENCH_DATA_DIR "/instances/") +
                       kInstances[state.range(0)] + ".txt");
}

void label(benchmark::State& state, const Instance& inst) {
  state.SetLabel(std::string(kInstances[state.range(0)]) + " " +
                 std::to_string(inst.n_jobs()) + "x" + std::to_string(inst.n_machines()));
}

void BM_Evaluate(benchmark::State& state) {
  const Instance inst = instance_arg(state);
  Rng rng(1);
  const Solution sol = repair(inst, random_solution(inst, rng));
  Evaluator evaluator(inst);
  ScheduleEval eval;
  for (auto _ : state) {
    evaluator.evaluate(sol, eval);
    benchmark::DoNotOptimize(eval.makespan);
  }
  label(state, inst);
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 3);

void BM_GenerateMoves(benchmark::State& state) {
  const Instance inst = instance_arg(state);
  Rng rng(2);
  const Solution sol = repair(inst, random_solution(inst, rng));
  const ScheduleEval eval = evaluate(inst, sol);
  for (auto _ : state) benchmark::DoNotOptimize(generate_moves(inst, sol, eval));
  label(state, inst);
}
BENCHMARK(BM_GenerateMoves)->DenseRange(0, 3);

// Cost per tabu iteration, measured over fixed-length searches.
void BM_TabuIterations(benchmark::State& state) {
  const Instance inst = instance_arg(state);
  Rng rng(3);
  const Solution start = repair(inst, random_solution(inst, rng));
  std::int64_t iterations = 0;
  for (auto _ : state) {
    Budget budget = Budget::work(1000);
    iterations += tabu_search(inst, start, TabuParams{}, budget, rng).iterations;
  }
  state.SetItemsProcessed(iterations);
  label(state, inst);
}
BENCHMARK(BM_TabuIterations)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_PathStep(benchmark::State& state) {
  const Instance inst = instance_arg(state);
  Rng rng(4);
  const Solution a = random_solution(inst, rng);
  const Solution b = random_solution(inst, rng);
  Solution cur = a;
  for (auto _ : state) {
    if (distance(cur, b) == 0) cur = a;
    cur = path_step(std::move(cur), b, rng);
  }
  label(state, inst);
}
BENCHMARK(BM_PathStep)->DenseRange(0, 3);

void BM_Repair(benchmark::State& state) {
  const Instance inst = instance_arg(state);
  Rng rng(5);
  const Solution sol = random_solution(inst, rng);
  for (auto _ : state) benchmark::DoNotOptimize(repair(inst, sol));
  label(state, inst);
}
BENCHMARK(BM_Repair)->DenseRange(0, 3);

}  // namespace
BENCHMARK_MAIN();
