#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "jssp/budget.hpp"
#include "jssp/graph.hpp"
#include "jssp/model.hpp"
#include "jssp/relink.hpp"
#include "jssp/tabu.hpp"

namespace jssp {

struct EvolveParams {
  /// Population size p.
  int population = 30;
  PathParams path;
  /// Tenure settings shared by every tabu search; the cutoff field is unused.
  TabuParams tabu;
  /// Cutoff of the tabu search that improves initial members. Defaults to
  /// path.li.
  std::optional<int> init_cutoff;

  void validate() const;
};

struct Member {
  Solution solution;
  ScheduleEval eval;
  /// Unique, increasing with insertion time (smaller means older).
  std::uint64_t id = 0;
};

struct Population {
  std::vector<Member> members;
  /// Best solution seen while building or evolving the population.
  Solution best;
  ScheduleEval best_eval;
  Clock::time_point best_found_at;
  std::int64_t best_found_work = 0;
  /// Random starts that were cyclic and went through repair().
  std::int64_t repairs = 0;
  std::int64_t ts_iterations = 0;
  std::uint64_t next_id = 0;

  bool contains(const Solution& sol) const;
  const Member* find(std::uint64_t id) const;
  bool has_best() const { return best_eval.feasible; }
};

/// Unordered pairs of member ids not yet relinked.
class PairSet {
 public:
  void add(std::uint64_t a, std::uint64_t b);
  /// Removes and returns a uniformly random pair.
  std::pair<std::uint64_t, std::uint64_t> take_random(Rng& rng);
  /// Drops every pair that references `id`.
  void remove_member(std::uint64_t id);
  bool contains(std::uint64_t a, std::uint64_t b) const;
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs() const {
    return pairs_;
  }

  /// All pairs of the given members.
  static PairSet complete(const std::vector<Member>& members);

 private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs_;
};

/// Random solution -> repair -> tabu search, inserted unless it duplicates a
/// member, until `p` members exist, the budget runs out, a member reaches
/// `known_lb`, or many consecutive candidates duplicate existing members.
Population init_population(const Instance& inst, int p, int cutoff,
                           const TabuParams& tabu, Budget& budget, Rng& rng,
                           std::optional<Time> known_lb = std::nullopt);

enum class RunStatus {
  /// Budget ran out (or the search space was exhausted) after initialization.
  Completed,
  /// Best makespan reached the supplied lower bound.
  ReachedLowerBound,
  /// Fewer than two members could be built before the budget ran out.
  InitBudgetExhausted,
};

const char* to_string(RunStatus status);

struct TracePoint {
  double seconds = 0;
  std::int64_t work = 0;
  Time makespan = 0;
};

struct RunStats {
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::Completed;
  /// Main-loop iterations (pairs processed).
  std::int64_t iterations = 0;
  std::int64_t relinks = 0;
  /// Cyclic solutions repaired, during initialization and relinking.
  std::int64_t repairs = 0;
  std::int64_t ts_iterations = 0;
  std::int64_t restarts = 0;
  double time_to_best_s = 0;
  std::int64_t work_to_best = 0;
  double elapsed_s = 0;
  /// Best makespan at every improvement and about once per second.
  std::vector<TracePoint> trace;
};

struct EvolveResult {
  /// Absent only when not a single member could be built.
  std::optional<Solution> best;
  ScheduleEval eval;
  RunStats stats;
};

/// Population-based tabu search / path relinking run. Stops when the budget
/// is exhausted or the best makespan reaches `known_lb`.
EvolveResult evolve_run(const Instance& inst, const EvolveParams& params,
                        Budget& budget, std::uint64_t seed,
                        std::optional<Time> known_lb = std::nullopt);

}  // namespace jssp
