#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jssp/budget.hpp"
#include "jssp/graph.hpp"
#include "jssp/model.hpp"
#include "jssp/tabu.hpp"

namespace jssp {

/// Relinking parameters. Unset alpha/beta are derived per call from the
/// distance `d` between the endpoints: alpha = ceil(d/5),
/// beta = max(ceil(d/10), 2).
struct PathParams {
  std::optional<int> alpha;
  std::optional<int> beta;
  /// Stagnation cutoff of the slight tabu search run on every path candidate.
  int si = 500;
  /// Stagnation cutoff of the strong tabu search run on the chosen candidate.
  int li = 12500;

  /// Throws std::invalid_argument unless alpha, beta, si >= 1 and li >= si.
  void validate() const;
};

struct PathShape {
  int alpha = 1;
  int beta = 2;
};

PathShape resolve_shape(const PathParams& params, int distance);

/// Number of machine positions where the two sequences disagree.
int distance(const Solution& a, const Solution& b);

/// One relinking step: pick a uniformly random mismatched position (k, i),
/// and swap guiding.perm[k][i] into place on machine k. The distance to
/// `guiding` drops by one or two.
Solution path_step(Solution current, const Solution& guiding, Rng& rng);

/// Raw (possibly cyclic) snapshots sampled along a relinking path.
using PathSet = std::vector<Solution>;

/// Walks from `initiating` toward `guiding`: alpha steps then a snapshot,
/// then beta steps per snapshot while the distance to `guiding` exceeds
/// alpha. Requires distance(initiating, guiding) > 0.
PathSet build_path(const Solution& initiating, const Solution& guiding,
                   const PathParams& params, Rng& rng);

struct RelinkResult {
  Solution solution;
  ScheduleEval eval;
  /// Snapshots that went through slight tabu search.
  int candidates = 0;
  /// Snapshots that were cyclic and had to be repaired.
  int repairs = 0;
  bool used_midpoint = false;
  std::int64_t ts_iterations = 0;
  Clock::time_point best_found_at;
  std::int64_t best_found_work = 0;
};

/// Builds a path, repairs and slightly improves every snapshot, and strongly
/// improves the best one; the result is the reference solution. When the
/// endpoints are within 2 * alpha of each other a single midpoint snapshot
/// (ceil(d/2) steps) replaces the path.
///
/// Requires feasible, distinct endpoints. `tabu` supplies tenure settings;
/// its cutoff is replaced by params.si / params.li.
RelinkResult path_relinking(const Instance& inst, const Solution& initiating,
                            const Solution& guiding, const PathParams& params,
                            const TabuParams& tabu, Budget& budget, Rng& rng,
                            std::optional<Time> known_lb = std::nullopt);

}  // namespace jssp
