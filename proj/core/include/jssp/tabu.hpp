#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jssp/budget.hpp"
#include "jssp/graph.hpp"
#include "jssp/model.hpp"

namespace jssp {

enum class MoveTarget { BlockFront, BlockRear };

/// Reinsertion of one critical operation at the front or rear of its
/// critical block.
struct Move {
  int machine = 0;
  OpId op = kNoOp;
  MoveTarget target = MoveTarget::BlockFront;
  /// Current index of `op` in perm[machine].
  int from_pos = 0;
  /// Index of `op` in perm[machine] after the move.
  int insert_pos = 0;
  /// Head/tail estimate of the makespan after the move.
  Time estimate = 0;
};

/// Critical-block moves for a feasible (sol, eval):
///  - every interior operation of a block moves to the block front and rear;
///  - the first operation moves to the rear, the last to the front;
/// Moves that the head/tail precedence test cannot prove acyclic are
/// dropped, except swaps of two adjacent critical operations, which are
/// always acyclic. For a two-operation block the single swap is emitted once.
std::vector<Move> generate_moves(const Instance& inst, const Solution& sol,
                                 const ScheduleEval& eval);

/// Recomputes heads left-to-right and tails right-to-left over the reordered
/// segment only, keeping every other head and tail fixed, and returns the
/// largest head + duration + tail among the segment operations.
Time estimate_move(const Instance& inst, const ScheduleEval& eval,
                   const Solution& sol, const Move& move);

/// Removes move.op from perm[move.machine] and reinserts it at
/// move.insert_pos. Other machines are untouched.
Solution apply_move(Solution sol, const Move& move);
void apply_move_in_place(Solution& sol, const Move& move);

/// The move that undoes `move` on the solution it produced.
Move inverse_move(const Move& move);

struct TabuParams {
  /// Stop after this many iterations without improving the best makespan.
  int cutoff = 12500;
  /// Defaults to default_tenure_base(inst) when unset.
  std::optional<int> tenure_base;
  /// Defaults to default_tenure_spread(inst) when unset.
  std::optional<int> tenure_spread;
};

/// 10 + floor(n_jobs / n_machines).
int default_tenure_base(const Instance& inst);
/// Tenures are drawn from [base, base + spread]; spread is 40% of the base,
/// or 50% when there are more than twice as many jobs as machines.
int default_tenure_spread(const Instance& inst);

struct TabuResult {
  Solution best;
  ScheduleEval eval;
  std::int64_t iterations = 0;
  /// Applied moves that turned out cyclic and were rolled back.
  std::int64_t rejected_moves = 0;
  Clock::time_point best_found_at;
  /// Budget work counter when `best` was found.
  std::int64_t best_found_work = 0;
};

/// Tabu search from a feasible `start`. Stops when the best makespan has not
/// improved for params.cutoff iterations, when it reaches `known_lb`, or when
/// the budget runs out. Every iteration charges one unit of work to `budget`.
/// Throws ContractViolation if `start` is infeasible.
TabuResult tabu_search(const Instance& inst, const Solution& start,
                       const TabuParams& params, Budget& budget, Rng& rng,
                       std::optional<Time> known_lb = std::nullopt);

}  // namespace jssp
