#pragma once

#include <span>
#include <vector>

#include "jssp/model.hpp"

namespace jssp {

/// Result of decoding a Solution into its semi-active schedule.
///
/// When `feasible` is false the remaining fields are unspecified.
struct ScheduleEval {
  bool feasible = false;
  /// Longest path from the implicit source to each operation's start.
  std::vector<Time> head;
  /// Longest path from each operation's completion to the implicit sink.
  std::vector<Time> tail;
  Time makespan = 0;
  /// One longest source-to-sink path, in path order.
  std::vector<OpId> critical_ops;

  /// Start times; in a semi-active schedule these equal the heads.
  std::span<const Time> start() const { return head; }
};

/// Machine predecessor/successor and position of every operation under one
/// Solution.
struct SequenceIndex {
  std::vector<OpId> mach_pred;
  std::vector<OpId> mach_succ;
  std::vector<int> pos;

  void rebuild(const Instance& inst, const Solution& sol);
};

/// Reusable evaluator holding scratch buffers. Not shareable between
/// threads while in use.
class Evaluator {
 public:
  explicit Evaluator(const Instance& inst);

  /// Fills `out` and returns out.feasible.
  bool evaluate(const Solution& sol, ScheduleEval& out);
  /// Cycle check only; skips heads, tails and the critical path.
  bool feasible(const Solution& sol);

  /// Sequence index of the solution most recently passed in.
  const SequenceIndex& links() const { return links_; }

 private:
  bool topological_order(const Solution& sol);

  const Instance* inst_;
  SequenceIndex links_;
  std::vector<int> indegree_;
  std::vector<OpId> order_;
};

ScheduleEval evaluate(const Instance& inst, const Solution& sol);
bool is_feasible(const Instance& inst, const Solution& sol);

/// Maximal run of consecutive critical operations on one machine.
struct CriticalBlock {
  int machine = 0;
  /// Index of ops.front() in perm[machine].
  int first_pos = 0;
  std::vector<OpId> ops;

  int last_pos() const { return first_pos + static_cast<int>(ops.size()) - 1; }
};

/// Splits eval.critical_ops into blocks, preserving path order.
/// Requires eval.feasible.
std::vector<CriticalBlock> critical_blocks(const Instance& inst,
                                           const ScheduleEval& eval,
                                           const Solution& sol);
std::vector<CriticalBlock> critical_blocks(const Instance& inst,
                                           const ScheduleEval& eval,
                                           const SequenceIndex& index);

/// Returns `sol` unchanged if it is feasible. Otherwise decodes it with a
/// priority list: repeatedly schedule, among operations whose job
/// predecessor is already placed, the one with the smallest index in its
/// machine's input sequence (ties by machine, then OpId).
Solution repair(const Instance& inst, const Solution& sol);

}  // namespace jssp
