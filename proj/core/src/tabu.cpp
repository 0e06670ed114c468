#include "jssp/tabu.hpp"

#include <algorithm>
#include <limits>

namespace jssp {
namespace {

int direction_index(MoveTarget t) { return t == MoveTarget::BlockFront ? 0 : 1; }

MoveTarget opposite(MoveTarget t) {
  return t == MoveTarget::BlockFront ? MoveTarget::BlockRear : MoveTarget::BlockFront;
}

// Sufficient acyclicity test for moving the op at `from` in front of the op
// at `front_pos`: any path from that op into JP(u) would force
// head[JP(u)] >= head[v] + p[v].
bool front_move_safe(const Instance& inst, const ScheduleEval& eval,
                     const std::vector<OpId>& seq, int front_pos, int from) {
  if (from - front_pos == 1) return true;
  const OpId jp = inst.job_pred(seq[from]);
  if (jp == kNoOp) return true;
  const OpId v = seq[front_pos];
  return eval.head[jp] < eval.head[v] + inst.duration(v);
}

// Mirror image: a path from JS(u) into the last op w would force
// tail[JS(u)] >= p[w] + tail[w].
bool rear_move_safe(const Instance& inst, const ScheduleEval& eval,
                    const std::vector<OpId>& seq, int rear_pos, int from) {
  if (rear_pos - from == 1) return true;
  const OpId js = inst.job_succ(seq[from]);
  if (js == kNoOp) return true;
  const OpId w = seq[rear_pos];
  return eval.tail[js] < inst.duration(w) + eval.tail[w];
}

void collect_moves(const Instance& inst, const Solution& sol,
                   const ScheduleEval& eval,
                   const std::vector<CriticalBlock>& blocks,
                   std::vector<Move>& out) {
  out.clear();
  for (const CriticalBlock& block : blocks) {
    const int len = static_cast<int>(block.ops.size());
    if (len < 2) continue;
    const auto& seq = sol.perm[block.machine];
    const int f = block.first_pos;
    const int l = block.last_pos();
    for (int idx = 0; idx < len; ++idx) {
      const int from = f + idx;
      const OpId u = seq[from];
      const bool first = idx == 0;
      const bool last = idx == len - 1;
      if (!last && rear_move_safe(inst, eval, seq, l, from)) {
        out.push_back({block.machine, u, MoveTarget::BlockRear, from, l, 0});
      }
      // A two-op block yields the same swap from either end; keep first->rear.
      if (!first && len > 2 && front_move_safe(inst, eval, seq, f, from)) {
        out.push_back({block.machine, u, MoveTarget::BlockFront, from, f, 0});
      }
    }
  }
  for (Move& m : out) m.estimate = estimate_move(inst, eval, sol, m);
}

}  // namespace

std::vector<Move> generate_moves(const Instance& inst, const Solution& sol,
                                 const ScheduleEval& eval) {
  expects(eval.feasible, "generate_moves: infeasible evaluation");
  std::vector<Move> moves;
  collect_moves(inst, sol, eval, critical_blocks(inst, eval, sol), moves);
  return moves;
}

Time estimate_move(const Instance& inst, const ScheduleEval& eval,
                   const Solution& sol, const Move& move) {
  const auto& seq = sol.perm[move.machine];
  const int lo = std::min(move.from_pos, move.insert_pos);
  const int hi = std::max(move.from_pos, move.insert_pos);
  const int len = hi - lo + 1;

  // Segment order after the move.
  thread_local std::vector<OpId> reordered;
  thread_local std::vector<Time> new_head, new_tail;
  reordered.clear();
  if (move.insert_pos < move.from_pos) {
    reordered.push_back(seq[move.from_pos]);
    for (int i = lo; i < hi; ++i) reordered.push_back(seq[i]);
  } else {
    for (int i = lo + 1; i <= hi; ++i) reordered.push_back(seq[i]);
    reordered.push_back(seq[move.from_pos]);
  }

  new_head.resize(len);
  new_tail.resize(len);
  for (int i = 0; i < len; ++i) {
    const OpId x = reordered[i];
    Time h = 0;
    if (OpId jp = inst.job_pred(x); jp != kNoOp) {
      h = eval.head[jp] + inst.duration(jp);
    }
    if (i > 0) {
      h = std::max(h, new_head[i - 1] + inst.duration(reordered[i - 1]));
    } else if (lo > 0) {
      const OpId p = seq[lo - 1];
      h = std::max(h, eval.head[p] + inst.duration(p));
    }
    new_head[i] = h;
  }
  Time estimate = 0;
  for (int i = len - 1; i >= 0; --i) {
    const OpId x = reordered[i];
    Time t = 0;
    if (OpId js = inst.job_succ(x); js != kNoOp) {
      t = eval.tail[js] + inst.duration(js);
    }
    if (i + 1 < len) {
      t = std::max(t, new_tail[i + 1] + inst.duration(reordered[i + 1]));
    } else if (hi + 1 < static_cast<int>(seq.size())) {
      const OpId s = seq[hi + 1];
      t = std::max(t, eval.tail[s] + inst.duration(s));
    }
    new_tail[i] = t;
    estimate = std::max(estimate, new_head[i] + inst.duration(x) + t);
  }
  return estimate;
}

void apply_move_in_place(Solution& sol, const Move& move) {
  auto& seq = sol.perm.at(move.machine);
  const int n = static_cast<int>(seq.size());
  expects(move.from_pos >= 0 && move.from_pos < n && move.insert_pos >= 0 &&
              move.insert_pos < n,
          "apply_move: position out of range");
  expects(seq[move.from_pos] == move.op, "apply_move: op not at from_pos");
  auto first = seq.begin();
  if (move.insert_pos < move.from_pos) {
    std::rotate(first + move.insert_pos, first + move.from_pos,
                first + move.from_pos + 1);
  } else if (move.insert_pos > move.from_pos) {
    std::rotate(first + move.from_pos, first + move.from_pos + 1,
                first + move.insert_pos + 1);
  }
}

Solution apply_move(Solution sol, const Move& move) {
  apply_move_in_place(sol, move);
  return sol;
}

Move inverse_move(const Move& move) {
  Move inv = move;
  inv.from_pos = move.insert_pos;
  inv.insert_pos = move.from_pos;
  inv.target = opposite(move.target);
  return inv;
}

int default_tenure_base(const Instance& inst) {
  return 10 + inst.n_jobs() / inst.n_machines();
}

int default_tenure_spread(const Instance& inst) {
  const int base = default_tenure_base(inst);
  return inst.n_jobs() > 2 * inst.n_machines() ? base / 2 : base * 2 / 5;
}

namespace {

class TabuSearch {
 public:
  TabuSearch(const Instance& inst, const TabuParams& params, Budget& budget,
             Rng& rng, std::optional<Time> known_lb)
      : inst_(inst),
        budget_(budget),
        rng_(rng),
        known_lb_(known_lb),
        cutoff_(params.cutoff),
        tenure_base_(params.tenure_base.value_or(default_tenure_base(inst))),
        tenure_spread_(params.tenure_spread.value_or(default_tenure_spread(inst))),
        evaluator_(inst),
        tabu_until_(2 * static_cast<std::size_t>(inst.n_ops()), 0),
        hits_(2 * static_cast<std::size_t>(inst.n_ops()), 0) {
    expects(cutoff_ >= 1, "tabu_search: cutoff must be >= 1");
    expects(tenure_base_ >= 0 && tenure_spread_ >= 0,
            "tabu_search: tenure must be non-negative");
  }

  TabuResult run(const Solution& start) {
    current_ = start;
    expects(evaluator_.evaluate(current_, eval_), "tabu_search: infeasible start");
    TabuResult result;
    result.best = current_;
    result.eval = eval_;
    result.best_found_at = Clock::now();
    result.best_found_work = budget_.work();

    std::int64_t stagnation = 0;
    while (!reached_bound(result.eval.makespan) && stagnation < cutoff_ &&
           !budget_.exhausted()) {
      ++iter_;
      ++result.iterations;
      budget_.charge();
      if (!step(result)) break;
      if (eval_.makespan < result.eval.makespan) {
        result.best = current_;
        result.eval = eval_;
        result.best_found_at = Clock::now();
        result.best_found_work = budget_.work();
        stagnation = 0;
      } else {
        ++stagnation;
      }
    }
    return result;
  }

 private:
  static std::size_t signature(OpId op, MoveTarget t) {
    return 2 * static_cast<std::size_t>(op) + direction_index(t);
  }

  bool reached_bound(Time makespan) const {
    return known_lb_ && makespan <= *known_lb_;
  }

  std::int64_t draw_tenure() {
    std::uniform_int_distribution<int> spread(0, tenure_spread_);
    return tenure_base_ + spread(rng_);
  }

  // Forbid undoing `move`: the op may not travel back, and the ops it
  // jumped over may not travel back across it.
  void make_tabu(const Move& move, const std::vector<OpId>& jumped) {
    const std::int64_t until = iter_ + draw_tenure();
    const MoveTarget back = opposite(move.target);
    tabu_until_[signature(move.op, back)] = until;
    ++hits_[signature(move.op, back)];
    for (OpId v : jumped) {
      tabu_until_[signature(v, move.target)] = until;
      ++hits_[signature(v, move.target)];
    }
  }

  std::vector<OpId> jumped_ops(const Move& move) const {
    const auto& seq = current_.perm[move.machine];
    std::vector<OpId> out;
    if (move.insert_pos < move.from_pos) {
      out.assign(seq.begin() + move.insert_pos, seq.begin() + move.from_pos);
    } else {
      out.assign(seq.begin() + move.from_pos + 1, seq.begin() + move.insert_pos + 1);
    }
    return out;
  }

  // Applies `move` if the result is acyclic; otherwise rolls back.
  bool try_apply(const Move& move) {
    const auto jumped = jumped_ops(move);
    apply_move_in_place(current_, move);
    if (evaluator_.evaluate(current_, trial_)) {
      std::swap(eval_, trial_);
      make_tabu(move, jumped);
      return true;
    }
    apply_move_in_place(current_, inverse_move(move));
    tabu_until_[signature(move.op, move.target)] = iter_ + draw_tenure();
    return false;
  }

  // One iteration. Returns false when the search should stop.
  bool step(TabuResult& result) {
    // evaluator_ last saw current_ (see try_apply / fallback).
    const auto blocks = critical_blocks(inst_, eval_, evaluator_.links());
    collect_moves(inst_, current_, eval_, blocks, moves_);

    if (moves_.empty()) {
      const bool all_singletons = std::all_of(
          blocks.begin(), blocks.end(),
          [](const CriticalBlock& b) { return b.ops.size() < 2; });
      // A critical path made only of job arcs is a job's total length:
      // the schedule is optimal.
      if (all_singletons) return false;
      return adjacent_swap(blocks, result);
    }

    const Time best = result.eval.makespan;
    ranked_.clear();
    for (std::size_t i = 0; i < moves_.size(); ++i) {
      const Move& m = moves_[i];
      const std::size_t sig = signature(m.op, m.target);
      const bool tabu = tabu_until_[sig] > iter_;
      const bool admissible = !tabu || m.estimate < best;
      ranked_.push_back({admissible ? 0 : 1, admissible ? m.estimate : tabu_until_[sig],
                         admissible ? hits_[sig] : m.estimate, rng_(), i});
    }
    std::sort(ranked_.begin(), ranked_.end());
    for (const Ranked& r : ranked_) {
      if (try_apply(moves_[r.index])) return true;
      ++result.rejected_moves;
    }
    return adjacent_swap(blocks, result);
  }

  // Swapping two adjacent critical operations never creates a cycle.
  bool adjacent_swap(const std::vector<CriticalBlock>& blocks, TabuResult&) {
    std::vector<const CriticalBlock*> multi;
    for (const auto& b : blocks) {
      if (b.ops.size() >= 2) multi.push_back(&b);
    }
    if (multi.empty()) return false;
    const CriticalBlock& b =
        *multi[std::uniform_int_distribution<std::size_t>(0, multi.size() - 1)(rng_)];
    const int offset = std::uniform_int_distribution<int>(
        0, static_cast<int>(b.ops.size()) - 2)(rng_);
    const int from = b.first_pos + offset;
    Move m{b.machine, b.ops[offset], MoveTarget::BlockRear, from, from + 1, 0};
    const auto jumped = jumped_ops(m);
    apply_move_in_place(current_, m);
    evaluator_.evaluate(current_, eval_);
    if (!eval_.feasible) {
      current_ = repair(inst_, current_);
      evaluator_.evaluate(current_, eval_);
    }
    make_tabu(m, jumped);
    return true;
  }

  struct Ranked {
    int group;
    std::int64_t key1;
    std::int64_t key2;
    std::uint64_t tie;
    std::size_t index;
    friend bool operator<(const Ranked& a, const Ranked& b) {
      return std::tie(a.group, a.key1, a.key2, a.tie, a.index) <
             std::tie(b.group, b.key1, b.key2, b.tie, b.index);
    }
  };

  const Instance& inst_;
  Budget& budget_;
  Rng& rng_;
  std::optional<Time> known_lb_;
  int cutoff_;
  int tenure_base_;
  int tenure_spread_;

  Evaluator evaluator_;
  Solution current_;
  ScheduleEval eval_;
  ScheduleEval trial_;
  std::vector<Move> moves_;
  std::vector<Ranked> ranked_;
  std::vector<std::int64_t> tabu_until_;
  std::vector<std::int64_t> hits_;
  std::int64_t iter_ = 0;
};

}  // namespace

TabuResult tabu_search(const Instance& inst, const Solution& start,
                       const TabuParams& params, Budget& budget, Rng& rng,
                       std::optional<Time> known_lb) {
  TabuSearch search(inst, params, budget, rng, known_lb);
  return search.run(start);
}

}  // namespace jssp
