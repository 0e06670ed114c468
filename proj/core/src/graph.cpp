#include "jssp/graph.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace jssp {

void SequenceIndex::rebuild(const Instance& inst, const Solution& sol) {
  const int n = inst.n_ops();
  mach_pred.assign(n, kNoOp);
  mach_succ.assign(n, kNoOp);
  pos.assign(n, -1);
  for (const auto& seq : sol.perm) {
    const int len = static_cast<int>(seq.size());
    for (int i = 0; i < len; ++i) {
      const OpId op = seq[i];
      pos[op] = i;
      if (i > 0) mach_pred[op] = seq[i - 1];
      if (i + 1 < len) mach_succ[op] = seq[i + 1];
    }
  }
}

Evaluator::Evaluator(const Instance& inst) : inst_(&inst) {
  indegree_.reserve(inst.n_ops());
  order_.reserve(inst.n_ops());
}

// Kahn's algorithm over conjunctive + disjunctive arcs. Leaves order_ holding
// a topological order when the graph is acyclic.
bool Evaluator::topological_order(const Solution& sol) {
  const Instance& inst = *inst_;
  const int n = inst.n_ops();
  links_.rebuild(inst, sol);

  indegree_.assign(n, 0);
  order_.clear();
  for (OpId op = 0; op < n; ++op) {
    indegree_[op] = (inst.job_pred(op) != kNoOp) + (links_.mach_pred[op] != kNoOp);
    if (indegree_[op] == 0) order_.push_back(op);
  }
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const OpId op = order_[i];
    const OpId js = inst.job_succ(op);
    if (js != kNoOp && --indegree_[js] == 0) order_.push_back(js);
    const OpId ms = links_.mach_succ[op];
    if (ms != kNoOp && --indegree_[ms] == 0) order_.push_back(ms);
  }
  return static_cast<int>(order_.size()) == n;
}

bool Evaluator::feasible(const Solution& sol) { return topological_order(sol); }

bool Evaluator::evaluate(const Solution& sol, ScheduleEval& out) {
  const Instance& inst = *inst_;
  const int n = inst.n_ops();
  out.feasible = topological_order(sol);
  out.critical_ops.clear();
  if (!out.feasible) return false;

  const auto& mp = links_.mach_pred;
  const auto& ms = links_.mach_succ;
  out.head.assign(n, 0);
  out.tail.assign(n, 0);

  Time makespan = 0;
  for (OpId op : order_) {
    Time h = 0;
    if (OpId jp = inst.job_pred(op); jp != kNoOp) {
      h = std::max(h, out.head[jp] + inst.duration(jp));
    }
    if (OpId p = mp[op]; p != kNoOp) {
      h = std::max(h, out.head[p] + inst.duration(p));
    }
    out.head[op] = h;
    makespan = std::max(makespan, h + inst.duration(op));
  }
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    const OpId op = *it;
    Time t = 0;
    if (OpId js = inst.job_succ(op); js != kNoOp) {
      t = std::max(t, out.tail[js] + inst.duration(js));
    }
    if (OpId s = ms[op]; s != kNoOp) {
      t = std::max(t, out.tail[s] + inst.duration(s));
    }
    out.tail[op] = t;
  }
  out.makespan = makespan;

  // Backtrack from the lowest-id operation finishing at the makespan,
  // preferring the machine predecessor whenever it is tight.
  OpId cur = kNoOp;
  for (OpId op = 0; op < n; ++op) {
    if (out.head[op] + inst.duration(op) == makespan) {
      cur = op;
      break;
    }
  }
  while (cur != kNoOp) {
    out.critical_ops.push_back(cur);
    const Time h = out.head[cur];
    const OpId p = mp[cur];
    const OpId jp = inst.job_pred(cur);
    if (p != kNoOp && out.head[p] + inst.duration(p) == h) {
      cur = p;
    } else if (jp != kNoOp && out.head[jp] + inst.duration(jp) == h) {
      cur = jp;
    } else {
      cur = kNoOp;
    }
  }
  std::reverse(out.critical_ops.begin(), out.critical_ops.end());
  return true;
}

ScheduleEval evaluate(const Instance& inst, const Solution& sol) {
  Evaluator ev(inst);
  ScheduleEval out;
  ev.evaluate(sol, out);
  return out;
}

bool is_feasible(const Instance& inst, const Solution& sol) {
  Evaluator ev(inst);
  return ev.feasible(sol);
}

std::vector<CriticalBlock> critical_blocks(const Instance& inst,
                                           const ScheduleEval& eval,
                                           const SequenceIndex& index) {
  expects(eval.feasible, "critical_blocks: infeasible evaluation");
  std::vector<CriticalBlock> blocks;
  int prev_pos = -2;
  for (OpId op : eval.critical_ops) {
    const int k = inst.machine(op);
    const int p = index.pos[op];
    if (!blocks.empty() && blocks.back().machine == k && p == prev_pos + 1) {
      blocks.back().ops.push_back(op);
    } else {
      blocks.push_back(CriticalBlock{k, p, {op}});
    }
    prev_pos = p;
  }
  return blocks;
}

std::vector<CriticalBlock> critical_blocks(const Instance& inst,
                                           const ScheduleEval& eval,
                                           const Solution& sol) {
  expects(eval.feasible, "critical_blocks: infeasible evaluation");
  SequenceIndex index;
  index.rebuild(inst, sol);
  return critical_blocks(inst, eval, index);
}

Solution repair(const Instance& inst, const Solution& sol) {
  if (is_feasible(inst, sol)) return sol;

  const int n = inst.n_ops();
  std::vector<int> rank(n, 0);
  for (const auto& seq : sol.perm) {
    for (int i = 0; i < static_cast<int>(seq.size()); ++i) rank[seq[i]] = i;
  }

  using Key = std::tuple<int, int, OpId>;  // (input position, machine, op)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (int j = 0; j < inst.n_jobs(); ++j) {
    const OpId first = inst.ops_of_job(j).front();
    ready.emplace(rank[first], inst.machine(first), first);
  }

  Solution out;
  out.perm.resize(inst.n_machines());
  for (int k = 0; k < inst.n_machines(); ++k) {
    out.perm[k].reserve(sol.perm[k].size());
  }
  while (!ready.empty()) {
    const auto [r, k, op] = ready.top();
    ready.pop();
    out.perm[k].push_back(op);
    if (OpId js = inst.job_succ(op); js != kNoOp) {
      ready.emplace(rank[js], inst.machine(js), js);
    }
  }
  return out;
}

}  // namespace jssp
