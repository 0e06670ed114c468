#pragma once

// Random generators and reference implementations used only by tests. The
// oracles deliberately avoid the library's graph code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "jssp/model.hpp"

namespace jssp::testing {

inline Instance random_instance(Rng& rng, int n, int m, Time max_duration = 20) {
  std::uniform_int_distribution<Time> dur(1, max_duration);
  std::vector<Route> routes(n);
  for (Route& r : routes) {
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int k : order) r.push_back({k, dur(rng)});
  }
  return Instance::build(n, m, routes);
}

// Dispatches jobs in a random interleaving, which always yields an acyclic
// sequence set.
inline Solution random_feasible_solution(const Instance& inst, Rng& rng) {
  std::vector<OpId> tokens;
  for (int j = 0; j < inst.n_jobs(); ++j) {
    for (std::size_t i = 0; i < inst.ops_of_job(j).size(); ++i) tokens.push_back(j);
  }
  std::shuffle(tokens.begin(), tokens.end(), rng);
  std::vector<std::size_t> next(inst.n_jobs(), 0);
  Solution sol;
  sol.perm.resize(inst.n_machines());
  for (OpId j : tokens) {
    const OpId op = inst.ops_of_job(j)[next[j]++];
    sol.perm[inst.machine(op)].push_back(op);
  }
  return sol;
}

struct Arc {
  OpId from;
  OpId to;
};

inline std::vector<Arc> arcs_of(const Instance& inst, const Solution& sol) {
  std::vector<Arc> arcs;
  for (OpId op = 0; op < inst.n_ops(); ++op) {
    if (inst.job_succ(op) != kNoOp) arcs.push_back({op, inst.job_succ(op)});
  }
  for (const auto& seq : sol.perm) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) arcs.push_back({seq[i], seq[i + 1]});
  }
  return arcs;
}

// Depth-first search with three colours over an adjacency list.
inline bool has_cycle_oracle(const Instance& inst, const Solution& sol) {
  const int n = inst.n_ops();
  std::vector<std::vector<OpId>> adj(n);
  for (const Arc& a : arcs_of(inst, sol)) adj[a.from].push_back(a.to);
  std::vector<int> colour(n, 0);
  std::function<bool(OpId)> visit = [&](OpId u) {
    colour[u] = 1;
    for (OpId v : adj[u]) {
      if (colour[v] == 1) return true;
      if (colour[v] == 0 && visit(v)) return true;
    }
    colour[u] = 2;
    return false;
  };
  for (OpId u = 0; u < n; ++u) {
    if (colour[u] == 0 && visit(u)) return true;
  }
  return false;
}

// Bellman-style relaxation of every arc, V rounds. Requires an acyclic input.
inline Time longest_path_oracle(const Instance& inst, const Solution& sol,
                                std::vector<Time>* starts = nullptr) {
  const int n = inst.n_ops();
  const auto arcs = arcs_of(inst, sol);
  std::vector<Time> dist(n, 0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const Arc& a : arcs) {
      const Time cand = dist[a.from] + inst.duration(a.from);
      if (cand > dist[a.to]) {
        dist[a.to] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  Time makespan = 0;
  for (OpId op = 0; op < n; ++op) makespan = std::max(makespan, dist[op] + inst.duration(op));
  if (starts) *starts = dist;
  return makespan;
}

// Optimal makespan by scheduling every job interleaving with earliest
// start times. Every semi-active schedule arises from some interleaving.
inline Time brute_force_optimum(const Instance& inst) {
  const int n = inst.n_jobs();
  std::vector<std::size_t> next(n, 0);
  std::vector<Time> job_ready(n, 0);
  std::vector<Time> machine_ready(inst.n_machines(), 0);
  Time best = std::numeric_limits<Time>::max();
  std::function<void(Time)> dfs = [&](Time makespan) {
    if (makespan >= best) return;
    bool any = false;
    for (int j = 0; j < n; ++j) {
      if (next[j] == inst.ops_of_job(j).size()) continue;
      any = true;
      const OpId op = inst.ops_of_job(j)[next[j]];
      const int k = inst.machine(op);
      const Time saved_job = job_ready[j];
      const Time saved_machine = machine_ready[k];
      const Time end = std::max(saved_job, saved_machine) + inst.duration(op);
      job_ready[j] = machine_ready[k] = end;
      ++next[j];
      dfs(std::max(makespan, end));
      --next[j];
      job_ready[j] = saved_job;
      machine_ready[k] = saved_machine;
    }
    if (!any) best = std::min(best, makespan);
  };
  dfs(0);
  return best;
}

// Position-by-position mismatch count.
inline int naive_distance(const Solution& a, const Solution& b) {
  int d = 0;
  for (std::size_t k = 0; k < a.perm.size(); ++k) {
    for (std::size_t i = 0; i < a.perm[k].size(); ++i) d += a.perm[k][i] != b.perm[k][i];
  }
  return d;
}

}  // namespace jssp::testing
