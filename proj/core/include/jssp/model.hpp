#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jssp {

/// Dense operation index in [0, Instance::n_ops()), assigned job-major.
using OpId = std::int32_t;
/// Integral time units (durations, start times, makespans).
using Time = std::int64_t;

inline constexpr OpId kNoOp = -1;

using Rng = std::mt19937_64;

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void expects(bool condition, const char* what) {
  if (!condition) throw ContractViolation(what);
}

struct RouteStep {
  int machine = 0;
  Time duration = 0;

  friend bool operator==(const RouteStep&, const RouteStep&) = default;
};

using Route = std::vector<RouteStep>;

/// Immutable job-shop problem data.
///
/// Operations are numbered job-major: job 0's operations come first in route
/// order, then job 1's, and so on. The dummy source and sink of the
/// disjunctive graph are not stored; evaluation treats them implicitly.
class Instance {
 public:
  /// Builds an instance from per-job routes.
  ///
  /// Throws std::invalid_argument when a route is empty, a machine index is
  /// outside [0, n_machines), a duration is negative, or (unless
  /// `allow_repeated_machines`) a job visits the same machine twice.
  static Instance build(int n_jobs, int n_machines,
                        const std::vector<Route>& routes,
                        bool allow_repeated_machines = false);

  int n_jobs() const { return n_jobs_; }
  int n_machines() const { return n_machines_; }
  int n_ops() const { return static_cast<int>(machine_.size()); }

  int machine(OpId op) const { return machine_[op]; }
  Time duration(OpId op) const { return duration_[op]; }
  int job(OpId op) const { return job_[op]; }
  OpId job_pred(OpId op) const { return job_pred_[op]; }
  OpId job_succ(OpId op) const { return job_succ_[op]; }

  /// Operations of job `j` in route order.
  std::span<const OpId> ops_of_job(int j) const;
  /// Operations assigned to machine `k`, in increasing OpId order.
  std::span<const OpId> ops_on_machine(int k) const;

  std::span<const int> machines() const { return machine_; }
  std::span<const Time> durations() const { return duration_; }

  /// Reads the routes back in the form accepted by build().
  std::vector<Route> routes() const;

  /// max(longest job, most loaded machine); a valid makespan lower bound.
  Time trivial_lower_bound() const;

 private:
  Instance() = default;

  int n_jobs_ = 0;
  int n_machines_ = 0;
  std::vector<int> machine_;
  std::vector<Time> duration_;
  std::vector<int> job_;
  std::vector<OpId> job_pred_;
  std::vector<OpId> job_succ_;
  std::vector<OpId> op_ids_;          // 0..n_ops-1; backs ops_of_job()
  std::vector<int> job_begin_;        // n_jobs + 1 offsets into op ids
  std::vector<OpId> machine_ops_;     // ops grouped by machine
  std::vector<int> machine_begin_;    // n_machines + 1 offsets
};

/// Per-machine operation sequences. May encode a cyclic (infeasible)
/// schedule; feasibility is decided by evaluate().
struct Solution {
  std::vector<std::vector<OpId>> perm;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Position-by-position equality. Throws ContractViolation when the machine
/// counts differ.
bool solutions_equal(const Solution& a, const Solution& b);

/// True iff every perm[k] is a permutation of the operations on machine k.
bool is_valid_for(const Instance& inst, const Solution& sol);

/// Each machine sequenced in increasing OpId order.
Solution job_order_solution(const Instance& inst);

/// Independent uniform random permutation per machine.
Solution random_solution(const Instance& inst, Rng& rng);

std::string to_string(const Solution& sol);

}  // namespace jssp
