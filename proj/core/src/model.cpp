#include "jssp/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace jssp {

Instance Instance::build(int n_jobs, int n_machines,
                         const std::vector<Route>& routes,
                         bool allow_repeated_machines) {
  if (n_jobs <= 0 || n_machines <= 0) {
    throw std::invalid_argument("instance needs at least one job and one machine");
  }
  if (static_cast<int>(routes.size()) != n_jobs) {
    throw std::invalid_argument("expected " + std::to_string(n_jobs) +
                                " job routes, got " +
                                std::to_string(routes.size()));
  }

  Instance inst;
  inst.n_jobs_ = n_jobs;
  inst.n_machines_ = n_machines;
  inst.job_begin_.reserve(n_jobs + 1);

  std::vector<int> seen(n_machines, -1);
  for (int j = 0; j < n_jobs; ++j) {
    const Route& route = routes[j];
    if (route.empty()) {
      throw std::invalid_argument("job " + std::to_string(j) + " has an empty route");
    }
    inst.job_begin_.push_back(inst.n_ops());
    for (std::size_t i = 0; i < route.size(); ++i) {
      const RouteStep& step = route[i];
      if (step.machine < 0 || step.machine >= n_machines) {
        throw std::invalid_argument("job " + std::to_string(j) + " step " +
                                    std::to_string(i) + ": machine " +
                                    std::to_string(step.machine) +
                                    " out of range");
      }
      if (step.duration < 0) {
        throw std::invalid_argument("job " + std::to_string(j) + " step " +
                                    std::to_string(i) + ": negative duration");
      }
      if (!allow_repeated_machines && seen[step.machine] == j) {
        throw std::invalid_argument("job " + std::to_string(j) +
                                    " visits machine " +
                                    std::to_string(step.machine) + " twice");
      }
      seen[step.machine] = j;

      const OpId op = inst.n_ops();
      inst.machine_.push_back(step.machine);
      inst.duration_.push_back(step.duration);
      inst.job_.push_back(j);
      inst.job_pred_.push_back(i == 0 ? kNoOp : op - 1);
      inst.job_succ_.push_back(i + 1 == route.size() ? kNoOp : op + 1);
    }
  }
  inst.job_begin_.push_back(inst.n_ops());
  inst.op_ids_.resize(inst.n_ops());
  std::iota(inst.op_ids_.begin(), inst.op_ids_.end(), 0);

  inst.machine_begin_.assign(n_machines + 1, 0);
  for (int k : inst.machine_) ++inst.machine_begin_[k + 1];
  std::partial_sum(inst.machine_begin_.begin(), inst.machine_begin_.end(),
                   inst.machine_begin_.begin());
  inst.machine_ops_.resize(inst.n_ops());
  std::vector<int> fill(inst.machine_begin_.begin(), inst.machine_begin_.end() - 1);
  for (OpId op = 0; op < inst.n_ops(); ++op) {
    inst.machine_ops_[fill[inst.machine_[op]]++] = op;
  }
  return inst;
}

std::span<const OpId> Instance::ops_on_machine(int k) const {
  return std::span<const OpId>(machine_ops_).subspan(
      machine_begin_[k], machine_begin_[k + 1] - machine_begin_[k]);
}

std::span<const OpId> Instance::ops_of_job(int j) const {
  return std::span<const OpId>(op_ids_).subspan(
      job_begin_[j], job_begin_[j + 1] - job_begin_[j]);
}

std::vector<Route> Instance::routes() const {
  std::vector<Route> out(n_jobs_);
  for (int j = 0; j < n_jobs_; ++j) {
    for (OpId op : ops_of_job(j)) out[j].push_back({machine_[op], duration_[op]});
  }
  return out;
}

Time Instance::trivial_lower_bound() const {
  Time bound = 0;
  for (int j = 0; j < n_jobs_; ++j) {
    Time len = 0;
    for (OpId op : ops_of_job(j)) len += duration_[op];
    bound = std::max(bound, len);
  }
  for (int k = 0; k < n_machines_; ++k) {
    Time load = 0;
    for (OpId op : ops_on_machine(k)) load += duration_[op];
    bound = std::max(bound, load);
  }
  return bound;
}

bool solutions_equal(const Solution& a, const Solution& b) {
  expects(a.perm.size() == b.perm.size(),
          "solutions_equal: machine counts differ");
  return a.perm == b.perm;
}

bool is_valid_for(const Instance& inst, const Solution& sol) {
  if (static_cast<int>(sol.perm.size()) != inst.n_machines()) return false;
  std::vector<char> seen(inst.n_ops(), 0);
  for (int k = 0; k < inst.n_machines(); ++k) {
    const auto& seq = sol.perm[k];
    if (seq.size() != inst.ops_on_machine(k).size()) return false;
    for (OpId op : seq) {
      if (op < 0 || op >= inst.n_ops() || inst.machine(op) != k || seen[op]) {
        return false;
      }
      seen[op] = 1;
    }
  }
  return true;
}

Solution job_order_solution(const Instance& inst) {
  Solution sol;
  sol.perm.reserve(inst.n_machines());
  for (int k = 0; k < inst.n_machines(); ++k) {
    auto ops = inst.ops_on_machine(k);
    sol.perm.emplace_back(ops.begin(), ops.end());
  }
  return sol;
}

Solution random_solution(const Instance& inst, Rng& rng) {
  Solution sol = job_order_solution(inst);
  for (auto& seq : sol.perm) std::shuffle(seq.begin(), seq.end(), rng);
  return sol;
}

std::string to_string(const Solution& sol) {
  std::ostringstream out;
  for (const auto& seq : sol.perm) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i) out << ' ';
      out << seq[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace jssp
