#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>

namespace jssp {

using Clock = std::chrono::steady_clock;

/// Stopping budget shared by every search phase of one run.
///
/// A budget may bound wall-clock time, work (counted in tabu-search
/// iterations), or both. Work budgets make runs reproducible bit-for-bit
/// because nothing depends on timing. Not thread-safe: one budget per run.
class Budget {
 public:
  static Budget unlimited() { return Budget(); }

  static Budget wall_clock(std::chrono::duration<double> limit) {
    Budget b;
    b.deadline_ = b.start_ + std::chrono::duration_cast<Clock::duration>(limit);
    return b;
  }

  static Budget work(std::int64_t max_iterations) {
    Budget b;
    b.max_work_ = max_iterations;
    return b;
  }

  bool exhausted() const {
    if (work_ >= max_work_) return true;
    return deadline_ && Clock::now() >= *deadline_;
  }

  void charge(std::int64_t iterations = 1) { work_ += iterations; }

  std::int64_t work() const { return work_; }
  Clock::time_point started() const { return start_; }
  double seconds_since_start(Clock::time_point t) const {
    return std::chrono::duration<double>(t - start_).count();
  }
  double elapsed_seconds() const { return seconds_since_start(Clock::now()); }
  bool has_deadline() const { return deadline_.has_value(); }

 private:
  Budget() : start_(Clock::now()) {}

  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;
  std::int64_t max_work_ = std::numeric_limits<std::int64_t>::max();
  std::int64_t work_ = 0;
};

}  // namespace jssp
