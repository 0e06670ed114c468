#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "jssp/evolve.hpp"
#include "jssp/parse.hpp"

namespace jssp {

/// 100 * (best - lb) / lb kept as an exact fraction.
struct RelativeError {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  double percent() const { return static_cast<double>(numerator) / denominator; }
  /// Decimal rendering rounded half away from zero.
  std::string format(int decimals = 3) const;
};

/// Requires lb > 0.
RelativeError compute_re(Time best, Time lb);

/// Upper-cases, drops any directory or extension and zero-pads the numeric
/// suffix to two digits: "la1.txt" -> "LA01", "yn4" -> "YN04".
std::string canonical_instance_name(std::string_view name);

/// Instance set used for mean-RE summaries: "FT+ORB", "LA", "ABZ+YN",
/// "SWV", "TA", "DMU", or "other".
std::string instance_group(std::string_view name);

/// Default per-run wall-clock limit: 2 h for SWV12, SWV15 and DMU56-65,
/// 4 h for DMU66-70, 5 h for DMU71-80, 1 h otherwise.
std::chrono::seconds default_time_limit(std::string_view name);

struct BoundsEntry {
  std::string instance_name;
  Time lb = 0;
  Time ub = 0;

  bool optimal() const { return lb == ub; }
};

class BoundsCatalog {
 public:
  /// CSV with header "instance,lb,ub"; '#' lines are comments.
  static BoundsCatalog parse(std::string_view text);
  static BoundsCatalog load(const std::filesystem::path& path);
  /// $JSSP_BOUNDS if set, otherwise `fallback` (if it exists), otherwise
  /// an empty catalog.
  static BoundsCatalog load_default(const std::filesystem::path& fallback);

  static constexpr const char* kEnvVar = "JSSP_BOUNDS";

  std::optional<BoundsEntry> find(std::string_view name) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, BoundsEntry> entries_;
};

struct ManifestEntry {
  std::filesystem::path path;
  InstanceFormat format = InstanceFormat::Auto;
  std::optional<Time> lb;
  std::optional<Time> ub;
  std::optional<double> time_limit_s;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;

  std::string name() const { return canonical_instance_name(path.filename().string()); }
};

/// Whitespace-separated table, one instance per line:
///   path  format  lb  ub  time_limit_s  runs  [seed]
/// '-' leaves a column at its default; '#' starts a comment line. Relative
/// paths are resolved against `base_dir`.
std::vector<ManifestEntry> parse_manifest(std::string_view text,
                                          const std::filesystem::path& base_dir = {});
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

struct RunRecord {
  std::string instance_name;
  std::uint64_t seed = 0;
  std::optional<Time> best;
  double time_to_best_s = 0;
  std::int64_t work_to_best = 0;
  std::int64_t relinks = 0;
  std::int64_t repairs = 0;
  RunStatus status = RunStatus::Completed;
};

struct RunReport {
  std::string instance_name;
  int n_jobs = 0;
  int n_machines = 0;
  std::optional<Time> lb;
  std::optional<Time> ub;
  double time_limit_s = 0;
  int runs = 0;
  /// Minimum over runs that produced a schedule.
  std::optional<Time> best;
  double m_av = 0;
  double t_av = 0;
  std::optional<RelativeError> re;
  std::vector<std::uint64_t> seeds;
  std::vector<RunRecord> records;
};

struct BenchConfig {
  std::optional<int> runs_override;
  int default_runs = 10;
  std::uint64_t base_seed = 1;
  /// Concurrent runs.
  int jobs = 1;
  EvolveParams params;
  /// When set, each run is bounded by this many tabu iterations instead of
  /// wall-clock time, which makes reports reproducible byte-for-byte.
  std::optional<std::int64_t> work_budget;
  /// Stop a run as soon as it reaches the instance's lower bound.
  bool stop_at_lb = true;
  const BoundsCatalog* catalog = nullptr;
  /// Called after every finished run (from worker threads, serialized).
  std::function<void(const RunRecord&)> on_run;

  bool deterministic() const { return work_budget.has_value(); }
};

/// Sets one tunable from a "key=value" string. Keys: population, alpha,
/// beta, si, li, init_cutoff, tenure_base, tenure_spread. Throws
/// std::invalid_argument on unknown keys or bad values.
void apply_param(EvolveParams& params, std::string_view assignment);

/// Time limit for an entry: manifest value, else the default policy.
double effective_time_limit(const ManifestEntry& entry);

/// Runs every manifest entry `runs` times with seeds seed0, seed0+1, ...
/// Reports come back in manifest order. Throws if an instance file is
/// missing or malformed.
std::vector<RunReport> run_benchmark(const std::vector<ManifestEntry>& manifest,
                                     const BenchConfig& config);

struct GroupSummary {
  std::string group;
  int instances = 0;
  double mre_best = 0;
  double mre_av = 0;
  double t_av = 0;
};

/// Mean RE per instance group over reports that have a lower bound.
std::vector<GroupSummary> summarize_groups(const std::vector<RunReport>& reports);

/// Table with header instance,size,lb,ub,best,m_av,t_av_s,re,runs,seed0
/// followed by a blank line and the per-group MRE table. Timing columns
/// print as NA when `with_timing` is false.
void write_report(std::ostream& out, const std::vector<RunReport>& reports,
                  bool with_timing = true);

/// One line per run: instance,seed,best,time_to_best_s,relinks,repairs.
void write_run_log(std::ostream& out, const std::vector<RunReport>& reports,
                   bool with_timing = true);

}  // namespace jssp
