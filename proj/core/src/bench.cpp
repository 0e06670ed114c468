#include "jssp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace jssp {

std::string RelativeError::format(int decimals) const {
  expects(denominator > 0, "RelativeError::format: non-positive denominator");
  expects(decimals >= 0 && decimals <= 9, "RelativeError::format: decimals out of range");
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const bool negative = numerator < 0;
  const std::int64_t mag = negative ? -numerator : numerator;
  // round(mag * scale / denominator), half away from zero
  const std::int64_t scaled = (2 * mag * scale + denominator) / (2 * denominator);
  std::string out = negative && scaled != 0 ? "-" : "";
  out += std::to_string(scaled / scale);
  if (decimals > 0) {
    std::string frac = std::to_string(scaled % scale);
    out += '.' + std::string(decimals - frac.size(), '0') + frac;
  }
  return out;
}

RelativeError compute_re(Time best, Time lb) {
  expects(lb > 0, "compute_re: lower bound must be positive");
  return {100 * (best - lb), lb};
}

std::string canonical_instance_name(std::string_view name) {
  const auto slash = name.find_last_of("/\\");
  if (slash != std::string_view::npos) name.remove_prefix(slash + 1);
  const auto dot = name.find('.');
  if (dot != std::string_view::npos) name = name.substr(0, dot);

  std::string out;
  for (char c : name) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  std::size_t digits = out.size();
  while (digits > 0 && std::isdigit(static_cast<unsigned char>(out[digits - 1]))) --digits;
  const std::size_t n_digits = out.size() - digits;
  if (digits > 0 && n_digits == 1) out.insert(digits, "0");
  return out;
}

namespace {

// Splits "DMU56" into ("DMU", 56); number is -1 when absent.
std::pair<std::string, int> split_name(std::string_view name) {
  const std::string canon = canonical_instance_name(name);
  std::size_t i = canon.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(canon[i - 1]))) --i;
  int number = -1;
  if (i < canon.size()) number = std::stoi(canon.substr(i));
  return {canon.substr(0, i), number};
}

}  // namespace

std::string instance_group(std::string_view name) {
  const auto [prefix, number] = split_name(name);
  if (prefix == "FT" || prefix == "ORB") return "FT+ORB";
  if (prefix == "LA") return "LA";
  if (prefix == "ABZ" || prefix == "YN") return "ABZ+YN";
  if (prefix == "SWV") return "SWV";
  if (prefix == "TA") return "TA";
  if (prefix == "DMU") return "DMU";
  return "other";
}

std::chrono::seconds default_time_limit(std::string_view name) {
  using std::chrono::hours;
  const auto [prefix, number] = split_name(name);
  if (prefix == "SWV" && (number == 12 || number == 15)) return hours(2);
  if (prefix == "DMU") {
    if (number >= 56 && number <= 65) return hours(2);
    if (number >= 66 && number <= 70) return hours(4);
    if (number >= 71 && number <= 80) return hours(5);
  }
  return hours(1);
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

template <typename T>
T require_number(std::string_view s, int line, int column, const char* what) {
  auto v = parse_number<T>(s);
  if (!v) {
    throw ParseError(line, column,
                     std::string("invalid ") + what + " '" + std::string(s) + "'");
  }
  return *v;
}

}  // namespace

BoundsCatalog BoundsCatalog::parse(std::string_view text) {
  BoundsCatalog catalog;
  int number = 0;
  bool header_seen = false;
  for (std::string_view raw : split(text, '\n')) {
    ++number;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, ',');
    if (!header_seen) {
      header_seen = true;
      if (trim(fields[0]) == "instance") continue;
    }
    if (fields.size() != 3) throw ParseError(number, 0, "expected instance,lb,ub");
    BoundsEntry e;
    e.instance_name = canonical_instance_name(trim(fields[0]));
    e.lb = require_number<Time>(trim(fields[1]), number, 0, "lower bound");
    e.ub = require_number<Time>(trim(fields[2]), number, 0, "upper bound");
    if (e.lb <= 0 || e.lb > e.ub) throw ParseError(number, 0, "need 0 < lb <= ub");
    catalog.entries_[e.instance_name] = e;
  }
  return catalog;
}

BoundsCatalog BoundsCatalog::load(const std::filesystem::path& path) {
  try {
    return parse(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path.string() + ": " + e.what());
  }
}

BoundsCatalog BoundsCatalog::load_default(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv(kEnvVar); env && *env) return load(env);
  std::error_code ec;
  if (!fallback.empty() && std::filesystem::exists(fallback, ec)) return load(fallback);
  return {};
}

std::optional<BoundsEntry> BoundsCatalog::find(std::string_view name) const {
  auto it = entries_.find(canonical_instance_name(name));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<ManifestEntry> parse_manifest(std::string_view text,
                                          const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> out;
  int number = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++number;
    std::istringstream in{std::string(trim(raw))};
    std::vector<std::string> cols;
    for (std::string tok; in >> tok;) cols.push_back(tok);
    if (cols.empty() || cols.front().front() == '#') continue;
    if (cols.size() != 6 && cols.size() != 7) {
      throw ParseError(number, 0,
                       "expected: path format lb ub time_limit runs [seed], found " +
                           std::to_string(cols.size()) + " columns");
    }
    auto given = [](const std::string& s) { return s != "-"; };
    ManifestEntry e;
    e.path = cols[0];
    if (e.path.is_relative() && !base_dir.empty()) e.path = base_dir / e.path;
    try {
      e.format = parse_format_name(cols[1]);
    } catch (const std::invalid_argument& err) {
      throw ParseError(number, 0, err.what());
    }
    if (given(cols[2])) e.lb = require_number<Time>(cols[2], number, 0, "lb");
    if (given(cols[3])) e.ub = require_number<Time>(cols[3], number, 0, "ub");
    if (given(cols[4])) {
      e.time_limit_s = require_number<double>(cols[4], number, 0, "time limit");
      if (*e.time_limit_s <= 0) throw ParseError(number, 0, "time limit must be positive");
    }
    if (given(cols[5])) {
      e.runs = require_number<int>(cols[5], number, 0, "run count");
      if (*e.runs < 1) throw ParseError(number, 0, "run count must be >= 1");
    }
    if (cols.size() == 7 && given(cols[6])) {
      e.seed = require_number<std::uint64_t>(cols[6], number, 0, "seed");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  try {
    return parse_manifest(read_text_file(path), path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path.string() + ": " + e.what());
  }
}

void apply_param(EvolveParams& params, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("expected key=value, got '" + std::string(assignment) + "'");
  }
  const std::string key(trim(assignment.substr(0, eq)));
  const std::string_view text = trim(assignment.substr(eq + 1));
  const auto value = parse_number<int>(text);
  if (!value) {
    throw std::invalid_argument("parameter " + key + ": '" + std::string(text) +
                                "' is not an integer");
  }
  if (key == "population" || key == "p") params.population = *value;
  else if (key == "alpha") params.path.alpha = *value;
  else if (key == "beta") params.path.beta = *value;
  else if (key == "si") params.path.si = *value;
  else if (key == "li") params.path.li = *value;
  else if (key == "init_cutoff") params.init_cutoff = *value;
  else if (key == "tenure_base") params.tabu.tenure_base = *value;
  else if (key == "tenure_spread") params.tabu.tenure_spread = *value;
  else throw std::invalid_argument("unknown parameter '" + key + "'");
  params.validate();
}

double effective_time_limit(const ManifestEntry& entry) {
  if (entry.time_limit_s) return *entry.time_limit_s;
  return static_cast<double>(default_time_limit(entry.name()).count());
}

namespace {

struct Task {
  std::size_t entry;
  std::size_t slot;
  std::uint64_t seed;
};

RunRecord execute(const Instance& inst, const std::string& name, std::optional<Time> lb,
                  double time_limit_s, std::uint64_t seed, const BenchConfig& config) {
  Budget budget = config.work_budget
                      ? Budget::work(*config.work_budget)
                      : Budget::wall_clock(std::chrono::duration<double>(time_limit_s));
  const EvolveResult result = evolve_run(inst, config.params, budget, seed,
                                         config.stop_at_lb ? lb : std::nullopt);
  RunRecord rec;
  rec.instance_name = name;
  rec.seed = seed;
  if (result.best) rec.best = result.eval.makespan;
  rec.time_to_best_s = result.stats.time_to_best_s;
  rec.work_to_best = result.stats.work_to_best;
  rec.relinks = result.stats.relinks;
  rec.repairs = result.stats.repairs;
  rec.status = result.stats.status;
  return rec;
}

}  // namespace

std::vector<RunReport> run_benchmark(const std::vector<ManifestEntry>& manifest,
                                     const BenchConfig& config) {
  config.params.validate();
  if (config.jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  std::vector<Instance> instances;
  std::vector<RunReport> reports;
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const ManifestEntry& e = manifest[i];
    instances.push_back(load_instance(e.path, e.format));
    RunReport r;
    r.instance_name = e.name();
    r.n_jobs = instances.back().n_jobs();
    r.n_machines = instances.back().n_machines();
    std::optional<BoundsEntry> known;
    if (config.catalog) known = config.catalog->find(r.instance_name);
    r.lb = e.lb ? e.lb : (known ? std::optional<Time>(known->lb) : std::nullopt);
    r.ub = e.ub ? e.ub : (known ? std::optional<Time>(known->ub) : std::nullopt);
    r.time_limit_s = effective_time_limit(e);
    r.runs = config.runs_override.value_or(e.runs.value_or(config.default_runs));
    const std::uint64_t seed0 = e.seed.value_or(config.base_seed);
    for (int k = 0; k < r.runs; ++k) {
      r.seeds.push_back(seed0 + static_cast<std::uint64_t>(k));
      tasks.push_back({i, static_cast<std::size_t>(k), seed0 + static_cast<std::uint64_t>(k)});
    }
    r.records.resize(r.runs);
    reports.push_back(std::move(r));
  }

  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Task& task = tasks[t];
      RunReport& r = reports[task.entry];
      try {
        RunRecord rec = execute(instances[task.entry], r.instance_name, r.lb,
                                r.time_limit_s, task.seed, config);
        std::lock_guard lock(mutex);
        if (config.on_run) config.on_run(rec);
        r.records[task.slot] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const int n_threads = std::min<int>(config.jobs, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (RunReport& r : reports) {
    double sum_best = 0;
    double sum_time = 0;
    int solved = 0;
    for (const RunRecord& rec : r.records) {
      if (!rec.best) continue;
      ++solved;
      sum_best += static_cast<double>(*rec.best);
      sum_time += rec.time_to_best_s;
      if (!r.best || *rec.best < *r.best) r.best = rec.best;
    }
    if (solved > 0) {
      r.m_av = sum_best / solved;
      r.t_av = sum_time / solved;
    }
    if (r.best && r.lb && *r.lb > 0) r.re = compute_re(*r.best, *r.lb);
  }
  return reports;
}

std::vector<GroupSummary> summarize_groups(const std::vector<RunReport>& reports) {
  std::vector<GroupSummary> out;
  for (const RunReport& r : reports) {
    if (!r.re) continue;
    const std::string group = instance_group(r.instance_name);
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const GroupSummary& g) { return g.group == group; });
    if (it == out.end()) {
      out.push_back({group});
      it = out.end() - 1;
    }
    ++it->instances;
    it->mre_best += r.re->percent();
    it->mre_av += 100.0 * (r.m_av - static_cast<double>(*r.lb)) / static_cast<double>(*r.lb);
    it->t_av += r.t_av;
  }
  for (GroupSummary& g : out) {
    g.mre_best /= g.instances;
    g.mre_av /= g.instances;
    g.t_av /= g.instances;
  }
  return out;
}

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

template <typename T>
std::string or_na(const std::optional<T>& v) {
  return v ? std::to_string(*v) : "NA";
}

}  // namespace

void write_report(std::ostream& out, const std::vector<RunReport>& reports, bool with_timing) {
  out << "instance,size,lb,ub,best,m_av,t_av_s,re,runs,seed0\n";
  for (const RunReport& r : reports) {
    out << r.instance_name << ',' << r.n_jobs << 'x' << r.n_machines << ',' << or_na(r.lb)
        << ',' << or_na(r.ub) << ',' << or_na(r.best) << ','
        << (r.best ? fixed(r.m_av, 2) : "NA") << ','
        << (with_timing && r.best ? fixed(r.t_av, 2) : "NA") << ','
        << (r.re ? r.re->format(3) : "NA") << ',' << r.runs << ','
        << (r.seeds.empty() ? "NA" : std::to_string(r.seeds.front())) << '\n';
  }
  const auto groups = summarize_groups(reports);
  if (groups.empty()) return;
  out << "\ngroup,instances,mre,mre_av,t_av_s\n";
  for (const GroupSummary& g : groups) {
    out << g.group << ',' << g.instances << ',' << fixed(g.mre_best, 3) << ','
        << fixed(g.mre_av, 3) << ',' << (with_timing ? fixed(g.t_av, 2) : "NA") << '\n';
  }
}

void write_run_log(std::ostream& out, const std::vector<RunReport>& reports, bool with_timing) {
  out << "instance,seed,best,time_to_best_s,relinks,repairs\n";
  for (const RunReport& r : reports) {
    for (const RunRecord& rec : r.records) {
      out << rec.instance_name << ',' << rec.seed << ',' << or_na(rec.best) << ','
          << (with_timing ? fixed(rec.time_to_best_s, 3) : "NA") << ',' << rec.relinks << ','
          << rec.repairs << '\n';
    }
  }
}

}  // namespace jssp
