#include "jssp/evolve.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace jssp {

void EvolveParams::validate() const {
  if (population < 2) throw std::invalid_argument("population must be >= 2");
  if (init_cutoff && *init_cutoff < 1) {
    throw std::invalid_argument("init_cutoff must be >= 1");
  }
  if ((tabu.tenure_spread && *tabu.tenure_spread < 0) || (tabu.tenure_base && *tabu.tenure_base < 0)) {
    throw std::invalid_argument("tabu tenure must be non-negative");
  }
  path.validate();
}

bool Population::contains(const Solution& sol) const {
  return std::any_of(members.begin(), members.end(),
                     [&](const Member& m) { return m.solution == sol; });
}

const Member* Population::find(std::uint64_t id) const {
  for (const Member& m : members) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

void PairSet::add(std::uint64_t a, std::uint64_t b) {
  expects(a != b, "PairSet::add: pair of identical members");
  if (a > b) std::swap(a, b);
  if (!contains(a, b)) pairs_.emplace_back(a, b);
}

bool PairSet::contains(std::uint64_t a, std::uint64_t b) const {
  if (a > b) std::swap(a, b);
  return std::find(pairs_.begin(), pairs_.end(), std::pair{a, b}) != pairs_.end();
}

std::pair<std::uint64_t, std::uint64_t> PairSet::take_random(Rng& rng) {
  expects(!pairs_.empty(), "PairSet::take_random: empty");
  const auto i = std::uniform_int_distribution<std::size_t>(0, pairs_.size() - 1)(rng);
  auto picked = pairs_[i];
  pairs_[i] = pairs_.back();
  pairs_.pop_back();
  return picked;
}

void PairSet::remove_member(std::uint64_t id) {
  std::erase_if(pairs_, [id](const auto& p) { return p.first == id || p.second == id; });
}

PairSet PairSet::complete(const std::vector<Member>& members) {
  PairSet set;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      set.pairs_.emplace_back(std::min(members[i].id, members[j].id),
                              std::max(members[i].id, members[j].id));
    }
  }
  return set;
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::ReachedLowerBound: return "reached_lb";
    case RunStatus::InitBudgetExhausted: return "init_budget_exhausted";
  }
  return "unknown";
}

namespace {

bool reached(std::optional<Time> known_lb, Time makespan) {
  return known_lb && makespan <= *known_lb;
}

void offer_best(Population& pop, const Solution& sol, const ScheduleEval& eval,
                Clock::time_point found_at, std::int64_t found_work) {
  if (!pop.has_best() || eval.makespan < pop.best_eval.makespan) {
    pop.best = sol;
    pop.best_eval = eval;
    pop.best_found_at = found_at;
    pop.best_found_work = found_work;
  }
}

// Adds improved random solutions until `p` members exist. Returns early on
// budget exhaustion, on reaching `known_lb`, or after too many duplicates.
void fill_population(const Instance& inst, Population& pop, int p, int cutoff,
                     const TabuParams& tabu, Budget& budget, Rng& rng,
                     std::optional<Time> known_lb) {
  TabuParams improver = tabu;
  improver.cutoff = cutoff;
  Evaluator evaluator(inst);
  const int duplicate_limit = std::max(50, 10 * p);
  int duplicates_in_row = 0;
  while (static_cast<int>(pop.members.size()) < p && !budget.exhausted()) {
    Solution start = random_solution(inst, rng);
    if (!evaluator.feasible(start)) {
      start = repair(inst, start);
      ++pop.repairs;
    }
    TabuResult improved = tabu_search(inst, start, improver, budget, rng, known_lb);
    pop.ts_iterations += improved.iterations;
    offer_best(pop, improved.best, improved.eval, improved.best_found_at,
               improved.best_found_work);
    if (pop.contains(improved.best)) {
      if (++duplicates_in_row >= duplicate_limit) break;
      continue;
    }
    duplicates_in_row = 0;
    pop.members.push_back({std::move(improved.best), std::move(improved.eval), pop.next_id++});
    if (reached(known_lb, pop.best_eval.makespan)) break;
  }
}

}  // namespace

Population init_population(const Instance& inst, int p, int cutoff,
                           const TabuParams& tabu, Budget& budget, Rng& rng,
                           std::optional<Time> known_lb) {
  expects(p >= 2, "init_population: p must be >= 2");
  Population pop;
  fill_population(inst, pop, p, cutoff, tabu, budget, rng, known_lb);
  return pop;
}

namespace {

class EvolveRun {
 public:
  EvolveRun(const Instance& inst, const EvolveParams& params, Budget& budget,
            std::uint64_t seed, std::optional<Time> known_lb)
      : inst_(inst), params_(params), budget_(budget), rng_(seed), known_lb_(known_lb) {
    stats_.seed = seed;
  }

  EvolveResult run() {
    const int p = params_.population;
    const int init_cutoff = params_.init_cutoff.value_or(params_.path.li);
    pop_ = init_population(inst_, p, init_cutoff, params_.tabu, budget_, rng_, known_lb_);
    stats_.repairs += pop_.repairs;
    stats_.ts_iterations += pop_.ts_iterations;
    if (pop_.has_best()) note_improvement();

    if (pop_.members.size() < 2 && !reached_lb()) {
      stats_.status = budget_.exhausted() ? RunStatus::InitBudgetExhausted
                                          : RunStatus::Completed;
      return finish();
    }

    PairSet pairs = PairSet::complete(pop_.members);
    last_sample_s_ = budget_.elapsed_seconds();
    while (!reached_lb() && !budget_.exhausted() && !exhausted_) {
      sample_trace();
      if (pairs.empty()) {
        restart(pairs);
        continue;
      }
      const auto [id_a, id_b] = pairs.take_random(rng_);
      const Member* a = pop_.find(id_a);
      const Member* b = pop_.find(id_b);
      expects(a && b, "evolve_run: PairSet references a removed member");
      const Solution first = a->solution;
      const Solution second = b->solution;
      ++stats_.iterations;

      std::vector<Member> products;
      for (const auto& [from, to] : {std::pair{&first, &second}, std::pair{&second, &first}}) {
        if (*from == *to) continue;
        RelinkResult r = path_relinking(inst_, *from, *to, params_.path, params_.tabu,
                                        budget_, rng_, known_lb_);
        ++stats_.relinks;
        stats_.repairs += r.repairs;
        stats_.ts_iterations += r.ts_iterations;
        const Time before = pop_.best_eval.makespan;
        offer_best(pop_, r.solution, r.eval, r.best_found_at, r.best_found_work);
        if (pop_.best_eval.makespan < before) note_improvement();
        products.push_back({std::move(r.solution), std::move(r.eval), pop_.next_id++});
        if (reached_lb()) break;
      }
      replace(products, pairs);
    }
    stats_.status = reached_lb() ? RunStatus::ReachedLowerBound : RunStatus::Completed;
    return finish();
  }

 private:
  bool reached_lb() const {
    return pop_.has_best() && reached(known_lb_, pop_.best_eval.makespan);
  }

  void note_improvement() {
    stats_.time_to_best_s = budget_.seconds_since_start(pop_.best_found_at);
    stats_.work_to_best = pop_.best_found_work;
    stats_.trace.push_back({stats_.time_to_best_s, stats_.work_to_best,
                            pop_.best_eval.makespan});
  }

  void sample_trace() {
    const double now = budget_.elapsed_seconds();
    if (now - last_sample_s_ >= 1.0) {
      stats_.trace.push_back({now, budget_.work(), pop_.best_eval.makespan});
      last_sample_s_ = now;
    }
  }

  // Adds the products, then removes as many members as were added:
  // duplicates first, then the largest makespan, then the oldest.
  void replace(std::vector<Member>& products, PairSet& pairs) {
    if (products.empty()) return;
    std::vector<std::uint64_t> old_ids;
    for (const Member& m : pop_.members) old_ids.push_back(m.id);

    std::vector<bool> duplicate(products.size(), false);
    for (std::size_t i = 0; i < products.size(); ++i) {
      duplicate[i] = pop_.contains(products[i].solution);
      for (std::size_t j = 0; j < i && !duplicate[i]; ++j) {
        duplicate[i] = products[j].solution == products[i].solution;
      }
    }
    for (std::size_t i = 0; i < products.size(); ++i) {
      for (std::uint64_t other : old_ids) pairs.add(products[i].id, other);
      pop_.members.push_back(std::move(products[i]));
    }

    const std::size_t n_old = old_ids.size();
    std::vector<std::size_t> order(pop_.members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto is_dup = [&](std::size_t i) { return i >= n_old && duplicate[i - n_old]; };
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      const Member& mx = pop_.members[x];
      const Member& my = pop_.members[y];
      return std::tuple(!is_dup(x), -mx.eval.makespan, mx.id) <
             std::tuple(!is_dup(y), -my.eval.makespan, my.id);
    });

    std::vector<std::uint64_t> removed;
    for (std::size_t r = 0; r < products.size(); ++r) {
      removed.push_back(pop_.members[order[r]].id);
    }
    for (std::uint64_t id : removed) {
      pairs.remove_member(id);
      std::erase_if(pop_.members, [id](const Member& m) { return m.id == id; });
    }
  }

  // Keep the best member and rebuild the rest of the population.
  void restart(PairSet& pairs) {
    ++stats_.restarts;
    auto best = std::min_element(
        pop_.members.begin(), pop_.members.end(), [](const Member& x, const Member& y) {
          return std::tie(x.eval.makespan, x.id) < std::tie(y.eval.makespan, y.id);
        });
    Member keep = std::move(*best);
    pop_.members.clear();
    pop_.members.push_back(std::move(keep));
    const std::int64_t repairs_before = pop_.repairs;
    const std::int64_t ts_before = pop_.ts_iterations;
    const Time best_before = pop_.best_eval.makespan;
    fill_population(inst_, pop_, params_.population,
                    params_.init_cutoff.value_or(params_.path.li), params_.tabu,
                    budget_, rng_, known_lb_);
    stats_.repairs += pop_.repairs - repairs_before;
    stats_.ts_iterations += pop_.ts_iterations - ts_before;
    if (pop_.best_eval.makespan < best_before) note_improvement();
    pairs = PairSet::complete(pop_.members);
    // Nothing left to relink: the search space around the incumbent is spent.
    if (pairs.empty()) exhausted_ = true;
  }

  EvolveResult finish() {
    EvolveResult result;
    stats_.elapsed_s = budget_.elapsed_seconds();
    if (pop_.has_best()) {
      result.best = pop_.best;
      result.eval = pop_.best_eval;
    }
    result.stats = std::move(stats_);
    return result;
  }

  const Instance& inst_;
  const EvolveParams& params_;
  Budget& budget_;
  Rng rng_;
  std::optional<Time> known_lb_;
  Population pop_;
  RunStats stats_;
  double last_sample_s_ = 0;
  bool exhausted_ = false;
};

}  // namespace

EvolveResult evolve_run(const Instance& inst, const EvolveParams& params,
                        Budget& budget, std::uint64_t seed,
                        std::optional<Time> known_lb) {
  params.validate();
  expects(!budget.exhausted(), "evolve_run: budget already exhausted");
  EvolveRun run(inst, params, budget, seed, known_lb);
  return run.run();
}

}  // namespace jssp
