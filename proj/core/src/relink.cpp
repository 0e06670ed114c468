#include "jssp/relink.hpp"

#include <algorithm>
#include <stdexcept>

namespace jssp {

void PathParams::validate() const {
  if (alpha && *alpha < 1) throw std::invalid_argument("alpha must be >= 1");
  if (beta && *beta < 1) throw std::invalid_argument("beta must be >= 1");
  if (si < 1) throw std::invalid_argument("si must be >= 1");
  if (li < si) throw std::invalid_argument("li must be >= si");
}

PathShape resolve_shape(const PathParams& params, int distance) {
  PathShape shape;
  shape.alpha = params.alpha.value_or(std::max(1, (distance + 4) / 5));
  shape.beta = params.beta.value_or(std::max((distance + 9) / 10, 2));
  return shape;
}

int distance(const Solution& a, const Solution& b) {
  expects(a.perm.size() == b.perm.size(), "distance: machine counts differ");
  int d = 0;
  for (std::size_t k = 0; k < a.perm.size(); ++k) {
    const auto& x = a.perm[k];
    const auto& y = b.perm[k];
    expects(x.size() == y.size(), "distance: machine lengths differ");
    for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
  }
  return d;
}

Solution path_step(Solution current, const Solution& guiding, Rng& rng) {
  expects(current.perm.size() == guiding.perm.size(),
          "path_step: machine counts differ");
  // Enumerate mismatches row-major and pick one uniformly.
  int mismatches = 0;
  for (std::size_t k = 0; k < current.perm.size(); ++k) {
    const auto& c = current.perm[k];
    const auto& g = guiding.perm[k];
    for (std::size_t i = 0; i < c.size(); ++i) mismatches += c[i] != g[i];
  }
  expects(mismatches > 0, "path_step: solutions already equal");
  int pick = std::uniform_int_distribution<int>(0, mismatches - 1)(rng);
  for (std::size_t k = 0; k < current.perm.size(); ++k) {
    auto& c = current.perm[k];
    const auto& g = guiding.perm[k];
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == g[i] || pick-- > 0) continue;
      const auto j = std::find(c.begin(), c.end(), g[i]);
      std::iter_swap(c.begin() + i, j);
      return current;
    }
  }
  return current;  // unreachable
}

PathSet build_path(const Solution& initiating, const Solution& guiding,
                   const PathParams& params, Rng& rng) {
  int d = distance(initiating, guiding);
  expects(d > 0, "build_path: endpoints are equal");
  const PathShape shape = resolve_shape(params, d);

  PathSet path;
  Solution current = initiating;
  for (int s = 0; s < shape.alpha && d > 0; ++s) {
    current = path_step(std::move(current), guiding, rng);
    d = distance(current, guiding);
  }
  path.push_back(current);
  while (d > shape.alpha) {
    for (int s = 0; s < shape.beta && d > 0; ++s) {
      current = path_step(std::move(current), guiding, rng);
      d = distance(current, guiding);
    }
    path.push_back(current);
  }
  return path;
}

namespace {

PathSet midpoint_path(const Solution& initiating, const Solution& guiding,
                      Rng& rng) {
  int d = distance(initiating, guiding);
  const int steps = (d + 1) / 2;
  Solution current = initiating;
  for (int s = 0; s < steps && d > 0; ++s) {
    current = path_step(std::move(current), guiding, rng);
    d = distance(current, guiding);
  }
  return {current};
}

}  // namespace

RelinkResult path_relinking(const Instance& inst, const Solution& initiating,
                            const Solution& guiding, const PathParams& params,
                            const TabuParams& tabu, Budget& budget, Rng& rng,
                            std::optional<Time> known_lb) {
  params.validate();
  const int d = distance(initiating, guiding);
  expects(d > 0, "path_relinking: endpoints are equal");

  RelinkResult result;
  const PathShape shape = resolve_shape(params, d);
  result.used_midpoint = d <= 2 * shape.alpha;
  const PathSet path = result.used_midpoint
                           ? midpoint_path(initiating, guiding, rng)
                           : build_path(initiating, guiding, params, rng);

  TabuParams slight = tabu;
  slight.cutoff = params.si;
  TabuParams strong = tabu;
  strong.cutoff = params.li;

  Evaluator evaluator(inst);
  std::optional<TabuResult> chosen;
  for (const Solution& snapshot : path) {
    // Keep at least one candidate even when the budget is already spent.
    if (chosen && budget.exhausted()) break;
    const bool feasible = evaluator.feasible(snapshot);
    if (!feasible) ++result.repairs;
    TabuResult improved =
        tabu_search(inst, feasible ? snapshot : repair(inst, snapshot), slight,
                    budget, rng, known_lb);
    ++result.candidates;
    result.ts_iterations += improved.iterations;
    if (!chosen || improved.eval.makespan < chosen->eval.makespan) {
      chosen = std::move(improved);
    }
    if (known_lb && chosen->eval.makespan <= *known_lb) break;
  }

  TabuResult final_ts = tabu_search(inst, chosen->best, strong, budget, rng, known_lb);
  result.ts_iterations += final_ts.iterations;
  if (final_ts.eval.makespan < chosen->eval.makespan) {
    result.best_found_at = final_ts.best_found_at;
    result.best_found_work = final_ts.best_found_work;
  } else {
    result.best_found_at = chosen->best_found_at;
    result.best_found_work = chosen->best_found_work;
  }
  result.solution = std::move(final_ts.best);
  result.eval = std::move(final_ts.eval);
  return result;
}

}  // namespace jssp
