#include <gtest/gtest.h>

#include <set>

#include "jssp/evolve.hpp"
#include "jssp/parse.hpp"
#include "support.hpp"

namespace jssp {
namespace {

Instance ft06() { return load_instance(JSSP_TEST_DATA_DIR "/instances/ft06.txt"); }

TEST(PairSet, AddTakeRemove) {
  PairSet set;
  set.add(3, 1);
  set.add(1, 3);
  set.add(2, 3);
  EXPECT_EQ(set.size(), 2u);
  EXPECT_TRUE(set.contains(3, 1));
  EXPECT_THROW(set.add(4, 4), ContractViolation);

  set.remove_member(1);
  EXPECT_EQ(set.size(), 1u);
  Rng rng(1);
  const auto [a, b] = set.take_random(rng);
  EXPECT_EQ(std::min(a, b), 2u);
  EXPECT_EQ(std::max(a, b), 3u);
  EXPECT_TRUE(set.empty());
  EXPECT_THROW(set.take_random(rng), ContractViolation);
}

TEST(PairSet, CompleteCoversAllPairs) {
  std::vector<Member> members(5);
  for (std::uint64_t i = 0; i < 5; ++i) members[i].id = i * 2;
  const PairSet set = PairSet::complete(members);
  EXPECT_EQ(set.size(), 10u);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) EXPECT_TRUE(set.contains(members[j].id, members[i].id));
  }
}

TEST(PairSet, TakeRandomIsUniformEnough) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> first;
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    PairSet set;
    set.add(0, 1);
    set.add(0, 2);
    set.add(1, 2);
    Rng rng(seed);
    ++first[set.take_random(rng)];
  }
  ASSERT_EQ(first.size(), 3u);
  for (const auto& [pair, count] : first) EXPECT_NEAR(count, 1000, 150);
}

TEST(InitPopulation, DistinctFeasibleMembers) {
  const Instance inst = ft06();
  Rng rng(7);
  Budget budget = Budget::unlimited();
  const Population pop = init_population(inst, 8, 200, TabuParams{}, budget, rng);
  ASSERT_EQ(pop.members.size(), 8u);
  std::set<std::uint64_t> ids;
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    const Member& m = pop.members[i];
    ids.insert(m.id);
    ASSERT_TRUE(m.eval.feasible);
    EXPECT_EQ(evaluate(inst, m.solution).makespan, m.eval.makespan);
    EXPECT_GE(m.eval.makespan, pop.best_eval.makespan);
    for (std::size_t j = 0; j < i; ++j) EXPECT_NE(m.solution, pop.members[j].solution);
  }
  EXPECT_EQ(ids.size(), 8u);
}

TEST(InitPopulation, StopsAtKnownBound) {
  const Instance inst = ft06();
  Rng rng(3);
  Budget budget = Budget::unlimited();
  const Population pop = init_population(inst, 30, 12500, TabuParams{}, budget, rng, Time{55});
  EXPECT_EQ(pop.best_eval.makespan, 55);
  EXPECT_LE(pop.members.size(), 30u);
}

TEST(InitPopulation, GivesUpOnDuplicates) {
  // One machine, two jobs: only two distinct schedules exist.
  const Instance inst = Instance::build(2, 1, {{{0, 1}}, {{0, 1}}});
  Rng rng(1);
  Budget budget = Budget::unlimited();
  const Population pop = init_population(inst, 10, 10, TabuParams{}, budget, rng);
  EXPECT_LE(pop.members.size(), 2u);
}

TEST(EvolveRun, SolvesFt06) {
  const Instance inst = ft06();
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Budget budget = Budget::wall_clock(std::chrono::seconds(60));
    const EvolveResult r = evolve_run(inst, EvolveParams{}, budget, seed, Time{55});
    ASSERT_TRUE(r.best);
    EXPECT_EQ(r.eval.makespan, 55);
    EXPECT_EQ(r.stats.status, RunStatus::ReachedLowerBound);
  }
}

TEST(EvolveRun, WorkBudgetIsReproducible) {
  Rng gen(17);
  const Instance inst = testing::random_instance(gen, 8, 6);
  EvolveParams params;
  params.population = 6;
  params.path.si = 30;
  params.path.li = 100;
  auto run = [&] {
    Budget budget = Budget::work(20000);
    return evolve_run(inst, params, budget, 99);
  };
  const EvolveResult a = run();
  const EvolveResult b = run();
  ASSERT_TRUE(a.best && b.best);
  EXPECT_EQ(*a.best, *b.best);
  EXPECT_EQ(a.stats.relinks, b.stats.relinks);
  EXPECT_EQ(a.stats.repairs, b.stats.repairs);
  EXPECT_EQ(a.stats.work_to_best, b.stats.work_to_best);
  EXPECT_GT(a.stats.relinks, 0);
  EXPECT_EQ(a.stats.status, RunStatus::Completed);
}

TEST(EvolveRun, TinyBudgetStillReturnsWhatItHas) {
  const Instance inst = ft06();
  Budget budget = Budget::work(5);
  const EvolveResult r = evolve_run(inst, EvolveParams{}, budget, 1);
  EXPECT_EQ(r.stats.status, RunStatus::InitBudgetExhausted);
  ASSERT_TRUE(r.best);
  EXPECT_TRUE(evaluate(inst, *r.best).feasible);
}

TEST(EvolveRun, Preconditions) {
  const Instance inst = ft06();
  Budget spent = Budget::work(0);
  EXPECT_THROW(evolve_run(inst, EvolveParams{}, spent, 1), ContractViolation);
  Budget budget = Budget::unlimited();
  EXPECT_THROW(evolve_run(inst, EvolveParams{.population = 1}, budget, 1), std::invalid_argument);
}

TEST(RunStatus, Names) {
  EXPECT_STREQ(to_string(RunStatus::Completed), "completed");
  EXPECT_STREQ(to_string(RunStatus::ReachedLowerBound), "reached_lb");
  EXPECT_STREQ(to_string(RunStatus::InitBudgetExhausted), "init_budget_exhausted");
}

}  // namespace
}  // namespace jssp
