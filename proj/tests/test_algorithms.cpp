#include <doctest.h>

#include <chrono>
#include <mutex>
#include <random>
#include <thread>

#include "biopt/algorithms.hpp"
#include "biopt/oracle.hpp"
#include "fixtures.hpp"

using namespace biopt;
using biopt::testing::outcome_set;
using biopt::testing::t1;

namespace {

const std::vector<OutcomeVector> kT1Front{{0, 3}, {1, 2}, {2, 1}, {3, 0}};

/** Forwards to branch-and-bound and remembers every answer. */
class RecordingBackend final : public SolverBackend {
 public:
  LexResult solve_lex(const Problem& p, ObjectiveOrder order, std::span<const ExtraConstraint> extras) override {
    LexResult r = inner_.solve_lex(p, order, extras);
    std::lock_guard lock(mutex_);
    results.push_back(r.solution ? std::optional(r.solution->outcome) : std::nullopt);
    return r;
  }

  std::vector<std::optional<OutcomeVector>> results;

 private:
  BranchAndBoundBackend inner_;
  std::mutex mutex_;
};

/** Sleeps a random 0..max_us before each store access. */
SharedBounds::Hook random_delays(std::uint64_t seed, int max_us) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  auto mutex = std::make_shared<std::mutex>();
  return [rng, mutex, max_us](Objective, SharedBounds::Access) {
    int us;
    {
      std::lock_guard lock(*mutex);
      us = std::uniform_int_distribution<int>(0, max_us)(*rng);
    }
    std::this_thread::sleep_for(std::chrono::microseconds(us));
  };
}

ParetoSet splitting(const Problem& p) {
  BranchAndBoundBackend a;
  BranchAndBoundBackend b;
  SolverBackend* backends[] = {&a, &b};
  return splitting_boip(p, backends).front;
}

}  // namespace

TEST_CASE("sequential on T1 walks the staircase with one extra infeasible solve") {
  RecordingBackend backend;
  const BoipResult r = sequential_boip(t1(), backend);
  CHECK(r.front.outcomes() == kT1Front);
  CHECK(r.stats.ip_solves == 5);
  CHECK(r.stats.feasible_solves == 4);
  CHECK(r.stats.infeasible_solves == 1);
  CHECK(r.stats.pareto_size == 4);
  REQUIRE(r.stats.workers.size() == 1);
  CHECK(r.stats.workers[0].found == 4);

  REQUIRE(backend.results.size() == 5);
  CHECK_FALSE(backend.results.back().has_value());
}

TEST_CASE("sequential on an infeasible problem") {
  BranchAndBoundBackend backend;
  const BoipResult r = sequential_boip(testing::infeasible(), backend);
  CHECK(r.front.empty());
  CHECK(r.stats.ip_solves == 1);
}

TEST_CASE("sequential on K1") {
  BranchAndBoundBackend backend;
  const Problem k = testing::k1();
  const BoipResult r = sequential_boip(k, backend);
  std::set<OutcomeVector> user;
  for (const auto& s : r.front) user.insert(to_user_sense(k, s.outcome));
  CHECK(user == std::set<OutcomeVector>{{4, 2}, {1, 4}});
}

TEST_CASE("sequential descends strictly and pays exactly one solve per point plus one") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const Problem p = testing::random_tiny(rng);
    RecordingBackend backend;
    const BoipResult r = sequential_boip(p, backend);
    CHECK(r.stats.ip_solves == r.front.size() + 1);
    for (std::size_t i = 1; i + 1 < backend.results.size(); ++i) {
      CHECK(backend.results[i - 1]->f1 < backend.results[i]->f1);
      CHECK(backend.results[i - 1]->f2 > backend.results[i]->f2);
    }
  }
}

TEST_CASE("split_range") {
  BranchAndBoundBackend backend;
  SplitPlan plan = split_range(t1(), backend, 2);
  CHECK(plan.intervals == std::vector<F1Interval>{{0, 1}, {2, 3}});
  REQUIRE(plan.endpoints.size() == 2);
  CHECK(plan.endpoints[0].outcome == OutcomeVector{0, 3});
  CHECK(plan.endpoints[1].outcome == OutcomeVector{3, 0});
  CHECK(plan.stats.ip_solves == 2);

  plan = split_range(t1(), backend, 1);
  CHECK(plan.intervals == std::vector<F1Interval>{{0, 3}});

  // Width 5 doesn't divide 2 evenly: the last interval absorbs the remainder.
  plan = split_range(testing::pick_one({{0, 9}, {4, 5}, {6, 7}, {10, 0}, {3, 8}}), backend, 2);
  CHECK(plan.intervals == std::vector<F1Interval>{{0, 4}, {5, 10}});

  plan = split_range(testing::pick_one({{5, 5}, {6, 6}}), backend, 2);
  REQUIRE(plan.intervals.size() == 2);
  CHECK(plan.intervals[0] == F1Interval{5, 5});
  CHECK(plan.intervals[1].empty());

  plan = split_range(testing::infeasible(), backend, 2);
  CHECK(plan.intervals.empty());
  CHECK(plan.endpoints.empty());
}

TEST_CASE("splitting on T1 and on an infeasible problem") {
  CHECK(splitting(t1()).outcomes() == kT1Front);
  CHECK(splitting(testing::infeasible()).empty());
}

TEST_CASE("splitting merge drops slice-local optima dominated across the boundary") {
  // f1 range [0,10] splits into [0,4] and [5,10]. Inside the second slice
  // (6,7) is locally non-dominated, but (4,6) in the first slice dominates it.
  const Problem p = testing::pick_one({{0, 10}, {4, 6}, {6, 7}, {10, 0}});
  BranchAndBoundBackend backend;
  const SplitPlan plan = split_range(p, backend, 2);
  REQUIRE(plan.intervals == std::vector<F1Interval>{{0, 4}, {5, 10}});

  const LinearConstraint slice[] = {objective_constraint(p, Objective::F1, Relation::Ge, 5),
                                    objective_constraint(p, Objective::F1, Relation::Le, 10)};
  const BoipResult local = sequential_boip(p.with_constraints(slice), backend);
  CHECK(outcome_set(local.front).count({6, 7}) == 1);

  const ParetoSet merged = splitting(p);
  CHECK(merged.outcomes() == std::vector<OutcomeVector>{{0, 10}, {4, 6}, {10, 0}});
  CHECK(merged.same_outcomes(brute_force_pareto(p)));
}

TEST_CASE("meeting on T1") {
  RecordingBackend w1;
  RecordingBackend w2;
  SharedBounds bounds(nullptr, true);
  const BoipResult r = meeting_boip(t1(), w1, w2, bounds);
  CHECK(r.front.outcomes() == kT1Front);
  REQUIRE(r.stats.workers.size() == 2);
  // Each worker stops on exactly one infeasible solve.
  CHECK_FALSE(w1.results.back().has_value());
  CHECK_FALSE(w2.results.back().has_value());
  CHECK(r.stats.ip_solves == r.stats.feasible_solves + r.stats.infeasible_solves);
  CHECK(r.stats.infeasible_solves == 2);
}

TEST_CASE("meeting on a single-point front") {
  const Problem p = testing::pick_one({{1, 1}, {2, 3}, {3, 2}});
  BranchAndBoundBackend a;
  BranchAndBoundBackend b;
  const BoipResult r = meeting_boip(p, a, b);
  CHECK(r.front.outcomes() == std::vector<OutcomeVector>{{1, 1}});
}

TEST_CASE("meeting with one worker fully stalled degenerates to the sequential walk") {
  for (const Objective stalled : {Objective::F1, Objective::F2}) {
    SharedBounds bounds;
    BranchAndBoundBackend a;
    BranchAndBoundBackend b;
    const Objective active = other(stalled);
    const WorkerResult first = meeting_worker(t1(), a, bounds, active);
    CHECK(first.found.size() == 4);
    const WorkerResult late = meeting_worker(t1(), b, bounds, stalled);
    CHECK(late.found.empty());
    CHECK(late.stats.ip_solves == 1);
    CHECK(pareto_filter(first.found).outcomes() == kT1Front);
  }
}

TEST_CASE("meeting prefers worker 2's representative for a shared outcome") {
  // Two assignments reach (1,1); whichever worker 2 picks must survive.
  const Problem p = testing::pick_one({{1, 1}, {1, 1}});
  BranchAndBoundBackend a;
  BranchAndBoundBackend b;
  SharedBounds bounds;
  const WorkerResult w2 = meeting_worker(p, b, bounds, Objective::F2);
  const BoipResult r = meeting_boip(p, a, b);
  REQUIRE(r.front.size() == 1);
  CHECK(r.front[0].assignment == w2.found.front().assignment);
}

TEST_CASE("shared bounds only decrease") {
  SharedBounds bounds(nullptr, true);
  CHECK_FALSE(bounds.get(Objective::F1).has_value());
  bounds.tighten(Objective::F1, 10);
  bounds.tighten(Objective::F1, 7);
  bounds.tighten(Objective::F1, 7);
  CHECK(bounds.get(Objective::F1) == 7);
  CHECK_THROWS_AS(bounds.tighten(Objective::F1, 8), std::logic_error);
  CHECK(bounds.get(Objective::F1) == 7);
  CHECK(bounds.trace(Objective::F1) == std::vector<std::int64_t>{10, 7, 7});
  CHECK(bounds.trace(Objective::F2).empty());
}

TEST_CASE("all algorithms match the oracle on random tiny problems") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 120; ++trial) {
    const Problem p = testing::random_tiny(rng);
    const ParetoSet oracle = brute_force_pareto(p);
    BranchAndBoundBackend a;
    BranchAndBoundBackend b;
    CHECK(sequential_boip(p, a).front.same_outcomes(oracle));
    CHECK(splitting(p).same_outcomes(oracle));
    SharedBounds bounds(nullptr, true);
    const BoipResult m = meeting_boip(p, a, b, bounds);
    CHECK(m.front.same_outcomes(oracle));
    CHECK(m.front.is_staircase());
    for (const Objective o : {Objective::F1, Objective::F2}) {
      const auto t = bounds.trace(o);
      CHECK(std::is_sorted(t.rbegin(), t.rend()));
    }
  }
}

TEST_CASE("meeting is schedule independent under injected delays") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    const Problem p = testing::random_tiny(rng);
    const ParetoSet oracle = brute_force_pareto(p);
    for (int schedule = 0; schedule < 6; ++schedule) {
      BranchAndBoundBackend a;
      BranchAndBoundBackend b;
      SharedBounds bounds(random_delays(trial * 100 + schedule, 2000), true);
      CHECK(meeting_boip(p, a, b, bounds).front.same_outcomes(oracle));
    }
  }
}

TEST_CASE("verify_theorem1") {
  const ParetoSet oracle = brute_force_pareto(t1());
  auto set_of = [](std::initializer_list<OutcomeVector> v) {
    std::vector<Solution> s;
    for (const auto& o : v) s.push_back({{}, o});
    return pareto_filter(s);
  };
  CHECK(verify_theorem1(set_of({{0, 3}, {1, 2}}), set_of({{3, 0}}), OutcomeVector{2, 1}, oracle));
  CHECK_FALSE(verify_theorem1(set_of({{0, 3}, {1, 2}}), set_of({{3, 0}}), std::nullopt, oracle));
  CHECK(verify_theorem1(ParetoSet{}, ParetoSet{}, std::nullopt, ParetoSet{}));
}
