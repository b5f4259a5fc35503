#include "biopt/algorithms.hpp"

#include <time.h>

#include <chrono>
#include <exception>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "biopt/checked.hpp"

namespace biopt {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double thread_cpu_ms() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) * 1e3 + static_cast<double>(ts.tv_nsec) / 1e6;
}

/// Staircase walk on `p`: repeatedly solve P^(1,2)(< l2) and tighten l2.
WorkerResult walk_staircase(const Problem& p, SolverBackend& backend) {
  const auto start = Clock::now();
  const double cpu_start = thread_cpu_ms();
  WorkerResult out;
  std::optional<std::int64_t> l2;
  for (;;) {
    std::vector<ExtraConstraint> extras;
    if (l2) extras.push_back({Objective::F2, *l2});
    const LexResult r = backend.solve_lex(p, ObjectiveOrder::f1_first(), extras);
    out.stats.record(r);
    if (!r.feasible()) break;
    l2 = r.solution->outcome.f2;
    out.found.push_back(*r.solution);
  }
  out.stats.workers.push_back({ms_since(start), out.stats.ip_solves, out.found.size(), thread_cpu_ms() - cpu_start});
  return out;
}

/// Runs each task on its own thread and rethrows the first failure after joining all.
void run_concurrently(std::vector<std::function<void()>> tasks) {
  std::vector<std::exception_ptr> errors(tasks.size());
  {
    std::vector<std::jthread> threads;
    threads.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      threads.emplace_back([&, i] {
        try {
          tasks[i]();
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void RunStats::record(const LexResult& r) {
  ++ip_solves;
  if (r.feasible()) {
    ++feasible_solves;
  } else {
    ++infeasible_solves;
  }
  node_count += r.node_count;
}

void RunStats::merge(const RunStats& other) {
  ip_solves += other.ip_solves;
  feasible_solves += other.feasible_solves;
  infeasible_solves += other.infeasible_solves;
  node_count += other.node_count;
  workers.insert(workers.end(), other.workers.begin(), other.workers.end());
}

std::optional<std::int64_t> SharedBounds::get(Objective component) const {
  if (hook_) hook_(component, Access::Read);
  const std::int64_t v = bound_[index_of(component)].load(std::memory_order_acquire);
  if (v == kUnbounded) return std::nullopt;
  return v;
}

void SharedBounds::tighten(Objective component, std::int64_t value) {
  if (hook_) hook_(component, Access::Write);
  auto& slot = bound_[index_of(component)];
  std::int64_t current = slot.load(std::memory_order_relaxed);
  do {
    if (value > current) {
      throw std::logic_error("shared bound l" + std::to_string(index_of(component) + 1) +
                             " would increase from " + std::to_string(current) + " to " +
                             std::to_string(value));
    }
  } while (!slot.compare_exchange_weak(current, value, std::memory_order_acq_rel));
  if (record_trace_) {
    std::lock_guard lock(trace_mutex_);
    trace_[index_of(component)].push_back(value);
  }
}

std::vector<std::int64_t> SharedBounds::trace(Objective component) const {
  std::lock_guard lock(trace_mutex_);
  return trace_[index_of(component)];
}

BoipResult sequential_boip(const Problem& p, SolverBackend& backend) {
  WorkerResult walk = walk_staircase(p, backend);
  BoipResult out{pareto_filter(walk.found), std::move(walk.stats)};
  out.stats.pareto_size = out.front.size();
  return out;
}

SplitPlan split_range(const Problem& p, SolverBackend& backend, int workers) {
  if (workers < 1) throw std::invalid_argument("split_range needs at least one worker");
  SplitPlan plan;
  const LexResult low = backend.solve_lex(p, ObjectiveOrder::f1_first(), {});
  plan.stats.record(low);
  if (!low.feasible()) return plan;
  const LexResult high = backend.solve_lex(p, ObjectiveOrder::f2_first(), {});
  plan.stats.record(high);
  if (!high.feasible()) throw std::logic_error("(2,1) solve infeasible although (1,2) was feasible");
  plan.endpoints = {*low.solution, *high.solution};

  const std::int64_t f1min = low.solution->outcome.f1;
  const std::int64_t f1max = high.solution->outcome.f1;
  const std::int64_t range = checked_add(checked_sub(f1max, f1min), 1);
  const std::int64_t width = std::max<std::int64_t>(1, range / workers);
  for (int i = 0; i < workers; ++i) {
    const std::int64_t lo = checked_add(f1min, checked_mul(i, width));
    std::int64_t hi = i + 1 == workers ? f1max : std::min(f1max, checked_sub(checked_add(lo, width), 1));
    if (lo > f1max) hi = checked_sub(lo, 1);
    plan.intervals.push_back({lo, hi});
  }
  return plan;
}

BoipResult splitting_boip(const Problem& p, std::span<SolverBackend* const> backends) {
  if (backends.empty()) throw std::invalid_argument("splitting needs at least one backend");
  const auto start = Clock::now();
  const double cpu_start = thread_cpu_ms();
  SplitPlan plan = split_range(p, *backends[0], static_cast<int>(backends.size()));
  const double split_ms = ms_since(start);
  const double split_cpu_ms = thread_cpu_ms() - cpu_start;

  BoipResult out;
  out.stats = plan.stats;
  if (plan.intervals.empty()) {
    out.stats.workers.assign(backends.size(), WorkerStats{});
    out.stats.workers[0] = {split_ms, plan.stats.ip_solves, 0, split_cpu_ms};
    return out;
  }

  std::vector<WorkerResult> results(backends.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t w = 0; w < backends.size(); ++w) {
    const F1Interval slice = plan.intervals[w];
    if (slice.empty()) continue;
    tasks.emplace_back([&, w, slice] {
      const LinearConstraint rows[] = {
          objective_constraint(p, Objective::F1, Relation::Ge, slice.lo),
          objective_constraint(p, Objective::F1, Relation::Le, slice.hi),
      };
      results[w] = walk_staircase(p.with_constraints(rows), *backends[w]);
    });
  }
  run_concurrently(std::move(tasks));

  std::vector<Solution> all = plan.endpoints;
  for (std::size_t w = 0; w < results.size(); ++w) {
    auto& r = results[w];
    if (r.stats.workers.empty()) r.stats.workers.push_back({});
    if (w == 0) {
      r.stats.workers[0].elapsed_ms += split_ms;
      r.stats.workers[0].cpu_ms += split_cpu_ms;
    }
    all.insert(all.end(), r.found.begin(), r.found.end());
    out.stats.merge(r.stats);
  }
  out.front = pareto_filter(all);
  out.stats.pareto_size = out.front.size();
  return out;
}

WorkerResult meeting_worker(const Problem& p, SolverBackend& backend, SharedBounds& bounds,
                            Objective own) {
  const auto start = Clock::now();
  const double cpu_start = thread_cpu_ms();
  const Objective cross = other(own);
  const ObjectiveOrder order = own == Objective::F1 ? ObjectiveOrder::f2_first() : ObjectiveOrder::f1_first();

  WorkerResult out;
  for (;;) {
    // Both caps are re-read before every solve; the cross cap replaces the previous one.
    std::vector<ExtraConstraint> extras;
    if (const auto cap = bounds.get(own)) extras.push_back({own, *cap});
    if (const auto cap = bounds.get(cross)) extras.push_back({cross, *cap});
    const LexResult r = backend.solve_lex(p, order, extras);
    out.stats.record(r);
    if (!r.feasible()) break;
    out.found.push_back(*r.solution);
    bounds.tighten(own, r.solution->outcome[own]);
  }
  out.stats.workers.push_back({ms_since(start), out.stats.ip_solves, out.found.size(), thread_cpu_ms() - cpu_start});
  return out;
}

BoipResult meeting_boip(const Problem& p, SolverBackend& worker1, SolverBackend& worker2,
                        SharedBounds& bounds) {
  WorkerResult first;
  WorkerResult second;
  run_concurrently({
      [&] { first = meeting_worker(p, worker1, bounds, Objective::F1); },
      [&] { second = meeting_worker(p, worker2, bounds, Objective::F2); },
  });

  // Worker 2's representative wins when both found the same outcome.
  std::vector<Solution> all = second.found;
  all.insert(all.end(), first.found.begin(), first.found.end());
  BoipResult out{pareto_filter(all), {}};
  out.stats.merge(first.stats);
  out.stats.merge(second.stats);
  out.stats.pareto_size = out.front.size();
  return out;
}

BoipResult meeting_boip(const Problem& p, SolverBackend& worker1, SolverBackend& worker2) {
  SharedBounds bounds;
  return meeting_boip(p, worker1, worker2, bounds);
}

bool verify_theorem1(const ParetoSet& s, const ParetoSet& s_prime,
                     const std::optional<OutcomeVector>& meet, const ParetoSet& oracle) {
  std::set<OutcomeVector> joined;
  for (const auto& x : s) joined.insert(x.outcome);
  for (const auto& x : s_prime) joined.insert(x.outcome);
  if (meet) joined.insert(*meet);
  const auto expected = oracle.outcomes();
  return joined == std::set<OutcomeVector>(expected.begin(), expected.end());
}

}  // namespace biopt
