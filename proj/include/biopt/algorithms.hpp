#ifndef BIOPT_ALGORITHMS_HPP
#define BIOPT_ALGORITHMS_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "biopt/ipsolve.hpp"
#include "biopt/model.hpp"

namespace biopt {

struct WorkerStats {
  double elapsed_ms = 0.0;
  std::uint64_t ip_solves = 0;
  std::uint64_t found = 0;
  double cpu_ms = 0.0;  // CPU time of the worker's own thread
};

struct RunStats {
  std::uint64_t ip_solves = 0;
  std::uint64_t feasible_solves = 0;
  std::uint64_t infeasible_solves = 0;
  std::uint64_t node_count = 0;
  std::vector<WorkerStats> workers;
  std::size_t pareto_size = 0;

  void record(const LexResult& r);
  void merge(const RunStats& other);
};

struct BoipResult {
  ParetoSet front;
  RunStats stats;
};

/**
 * The pair (l1, l2) of objective caps exchanged by the two Meeting workers.
 *
 * Reads are wait-free. Each component only ever decreases; a write above
 * the current value is a logic error. An optional hook runs before every
 * access so tests can perturb the schedule.
 */
class SharedBounds {
 public:
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

  enum class Access { Read, Write };
  using Hook = std::function<void(Objective component, Access kind)>;

  SharedBounds() = default;
  explicit SharedBounds(Hook hook, bool record_trace = false)
      : hook_(std::move(hook)), record_trace_(record_trace) {}

  SharedBounds(const SharedBounds&) = delete;
  SharedBounds& operator=(const SharedBounds&) = delete;

  /// Current cap, or nullopt while still +infinity.
  std::optional<std::int64_t> get(Objective component) const;

  /// Lowers `component` to `value`. Throws std::logic_error if that would raise it.
  void tighten(Objective component, std::int64_t value);

  /// Successive values written to `component` (only when tracing is on).
  std::vector<std::int64_t> trace(Objective component) const;

 private:
  std::array<std::atomic<std::int64_t>, 2> bound_{kUnbounded, kUnbounded};
  Hook hook_;
  bool record_trace_ = false;
  mutable std::mutex trace_mutex_;
  std::array<std::vector<std::int64_t>, 2> trace_;
};

/// One Pareto point per lexicographic solve, walking f1 upwards.
BoipResult sequential_boip(const Problem& p, SolverBackend& backend);

/** Closed f1 interval; lo > hi means empty. */
struct F1Interval {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const { return lo > hi; }
  bool operator==(const F1Interval&) const = default;
};

struct SplitPlan {
  std::vector<F1Interval> intervals;  // empty if the problem is infeasible
  std::vector<Solution> endpoints;    // the (1,2) and (2,1) optima
  RunStats stats;
};

/**
 * Splits [f1min, f1max] into `workers` consecutive intervals of width
 * max(1, floor(range / workers)); the last one absorbs the remainder and
 * trailing intervals past f1max are empty.
 */
SplitPlan split_range(const Problem& p, SolverBackend& backend, int workers);

/// Range Splitting: one f1 slice per backend, run concurrently and merged by pareto_filter.
BoipResult splitting_boip(const Problem& p, std::span<SolverBackend* const> backends);

/** What one worker found, in discovery order. */
struct WorkerResult {
  std::vector<Solution> found;
  RunStats stats;
};

/**
 * The loop run by one Meeting worker. `own` is the objective this worker caps
 * (F1 for worker 1 solving order (2,1), F2 for worker 2 solving order (1,2)).
 */
WorkerResult meeting_worker(const Problem& p, SolverBackend& backend, SharedBounds& bounds,
                          Objective own);

/// The Meeting algorithm on two threads. `bounds` must be fresh.
BoipResult meeting_boip(const Problem& p, SolverBackend& worker1, SolverBackend& worker2,
                        SharedBounds& bounds);

/// Same, with a private SharedBounds.
BoipResult meeting_boip(const Problem& p, SolverBackend& worker1, SolverBackend& worker2);

/**
 * Checks the partition argument on concrete data: the union of `s`, `s_prime`
 * and the meeting point (if any) has exactly the outcomes of `oracle`.
 */
bool verify_theorem1(const ParetoSet& s, const ParetoSet& s_prime,
                     const std::optional<OutcomeVector>& meet, const ParetoSet& oracle);

}  // namespace biopt

#endif  // BIOPT_ALGORITHMS_HPP
