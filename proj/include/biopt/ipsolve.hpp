#ifndef BIOPT_IPSOLVE_HPP
#define BIOPT_IPSOLVE_HPP

#include <gmpxx.h>

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "biopt/model.hpp"

namespace biopt {

/** Base class for solver failures that must never turn into a wrong answer. */
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

class NodeLimitExceeded : public SolverError {
 public:
  explicit NodeLimitExceeded(std::uint64_t limit)
      : SolverError("branch-and-bound node limit of " + std::to_string(limit) + " exceeded") {}
};

class TimeLimitExceeded : public SolverError {
 public:
  TimeLimitExceeded() : SolverError("time limit exceeded") {}
};

/** Upper bound on one objective, strict: f_objective <= strict_upper - 1. */
struct ExtraConstraint {
  Objective objective = Objective::F1;
  std::int64_t strict_upper = 0;

  bool operator==(const ExtraConstraint&) const = default;
};

LinearConstraint to_row(const Problem& p, const ExtraConstraint& c);

struct SolverOptions {
  static constexpr std::uint64_t kDefaultNodeLimit = 10'000'000;

  std::uint64_t node_limit = kDefaultNodeLimit;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Reads BIOPT_NODE_LIMIT if set; otherwise the default cap.
std::uint64_t node_limit_from_env();

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  mpq_class value;
  std::vector<mpq_class> point;
};

/**
 * Exact LP relaxation: minimize objective·x over the problem's rows plus
 * `extras`, with x restricted to the continuous box `box` (which replaces the
 * problem's own variable bounds).
 *
 * Bounded-variable two-phase primal simplex over GMP rationals, Bland's rule.
 */
LpResult solve_lp_relaxation(const Problem& p, std::span<const std::int64_t> objective,
                             std::span<const ExtraConstraint> extras,
                             std::span<const VarBounds> box);

/// Same, with arbitrary additional rows instead of objective bounds.
LpResult solve_lp_rows(const Problem& p, std::span<const std::int64_t> objective,
                       std::span<const LinearConstraint> extra_rows,
                       std::span<const VarBounds> box);

struct LexResult {
  std::optional<Solution> solution;
  std::uint64_t node_count = 0;
  std::uint64_t lp_count = 0;

  bool feasible() const { return solution.has_value(); }
};

/**
 * Integer-optimal minimizer of one objective by depth-first branch-and-bound.
 * An empty `branch_bounds` means the problem's own variable bounds.
 */
LexResult solve_single(const Problem& p, Objective objective, std::span<const ExtraConstraint> extras,
                       std::span<const VarBounds> branch_bounds = {},
                       const SolverOptions& options = {});

/** The lexicographic oracle used by every Pareto algorithm. */
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;

  /// Lexicographically minimal solution under `order`, subject to `extras`.
  virtual LexResult solve_lex(const Problem& p, ObjectiveOrder order,
                              std::span<const ExtraConstraint> extras) = 0;
};

class BranchAndBoundBackend final : public SolverBackend {
 public:
  explicit BranchAndBoundBackend(SolverOptions options = {}) : options_(options) {}

  LexResult solve_lex(const Problem& p, ObjectiveOrder order,
                      std::span<const ExtraConstraint> extras) override;

 private:
  SolverOptions options_;
};

/**
 * Exhaustive lattice scan; refuses boxes with more than `max_points` points.
 * First lexicographic minimum in row-major order is returned.
 */
class EnumerationBackend final : public SolverBackend {
 public:
  static constexpr std::uint64_t kDefaultMaxPoints = 10'000'000;

  explicit EnumerationBackend(std::uint64_t max_points = kDefaultMaxPoints,
                              std::optional<std::chrono::steady_clock::time_point> deadline = {})
      : max_points_(max_points), deadline_(deadline) {}

  LexResult solve_lex(const Problem& p, ObjectiveOrder order,
                      std::span<const ExtraConstraint> extras) override;

 private:
  std::uint64_t max_points_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

/// Convenience: lexicographic solve with a fresh branch-and-bound backend.
LexResult solve_lex(const Problem& p, ObjectiveOrder order, std::span<const ExtraConstraint> extras,
                    const SolverOptions& options = {});

}  // namespace biopt

#endif  // BIOPT_IPSOLVE_HPP
