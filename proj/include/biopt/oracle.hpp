#ifndef BIOPT_ORACLE_HPP
#define BIOPT_ORACLE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "biopt/model.hpp"

namespace biopt {

struct EnumerationBudget {
  std::uint64_t max_points = 10'000'000;
};

/** The variable box holds more lattice points than the budget allows. */
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t lattice, std::uint64_t budget);
  std::uint64_t lattice_size() const { return lattice_; }

 private:
  std::uint64_t lattice_;
};

/// Product of the bound widths, saturating at UINT64_MAX.
std::uint64_t lattice_size(const Problem& p);

using PointVisitor = std::function<void(std::span<const std::int64_t>)>;

/**
 * Calls `visit` on every integer point of the box that satisfies the problem's
 * rows and `extra_rows`, in row-major order (last variable fastest).
 *
 * Subtrees whose partial row activities can no longer reach a satisfiable
 * value are skipped; they contain no feasible point.
 */
void for_each_feasible_point(const Problem& p, std::span<const LinearConstraint> extra_rows,
                             const EnumerationBudget& budget, const PointVisitor& visit,
                             std::optional<std::chrono::steady_clock::time_point> deadline = {});

/// Exact non-dominated set by exhaustive enumeration. Throws BudgetExceeded.
ParetoSet brute_force_pareto(const Problem& p, const EnumerationBudget& budget = {});

}  // namespace biopt

#endif  // BIOPT_ORACLE_HPP
