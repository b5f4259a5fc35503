#include "biopt/oracle.hpp"

#include <limits>
#include <vector>

#include "biopt/checked.hpp"
#include "biopt/ipsolve.hpp"

namespace biopt {

BudgetExceeded::BudgetExceeded(std::uint64_t lattice, std::uint64_t budget)
    : std::runtime_error("lattice of " + std::to_string(lattice) +
                         " points exceeds enumeration budget of " + std::to_string(budget)),
      lattice_(lattice) {}

std::uint64_t lattice_size(const Problem& p) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (const auto& b : p.bounds()) {
    // Modular arithmetic gives the exact width; 0 means 2^64.
    const std::uint64_t width = static_cast<std::uint64_t>(b.hi) - static_cast<std::uint64_t>(b.lo) + 1;
    if (width == 0 || total > kMax / width) return kMax;
    total *= width;
  }
  return total;
}

namespace {

class Walker {
 public:
  Walker(const Problem& p, std::span<const LinearConstraint> extra_rows, const PointVisitor& visit,
         std::optional<std::chrono::steady_clock::time_point> deadline)
      : bounds_(p.bounds()), visit_(visit), deadline_(deadline), point_(p.num_vars()) {
    for (const auto& r : p.constraints()) rows_.push_back(&r);
    for (const auto& r : extra_rows) {
      if (r.coeffs.size() != p.num_vars()) throw ModelError("extra row length does not match the problem");
      rows_.push_back(&r);
    }
    const std::size_t n = p.num_vars();
    suffix_min_.assign(rows_.size(), std::vector<std::int64_t>(n + 1, 0));
    suffix_max_.assign(rows_.size(), std::vector<std::int64_t>(n + 1, 0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t j = n; j-- > 0;) {
        const std::int64_t a = rows_[r]->coeffs[j];
        const std::int64_t x = checked_mul(a, bounds_[j].lo);
        const std::int64_t y = checked_mul(a, bounds_[j].hi);
        suffix_min_[r][j] = checked_add(suffix_min_[r][j + 1], std::min(x, y));
        suffix_max_[r][j] = checked_add(suffix_max_[r][j + 1], std::max(x, y));
      }
    }
    activity_.assign(rows_.size(), 0);
  }

  void run() { descend(0); }

 private:
  bool reachable(std::size_t depth) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::int64_t lo = checked_add(activity_[r], suffix_min_[r][depth]);
      const std::int64_t hi = checked_add(activity_[r], suffix_max_[r][depth]);
      const std::int64_t rhs = rows_[r]->rhs;
      switch (rows_[r]->relation) {
        case Relation::Le:
          if (lo > rhs) return false;
          break;
        case Relation::Ge:
          if (hi < rhs) return false;
          break;
        case Relation::Eq:
          if (lo > rhs || hi < rhs) return false;
          break;
      }
    }
    return true;
  }

  void descend(std::size_t depth) {
    if (deadline_ && (++ticks_ & 0xffff) == 0 && std::chrono::steady_clock::now() > *deadline_) {
      throw TimeLimitExceeded();
    }
    if (!reachable(depth)) return;
    if (depth == point_.size()) {
      visit_(point_);
      return;
    }
    for (std::int64_t v = bounds_[depth].lo;; ++v) {
      point_[depth] = v;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        activity_[r] = checked_add(activity_[r], checked_mul(rows_[r]->coeffs[depth], v));
      }
      descend(depth + 1);
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        activity_[r] -= rows_[r]->coeffs[depth] * v;
      }
      if (v == bounds_[depth].hi) break;
    }
  }

  std::span<const VarBounds> bounds_;
  const PointVisitor& visit_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::vector<const LinearConstraint*> rows_;
  std::vector<std::vector<std::int64_t>> suffix_min_;
  std::vector<std::vector<std::int64_t>> suffix_max_;
  std::vector<std::int64_t> activity_;
  std::vector<std::int64_t> point_;
  std::uint64_t ticks_ = 0;
};

}  // namespace

void for_each_feasible_point(const Problem& p, std::span<const LinearConstraint> extra_rows,
                             const EnumerationBudget& budget, const PointVisitor& visit,
                             std::optional<std::chrono::steady_clock::time_point> deadline) {
  const std::uint64_t size = lattice_size(p);
  if (size > budget.max_points) throw BudgetExceeded(size, budget.max_points);
  Walker(p, extra_rows, visit, deadline).run();
}

ParetoSet brute_force_pareto(const Problem& p, const EnumerationBudget& budget) {
  std::vector<Solution> feasible;
  for_each_feasible_point(p, {}, budget, [&](std::span<const std::int64_t> x) {
    feasible.push_back(Solution{std::vector<std::int64_t>(x.begin(), x.end()), evaluate(p, x)});
  });
  return pareto_filter(feasible);
}

}  // namespace biopt
