#include <cstdlib>
#include <string>
#include <vector>

#include "biopt/checked.hpp"
#include "biopt/ipsolve.hpp"
#include "biopt/oracle.hpp"

namespace biopt {

namespace {

std::int64_t to_int64(const mpz_class& z) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) throw OverflowError("LP value does not fit in 64 bits");
  return mpz_get_si(z.get_mpz_t());
}

mpz_class floor_of(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

mpz_class ceil_of(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// Index of the most fractional coordinate (closest to .5), lowest index on ties; -1 if integral.
long most_fractional(const std::vector<mpq_class>& x) {
  long best = -1;
  mpq_class best_gap;
  const mpq_class half(1, 2);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j].get_den() == 1) continue;
    mpq_class gap = x[j] - floor_of(x[j]) - half;
    gap = abs(gap);
    if (best < 0 || gap < best_gap) {
      best = static_cast<long>(j);
      best_gap = gap;
    }
  }
  return best;
}

/// Depth-first branch-and-bound minimizing `objective` over the problem plus `rows`.
LexResult branch_and_bound(const Problem& p, std::span<const std::int64_t> objective,
                           std::span<const LinearConstraint> rows, std::span<const VarBounds> root,
                           const SolverOptions& options) {
  LexResult out;
  std::optional<std::int64_t> incumbent;
  std::vector<std::int64_t> incumbent_x;

  std::vector<std::vector<VarBounds>> stack;
  stack.emplace_back(root.begin(), root.end());
  while (!stack.empty()) {
    std::vector<VarBounds> box = std::move(stack.back());
    stack.pop_back();
    if (++out.node_count > options.node_limit) throw NodeLimitExceeded(options.node_limit);
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
      throw TimeLimitExceeded();
    }

    LpResult lp = solve_lp_rows(p, objective, rows, box);
    ++out.lp_count;
    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status == LpStatus::Unbounded) {
      throw std::logic_error("LP relaxation unbounded over a finite box");
    }
    const std::int64_t bound = to_int64(ceil_of(lp.value));
    if (incumbent && bound >= *incumbent) continue;

    const long j = most_fractional(lp.point);
    if (j < 0) {
      incumbent = to_int64(lp.value.get_num());
      incumbent_x.resize(lp.point.size());
      for (std::size_t k = 0; k < lp.point.size(); ++k) incumbent_x[k] = to_int64(lp.point[k].get_num());
      continue;
    }
    const std::int64_t down = to_int64(floor_of(lp.point[j]));
    std::vector<VarBounds> up_box = box;
    up_box[j].lo = down + 1;
    box[j].hi = down;
    stack.push_back(std::move(up_box));
    stack.push_back(std::move(box));
  }

  if (incumbent) out.solution = Solution{incumbent_x, evaluate(p, incumbent_x)};
  return out;
}

}  // namespace

std::uint64_t node_limit_from_env() {
  const char* raw = std::getenv("BIOPT_NODE_LIMIT");
  if (raw == nullptr || *raw == '\0') return SolverOptions::kDefaultNodeLimit;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) {
    throw std::invalid_argument(std::string("BIOPT_NODE_LIMIT must be a positive integer, got '") + raw + "'");
  }
  return v;
}

LexResult solve_single(const Problem& p, Objective objective, std::span<const ExtraConstraint> extras,
                       std::span<const VarBounds> branch_bounds, const SolverOptions& options) {
  if (branch_bounds.empty()) branch_bounds = p.bounds();
  if (branch_bounds.size() != p.num_vars()) throw ModelError("branch bounds length does not match the problem");
  std::vector<LinearConstraint> rows;
  for (const auto& e : extras) rows.push_back(to_row(p, e));
  return branch_and_bound(p, p.objective(objective), rows, branch_bounds, options);
}

LexResult BranchAndBoundBackend::solve_lex(const Problem& p, ObjectiveOrder order,
                                           std::span<const ExtraConstraint> extras) {
  std::vector<LinearConstraint> rows;
  for (const auto& e : extras) rows.push_back(to_row(p, e));

  LexResult first = branch_and_bound(p, p.objective(order.first()), rows, p.bounds(), options_);
  if (!first.feasible()) return first;

  rows.push_back(objective_constraint(p, order.first(), Relation::Eq, first.solution->outcome[order.first()]));
  LexResult second = branch_and_bound(p, p.objective(order.second()), rows, p.bounds(), options_);
  second.node_count += first.node_count;
  second.lp_count += first.lp_count;
  if (!second.feasible()) throw std::logic_error("second lexicographic stage lost feasibility");
  return second;
}

LexResult EnumerationBackend::solve_lex(const Problem& p, ObjectiveOrder order,
                                        std::span<const ExtraConstraint> extras) {
  std::vector<LinearConstraint> rows;
  for (const auto& e : extras) rows.push_back(to_row(p, e));

  LexResult out;
  std::optional<OutcomeVector> best;
  std::vector<std::int64_t> best_x;
  const Objective a = order.first();
  const Objective b = order.second();
  for_each_feasible_point(
      p, rows, EnumerationBudget{max_points_},
      [&](std::span<const std::int64_t> x) {
        ++out.node_count;
        const OutcomeVector v = evaluate(p, x);
        if (!best || v[a] < (*best)[a] || (v[a] == (*best)[a] && v[b] < (*best)[b])) {
          best = v;
          best_x.assign(x.begin(), x.end());
        }
      },
      deadline_);
  if (best) out.solution = Solution{best_x, *best};
  return out;
}

LexResult solve_lex(const Problem& p, ObjectiveOrder order, std::span<const ExtraConstraint> extras,
                    const SolverOptions& options) {
  BranchAndBoundBackend backend(options);
  return backend.solve_lex(p, order, extras);
}

}  // namespace biopt
