#include "biopt/model.hpp"

#include <algorithm>
#include <ostream>

#include "biopt/checked.hpp"

namespace biopt {

Problem::Problem(std::array<std::vector<std::int64_t>, 2> objectives, std::array<Sense, 2> senses,
                 std::vector<VarBounds> bounds, std::vector<LinearConstraint> constraints)
    : user_(std::move(objectives)),
      senses_(senses),
      bounds_(std::move(bounds)),
      constraints_(std::move(constraints)) {
  const std::size_t n = bounds_.size();
  if (n == 0) throw ModelError("problem needs at least one variable");
  for (int k = 0; k < 2; ++k) {
    if (user_[k].size() != n) {
      throw ModelError("objective " + std::to_string(k + 1) + " has " +
                       std::to_string(user_[k].size()) + " coefficients, expected " +
                       std::to_string(n));
    }
    normalized_[k] = user_[k];
    if (senses_[k] == Sense::Max) {
      for (auto& c : normalized_[k]) c = checked_neg(c);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (bounds_[j].lo > bounds_[j].hi) {
      throw ModelError("variable " + std::to_string(j) + " has empty bounds [" +
                       std::to_string(bounds_[j].lo) + ", " + std::to_string(bounds_[j].hi) +
                       "]");
    }
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (constraints_[i].coeffs.size() != n) {
      throw ModelError("constraint " + std::to_string(i) + " has " +
                       std::to_string(constraints_[i].coeffs.size()) +
                       " coefficients, expected " + std::to_string(n));
    }
  }
}

Problem Problem::with_constraints(std::span<const LinearConstraint> extra) const {
  auto rows = constraints_;
  rows.insert(rows.end(), extra.begin(), extra.end());
  return Problem(user_, senses_, bounds_, std::move(rows));
}

bool Problem::operator==(const Problem& other) const {
  return user_ == other.user_ && senses_ == other.senses_ && bounds_ == other.bounds_ &&
         constraints_ == other.constraints_;
}

std::ostream& operator<<(std::ostream& os, const OutcomeVector& v) {
  return os << '(' << v.f1 << ',' << v.f2 << ')';
}

std::vector<OutcomeVector> ParetoSet::outcomes() const {
  std::vector<OutcomeVector> out;
  out.reserve(solutions_.size());
  for (const auto& s : solutions_) out.push_back(s.outcome);
  return out;
}

bool ParetoSet::same_outcomes(const ParetoSet& other) const { return outcomes() == other.outcomes(); }

bool ParetoSet::is_staircase() const {
  for (std::size_t i = 1; i < solutions_.size(); ++i) {
    const auto& a = solutions_[i - 1].outcome;
    const auto& b = solutions_[i].outcome;
    if (!(a.f1 < b.f1 && a.f2 > b.f2)) return false;
  }
  return true;
}

ParetoSet pareto_filter(std::span<const Solution> points) {
  // Stable sort keeps the first occurrence of each outcome at the front of its run.
  std::vector<const Solution*> order;
  order.reserve(points.size());
  for (const auto& s : points) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(),
                   [](const Solution* a, const Solution* b) { return a->outcome < b->outcome; });

  ParetoSet result;
  for (const Solution* s : order) {
    // Sorted lexicographically, so a point survives iff its f2 beats every earlier f2.
    if (!result.solutions_.empty()) {
      const auto& last = result.solutions_.back().outcome;
      if (s->outcome.f2 >= last.f2) continue;
    }
    result.solutions_.push_back(*s);
  }
  return result;
}

std::int64_t dot(std::span<const std::int64_t> coeffs, std::span<const std::int64_t> x) {
  if (coeffs.size() != x.size()) {
    throw ModelError("dimension mismatch: " + std::to_string(coeffs.size()) + " coefficients vs " +
                     std::to_string(x.size()) + " values");
  }
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (coeffs[j] != 0 && x[j] != 0) acc = checked_add(acc, checked_mul(coeffs[j], x[j]));
  }
  return acc;
}

OutcomeVector evaluate(const Problem& p, std::span<const std::int64_t> assignment) {
  if (assignment.size() != p.num_vars()) {
    throw ModelError("assignment has " + std::to_string(assignment.size()) + " values, expected " +
                     std::to_string(p.num_vars()));
  }
  return {dot(p.objective(Objective::F1), assignment), dot(p.objective(Objective::F2), assignment)};
}

OutcomeVector to_user_sense(const Problem& p, const OutcomeVector& v) {
  auto flip = [&](Objective o, std::int64_t x) {
    return p.sense(o) == Sense::Max ? checked_neg(x) : x;
  };
  return {flip(Objective::F1, v.f1), flip(Objective::F2, v.f2)};
}

bool is_feasible(const Problem& p, std::span<const std::int64_t> assignment) {
  if (assignment.size() != p.num_vars()) return false;
  const auto bounds = p.bounds();
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    if (assignment[j] < bounds[j].lo || assignment[j] > bounds[j].hi) return false;
  }
  for (const auto& row : p.constraints()) {
    const std::int64_t lhs = dot(row.coeffs, assignment);
    switch (row.relation) {
      case Relation::Le:
        if (lhs > row.rhs) return false;
        break;
      case Relation::Ge:
        if (lhs < row.rhs) return false;
        break;
      case Relation::Eq:
        if (lhs != row.rhs) return false;
        break;
    }
  }
  return true;
}

LinearConstraint objective_constraint(const Problem& p, Objective o, Relation rel, std::int64_t rhs) {
  const auto c = p.objective(o);
  return LinearConstraint{std::vector<std::int64_t>(c.begin(), c.end()), rel, rhs};
}

}  // namespace biopt
