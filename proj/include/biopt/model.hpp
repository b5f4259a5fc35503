#ifndef BIOPT_MODEL_HPP
#define BIOPT_MODEL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace biopt {

/** Thrown when a Problem or one of its parts is built with inconsistent data. */
class ModelError : public std::invalid_argument {
 public:
  explicit ModelError(const std::string& what) : std::invalid_argument(what) {}
};

enum class Sense { Min, Max };
enum class Relation { Le, Ge, Eq };

/** Names one of the two objectives. */
enum class Objective : int { F1 = 0, F2 = 1 };

constexpr Objective other(Objective o) {
  return o == Objective::F1 ? Objective::F2 : Objective::F1;
}
constexpr int index_of(Objective o) { return static_cast<int>(o); }

struct LinearConstraint {
  std::vector<std::int64_t> coeffs;
  Relation relation = Relation::Le;
  std::int64_t rhs = 0;

  bool operator==(const LinearConstraint&) const = default;
};

struct VarBounds {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool operator==(const VarBounds&) const = default;
};

/**
 * An integer program with two linear objectives.
 *
 * Objectives are kept twice: as given by the user (with their sense) and
 * normalized to minimization, which is what every solver and algorithm sees.
 * Instances are immutable once built and may be shared freely between threads.
 */
class Problem {
 public:
  Problem(std::array<std::vector<std::int64_t>, 2> objectives, std::array<Sense, 2> senses,
          std::vector<VarBounds> bounds, std::vector<LinearConstraint> constraints);

  std::size_t num_vars() const { return bounds_.size(); }

  /// Minimization-sense coefficients.
  std::span<const std::int64_t> objective(Objective o) const { return normalized_[index_of(o)]; }
  /// Coefficients as supplied, in the user's sense.
  std::span<const std::int64_t> user_objective(Objective o) const { return user_[index_of(o)]; }
  Sense sense(Objective o) const { return senses_[index_of(o)]; }

  std::span<const VarBounds> bounds() const { return bounds_; }
  std::span<const LinearConstraint> constraints() const { return constraints_; }

  /// A copy of this problem with `extra` appended to the constraint list.
  Problem with_constraints(std::span<const LinearConstraint> extra) const;

  bool operator==(const Problem& other) const;

 private:
  std::array<std::vector<std::int64_t>, 2> user_;
  std::array<std::vector<std::int64_t>, 2> normalized_;
  std::array<Sense, 2> senses_;
  std::vector<VarBounds> bounds_;
  std::vector<LinearConstraint> constraints_;
};

/** Lexicographic priority of the two objectives: either (1,2) or (2,1). */
class ObjectiveOrder {
 public:
  static constexpr ObjectiveOrder f1_first() { return ObjectiveOrder(Objective::F1); }
  static constexpr ObjectiveOrder f2_first() { return ObjectiveOrder(Objective::F2); }

  constexpr Objective first() const { return first_; }
  constexpr Objective second() const { return other(first_); }

  bool operator==(const ObjectiveOrder&) const = default;

 private:
  constexpr explicit ObjectiveOrder(Objective first) : first_(first) {}
  Objective first_;
};

struct OutcomeVector {
  std::int64_t f1 = 0;
  std::int64_t f2 = 0;

  std::int64_t operator[](Objective o) const { return o == Objective::F1 ? f1 : f2; }
  auto operator<=>(const OutcomeVector&) const = default;
};

std::ostream& operator<<(std::ostream& os, const OutcomeVector& v);

struct Solution {
  std::vector<std::int64_t> assignment;
  OutcomeVector outcome;

  bool operator==(const Solution&) const = default;
};

/** a dominates b: a is no worse in both objectives and differs from b. */
constexpr bool dominates(const OutcomeVector& a, const OutcomeVector& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && a != b;
}

/**
 * Non-dominated solutions sorted by f1 ascending (hence f2 strictly
 * descending), one representative per outcome vector.
 */
class ParetoSet {
 public:
  ParetoSet() = default;

  std::span<const Solution> solutions() const { return solutions_; }
  std::vector<OutcomeVector> outcomes() const;
  std::size_t size() const { return solutions_.size(); }
  bool empty() const { return solutions_.empty(); }
  const Solution& operator[](std::size_t i) const { return solutions_[i]; }
  auto begin() const { return solutions_.begin(); }
  auto end() const { return solutions_.end(); }

  /// Same outcome vectors; representatives may differ.
  bool same_outcomes(const ParetoSet& other) const;

  /// Checks the staircase invariant. Used by tests and debug assertions.
  bool is_staircase() const;

 private:
  friend ParetoSet pareto_filter(std::span<const Solution> points);
  std::vector<Solution> solutions_;
};

/// Keeps the non-dominated inputs, first occurrence per outcome, in staircase order.
ParetoSet pareto_filter(std::span<const Solution> points);

/// Outcome of `assignment` in minimization sense. Throws ModelError on arity mismatch.
OutcomeVector evaluate(const Problem& p, std::span<const std::int64_t> assignment);

/// Maps a minimization-sense outcome back to the user's sense.
OutcomeVector to_user_sense(const Problem& p, const OutcomeVector& v);

/// Dot product with overflow checking.
std::int64_t dot(std::span<const std::int64_t> coeffs, std::span<const std::int64_t> x);

/// True iff `assignment` lies in the box and satisfies every constraint.
bool is_feasible(const Problem& p, std::span<const std::int64_t> assignment);

/// Linear row over the decision variables expressing `objective <rel> rhs`.
LinearConstraint objective_constraint(const Problem& p, Objective o, Relation rel, std::int64_t rhs);

}  // namespace biopt

#endif  // BIOPT_MODEL_HPP
