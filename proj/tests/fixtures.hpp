#ifndef BIOPT_TESTS_FIXTURES_HPP
#define BIOPT_TESTS_FIXTURES_HPP

#include <array>
#include <random>
#include <set>
#include <vector>

#include "biopt/model.hpp"

namespace biopt::testing {

/// min (x1, x2) s.t. x1 + x2 >= 3, x in {0..3}^2.
inline Problem t1() {
  return Problem({std::vector<std::int64_t>{1, 0}, std::vector<std::int64_t>{0, 1}}, {Sense::Min, Sense::Min},
                 {{0, 3}, {0, 3}}, {{{1, 1}, Relation::Ge, 3}});
}

/// Knapsack: weights (2,3,4), capacity 4, maximize (3,1,4) and (1,4,2).
inline Problem k1() {
  return Problem({std::vector<std::int64_t>{3, 1, 4}, std::vector<std::int64_t>{1, 4, 2}},
                 {Sense::Max, Sense::Max}, {{0, 1}, {0, 1}, {0, 1}}, {{{2, 3, 4}, Relation::Le, 4}});
}

/// Empty feasible region: x1 >= 5 with x1 <= 3.
inline Problem infeasible() {
  return Problem({std::vector<std::int64_t>{1, 0}, std::vector<std::int64_t>{0, 1}}, {Sense::Min, Sense::Min},
                 {{0, 3}, {0, 3}}, {{{1, 0}, Relation::Ge, 5}});
}

/**
 * One-hot choice among outcomes; x_i = 1 picks outcomes[i]. Useful for
 * realizing a prescribed outcome set exactly.
 */
inline Problem pick_one(const std::vector<OutcomeVector>& outcomes) {
  std::vector<std::int64_t> f1;
  std::vector<std::int64_t> f2;
  for (const auto& o : outcomes) {
    f1.push_back(o.f1);
    f2.push_back(o.f2);
  }
  const std::size_t n = outcomes.size();
  return Problem({f1, f2}, {Sense::Min, Sense::Min}, std::vector<VarBounds>(n, {0, 1}),
                 {{std::vector<std::int64_t>(n, 1), Relation::Eq, 1}});
}

/// Small random problem with an enumerable box; may be infeasible.
inline Problem random_tiny(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = pick(1, 4);
  std::array<std::vector<std::int64_t>, 2> obj;
  for (auto& o : obj) {
    for (int j = 0; j < n; ++j) o.push_back(pick(-5, 5));
  }
  std::vector<VarBounds> bounds;
  for (int j = 0; j < n; ++j) {
    const int lo = pick(-2, 1);
    bounds.push_back({lo, lo + pick(0, 3)});
  }
  std::vector<LinearConstraint> rows;
  const int m = pick(0, 3);
  for (int i = 0; i < m; ++i) {
    LinearConstraint c;
    for (int j = 0; j < n; ++j) c.coeffs.push_back(pick(-3, 3));
    c.relation = static_cast<Relation>(pick(0, 2));
    c.rhs = pick(-4, 6);
    rows.push_back(std::move(c));
  }
  const std::array<Sense, 2> senses{pick(0, 1) ? Sense::Max : Sense::Min, pick(0, 1) ? Sense::Max : Sense::Min};
  return Problem(obj, senses, bounds, rows);
}

inline std::set<OutcomeVector> outcome_set(const ParetoSet& s) {
  const auto v = s.outcomes();
  return {v.begin(), v.end()};
}

}  // namespace biopt::testing

#endif  // BIOPT_TESTS_FIXTURES_HPP
