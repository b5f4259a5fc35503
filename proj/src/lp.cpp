#include <optional>
#include <utility>

#include "biopt/checked.hpp"
#include "biopt/ipsolve.hpp"

namespace biopt {

namespace {

/**
 * Dense bounded-variable simplex tableau in exact arithmetic.
 *
 * Columns are ordered structural, slack, artificial; every column has lower
 * bound 0 (structural columns are shifted by their box lower bound).
 * Entering columns are chosen by largest reduced cost; after a run of
 * degenerate steps the tableau switches to Bland's rule (lowest index) for
 * good, which rules out cycling. Ratio ties go to the lowest-index column.
 */
class Tableau {
 public:
  enum class Outcome { Optimal, Unbounded };

  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows),
        n_(cols),
        a_(rows * cols),
        beta_(rows),
        basis_(rows),
        is_basic_(cols, false),
        at_upper_(cols, false),
        has_ub_(cols, false),
        ub_(cols),
        enterable_(cols, true),
        d_(cols) {}

  mpq_class& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const mpq_class& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  void set_upper(std::size_t j, mpq_class u) {
    has_ub_[j] = true;
    ub_[j] = std::move(u);
  }
  void set_basic(std::size_t row, std::size_t col, mpq_class value) {
    basis_[row] = col;
    is_basic_[col] = true;
    beta_[row] = std::move(value);
  }
  void forbid_entering(std::size_t j) { enterable_[j] = false; }

  /// Reduced costs for cost vector `c` against the current basis.
  void price(const std::vector<mpq_class>& c) {
    for (std::size_t j = 0; j < n_; ++j) d_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const mpq_class& cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const mpq_class& t = at(i, j);
        if (sgn(t) != 0) d_[j] -= cb * t;
      }
    }
  }

  Outcome run() {
    mpq_class theta;
    mpq_class lim;
    mpq_class rate;
    bland_ = false;
    int degenerate_streak = 0;
    for (;;) {
      const std::optional<std::size_t> entering = choose_entering();
      if (!entering) return Outcome::Optimal;
      const std::size_t j = *entering;
      const int dir = at_upper_[j] ? -1 : 1;

      // Ratio test; `flip` means j reaches its own opposite bound before any basic column blocks.
      bool bounded = false;
      bool flip = false;
      std::size_t leave_row = 0;
      std::size_t tie_col = 0;
      bool leave_to_upper = false;
      if (has_ub_[j]) {
        theta = ub_[j];
        bounded = true;
        flip = true;
        tie_col = j;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        const mpq_class& t = at(i, j);
        const int s = sgn(t) * dir;  // basic var moves by -t*dir per unit step
        if (s == 0) continue;
        const std::size_t col = basis_[i];
        bool to_upper = false;
        if (s > 0) {
          lim = beta_[i] / (t * dir);
        } else {
          if (!has_ub_[col]) continue;
          lim = (ub_[col] - beta_[i]) / (-t * dir);
          to_upper = true;
        }
        if (!bounded || lim < theta || (lim == theta && col < tie_col)) {
          theta = lim;
          bounded = true;
          flip = false;
          leave_row = i;
          tie_col = col;
          leave_to_upper = to_upper;
        }
      }
      if (!bounded) return Outcome::Unbounded;
      if (sgn(theta) == 0) {
        if (++degenerate_streak >= kDegenerateLimit) bland_ = true;
      } else {
        degenerate_streak = 0;
      }

      if (sgn(theta) != 0) {
        for (std::size_t i = 0; i < m_; ++i) {
          const mpq_class& t = at(i, j);
          if (sgn(t) == 0) continue;
          rate = t * theta;
          if (dir > 0) {
            beta_[i] -= rate;
          } else {
            beta_[i] += rate;
          }
        }
      }
      if (flip) {
        at_upper_[j] = !at_upper_[j];
        continue;
      }

      mpq_class entering_value = at_upper_[j] ? mpq_class(ub_[j] - theta) : theta;
      const std::size_t leaving = basis_[leave_row];
      is_basic_[leaving] = false;
      at_upper_[leaving] = leave_to_upper;
      at_upper_[j] = false;
      pivot(leave_row, j);
      set_basic(leave_row, j, std::move(entering_value));
    }
  }

  /// Current value of column j.
  mpq_class value(std::size_t j) const {
    if (is_basic_[j]) {
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] == j) return beta_[i];
      }
    }
    return at_upper_[j] ? ub_[j] : mpq_class(0);
  }

 private:
  static constexpr int kDegenerateLimit = 50;

  std::optional<std::size_t> choose_entering() const {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_basic_[j] || !enterable_[j]) continue;
      const int s = sgn(d_[j]);
      const bool improving = at_upper_[j] ? s > 0 : s < 0 && (!has_ub_[j] || sgn(ub_[j]) > 0);
      if (!improving) continue;
      if (bland_) return j;
      if (!best || abs(d_[j]) > abs(d_[*best])) best = j;
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t j) {
    const mpq_class piv = at(r, j);
    for (std::size_t k = 0; k < n_; ++k) {
      mpq_class& x = at(r, k);
      if (sgn(x) != 0) x /= piv;
    }
    mpq_class factor;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      factor = at(i, j);
      if (sgn(factor) == 0) continue;
      for (std::size_t k = 0; k < n_; ++k) {
        const mpq_class& y = at(r, k);
        if (sgn(y) != 0) at(i, k) -= factor * y;
      }
    }
    factor = d_[j];
    if (sgn(factor) != 0) {
      for (std::size_t k = 0; k < n_; ++k) {
        const mpq_class& y = at(r, k);
        if (sgn(y) != 0) d_[k] -= factor * y;
      }
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<mpq_class> a_;
  std::vector<mpq_class> beta_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<bool> at_upper_;
  std::vector<bool> has_ub_;
  std::vector<mpq_class> ub_;
  std::vector<bool> enterable_;
  std::vector<mpq_class> d_;
  bool bland_ = false;
};

mpq_class to_mpq(std::int64_t v) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), v);
  return mpq_class(z);
}

}  // namespace

LinearConstraint to_row(const Problem& p, const ExtraConstraint& c) {
  return objective_constraint(p, c.objective, Relation::Le, checked_sub(c.strict_upper, 1));
}

LpResult solve_lp_relaxation(const Problem& p, std::span<const std::int64_t> objective,
                             std::span<const ExtraConstraint> extras,
                             std::span<const VarBounds> box) {
  std::vector<LinearConstraint> rows;
  rows.reserve(extras.size());
  for (const auto& e : extras) rows.push_back(to_row(p, e));
  return solve_lp_rows(p, objective, rows, box);
}

LpResult solve_lp_rows(const Problem& p, std::span<const std::int64_t> objective,
                       std::span<const LinearConstraint> extra_rows,
                       std::span<const VarBounds> box) {
  const std::size_t n = p.num_vars();
  if (objective.size() != n) throw ModelError("objective length does not match the problem");
  if (box.empty()) box = p.bounds();
  if (box.size() != n) throw ModelError("branch bounds length does not match the problem");

  LpResult result;
  for (const auto& b : box) {
    if (b.lo > b.hi) return result;  // empty box
  }

  std::vector<const LinearConstraint*> rows;
  for (const auto& r : p.constraints()) rows.push_back(&r);
  for (const auto& r : extra_rows) {
    if (r.coeffs.size() != n) throw ModelError("extra row length does not match the problem");
    rows.push_back(&r);
  }
  const std::size_t m = rows.size();

  // Normalize each row to a non-negative right-hand side over the shifted variables.
  struct RowPlan {
    mpq_class rhs;
    int sign = 1;   // multiplier applied to the original row
    int slack = 0;  // coefficient of the row's slack after the sign flip, 0 if none
  };
  std::vector<RowPlan> plan(m);
  std::size_t slack_count = 0;
  std::size_t art_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = *rows[i];
    mpq_class rhs = to_mpq(row.rhs);
    for (std::size_t j = 0; j < n; ++j) {
      if (row.coeffs[j] != 0 && box[j].lo != 0) rhs -= to_mpq(row.coeffs[j]) * to_mpq(box[j].lo);
    }
    int slack = row.relation == Relation::Le ? 1 : row.relation == Relation::Ge ? -1 : 0;
    int sign = 1;
    if (sgn(rhs) < 0) {
      sign = -1;
      rhs = -rhs;
      slack = -slack;
    }
    if (slack != 0) ++slack_count;
    if (slack != 1) ++art_count;
    plan[i] = RowPlan{std::move(rhs), sign, slack};
  }

  const std::size_t cols = n + slack_count + art_count;
  Tableau tab(m, cols);
  for (std::size_t j = 0; j < n; ++j) {
    tab.set_upper(j, to_mpq(box[j].hi) - to_mpq(box[j].lo));
  }
  std::vector<mpq_class> phase1(cols);
  std::size_t next_slack = n;
  std::size_t next_art = n + slack_count;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = *rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (row.coeffs[j] != 0) tab.at(i, j) = to_mpq(checked_mul(row.coeffs[j], plan[i].sign));
    }
    if (plan[i].slack != 0) {
      const std::size_t s = next_slack++;
      tab.at(i, s) = plan[i].slack;
      if (plan[i].slack == 1) {
        tab.set_basic(i, s, plan[i].rhs);
        continue;
      }
    }
    const std::size_t a = next_art++;
    tab.at(i, a) = 1;
    tab.set_basic(i, a, plan[i].rhs);
    tab.forbid_entering(a);
    phase1[a] = 1;
  }

  if (art_count > 0) {
    tab.price(phase1);
    tab.run();
    mpq_class infeasibility = 0;
    for (std::size_t a = n + slack_count; a < cols; ++a) infeasibility += tab.value(a);
    if (sgn(infeasibility) > 0) return result;
    for (std::size_t a = n + slack_count; a < cols; ++a) tab.set_upper(a, 0);
  }

  std::vector<mpq_class> cost(cols);
  for (std::size_t j = 0; j < n; ++j) cost[j] = to_mpq(objective[j]);
  tab.price(cost);
  if (tab.run() == Tableau::Outcome::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.point.resize(n);
  result.value = 0;
  for (std::size_t j = 0; j < n; ++j) {
    result.point[j] = tab.value(j) + to_mpq(box[j].lo);
    if (objective[j] != 0) result.value += to_mpq(objective[j]) * result.point[j];
  }
  return result;
}

}  // namespace biopt
