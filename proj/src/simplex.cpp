#include "mpgh/simplex.hpp"

#include <optional>

namespace mpgh {

std::size_t LinearProgram::add_variable(std::string name) {
  objective.emplace_back(0);
  for (auto& c : constraints) c.coeffs.emplace_back(0);
  names.push_back(name.empty() ? "v" + std::to_string(num_vars) : std::move(name));
  return num_vars++;
}

void LinearProgram::add_constraint(const std::vector<std::pair<std::size_t, Rational>>& terms, Sense sense,
                                   Rational rhs) {
  LinearConstraint c{std::vector<Rational>(num_vars), sense, std::move(rhs)};
  for (const auto& [var, coeff] : terms) {
    if (var >= num_vars) throw InputError("add_constraint: unknown variable");
    c.coeffs[var] += coeff;
  }
  constraints.push_back(std::move(c));
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : cells_(rows, std::vector<Rational>(cols + 1)), cols_(cols) {}

  std::vector<std::vector<Rational>> cells_;  // last column is the rhs
  std::vector<Rational> cost;                 // reduced costs, size cols + 1 (last = -value)
  std::vector<std::size_t> basis;
  std::size_t pivots = 0;

  std::size_t rows() const { return cells_.size(); }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots;
    auto& prow = cells_[r];
    const Rational inv = 1 / prow[c];
    for (auto& v : prow) v *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || sgn(cells_[i][c]) == 0) continue;
      const Rational f = cells_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(prow[j]) != 0) cells_[i][j] -= f * prow[j];
    }
    if (sgn(cost[c]) != 0) {
      const Rational f = cost[c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(prow[j]) != 0) cost[j] -= f * prow[j];
    }
    basis[r] = c;
  }

  void set_objective(const std::vector<Rational>& c) {
    cost.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < c.size(); ++j) cost[j] = c[j];
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational cb = basis[i] < c.size() ? c[basis[i]] : Rational(0);
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) cost[j] -= cb * cells_[i][j];
    }
  }

  /// Bland's rule iterations; false when unbounded.
  bool optimize(std::size_t allowed_cols) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed_cols; ++j)
        if (sgn(cost[j]) < 0) {
          enter = j;
          break;
        }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows(); ++i) {
        const Rational& a = cells_[i][*enter];
        if (sgn(a) <= 0) continue;
        Rational ratio = cells_[i][cols_] / a;
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[*leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void drop_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::size_t cols_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n) throw InputError("solve_lp: objective length mismatch");
  for (const auto& c : lp.constraints)
    if (c.coeffs.size() != n) throw InputError("solve_lp: constraint length mismatch");

  // Normalize to nonnegative right-hand sides.
  struct Row {
    std::vector<Rational> coeffs;
    Sense sense;
    Rational rhs;
  };
  std::vector<Row> rows;
  for (const auto& c : lp.constraints) {
    Row r{c.coeffs, c.sense, c.rhs};
    if (sgn(r.rhs) < 0) {
      for (auto& v : r.coeffs) v = -v;
      r.rhs = -r.rhs;
      if (r.sense == Sense::kLessEqual)
        r.sense = Sense::kGreaterEqual;
      else if (r.sense == Sense::kGreaterEqual)
        r.sense = Sense::kLessEqual;
    }
    rows.push_back(std::move(r));
  }

  std::size_t slack_count = 0, artificial_count = 0;
  for (const auto& r : rows) {
    if (r.sense != Sense::kEqual) ++slack_count;
    if (r.sense != Sense::kLessEqual) ++artificial_count;
  }
  const std::size_t first_art = n + slack_count;
  const std::size_t cols = first_art + artificial_count;

  Tableau t(rows.size(), cols);
  t.basis.resize(rows.size());
  std::size_t slack = n, art = first_art;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) t.cells_[i][j] = rows[i].coeffs[j];
    t.cells_[i][cols] = rows[i].rhs;
    switch (rows[i].sense) {
      case Sense::kLessEqual:
        t.cells_[i][slack] = 1;
        t.basis[i] = slack++;
        break;
      case Sense::kGreaterEqual:
        t.cells_[i][slack++] = -1;
        t.cells_[i][art] = 1;
        t.basis[i] = art++;
        break;
      case Sense::kEqual:
        t.cells_[i][art] = 1;
        t.basis[i] = art++;
        break;
    }
  }

  LpResult result;
  if (artificial_count > 0) {
    std::vector<Rational> phase1(cols);
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = 1;
    t.set_objective(phase1);
    t.optimize(cols);
    if (sgn(t.cost[cols]) != 0) {  // -value != 0: artificials cannot all vanish
      result.status = LpStatus::kInfeasible;
      result.pivots = t.pivots;
      return result;
    }
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basis[i] < first_art) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_art; ++j)
        if (sgn(t.cells_[i][j]) != 0) {
          col = j;
          break;
        }
      if (col) {
        t.pivot(i, *col);
        ++i;
      } else {
        t.drop_row(i);
      }
    }
  }

  std::vector<Rational> phase2(cols);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  t.set_objective(phase2);
  const bool bounded = t.optimize(first_art);
  result.pivots = t.pivots;
  if (!bounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.point.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (t.basis[i] < n) result.point[t.basis[i]] = t.cells_[i][cols];
  result.value = -t.cost[cols];
  return result;
}

}  // namespace mpgh
