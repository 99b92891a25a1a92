#pragma once

// Dense two-phase primal simplex over exact rationals with Bland's rule.
// All variables are implicitly nonnegative; the program is a minimization.

#include <string>
#include <vector>

#include "mpgh/scalar.hpp"

namespace mpgh {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct LinearConstraint {
  std::vector<Rational> coeffs;  // one per variable
  Sense sense;
  Rational rhs;
};

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;  // minimize objective . x
  std::vector<LinearConstraint> constraints;
  std::vector<std::string> names;   // optional, for diagnostics

  std::size_t add_variable(std::string name = {});
  /// Adds sum(terms) sense rhs, terms given as (variable, coefficient).
  void add_constraint(const std::vector<std::pair<std::size_t, Rational>>& terms, Sense sense, Rational rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  std::vector<Rational> point;
  std::size_t pivots = 0;
};

/// Throws InputError on a malformed program (coefficient count mismatch).
LpResult solve_lp(const LinearProgram& lp);

}  // namespace mpgh
