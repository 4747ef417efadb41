#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "fc/rational.hpp"

namespace fc {

class LpError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LinearRow {
  std::vector<Rational> coefficients;
  Rational rhs;
};

enum class Sense { none, maximize, minimize };

/// equalities: a.x == b; inequalities: a.x >= b.
struct LinearProgram {
  int num_vars = 0;
  std::vector<LinearRow> equalities;
  std::vector<LinearRow> inequalities;
  std::vector<bool> nonnegative;  // empty means all variables are nonnegative
  Sense sense = Sense::none;
  std::vector<Rational> objective;

  explicit LinearProgram(int vars = 0) : num_vars(vars) {}
  bool is_nonnegative(int var) const { return nonnegative.empty() || nonnegative[var]; }
  void validate() const;
};

/// Multipliers y >= 0 (one per inequality) and free lambda (one per equality)
/// such that sum y_i a_i + sum lambda_e a_e is <= 0 on nonnegative variables
/// and == 0 on free ones, while sum y_i b_i + sum lambda_e b_e > 0.
struct FarkasCertificate {
  std::vector<Rational> multipliers;
  std::vector<Rational> lambda;
};

struct LpFeasible {
  std::vector<Rational> point;
};
struct LpOptimal {
  std::vector<Rational> point;
  Rational value;
};
struct LpInfeasible {
  FarkasCertificate farkas;
};
struct LpUnbounded {
  std::vector<Rational> point;
  std::vector<Rational> ray;
};

using LpResult = std::variant<LpFeasible, LpOptimal, LpInfeasible, LpUnbounded>;

/// Exact two-phase simplex with Bland's rule. Returns LpFeasible when no
/// objective is set.
LpResult lp_solve(const LinearProgram& lp);

/// Every constraint holds exactly at `point`.
bool is_feasible_point(const LinearProgram& lp, const std::vector<Rational>& point);
/// Exact replay of a Farkas certificate against `lp`.
bool check_farkas(const LinearProgram& lp, const FarkasCertificate& cert);

}  // namespace fc
