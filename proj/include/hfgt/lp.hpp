#pragma once

// Dense two-phase revised simplex with Bland's rule.
//
// Problems are stated as
//   min  c'x
//   s.t. rows_i . x  (<= | = | >=)  rhs_i
//        lower <= x <= upper        (either side may be infinite)
//
// Duals follow the usual convention for a minimization: a ">=" row has a
// nonnegative multiplier, a "<=" row a nonpositive one, so that
// c = rows' * duals + reduced_costs at the optimum.

#include "hfgt/config.hpp"
#include "hfgt/types.hpp"

#include <limits>
#include <string>
#include <vector>

namespace hfgt {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(Sense s);
std::string to_string(LpStatus s);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LinearProgram {
  Vector cost;
  Matrix rows;
  std::vector<Sense> senses;
  Vector rhs;
  Vector lower;
  Vector upper;
  Labels var_labels;
  Labels row_labels;

  /// n variables in [0, +inf), no rows, zero cost.
  static LinearProgram with_variables(Index n);

  Index num_vars() const { return cost.size(); }
  Index num_rows() const { return rows.rows(); }

  void add_row(const Vector& coeffs, Sense sense, double rhs_value, std::string label = {});

  /// Throws InputError on inconsistent sizes, non-finite data or lower > upper.
  void check() const;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector x;
  double objective = 0.0;
  Vector duals;          // one per row
  Vector slacks;         // rhs - a.x for <=, a.x - rhs for >=, a.x - rhs for =
  Vector reduced_costs;  // c - rows' * duals
  int iterations = 0;
};

/// Solves and, when optimal, certifies the result; a failed certificate is
/// reported as NumericError. Infeasible and unbounded are statuses.
LpResult solve_lp(const LinearProgram& lp, const Tolerances& tol = default_tolerances());

struct CertificateCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;  // worst observed violation
  double limit = 0.0;
};

struct Certificate {
  std::vector<CertificateCheck> checks;
  bool passed() const;
  std::string summary() const;
};

/// Primal residuals, dual sign feasibility, complementary slackness and the
/// duality gap, recomputed from the LP data and result.x / result.duals.
Certificate certify(const LinearProgram& lp, const LpResult& result, const Tolerances& tol = default_tolerances());

/// Fixed-format plain-text echo of an LP, for debugging.
std::string dump_lp(const LinearProgram& lp);

}  // namespace hfgt
