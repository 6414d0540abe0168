#pragma once

// Square (one technology per sector) input-output analytics.

#include "hfgt/config.hpp"
#include "hfgt/types.hpp"

#include <string>

namespace hfgt {

struct SquareEio {
  Matrix a;  // n x n technical coefficients, a_ij = z_ij / x_j
  Matrix f;  // k x n factor requirements per unit output
  Labels labels;
  Labels factor_labels;

  Index sectors() const { return a.rows(); }
  Index factors() const { return f.rows(); }

  /// Shape, finiteness and nonnegativity. Throws InputError.
  void check() const;
};

struct LeontiefSolution {
  Vector x;    // total output
  Vector phi;  // factor use F x
  bool nonnegative = true;  // false when some x_i < -tolerance
};

/// a_ij = z_ij / x_j. Throws InputError naming the first sector with x_j <= 0.
Matrix coefficients_from_flows(const Matrix& z, const Vector& x);

/// Perron root estimate of a nonnegative matrix by power iteration on I + A
/// (aperiodic, so the iteration converges even for cyclic A).
double spectral_radius(const Matrix& a, const Tolerances& tol = default_tolerances());

/// (I - A)^-1 by LU with partial pivoting; throws NumericError when the
/// economy is not productive, (I - A) is singular, or the residual check fails.
Matrix leontief_inverse(const Matrix& a, const Tolerances& tol = default_tolerances());

/// x = (I - A)^-1 y via an LU solve, phi = F x.
LeontiefSolution solve(const SquareEio& eio, const Vector& y, const Tolerances& tol = default_tolerances());

}  // namespace hfgt
