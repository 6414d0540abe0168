#include "hfgt/leontief.hpp"

#include "hfgt/error.hpp"
#include "hfgt/io/format.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hfgt {

namespace {

void require_square_nonnegative(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InputError("technical coefficient matrix must be square and non-empty");
  if (!a.allFinite() || (a.array() < 0.0).any()) throw InputError("technical coefficients must be finite and >= 0");
}

Eigen::PartialPivLU<Matrix> factor_productive(const Matrix& a, const Tolerances& tol) {
  require_square_nonnegative(a);
  const double rho = spectral_radius(a, tol);
  if (rho >= 1.0 - tol.productive_margin) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "economy is not productive: spectral radius of A is " << rho << " (must be < 1)";
    throw NumericError(msg.str());
  }
  const Index n = a.rows();
  const Matrix leontief = Matrix::Identity(n, n) - a;
  Eigen::PartialPivLU<Matrix> lu(leontief);
  const Matrix& packed = lu.matrixLU();
  for (Index i = 0; i < n; ++i) {
    if (std::abs(packed(i, i)) < 1e-14) throw NumericError("(I - A) is singular");
  }
  return lu;
}

}  // namespace

void SquareEio::check() const {
  require_square_nonnegative(a);
  if (f.size() > 0 && f.cols() != a.cols()) throw InputError("factor matrix must have one column per sector");
  if (!f.allFinite() || (f.array() < 0.0).any()) throw InputError("factor requirements must be finite and >= 0");
  if (!labels.empty() && static_cast<Index>(labels.size()) != a.rows()) throw InputError("sector label count mismatch");
  if (!factor_labels.empty() && static_cast<Index>(factor_labels.size()) != f.rows()) {
    throw InputError("factor label count mismatch");
  }
}

Matrix coefficients_from_flows(const Matrix& z, const Vector& x) {
  if (z.rows() != z.cols() || z.cols() != x.size()) throw InputError("flow matrix must be n x n with n outputs");
  if (!z.allFinite() || (z.array() < 0.0).any()) throw InputError("intermediate sales must be finite and >= 0");
  for (Index j = 0; j < x.size(); ++j) {
    if (!(x(j) > 0.0)) {
      throw InputError("sector " + std::to_string(j + 1) + " has non-positive total output " + format_number(x(j)));
    }
  }
  Matrix a = z;
  for (Index j = 0; j < x.size(); ++j) a.col(j) /= x(j);
  return a;
}

double spectral_radius(const Matrix& a, const Tolerances& tol) {
  require_square_nonnegative(a);
  const Index n = a.rows();
  const Matrix shifted = Matrix::Identity(n, n) + a;
  Vector v = Vector::Ones(n);
  double upper = std::numeric_limits<double>::max();
  for (int iter = 0; iter < tol.spectral_max_iter; ++iter) {
    const Vector w = shifted * v;
    // Collatz-Wielandt upper bound: max_i (Sv)_i / v_i >= rho(S), nonincreasing.
    double bound = 0.0;
    for (Index i = 0; i < n; ++i) {
      if (v(i) > 0.0) bound = std::max(bound, w(i) / v(i));
    }
    const bool converged = std::abs(upper - bound) <= tol.spectral_tol;
    upper = bound;
    if (converged) break;
    v = w / w.maxCoeff();
  }
  return std::max(0.0, upper - 1.0);
}

Matrix leontief_inverse(const Matrix& a, const Tolerances& tol) {
  auto lu = factor_productive(a, tol);
  const Index n = a.rows();
  Matrix b = lu.solve(Matrix::Identity(n, n));
  const double residual = ((Matrix::Identity(n, n) - a) * b - Matrix::Identity(n, n)).cwiseAbs().rowwise().sum().maxCoeff();
  if (!(residual <= tol.inverse_residual)) {
    throw NumericError("Leontief inverse residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return b;
}

LeontiefSolution solve(const SquareEio& eio, const Vector& y, const Tolerances& tol) {
  eio.check();
  if (y.size() != eio.sectors()) throw InputError("final demand length does not match sector count");
  if (!y.allFinite() || (y.array() < 0.0).any()) throw InputError("final demand must be finite and >= 0");
  auto lu = factor_productive(eio.a, tol);
  LeontiefSolution out;
  out.x = lu.solve(y);
  out.phi = eio.f.size() > 0 ? Vector(eio.f * out.x) : Vector::Zero(0);
  out.nonnegative = (out.x.array() >= -tol.nonnegativity).all();
  return out;
}

}  // namespace hfgt
