#include "hfgt/rcot.hpp"

#include "hfgt/error.hpp"

#include <string>

namespace hfgt {

namespace {

void require_nonnegative(const Matrix& m, const char* what) {
  if (!m.allFinite() || (m.array() < 0.0).any()) throw InputError(std::string(what) + " entries must be finite and >= 0");
}

Labels default_labels(const Labels& given, Index n, const std::string& prefix) {
  if (!given.empty()) return given;
  Labels out;
  for (Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

}  // namespace

void RcotInstance::check() const {
  const Index n = sectors(), t = technologies(), k = factors();
  if (n == 0 || t == 0) throw InputError("RCOT instance needs at least one sector and one technology");
  if (a_star.rows() != n || a_star.cols() != t) throw InputError("A* must be n x t like I*");
  if (f_star.cols() != t && k > 0) throw InputError("F* must have one column per technology");
  if (y.size() != n) throw InputError("final demand y must have one entry per sector");
  if (f.size() != k || pi.size() != k) throw InputError("f and pi must have one entry per factor");
  if (t < n) throw InputError("RCOT needs at least as many technologies as sectors");
  for (Index j = 0; j < t; ++j) {
    int ones = 0;
    for (Index i = 0; i < n; ++i) {
      if (i_star(i, j) == 1.0) {
        ++ones;
      } else if (i_star(i, j) != 0.0) {
        throw InputError("I* entries must be 0 or 1");
      }
    }
    if (ones != 1) throw InputError("technology " + std::to_string(j + 1) + " must belong to exactly one sector");
  }
  for (Index i = 0; i < n; ++i) {
    if (i_star.row(i).sum() < 1.0) throw InputError("sector " + std::to_string(i + 1) + " has no technology");
  }
  require_nonnegative(a_star, "A*");
  require_nonnegative(f_star, "F*");
  require_nonnegative(y, "y");
  require_nonnegative(f, "f");
  require_nonnegative(pi, "pi");
  if (!tech_labels.empty() && static_cast<Index>(tech_labels.size()) != t) throw InputError("technology label count mismatch");
  if (!sector_labels.empty() && static_cast<Index>(sector_labels.size()) != n) throw InputError("sector label count mismatch");
  if (!factor_labels.empty() && static_cast<Index>(factor_labels.size()) != k) throw InputError("factor label count mismatch");
}

LinearProgram build_rcot_lp(const RcotInstance& inst) {
  inst.check();
  const Index n = inst.sectors(), t = inst.technologies(), k = inst.factors();
  LinearProgram lp = LinearProgram::with_variables(t);
  lp.cost = k > 0 ? Vector(inst.f_star.transpose() * inst.pi) : Vector::Zero(t);
  lp.var_labels = default_labels(inst.tech_labels, t, "tech");
  const Labels sectors = default_labels(inst.sector_labels, n, "sector");
  const Labels factors = default_labels(inst.factor_labels, k, "factor");
  const Matrix net = inst.i_star - inst.a_star;
  for (Index i = 0; i < n; ++i) {
    lp.add_row(net.row(i).transpose(), Sense::GreaterEqual, inst.y(i), "balance[" + sectors[static_cast<std::size_t>(i)] + "]");
  }
  for (Index r = 0; r < k; ++r) {
    lp.add_row(inst.f_star.row(r).transpose(), Sense::LessEqual, inst.f(r),
               "availability[" + factors[static_cast<std::size_t>(r)] + "]");
  }
  return lp;
}

RcotSolution solve_rcot(const RcotInstance& inst, const Tolerances& tol) {
  const LinearProgram lp = build_rcot_lp(inst);
  RcotSolution sol;
  sol.lp = solve_lp(lp, tol);
  sol.status = sol.lp.status;
  sol.tech_labels = lp.var_labels;
  sol.factor_labels = default_labels(inst.factor_labels, inst.factors(), "factor");
  sol.binding = sol.lp.slacks;
  if (sol.status == LpStatus::Optimal) {
    sol.x_star = sol.lp.x;
    sol.phi = inst.factors() > 0 ? Vector(inst.f_star * sol.x_star) : Vector::Zero(0);
    sol.z = inst.factors() > 0 ? inst.pi.dot(sol.phi) : 0.0;
  }
  return sol;
}

RcotInstance rcot_from_square(const SquareEio& eio, const Vector& y, const Vector& f, const Vector& pi) {
  eio.check();
  RcotInstance inst;
  const Index n = eio.sectors();
  inst.i_star = Matrix::Identity(n, n);
  inst.a_star = eio.a;
  inst.f_star = eio.f.size() > 0 ? eio.f : Matrix::Zero(0, n);
  inst.y = y;
  inst.f = f;
  inst.pi = pi;
  inst.sector_labels = eio.labels;
  inst.tech_labels = eio.labels;
  inst.factor_labels = eio.factor_labels;
  inst.check();
  return inst;
}

}  // namespace hfgt
