#include "hfgt/lp.hpp"

#include "hfgt/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace hfgt {

std::string to_string(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::Equal: return "=";
    case Sense::GreaterEqual: return ">=";
  }
  return "?";
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

LinearProgram LinearProgram::with_variables(Index n) {
  LinearProgram lp;
  lp.cost = Vector::Zero(n);
  lp.rows = Matrix::Zero(0, n);
  lp.rhs = Vector::Zero(0);
  lp.lower = Vector::Zero(n);
  lp.upper = Vector::Constant(n, kInfinity);
  lp.var_labels.resize(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) lp.var_labels[static_cast<std::size_t>(j)] = "x" + std::to_string(j);
  return lp;
}

void LinearProgram::add_row(const Vector& coeffs, Sense sense, double rhs_value, std::string label) {
  if (coeffs.size() != num_vars()) throw InputError("row length does not match variable count");
  const Index m = rows.rows();
  rows.conservativeResize(m + 1, num_vars());
  rows.row(m) = coeffs.transpose();
  rhs.conservativeResize(m + 1);
  rhs(m) = rhs_value;
  senses.push_back(sense);
  row_labels.push_back(label.empty() ? "r" + std::to_string(m) : std::move(label));
}

void LinearProgram::check() const {
  const Index n = num_vars();
  const Index m = rows.rows();
  if (rows.cols() != n && m > 0) throw InputError("constraint matrix column count does not match cost length");
  if (rhs.size() != m || static_cast<Index>(senses.size()) != m) {
    throw InputError("rhs/senses length does not match constraint row count");
  }
  if (lower.size() != n || upper.size() != n) throw InputError("bounds length does not match variable count");
  if (!var_labels.empty() && static_cast<Index>(var_labels.size()) != n) throw InputError("variable label count mismatch");
  if (!row_labels.empty() && static_cast<Index>(row_labels.size()) != m) throw InputError("row label count mismatch");
  if (!cost.allFinite() || !rows.allFinite() || !rhs.allFinite()) throw InputError("LP data must be finite");
  for (Index j = 0; j < n; ++j) {
    if (std::isnan(lower(j)) || std::isnan(upper(j)) || lower(j) > upper(j) || lower(j) == kInfinity ||
        upper(j) == -kInfinity) {
      throw InputError("invalid bounds on variable " + std::to_string(j));
    }
  }
}

namespace {

// x_orig(j) = offset(j) + sum over terms of coef * x_std(col)
struct VarMap {
  double offset = 0.0;
  std::vector<std::pair<Index, double>> terms;
};

struct StandardForm {
  Matrix a;  // m x N, every row has rhs >= 0
  Vector b;
  Vector c;  // phase-2 cost
  double c0 = 0.0;
  std::vector<VarMap> vars;
  std::vector<Index> row_source;  // original row index, or -1 for a bound row
  std::vector<double> row_sign;   // +1, or -1 when the row was negated
  Index n_struct = 0;
  Index first_artificial = 0;
  std::vector<Index> initial_basis;
  Labels col_labels;
};

std::string var_name(const LinearProgram& lp, Index j) {
  return lp.var_labels.empty() ? "x" + std::to_string(j) : lp.var_labels[static_cast<std::size_t>(j)];
}

StandardForm standardize(const LinearProgram& lp, const std::vector<Index>& kept_rows) {
  StandardForm sf;
  const Index n = lp.num_vars();
  sf.vars.resize(static_cast<std::size_t>(n));

  struct BoundRow {
    Index col;
    double width;
  };
  std::vector<BoundRow> bound_rows;
  Index col = 0;
  for (Index j = 0; j < n; ++j) {
    auto& vm = sf.vars[static_cast<std::size_t>(j)];
    const double lo = lp.lower(j), hi = lp.upper(j);
    const std::string name = var_name(lp, j);
    if (std::isfinite(lo)) {
      vm.offset = lo;
      vm.terms.push_back({col, 1.0});
      sf.col_labels.push_back(name);
      if (std::isfinite(hi)) bound_rows.push_back({col, hi - lo});
      ++col;
    } else if (std::isfinite(hi)) {
      vm.offset = hi;
      vm.terms.push_back({col, -1.0});
      sf.col_labels.push_back(name + "'");
      ++col;
    } else {
      vm.terms.push_back({col, 1.0});
      vm.terms.push_back({col + 1, -1.0});
      sf.col_labels.push_back(name + "+");
      sf.col_labels.push_back(name + "-");
      col += 2;
    }
  }
  sf.n_struct = col;

  const Index m = static_cast<Index>(kept_rows.size() + bound_rows.size());
  Matrix a_struct = Matrix::Zero(m, sf.n_struct);
  Vector b(m);
  std::vector<Sense> senses;
  Index r = 0;
  for (Index i : kept_rows) {
    double rhs = lp.rhs(i);
    for (Index j = 0; j < n; ++j) {
      const double aij = lp.rows(i, j);
      if (aij == 0.0) continue;
      const auto& vm = sf.vars[static_cast<std::size_t>(j)];
      rhs -= aij * vm.offset;
      for (auto [k, coef] : vm.terms) a_struct(r, k) += aij * coef;
    }
    b(r) = rhs;
    senses.push_back(lp.senses[static_cast<std::size_t>(i)]);
    sf.row_source.push_back(i);
    ++r;
  }
  for (const auto& br : bound_rows) {
    a_struct(r, br.col) = 1.0;
    b(r) = br.width;
    senses.push_back(Sense::LessEqual);
    sf.row_source.push_back(-1);
    ++r;
  }

  // Slack columns, then one artificial per row that has no +1 slack.
  std::vector<Index> slack_col(static_cast<std::size_t>(m), -1);
  std::vector<double> slack_coef(static_cast<std::size_t>(m), 0.0);
  Index next = sf.n_struct;
  for (Index i = 0; i < m; ++i) {
    const Sense s = senses[static_cast<std::size_t>(i)];
    if (s == Sense::Equal) continue;
    slack_col[static_cast<std::size_t>(i)] = next++;
    slack_coef[static_cast<std::size_t>(i)] = s == Sense::LessEqual ? 1.0 : -1.0;
    sf.col_labels.push_back("s[" + std::to_string(i) + "]");
  }
  sf.row_sign.assign(static_cast<std::size_t>(m), 1.0);
  for (Index i = 0; i < m; ++i) {
    if (b(i) < 0.0) sf.row_sign[static_cast<std::size_t>(i)] = -1.0;
  }
  sf.first_artificial = next;
  std::vector<Index> artificial_rows;
  sf.initial_basis.assign(static_cast<std::size_t>(m), -1);
  for (Index i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (slack_col[ui] >= 0 && slack_coef[ui] * sf.row_sign[ui] > 0.0) {
      sf.initial_basis[ui] = slack_col[ui];
    } else {
      artificial_rows.push_back(i);
    }
  }
  const Index total = next + static_cast<Index>(artificial_rows.size());
  sf.a = Matrix::Zero(m, total);
  sf.a.leftCols(sf.n_struct) = a_struct;
  for (Index i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (slack_col[ui] >= 0) sf.a(i, slack_col[ui]) = slack_coef[ui];
  }
  for (std::size_t k = 0; k < artificial_rows.size(); ++k) {
    const Index i = artificial_rows[k];
    const Index ac = next + static_cast<Index>(k);
    sf.a(i, ac) = sf.row_sign[static_cast<std::size_t>(i)];  // becomes +1 after negation below
    sf.initial_basis[static_cast<std::size_t>(i)] = ac;
    sf.col_labels.push_back("a[" + std::to_string(i) + "]");
  }
  for (Index i = 0; i < m; ++i) {
    if (sf.row_sign[static_cast<std::size_t>(i)] < 0.0) {
      sf.a.row(i) *= -1.0;
      b(i) = -b(i);
    }
  }
  sf.b = b;

  sf.c = Vector::Zero(total);
  for (Index j = 0; j < n; ++j) {
    const auto& vm = sf.vars[static_cast<std::size_t>(j)];
    sf.c0 += lp.cost(j) * vm.offset;
    for (auto [k, coef] : vm.terms) sf.c(k) += lp.cost(j) * coef;
  }
  return sf;
}

class Simplex {
 public:
  Simplex(const StandardForm& sf, const Tolerances& tol) : sf_(sf), tol_(tol), basis_(sf.initial_basis) {
    m_ = sf.a.rows();
    is_basic_.assign(static_cast<std::size_t>(sf.a.cols()), false);
    for (Index k : basis_) is_basic_[static_cast<std::size_t>(k)] = true;
    refactor();
  }

  enum class Outcome { Optimal, Unbounded };

  Outcome run(const Vector& cost, bool allow_artificial_entry) {
    while (true) {
      if (iterations_ >= tol_.lp_max_iter) numeric_failure("iteration limit reached");
      const Vector y = dual_values(cost);
      const Vector d = cost - sf_.a.transpose() * y;

      // Bland: lowest-index improving column enters.
      Index entering = -1;
      const Index limit = allow_artificial_entry ? sf_.a.cols() : sf_.first_artificial;
      for (Index j = 0; j < limit; ++j) {
        if (!is_basic_[static_cast<std::size_t>(j)] && d(j) < -tol_.lp_optimality) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return Outcome::Optimal;

      const Vector w = binv_ * sf_.a.col(entering);
      Index leave = -1;
      double best = kInfinity;
      // Ratio test; ties go to the lowest-index basic variable.
      for (Index i = 0; i < m_; ++i) {
        if (w(i) <= tol_.lp_ratio_eps) continue;
        const double ratio = std::max(xb_(i), 0.0) / w(i);
        const double tie = 1e-12 * (1.0 + std::abs(best));
        if (leave < 0 || ratio < best - tie) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + tie &&
                   basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return Outcome::Unbounded;
      pivot(leave, entering, w);
    }
  }

  // After phase 1: swap zero-level artificials out of the basis where some
  // structural or slack column can replace them. A row where none can is
  // redundant and its artificial stays basic at zero.
  void expel_artificials() {
    for (Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < sf_.first_artificial) continue;
      const Vector row = binv_.row(r) * sf_.a.leftCols(sf_.first_artificial);
      for (Index j = 0; j < sf_.first_artificial; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)] || std::abs(row(j)) <= tol_.lp_ratio_eps) continue;
        const Vector w = binv_ * sf_.a.col(j);
        pivot(r, j, w);
        break;
      }
    }
  }

  Vector dual_values(const Vector& cost) const {
    Vector cb(m_);
    for (Index i = 0; i < m_; ++i) cb(i) = cost(basis_[static_cast<std::size_t>(i)]);
    return binv_.transpose() * cb;
  }

  Vector primal() const {
    Vector x = Vector::Zero(sf_.a.cols());
    for (Index i = 0; i < m_; ++i) x(basis_[static_cast<std::size_t>(i)]) = xb_(i);
    return x;
  }

  int iterations() const { return iterations_; }

 private:
  void pivot(Index r, Index entering, const Vector& w) {
    const double p = w(r);
    if (std::abs(p) < tol_.lp_pivot) numeric_failure("pivot magnitude " + std::to_string(p) + " below threshold");
    binv_.row(r) /= p;
    xb_(r) /= p;
    for (Index i = 0; i < m_; ++i) {
      if (i == r || w(i) == 0.0) continue;
      binv_.row(i) -= w(i) * binv_.row(r);
      xb_(i) -= w(i) * xb_(r);
    }
    is_basic_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
    basis_[static_cast<std::size_t>(r)] = entering;
    is_basic_[static_cast<std::size_t>(entering)] = true;
    ++iterations_;
    if (++since_refactor_ >= tol_.lp_refactor_period) refactor();
  }

  void refactor() {
    since_refactor_ = 0;
    if (m_ == 0) {
      binv_ = Matrix::Zero(0, 0);
      xb_ = Vector::Zero(0);
      return;
    }
    Matrix basis_matrix(m_, m_);
    for (Index i = 0; i < m_; ++i) basis_matrix.col(i) = sf_.a.col(basis_[static_cast<std::size_t>(i)]);
    Eigen::PartialPivLU<Matrix> lu(basis_matrix);
    const Matrix& packed = lu.matrixLU();
    double scale = std::max(1.0, basis_matrix.cwiseAbs().maxCoeff());
    for (Index i = 0; i < m_; ++i) {
      if (std::abs(packed(i, i)) < tol_.lp_pivot * scale) numeric_failure("basis matrix is singular");
    }
    binv_ = lu.inverse();
    xb_ = binv_ * sf_.b;
    for (Index i = 0; i < m_; ++i) {
      if (xb_(i) < 0.0 && xb_(i) > -tol_.lp_feasibility * (1.0 + std::abs(sf_.b(i)))) xb_(i) = 0.0;
    }
  }

  [[noreturn]] void numeric_failure(const std::string& what) const {
    std::ostringstream msg;
    msg << "simplex numeric breakdown: " << what << " after " << iterations_ << " iterations; basis = [";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      msg << (i ? ", " : "") << sf_.col_labels[static_cast<std::size_t>(basis_[i])];
    }
    msg << "]";
    throw NumericError(msg.str());
  }

  const StandardForm& sf_;
  const Tolerances& tol_;
  std::vector<Index> basis_;
  std::vector<bool> is_basic_;
  Matrix binv_;
  Vector xb_;
  Index m_ = 0;
  int iterations_ = 0;
  int since_refactor_ = 0;
};

Vector row_slacks(const LinearProgram& lp, const Vector& x) {
  const Index m = lp.num_rows();
  Vector s(m);
  if (m == 0) return s;
  const Vector ax = lp.rows * x;
  for (Index i = 0; i < m; ++i) {
    s(i) = lp.senses[static_cast<std::size_t>(i)] == Sense::LessEqual ? lp.rhs(i) - ax(i) : ax(i) - lp.rhs(i);
  }
  return s;
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const Tolerances& tol) {
  lp.check();
  const Index n = lp.num_vars();
  const Index m = lp.num_rows();

  LpResult result;
  result.x = Vector::Zero(n);
  result.duals = Vector::Zero(m);

  // Presolve: drop all-zero rows (infeasible if their rhs contradicts 0).
  std::vector<Index> kept;
  for (Index i = 0; i < m; ++i) {
    if ((lp.rows.row(i).array() != 0.0).any()) {
      kept.push_back(i);
      continue;
    }
    const double b = lp.rhs(i);
    const Sense s = lp.senses[static_cast<std::size_t>(i)];
    const bool ok = (s == Sense::LessEqual && b >= -tol.lp_feasibility) ||
                    (s == Sense::GreaterEqual && b <= tol.lp_feasibility) ||
                    (s == Sense::Equal && std::abs(b) <= tol.lp_feasibility);
    if (!ok) {
      result.status = LpStatus::Infeasible;
      result.slacks = row_slacks(lp, result.x);
      return result;
    }
  }

  const StandardForm sf = standardize(lp, kept);
  Simplex simplex(sf, tol);

  if (sf.first_artificial < sf.a.cols()) {
    Vector phase1_cost = Vector::Zero(sf.a.cols());
    phase1_cost.tail(sf.a.cols() - sf.first_artificial).setOnes();
    simplex.run(phase1_cost, false);
    const Vector z = simplex.primal();
    const double infeasibility = z.tail(sf.a.cols() - sf.first_artificial).sum();
    const double scale = 1.0 + (sf.b.size() ? sf.b.cwiseAbs().maxCoeff() : 0.0);
    if (infeasibility > tol.lp_feasibility * scale) {
      result.status = LpStatus::Infeasible;
      result.iterations = simplex.iterations();
      result.slacks = row_slacks(lp, result.x);
      return result;
    }
    simplex.expel_artificials();
  }

  const auto outcome = simplex.run(sf.c, false);
  result.iterations = simplex.iterations();
  const Vector z = simplex.primal();
  for (Index j = 0; j < n; ++j) {
    const auto& vm = sf.vars[static_cast<std::size_t>(j)];
    double v = vm.offset;
    for (auto [k, coef] : vm.terms) v += coef * z(k);
    result.x(j) = v;
  }
  result.objective = lp.cost.dot(result.x);
  result.slacks = row_slacks(lp, result.x);
  if (outcome == Simplex::Outcome::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  const Vector y = simplex.dual_values(sf.c);
  for (std::size_t r = 0; r < sf.row_source.size(); ++r) {
    if (sf.row_source[r] >= 0) result.duals(sf.row_source[r]) = y(static_cast<Index>(r)) * sf.row_sign[r];
  }
  result.reduced_costs = m > 0 ? Vector(lp.cost - lp.rows.transpose() * result.duals) : Vector(lp.cost);

  const Certificate cert = certify(lp, result, tol);
  if (!cert.passed()) throw NumericError("optimal result failed certification: " + cert.summary());
  return result;
}

bool Certificate::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CertificateCheck& c) { return c.passed; });
}

std::string Certificate::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << c.name << "=" << (c.passed ? "pass" : "FAIL") << " (" << c.value << " / " << c.limit << ") ";
  }
  return out.str();
}

Certificate certify(const LinearProgram& lp, const LpResult& result, const Tolerances& tol) {
  const Index n = lp.num_vars();
  const Index m = lp.num_rows();
  const Vector& x = result.x;
  Vector lambda = result.duals.size() == m ? result.duals : Vector::Zero(m);
  const Vector slack = row_slacks(lp, x);
  const Vector r = m > 0 ? Vector(lp.cost - lp.rows.transpose() * lambda) : Vector(lp.cost);

  double primal = 0.0;
  for (Index i = 0; i < m; ++i) {
    const Sense s = lp.senses[static_cast<std::size_t>(i)];
    primal = std::max(primal, s == Sense::Equal ? std::abs(slack(i)) : std::max(0.0, -slack(i)));
  }
  for (Index j = 0; j < n; ++j) {
    primal = std::max({primal, lp.lower(j) - x(j), x(j) - lp.upper(j)});
  }

  double dual = 0.0;
  double comp = 0.0;
  double dual_objective = m > 0 ? lp.rhs.dot(lambda) : 0.0;
  for (Index i = 0; i < m; ++i) {
    const Sense s = lp.senses[static_cast<std::size_t>(i)];
    if (s == Sense::GreaterEqual) dual = std::max(dual, -lambda(i));
    if (s == Sense::LessEqual) dual = std::max(dual, lambda(i));
    if (s != Sense::Equal) comp = std::max(comp, std::abs(lambda(i) * slack(i)));
  }
  for (Index j = 0; j < n; ++j) {
    const double rp = std::max(r(j), 0.0);
    const double rn = std::max(-r(j), 0.0);
    if (rp > 0.0) {
      if (std::isfinite(lp.lower(j))) {
        comp = std::max(comp, rp * std::abs(x(j) - lp.lower(j)));
        dual_objective += rp * lp.lower(j);
      } else {
        dual = std::max(dual, rp);
      }
    }
    if (rn > 0.0) {
      if (std::isfinite(lp.upper(j))) {
        comp = std::max(comp, rn * std::abs(lp.upper(j) - x(j)));
        dual_objective -= rn * lp.upper(j);
      } else {
        dual = std::max(dual, rn);
      }
    }
  }
  const double primal_objective = lp.cost.dot(x);
  const double gap = std::abs(primal_objective - dual_objective);
  const double gap_limit = tol.cert_gap * (1.0 + std::abs(primal_objective));

  Certificate cert;
  cert.checks.push_back({"primal_residual", primal <= tol.cert_primal, primal, tol.cert_primal});
  cert.checks.push_back({"dual_feasibility", dual <= tol.cert_dual, dual, tol.cert_dual});
  cert.checks.push_back({"complementary_slackness", comp <= tol.cert_complementarity, comp, tol.cert_complementarity});
  cert.checks.push_back({"duality_gap", gap <= gap_limit, gap, gap_limit});
  return cert;
}

std::string dump_lp(const LinearProgram& lp) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "VARIABLES " << lp.num_vars() << "\n";
  for (Index j = 0; j < lp.num_vars(); ++j) {
    out << "  " << std::left << std::setw(24) << var_name(lp, j) << " cost " << lp.cost(j) << " in [" << lp.lower(j)
        << ", " << lp.upper(j) << "]\n";
  }
  out << "ROWS " << lp.num_rows() << "\n";
  for (Index i = 0; i < lp.num_rows(); ++i) {
    const std::string label = lp.row_labels.empty() ? "r" + std::to_string(i) : lp.row_labels[static_cast<std::size_t>(i)];
    out << "  " << std::left << std::setw(24) << label;
    for (Index j = 0; j < lp.num_vars(); ++j) {
      if (lp.rows(i, j) != 0.0) out << " " << lp.rows(i, j) << "*" << var_name(lp, j);
    }
    out << " " << to_string(lp.senses[static_cast<std::size_t>(i)]) << " " << lp.rhs(i) << "\n";
  }
  return out.str();
}

}  // namespace hfgt
