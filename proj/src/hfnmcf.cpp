#include "hfgt/hfnmcf.hpp"

#include "hfgt/error.hpp"
#include "hfgt/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace hfgt {

// ---------------------------------------------------------------------------
// Static reduction

void StaticEioReduction::check() const {
  if (m.rows() == 0 || m.cols() == 0) throw InputError("static reduction needs a non-empty incidence matrix");
  if (cost.size() != m.cols()) throw InputError("cost length must equal the capability count");
  if (c.size() != m.rows()) throw InputError("C length must equal the incidence row count");
  if (f_star.size() > 0 && f_star.cols() != m.cols()) throw InputError("F* must have one column per capability");
  if (!m.allFinite() || !c.allFinite() || !cost.allFinite()) throw InputError("static reduction data must be finite");
}

StaticEioReduction build_static(const SystemModel& model, const Vector& y, const Vector& f, const Vector& pi,
                                const Matrix& f_star) {
  const IncidenceMatrices inc = build_incidence(model);
  if (y.size() + f.size() != inc.rows()) {
    throw InputError("model has " + std::to_string(inc.rows()) + " places but demand and availability give " +
                     std::to_string(y.size() + f.size()) + " entries");
  }
  if (pi.size() != f.size() || f_star.rows() != f.size() || f_star.cols() != inc.cols()) {
    throw InputError("prices and F* must match the factor count and F* the capability count");
  }
  StaticEioReduction red;
  red.m = inc.m;
  red.c.resize(inc.rows());
  red.c << y, -f;
  red.cost = f_star.transpose() * pi;
  red.f_star = f_star;
  for (Index r = 0; r < inc.rows(); ++r) red.row_labels.push_back(inc.place_label(r));
  red.capability_labels = inc.capabilities;
  for (Index r = y.size(); r < inc.rows(); ++r) red.factor_labels.push_back(inc.place(r).first);
  red.check();
  return red;
}

LinearProgram static_lp(const StaticEioReduction& red, BalanceMode mode) {
  red.check();
  LinearProgram lp = LinearProgram::with_variables(red.m.cols());
  lp.cost = red.cost;
  lp.var_labels = red.capability_labels;
  const Sense sense = mode == BalanceMode::Inequality ? Sense::GreaterEqual : Sense::Equal;
  for (Index r = 0; r < red.m.rows(); ++r) {
    lp.add_row(red.m.row(r).transpose(), sense, red.c(r),
               "balance[" + (red.row_labels.empty() ? std::to_string(r) : red.row_labels[static_cast<std::size_t>(r)]) + "]");
  }
  return lp;
}

RcotSolution solve_static(const StaticEioReduction& red, BalanceMode mode, const Tolerances& tol) {
  const LinearProgram lp = static_lp(red, mode);
  RcotSolution sol;
  sol.lp = solve_lp(lp, tol);
  sol.status = sol.lp.status;
  sol.tech_labels = red.capability_labels;
  sol.factor_labels = red.factor_labels;
  sol.binding = sol.lp.slacks;
  if (sol.status == LpStatus::Optimal) {
    sol.x_star = sol.lp.x;
    sol.z = red.cost.dot(sol.x_star);
    sol.phi = red.f_star.size() > 0 ? Vector(red.f_star * sol.x_star) : Vector::Zero(0);
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Full program

namespace {

struct SparseRow {
  std::vector<std::pair<Index, double>> terms;
  Sense sense = Sense::Equal;
  double rhs = 0.0;
  std::string label;
};

class RowSet {
 public:
  SparseRow& add(Sense sense, double rhs, std::string label) {
    rows_.push_back({{}, sense, rhs, std::move(label)});
    return rows_.back();
  }
  std::vector<SparseRow>& rows() { return rows_; }

 private:
  std::vector<SparseRow> rows_;
};

bool is_nonzero(const Matrix& m) { return m.size() > 0 && (m.array() != 0.0).any(); }

void check_pins(const FiringPins& pins, Index family, Index horizon, const char* name) {
  if (pins.empty()) return;
  if (pins.d.cols() != family || pins.c.rows() != pins.d.rows() || pins.c.cols() != horizon) {
    throw InputError(std::string(name) + " pins must be p x " + std::to_string(family) + " with a p x K right-hand side");
  }
}

// One STF block: -Q[k+1] + Q[k] + dt M+ U+[k] - dt M- U-[k] = 0 for places and
// -Q_E[k+1] + Q_E[k] - dt U+[k] + dt U-[k] = 0 for transitions.
template <typename PlaceVar, typename TransVar, typename PlusVar, typename MinusVar>
void add_stf(RowSet& rows, Index horizon, const Matrix& m_plus, const Matrix& m_minus, double dt, PlaceVar place,
             TransVar trans, PlusVar plus, MinusVar minus, const std::string& tag) {
  for (Index k = 0; k < horizon; ++k) {
    for (Index i = 0; i < m_plus.rows(); ++i) {
      auto& row = rows.add(Sense::Equal, 0.0, tag + "_place_stf[" + std::to_string(k + 1) + "][" + std::to_string(i) + "]");
      row.terms.push_back({place(k + 1, i), -1.0});
      row.terms.push_back({place(k, i), 1.0});
      for (Index e = 0; e < m_plus.cols(); ++e) {
        if (m_plus(i, e) != 0.0) row.terms.push_back({plus(k, e), m_plus(i, e) * dt});
        if (m_minus(i, e) != 0.0) row.terms.push_back({minus(k, e), -m_minus(i, e) * dt});
      }
    }
    for (Index e = 0; e < m_plus.cols(); ++e) {
      auto& row = rows.add(Sense::Equal, 0.0, tag + "_trans_stf[" + std::to_string(k + 1) + "][" + std::to_string(e) + "]");
      row.terms.push_back({trans(k + 1, e), -1.0});
      row.terms.push_back({trans(k, e), 1.0});
      row.terms.push_back({plus(k, e), -dt});
      row.terms.push_back({minus(k, e), dt});
    }
  }
}

// U+[j] = U-[j - d] when j - d >= 0, U+[j] = 0 otherwise. Input firings whose
// completion lies past the horizon are unconstrained here.
template <typename PlusVar, typename MinusVar>
void add_durations(RowSet& rows, Index horizon, const std::vector<int>& durations, Index offset, PlusVar plus,
                   MinusVar minus, const std::string& tag) {
  for (std::size_t e = 0; e < durations.size(); ++e) {
    const Index col = offset + static_cast<Index>(e);
    for (Index j = 0; j < horizon; ++j) {
      auto& row = rows.add(Sense::Equal, 0.0, tag + "_duration[" + std::to_string(j + 1) + "][" + std::to_string(col) + "]");
      row.terms.push_back({plus(j, col), -1.0});
      const Index src = j - durations[e];
      if (src >= 0) row.terms.push_back({minus(src, col), 1.0});
    }
  }
}

template <typename Var>
void add_pins(RowSet& rows, const FiringPins& pins, Index horizon, Var var, const std::string& tag) {
  for (Index k = 0; k < horizon; ++k) {
    for (Index p = 0; p < pins.d.rows(); ++p) {
      auto& row = rows.add(Sense::Equal, pins.c(p, k), tag + "[" + std::to_string(k + 1) + "][" + std::to_string(p) + "]");
      for (Index e = 0; e < pins.d.cols(); ++e) {
        if (pins.d(p, e) != 0.0) row.terms.push_back({var(k, e), pins.d(p, e)});
      }
    }
  }
}

template <typename Var>
void add_fix(RowSet& rows, const Vector& values, Var var, const std::string& tag) {
  for (Index i = 0; i < values.size(); ++i) {
    auto& row = rows.add(Sense::Equal, values(i), tag + "[" + std::to_string(i) + "]");
    row.terms.push_back({var(i), 1.0});
  }
}

Vector initial_operand_places(const HfnmcfProblem& p) {
  if (p.initial_sl) return *p.initial_sl;
  Index n = 0;
  for (const auto& net : p.operand_nets) n += net.num_places();
  Vector v(n);
  Index at = 0;
  for (const auto& net : p.operand_nets) {
    v.segment(at, net.num_places()) = net.marking.q_b;
    at += net.num_places();
  }
  return v;
}

}  // namespace

HfnmcfLayout HfnmcfProblem::layout() const {
  HfnmcfLayout l;
  l.places = net.places();
  l.transitions = net.transitions();
  for (const auto& on : operand_nets) {
    l.operand_places += on.num_places();
    l.operand_transitions += on.num_transitions();
  }
  l.horizon = horizon;
  return l;
}

std::string variable_name(const HfnmcfProblem& problem, Index variable) {
  const HfnmcfLayout l = problem.layout();
  const auto& inc = problem.net.incidence;
  auto cap = [&](Index e) { return inc.capabilities[static_cast<std::size_t>(e)]; };
  if (variable < l.firing_base()) {
    const Index k = variable / l.marking_block();
    Index r = variable % l.marking_block();
    const std::string step = "[" + std::to_string(k + 1) + "]";
    if (r < l.places) return "Q_B" + step + "[" + inc.place_label(r) + "]";
    r -= l.places;
    if (r < l.transitions) return "Q_E" + step + "[" + cap(r) + "]";
    r -= l.transitions;
    if (r < l.operand_places) return "Q_SL" + step + "[" + std::to_string(r) + "]";
    return "Q_EL" + step + "[" + std::to_string(r - l.operand_places) + "]";
  }
  const Index off = variable - l.firing_base();
  const Index k = off / l.firing_block();
  Index r = off % l.firing_block();
  const std::string step = "[" + std::to_string(k + 1) + "]";
  if (r < l.transitions) return "U+" + step + "[" + cap(r) + "]";
  r -= l.transitions;
  if (r < l.transitions) return "U-" + step + "[" + cap(r) + "]";
  r -= l.transitions;
  if (r < l.operand_transitions) return "U_L+" + step + "[" + std::to_string(r) + "]";
  return "U_L-" + step + "[" + std::to_string(r - l.operand_transitions) + "]";
}

LinearProgram build_full(const HfnmcfProblem& p) {
  p.net.check();
  for (const auto& on : p.operand_nets) on.check();
  if (is_nonzero(p.quadratic_cost)) {
    throw UnsupportedFeature("quadratic objective terms are not supported; only the linear cost is accepted");
  }
  if (p.horizon < 1) throw InputError("horizon must be >= 1");

  const HfnmcfLayout l = p.layout();
  const Index n = l.total();
  const Index K = l.horizon;
  if (p.linear_cost.size() != 0 && p.linear_cost.size() != n) {
    throw InputError("linear cost has length " + std::to_string(p.linear_cost.size()) + ", expected " + std::to_string(n));
  }
  if (p.initial_b.size() != l.places) {
    throw InputError("initial place marking C_B1 has length " + std::to_string(p.initial_b.size()) + ", expected " +
                     std::to_string(l.places));
  }
  if (p.initial_e.size() != 0 && p.initial_e.size() != l.transitions) {
    throw InputError("initial transition marking C_E1 must have one entry per capability");
  }
  const Vector initial_sl = initial_operand_places(p);
  if (initial_sl.size() != l.operand_places) throw InputError("initial operand marking C_SL1 has the wrong length");
  if (p.final_b && p.final_b->size() != l.places) throw InputError("final place marking C_BK has the wrong length");
  if (p.final_e && p.final_e->size() != l.transitions) throw InputError("final transition marking C_EK has the wrong length");
  if (p.final_sl && p.final_sl->size() != l.operand_places) throw InputError("final operand marking C_SLK has the wrong length");
  if (l.operand_transitions > 0) {
    for (const Matrix* s : {&p.sync_plus, &p.sync_minus}) {
      if (s->rows() != l.operand_transitions || s->cols() != l.transitions) {
        throw InputError("synchronization matrices must be (sum |E_l|) x |E_S|");
      }
    }
  } else if (p.sync_plus.size() > 0 || p.sync_minus.size() > 0) {
    throw InputError("synchronization matrices given without operand nets");
  }
  check_pins(p.pins_plus, l.transitions, K, "U+");
  check_pins(p.pins_minus, l.transitions, K, "U-");
  check_pins(p.operand_pins_plus, l.operand_transitions, K, "U_L+");
  check_pins(p.operand_pins_minus, l.operand_transitions, K, "U_L-");

  RowSet rows;
  auto qb = [&](Index k, Index i) { return l.q_b(k, i); };
  auto qe = [&](Index k, Index e) { return l.q_e(k, e); };
  auto up = [&](Index k, Index e) { return l.u_plus(k, e); };
  auto um = [&](Index k, Index e) { return l.u_minus(k, e); };
  add_stf(rows, K, p.net.incidence.m_plus, p.net.incidence.m_minus, p.net.dt, qb, qe, up, um, "esn");
  add_durations(rows, K, p.net.durations, 0, up, um, "esn");

  Index place_off = 0, trans_off = 0;
  for (std::size_t z = 0; z < p.operand_nets.size(); ++z) {
    const auto& on = p.operand_nets[z];
    auto qs = [&, place_off](Index k, Index s) { return l.q_sl(k, place_off + s); };
    auto qx = [&, trans_off](Index k, Index x) { return l.q_el(k, trans_off + x); };
    auto lp_ = [&, trans_off](Index k, Index x) { return l.ul_plus(k, trans_off + x); };
    auto lm_ = [&, trans_off](Index k, Index x) { return l.ul_minus(k, trans_off + x); };
    const std::string tag = "operand[" + on.operand + "]";
    add_stf(rows, K, on.m_plus, on.m_minus, on.dt, qs, qx, lp_, lm_, tag);
    auto lp_global = [&](Index k, Index x) { return l.ul_plus(k, x); };
    auto lm_global = [&](Index k, Index x) { return l.ul_minus(k, x); };
    add_durations(rows, K, on.durations, trans_off, lp_global, lm_global, tag);
    place_off += on.num_places();
    trans_off += on.num_transitions();
  }

  // Synchronization: U_L[k] - Lambda U[k] = 0.
  for (Index k = 0; k < K && l.operand_transitions > 0; ++k) {
    for (Index x = 0; x < l.operand_transitions; ++x) {
      auto& rp = rows.add(Sense::Equal, 0.0, "sync+[" + std::to_string(k + 1) + "][" + std::to_string(x) + "]");
      rp.terms.push_back({l.ul_plus(k, x), 1.0});
      for (Index e = 0; e < l.transitions; ++e) {
        if (p.sync_plus(x, e) != 0.0) rp.terms.push_back({l.u_plus(k, e), -p.sync_plus(x, e)});
      }
      auto& rm = rows.add(Sense::Equal, 0.0, "sync-[" + std::to_string(k + 1) + "][" + std::to_string(x) + "]");
      rm.terms.push_back({l.ul_minus(k, x), 1.0});
      for (Index e = 0; e < l.transitions; ++e) {
        if (p.sync_minus(x, e) != 0.0) rm.terms.push_back({l.u_minus(k, e), -p.sync_minus(x, e)});
      }
    }
  }

  add_pins(rows, p.pins_plus, K, up, "pin_u+");
  add_pins(rows, p.pins_minus, K, um, "pin_u-");
  add_pins(rows, p.operand_pins_plus, K, [&](Index k, Index x) { return l.ul_plus(k, x); }, "pin_ul+");
  add_pins(rows, p.operand_pins_minus, K, [&](Index k, Index x) { return l.ul_minus(k, x); }, "pin_ul-");

  add_fix(rows, p.initial_b, [&](Index i) { return l.q_b(0, i); }, "initial_b");
  add_fix(rows, p.initial_e.size() ? p.initial_e : Vector(Vector::Zero(l.transitions)),
          [&](Index e) { return l.q_e(0, e); }, "initial_e");
  add_fix(rows, initial_sl, [&](Index s) { return l.q_sl(0, s); }, "initial_sl");
  {
    Index at = 0;
    for (const auto& on : p.operand_nets) {
      for (Index x = 0; x < on.num_transitions(); ++x, ++at) {
        auto& row = rows.add(Sense::Equal, on.marking.q_e(x), "initial_el[" + std::to_string(at) + "]");
        row.terms.push_back({l.q_el(0, at), 1.0});
      }
    }
  }
  if (p.final_b) add_fix(rows, *p.final_b, [&](Index i) { return l.q_b(K, i); }, "final_b");
  if (p.final_e) add_fix(rows, *p.final_e, [&](Index e) { return l.q_e(K, e); }, "final_e");
  if (p.final_sl) add_fix(rows, *p.final_sl, [&](Index s) { return l.q_sl(K, s); }, "final_sl");

  LinearProgram lp = LinearProgram::with_variables(n);
  if (p.linear_cost.size() == n) lp.cost = p.linear_cost;
  for (Index v = 0; v < n; ++v) lp.var_labels[static_cast<std::size_t>(v)] = variable_name(p, v);
  lp.lower.setConstant(-kInfinity);
  for (Index k = 0; k <= K; ++k) {
    for (Index e = 0; e < l.transitions; ++e) lp.lower(l.q_e(k, e)) = 0.0;
    for (Index x = 0; x < l.operand_transitions; ++x) lp.lower(l.q_el(k, x)) = 0.0;
  }
  lp.lower.tail(n - l.firing_base()).setZero();
  for (const auto& b : p.bounds) {
    if (b.variable < 0 || b.variable >= n) throw InputError("bound refers to variable " + std::to_string(b.variable));
    lp.lower(b.variable) = b.lower;
    lp.upper(b.variable) = b.upper;
  }

  auto& all = rows.rows();
  for (const auto& extra : p.extra_rows) {
    if (extra.coeffs.size() != n) throw InputError("extra row '" + extra.label + "' has the wrong length");
    SparseRow r{{}, extra.sense, extra.rhs, extra.label.empty() ? "extra" : extra.label};
    for (Index v = 0; v < n; ++v) {
      if (extra.coeffs(v) != 0.0) r.terms.push_back({v, extra.coeffs(v)});
    }
    all.push_back(std::move(r));
  }

  const Index m = static_cast<Index>(all.size());
  lp.rows = Matrix::Zero(m, n);
  lp.rhs.resize(m);
  lp.senses.reserve(all.size());
  lp.row_labels.reserve(all.size());
  for (Index i = 0; i < m; ++i) {
    const auto& r = all[static_cast<std::size_t>(i)];
    for (auto [v, coef] : r.terms) lp.rows(i, v) += coef;
    lp.rhs(i) = r.rhs;
    lp.senses.push_back(r.sense);
    lp.row_labels.push_back(r.label);
  }
  return lp;
}

std::vector<Index> irreducible_equality_rows(const LinearProgram& lp, const Tolerances& tol) {
  std::vector<Index> candidate;
  std::vector<bool> keep(static_cast<std::size_t>(lp.num_rows()), true);
  for (Index i = 0; i < lp.num_rows(); ++i) {
    if (lp.senses[static_cast<std::size_t>(i)] == Sense::Equal) candidate.push_back(i);
  }
  auto feasible_without = [&](const std::vector<bool>& mask) {
    LinearProgram sub = LinearProgram::with_variables(lp.num_vars());
    sub.lower = lp.lower;
    sub.upper = lp.upper;
    std::vector<Index> idx;
    for (Index i = 0; i < lp.num_rows(); ++i) {
      if (mask[static_cast<std::size_t>(i)]) idx.push_back(i);
    }
    sub.rows.resize(static_cast<Index>(idx.size()), lp.num_vars());
    sub.rhs.resize(static_cast<Index>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
      sub.rows.row(static_cast<Index>(r)) = lp.rows.row(idx[r]);
      sub.rhs(static_cast<Index>(r)) = lp.rhs(idx[r]);
      sub.senses.push_back(lp.senses[static_cast<std::size_t>(idx[r])]);
      sub.row_labels.push_back(lp.row_labels.empty() ? "" : lp.row_labels[static_cast<std::size_t>(idx[r])]);
    }
    return solve_lp(sub, tol).status != LpStatus::Infeasible;
  };
  if (feasible_without(keep)) return {};

  std::vector<Index> core;
  for (Index i : candidate) {
    keep[static_cast<std::size_t>(i)] = false;
    if (feasible_without(keep)) {
      keep[static_cast<std::size_t>(i)] = true;  // needed for the conflict
      core.push_back(i);
    }
  }
  return core;
}

HfnmcfSolution solve_full(const HfnmcfProblem& problem, const Tolerances& tol) {
  const LinearProgram lp = build_full(problem);
  HfnmcfSolution sol;
  sol.layout = problem.layout();
  sol.lp = solve_lp(lp, tol);
  sol.status = sol.lp.status;
  if (sol.status == LpStatus::Infeasible) {
    for (Index r : irreducible_equality_rows(lp, tol)) sol.conflicting_rows.push_back(lp.row_labels[static_cast<std::size_t>(r)]);
    return sol;
  }
  if (sol.status != LpStatus::Optimal) return sol;

  const auto& l = sol.layout;
  const Vector& x = sol.lp.x;
  for (Index k = 0; k <= l.horizon; ++k) {
    Marking q{Vector(l.places), Vector(l.transitions)};
    for (Index i = 0; i < l.places; ++i) q.q_b(i) = x(l.q_b(k, i));
    for (Index e = 0; e < l.transitions; ++e) q.q_e(e) = x(l.q_e(k, e));
    sol.markings.push_back(std::move(q));
    Vector s(l.operand_places);
    for (Index i = 0; i < l.operand_places; ++i) s(i) = x(l.q_sl(k, i));
    sol.operand_markings.push_back(std::move(s));
  }
  sol.u_plus.resize(l.horizon, l.transitions);
  sol.u_minus.resize(l.horizon, l.transitions);
  for (Index k = 0; k < l.horizon; ++k) {
    for (Index e = 0; e < l.transitions; ++e) {
      sol.u_plus(k, e) = x(l.u_plus(k, e));
      sol.u_minus(k, e) = x(l.u_minus(k, e));
    }
  }
  return sol;
}

HfnmcfProblem embed_static(const StaticEioReduction& red, const EngineeringSystemNet& net) {
  red.check();
  net.check();
  if (net.places() != red.m.rows() || net.transitions() != red.m.cols()) {
    throw InputError("net and static reduction do not describe the same incidence");
  }
  if (std::any_of(net.durations.begin(), net.durations.end(), [](int d) { return d != 0; })) {
    throw InputError("the static embedding requires zero-duration capabilities");
  }
  HfnmcfProblem p;
  p.net = net;
  p.horizon = 1;
  p.initial_b = -red.c;
  p.initial_e = Vector::Zero(net.transitions());
  const HfnmcfLayout l = p.layout();
  p.linear_cost = Vector::Zero(l.total());
  for (Index e = 0; e < l.transitions; ++e) p.linear_cost(l.u_minus(0, e)) = red.cost(e) * net.dt;
  for (Index i = 0; i < l.places; ++i) p.bounds.push_back({l.q_b(1, i), 0.0, kInfinity});
  return p;
}

}  // namespace hfgt
