#pragma once

// Hetero-functional network minimum cost flow.
//
// Two entry points:
//  * the static reduction  min cost.U  s.t.  M U >= C, U >= 0, which is the
//    form an input-output economy takes once storage is dropped;
//  * the full discrete-time program over markings and firings of the
//    engineering system net and the operand nets (linear objective only).

#include "hfgt/config.hpp"
#include "hfgt/core.hpp"
#include "hfgt/lp.hpp"
#include "hfgt/petri.hpp"
#include "hfgt/rcot.hpp"
#include "hfgt/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hfgt {

// ---------------------------------------------------------------------------
// Static reduction

enum class BalanceMode { Inequality, Equality };

struct StaticEioReduction {
  Matrix m;        // |L||B_S| x |E_S|
  Vector c;        // [y; -f]
  Vector cost;     // pi' F*, one per capability
  Matrix f_star;   // k x |E_S|, for reporting factor use
  Labels row_labels;
  Labels capability_labels;
  Labels factor_labels;

  void check() const;
};

/// Rows of the incidence matrix must be the products (matched by y) followed
/// by the factors (matched by f).
StaticEioReduction build_static(const SystemModel& model, const Vector& y, const Vector& f, const Vector& pi,
                                const Matrix& f_star);

LinearProgram static_lp(const StaticEioReduction& red, BalanceMode mode = BalanceMode::Inequality);

RcotSolution solve_static(const StaticEioReduction& red, BalanceMode mode = BalanceMode::Inequality,
                          const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Full program

/// Index map of the stacked decision vector. Markings come first, then
/// firings; inside each block time varies slowest.
///   markings, k = 0..K:   [Q_B; Q_E; Q_SL; Q_EL][k]
///   firings,  k = 0..K-1: [U+; U-; U_L+; U_L-][k]
struct HfnmcfLayout {
  Index places = 0;
  Index transitions = 0;
  Index operand_places = 0;
  Index operand_transitions = 0;
  Index horizon = 0;

  Index marking_block() const { return places + transitions + operand_places + operand_transitions; }
  Index firing_block() const { return 2 * transitions + 2 * operand_transitions; }
  Index firing_base() const { return (horizon + 1) * marking_block(); }
  Index total() const { return firing_base() + horizon * firing_block(); }

  Index q_b(Index k, Index i) const { return k * marking_block() + i; }
  Index q_e(Index k, Index e) const { return k * marking_block() + places + e; }
  Index q_sl(Index k, Index s) const { return k * marking_block() + places + transitions + s; }
  Index q_el(Index k, Index x) const { return k * marking_block() + places + transitions + operand_places + x; }
  Index u_plus(Index k, Index e) const { return firing_base() + k * firing_block() + e; }
  Index u_minus(Index k, Index e) const { return firing_base() + k * firing_block() + transitions + e; }
  Index ul_plus(Index k, Index x) const { return firing_base() + k * firing_block() + 2 * transitions + x; }
  Index ul_minus(Index k, Index x) const {
    return firing_base() + k * firing_block() + 2 * transitions + operand_transitions + x;
  }
};

struct VariableBound {
  Index variable = 0;
  double lower = -kInfinity;
  double upper = kInfinity;
};

/// Extension point for additional linear constraints over the stacked vector.
struct LinearRow {
  Vector coeffs;
  Sense sense = Sense::Equal;
  double rhs = 0.0;
  std::string label;
};

/// Equality pins D u[k] = C(:, k) on one family of firings.
struct FiringPins {
  Matrix d;  // p x (number of firings in the family)
  Matrix c;  // p x K
  bool empty() const { return d.rows() == 0; }
};

struct HfnmcfProblem {
  EngineeringSystemNet net;
  std::vector<OperandNet> operand_nets;
  Index horizon = 1;

  Vector linear_cost;            // length = layout().total(); empty means zero
  Matrix quadratic_cost;         // must be empty or zero
  Matrix sync_plus;              // (sum |E_l|) x |E_S|
  Matrix sync_minus;

  // Boundary conditions. Operand-net initial markings come from each net's
  // marking unless initial_sl is given.
  Vector initial_b;
  Vector initial_e;
  std::optional<Vector> initial_sl;
  std::optional<Vector> final_b;
  std::optional<Vector> final_e;
  std::optional<Vector> final_sl;

  FiringPins pins_plus;          // on U+
  FiringPins pins_minus;         // on U-
  FiringPins operand_pins_plus;  // on U_L+
  FiringPins operand_pins_minus; // on U_L-

  std::vector<VariableBound> bounds;  // override the defaults below
  std::vector<LinearRow> extra_rows;

  HfnmcfLayout layout() const;
};

/// Default bounds: Q_B and Q_SL free, Q_E and Q_EL >= 0, all firings >= 0.
LinearProgram build_full(const HfnmcfProblem& problem);

std::string variable_name(const HfnmcfProblem& problem, Index variable);

struct HfnmcfSolution {
  LpStatus status = LpStatus::Infeasible;
  LpResult lp;
  HfnmcfLayout layout;
  std::vector<Marking> markings;          // K + 1
  std::vector<Vector> operand_markings;   // Q_SL per step, K + 1
  Matrix u_plus;                          // K x |E_S|
  Matrix u_minus;
  std::vector<std::string> conflicting_rows;  // filled when infeasible
};

HfnmcfSolution solve_full(const HfnmcfProblem& problem, const Tolerances& tol = default_tolerances());

/// K = 1 problem whose final marking is the surplus of the static balance:
/// Q_B[1] = -C, Q_B[2] >= 0, costs on U-[1]. Requires zero durations.
HfnmcfProblem embed_static(const StaticEioReduction& red, const EngineeringSystemNet& net);

/// Deletion filter over the equality rows of an infeasible LP: the returned
/// rows are infeasible together (with all inequality rows and bounds) and
/// dropping any one of them restores feasibility.
std::vector<Index> irreducible_equality_rows(const LinearProgram& lp, const Tolerances& tol = default_tolerances());

}  // namespace hfgt
