#pragma once

// Rectangular Choice of Technology: each of n sectors may run any of its
// alternative technologies; t technologies in total.
//
//   min  pi' F* x*
//   s.t. (I* - A*) x* >= y      (sector balances)
//        F* x*        <= f      (factor availability)
//        x* >= 0

#include "hfgt/config.hpp"
#include "hfgt/leontief.hpp"
#include "hfgt/lp.hpp"
#include "hfgt/types.hpp"

namespace hfgt {

struct RcotInstance {
  Matrix i_star;  // n x t, one 1 per column
  Matrix a_star;  // n x t
  Matrix f_star;  // k x t
  Vector y;       // n
  Vector f;       // k
  Vector pi;      // k
  Labels tech_labels;
  Labels sector_labels;
  Labels factor_labels;

  Index sectors() const { return i_star.rows(); }
  Index technologies() const { return i_star.cols(); }
  Index factors() const { return f_star.rows(); }

  /// Throws InputError on any invariant violation.
  void check() const;
};

struct RcotSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector x_star;    // t
  double z = 0.0;   // pi' F* x*
  Vector phi;       // k, F* x*
  Vector binding;   // slacks: n sector rows, then k factor rows
  Labels tech_labels;
  Labels factor_labels;
  LpResult lp;
};

LinearProgram build_rcot_lp(const RcotInstance& inst);

RcotSolution solve_rcot(const RcotInstance& inst, const Tolerances& tol = default_tolerances());

/// Embeds a square economy: I* = I, A* = A, F* = F.
RcotInstance rcot_from_square(const SquareEio& eio, const Vector& y, const Vector& f, const Vector& pi);

}  // namespace hfgt
