#pragma once

#include <string>

namespace hfgt {

// Every numeric tolerance used by the library. Defaults are the contract;
// the CLI can override them from a JSON file (--tolerance-config).
struct Tolerances {
  // Leontief
  double spectral_tol = 1e-10;       // power-iteration convergence
  int spectral_max_iter = 10000;
  double productive_margin = 1e-9;   // radius >= 1 - margin is non-productive
  double inverse_residual = 1e-9;    // ||(I-A)B - I||_inf
  double nonnegativity = 1e-9;

  // Simplex
  double lp_feasibility = 1e-9;      // phase-1 objective / ratio test
  double lp_optimality = 1e-9;       // reduced-cost threshold
  double lp_pivot = 1e-11;           // smaller pivots are a numeric breakdown
  double lp_ratio_eps = 1e-9;        // column entries below this are ignored in the ratio test
  int lp_refactor_period = 50;
  int lp_max_iter = 100000;

  // Certification
  double cert_primal = 1e-7;
  double cert_dual = 1e-7;
  double cert_complementarity = 1e-6;
  double cert_gap = 1e-6;            // relative to 1 + |c'x|
};

const Tolerances& default_tolerances();

/// Reads a JSON object whose keys are field names above; missing keys keep
/// their defaults, unknown keys are an InputError.
Tolerances load_tolerances(const std::string& path);

}  // namespace hfgt
