#pragma once

// JSON artifacts. Every document carries "schema" and "version"; readers
// reject anything else. Matrices are row-major number arrays; incidence
// matrices are flat with an explicit "shape".

#include "hfgt/incidence.hpp"
#include "hfgt/leontief.hpp"
#include "hfgt/lp.hpp"
#include "hfgt/rcot.hpp"

#include <string>
#include <string_view>

namespace hfgt {

inline constexpr int kIncidenceSchemaVersion = 1;
inline constexpr int kRcotSchemaVersion = 1;
inline constexpr int kEioSchemaVersion = 1;

std::string write_incidence_json(const IncidenceMatrices& inc);
IncidenceMatrices read_incidence_json(std::string_view text);

std::string write_rcot_json(const RcotInstance& inst);
RcotInstance read_rcot_json(std::string_view text);

/// Square economy plus a final demand. Either "a" or the pair "z", "x" may
/// be given; the latter goes through coefficients_from_flows.
struct EioDocument {
  SquareEio eio;
  Vector y;
};

std::string write_eio_json(const EioDocument& doc);
EioDocument read_eio_json(std::string_view text);

/// Status, objective, per-technology values, factor use and, when the LP is
/// supplied, per-row slacks and duals.
std::string rcot_results_json(const RcotSolution& sol, const LinearProgram* lp = nullptr);

std::string leontief_results_json(const LeontiefSolution& sol, const SquareEio& eio);

}  // namespace hfgt
