#pragma once

// CSV in and out. Output always uses '.', ',' and '\n' regardless of locale;
// fields containing a comma, quote or newline are quoted.

#include "hfgt/hfnmcf.hpp"
#include "hfgt/incidence.hpp"
#include "hfgt/petri.hpp"
#include "hfgt/rcot.hpp"
#include "hfgt/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hfgt {

/// Either plain numbers, or a header row of column labels plus a first
/// column of row labels (detected from whether the top-left cell is numeric).
struct LabeledMatrix {
  Matrix values;
  Labels row_labels;
  Labels col_labels;
};

LabeledMatrix read_matrix_csv(std::string_view text);
std::string write_matrix_csv(const LabeledMatrix& m);

std::string csv_field(const std::string& text);

/// capability,value,percent rows, a total row, the objective row and one
/// row per factor. Values have 4 decimals, percentages 1. A zero total gives
/// 0.0% everywhere and a message in warnings. Non-optimal input is an
/// InputError.
std::string emit_results_csv(const RcotSolution& sol, std::vector<std::string>* warnings = nullptr);

/// Long format: source_sector,target_technology,coefficient.
std::string emit_chord_csv(const Matrix& a_star, const Labels& sectors, const Labels& technologies,
                           bool nonzero_only = false);

/// step,kind,label,value with kinds QB, QE (steps 0..K) and U-, U+ (steps 0..K-1).
std::string trajectory_csv(const std::vector<Marking>& markings, const Matrix& u_minus, const Matrix& u_plus,
                           const IncidenceMatrices& inc);

}  // namespace hfgt
