#pragma once

#include "hfgt/core.hpp"
#include "hfgt/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hfgt {

/// Matricized hetero-functional incidence tensors. Rows are places
/// (operand, buffer), flattened operand-major: row = operand * |B_S| + buffer.
/// Columns are capabilities in declaration order.
///
/// Entries carry the per-unit coefficients of the executing process, so the
/// {0,1} tensors are the support of these matrices (see support()).
struct IncidenceMatrices {
  Labels operands;
  Labels buffers;
  Labels capabilities;
  Matrix m_plus;
  Matrix m_minus;
  Matrix m;

  Index rows() const { return m.rows(); }
  Index cols() const { return m.cols(); }

  Index row_of(std::size_t operand, std::size_t buffer) const {
    return static_cast<Index>(operand * buffers.size() + buffer);
  }
  std::optional<Index> row_of(const std::string& operand, const std::string& buffer) const;
  std::optional<Index> col_of(const std::string& capability) const;
  /// (operand id, buffer id) for a row.
  std::pair<std::string, std::string> place(Index row) const;
  /// "operand@buffer"
  std::string place_label(Index row) const;

  bool operator==(const IncidenceMatrices& other) const;
};

IncidenceMatrices build_incidence(const SystemModel& model);

/// M = M+ - M-. Throws InputError on shape mismatch.
Matrix matricize(const Matrix& m_plus, const Matrix& m_minus);

/// 1.0 where the entry is nonzero, 0.0 elsewhere.
Matrix support(const Matrix& weighted);

/// Checks shapes, nonnegativity and m == m_plus - m_minus; throws InputError.
void check_consistent(const IncidenceMatrices& inc);

}  // namespace hfgt
