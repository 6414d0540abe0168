#include "hfgt/incidence.hpp"

#include "hfgt/error.hpp"

#include <algorithm>
#include <cmath>

namespace hfgt {

namespace {

std::optional<std::size_t> position(const Labels& labels, const std::string& id) {
  auto it = std::find(labels.begin(), labels.end(), id);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

std::optional<Index> IncidenceMatrices::row_of(const std::string& operand, const std::string& buffer) const {
  auto i = position(operands, operand);
  auto y = position(buffers, buffer);
  if (!i || !y) return std::nullopt;
  return row_of(*i, *y);
}

std::optional<Index> IncidenceMatrices::col_of(const std::string& capability) const {
  auto c = position(capabilities, capability);
  if (!c) return std::nullopt;
  return static_cast<Index>(*c);
}

std::pair<std::string, std::string> IncidenceMatrices::place(Index row) const {
  const auto nb = buffers.size();
  const auto r = static_cast<std::size_t>(row);
  return {operands.at(r / nb), buffers.at(r % nb)};
}

std::string IncidenceMatrices::place_label(Index row) const {
  auto [o, b] = place(row);
  return o + "@" + b;
}

bool IncidenceMatrices::operator==(const IncidenceMatrices& other) const {
  auto same = [](const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
  };
  return operands == other.operands && buffers == other.buffers && capabilities == other.capabilities &&
         same(m_plus, other.m_plus) && same(m_minus, other.m_minus) && same(m, other.m);
}

IncidenceMatrices build_incidence(const SystemModel& model) {
  require_valid(model);

  IncidenceMatrices inc;
  for (const auto& o : model.operands) inc.operands.push_back(o.id);
  inc.buffers = buffer_set(model);
  for (const auto& c : model.capabilities) inc.capabilities.push_back(c.id);

  const auto rows = static_cast<Index>(inc.operands.size() * inc.buffers.size());
  const auto cols = static_cast<Index>(inc.capabilities.size());
  inc.m_plus = Matrix::Zero(rows, cols);
  inc.m_minus = Matrix::Zero(rows, cols);

  auto place_row = [&](const Capability& c, const BufferAssignment& a) {
    auto row = inc.row_of(a.operand, a.buffer);
    if (!row) {
      throw InputError("capability '" + c.id + "' uses '" + a.buffer + "' which is not in the buffer set");
    }
    return *row;
  };
  auto coefficient = [](const std::vector<Flow>& flows, const std::string& operand) {
    for (const auto& f : flows) {
      if (f.operand == operand) return f.coefficient;
    }
    return 0.0;
  };

  for (Index col = 0; col < cols; ++col) {
    const Capability& c = model.capabilities[static_cast<std::size_t>(col)];
    const Process& p = *model.find_process(c.process);
    for (const auto& a : c.pull) inc.m_minus(place_row(c, a), col) += coefficient(p.inputs, a.operand);
    for (const auto& a : c.push) inc.m_plus(place_row(c, a), col) += coefficient(p.outputs, a.operand);
  }
  inc.m = matricize(inc.m_plus, inc.m_minus);
  return inc;
}

Matrix matricize(const Matrix& m_plus, const Matrix& m_minus) {
  if (m_plus.rows() != m_minus.rows() || m_plus.cols() != m_minus.cols()) {
    throw InputError("incidence shape mismatch: M+ is " + std::to_string(m_plus.rows()) + "x" +
                     std::to_string(m_plus.cols()) + ", M- is " + std::to_string(m_minus.rows()) + "x" +
                     std::to_string(m_minus.cols()));
  }
  return m_plus - m_minus;
}

Matrix support(const Matrix& weighted) {
  return weighted.unaryExpr([](double v) { return v != 0.0 ? 1.0 : 0.0; });
}

void check_consistent(const IncidenceMatrices& inc) {
  const auto rows = static_cast<Index>(inc.operands.size() * inc.buffers.size());
  const auto cols = static_cast<Index>(inc.capabilities.size());
  if (rows == 0 || cols == 0) throw InputError("incidence matrices must be non-empty");
  for (const Matrix* mat : {&inc.m_plus, &inc.m_minus, &inc.m}) {
    if (mat->rows() != rows || mat->cols() != cols) {
      throw InputError("incidence matrix shape does not match |L||B_S| x |E_S| = " + std::to_string(rows) +
                       "x" + std::to_string(cols));
    }
  }
  for (const Matrix* mat : {&inc.m_plus, &inc.m_minus}) {
    if (!mat->allFinite() || (mat->array() < 0.0).any()) {
      throw InputError("M+ and M- entries must be finite and nonnegative");
    }
  }
  if (!((inc.m_plus - inc.m_minus).array() == inc.m.array()).all()) {
    throw InputError("M is not equal to M+ - M-");
  }
}

}  // namespace hfgt
