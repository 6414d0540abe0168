#pragma once

#include "hfgt/core.hpp"
#include "hfgt/lp.hpp"
#include "hfgt/types.hpp"
#include "oracles.hpp"

#include <string>

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(HFGT_DATA_DIR) + "/" + name; }

inline oracle::Mat to_rows(const hfgt::Matrix& m) {
  oracle::Mat out(static_cast<std::size_t>(m.rows()), oracle::Vec(static_cast<std::size_t>(m.cols())));
  for (hfgt::Index r = 0; r < m.rows(); ++r) {
    for (hfgt::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
  }
  return out;
}

inline hfgt::Matrix from_rows(const oracle::Mat& rows) {
  const auto cols = rows.empty() ? 0 : rows.front().size();
  hfgt::Matrix m(static_cast<hfgt::Index>(rows.size()), static_cast<hfgt::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<hfgt::Index>(r), static_cast<hfgt::Index>(c)) = rows[r][c];
  }
  return m;
}

inline oracle::Vec to_vec(const hfgt::Vector& v) { return oracle::Vec(v.data(), v.data() + v.size()); }

inline hfgt::Vector from_vec(const oracle::Vec& v) {
  return Eigen::Map<const hfgt::Vector>(v.data(), static_cast<hfgt::Index>(v.size()));
}

inline double max_abs_diff(const hfgt::Matrix& a, const hfgt::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline hfgt::LinearProgram to_program(const oracle::BasicLp& b) {
  const auto n = static_cast<hfgt::Index>(b.cost.size());
  hfgt::LinearProgram lp = hfgt::LinearProgram::with_variables(n);
  lp.cost = from_vec(b.cost);
  if (!b.upper.empty()) lp.upper = from_vec(b.upper);
  for (std::size_t i = 0; i < b.rows.size(); ++i) {
    const hfgt::Sense s = b.rels[i] == oracle::Rel::Le   ? hfgt::Sense::LessEqual
                          : b.rels[i] == oracle::Rel::Eq ? hfgt::Sense::Equal
                                                         : hfgt::Sense::GreaterEqual;
    lp.add_row(from_vec(b.rows[i]), s, b.rhs[i]);
  }
  return lp;
}

// Coefficient tables of the bundled three-sector economy.
inline const oracle::Mat kAStar = {{0.35, 0.15, 0.23, 0.26, 0.28, 0.24},
                                   {0.25, 0.22, 0.16, 0.22, 0.21, 0.25},
                                   {0.20, 0.26, 0.30, 0.31, 0.33, 0.30}};
inline const oracle::Mat kFStar = {{2.1, 3.2, 1.9, 1.2, 0.8, 1.4}, {1.2, 2.2, 1.3, 1.3, 1.1, 1.1}};
inline const oracle::Mat kIStar = {{1, 0, 0, 0, 0, 0}, {0, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1}};
inline const oracle::Vec kDemand = {20, 25, 22};
inline const oracle::Vec kAvailability = {540, 342};
inline const oracle::Vec kPrices = {1, 0.9};
inline const oracle::Vec kReferenceX = {99.7883, 0, 87.5364, 0, 26.6439, 71.9531};

}  // namespace testing
