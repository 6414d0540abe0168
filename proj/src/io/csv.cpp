#include "hfgt/io/csv.hpp"

#include "hfgt/error.hpp"
#include "hfgt/io/format.hpp"

#include <sstream>

namespace hfgt {

namespace {

std::vector<std::vector<std::string>> split_rows(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += ch;
      any = true;
    }
  }
  if (quoted) throw InputError("CSV ends inside a quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string label_or_index(const Labels& labels, Index i, const char* prefix) {
  if (i < static_cast<Index>(labels.size())) return labels[static_cast<std::size_t>(i)];
  return prefix + std::to_string(i + 1);
}

}  // namespace

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

LabeledMatrix read_matrix_csv(std::string_view text) {
  const auto rows = split_rows(text);
  LabeledMatrix out;
  if (rows.empty()) throw InputError("CSV matrix is empty");
  const bool labeled = !parse_number(rows[0][0]).has_value();
  std::size_t first_row = 0, first_col = 0;
  if (labeled) {
    first_row = 1;
    first_col = 1;
    out.col_labels.assign(rows[0].begin() + 1, rows[0].end());
  }
  const std::size_t width = rows[first_row == 1 && rows.size() > 1 ? 1 : 0].size();
  if (labeled && width != out.col_labels.size() + 1) throw InputError("CSV header and first data row differ in width");
  out.values.resize(static_cast<Index>(rows.size() - first_row), static_cast<Index>(width - first_col));
  for (std::size_t r = first_row; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw InputError("CSV row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) + " fields, expected " +
                       std::to_string(width));
    }
    if (labeled) out.row_labels.push_back(rows[r][0]);
    for (std::size_t c = first_col; c < width; ++c) {
      const auto v = parse_number(rows[r][c]);
      if (!v) throw InputError("CSV row " + std::to_string(r + 1) + ", field " + std::to_string(c + 1) + " is not a number");
      out.values(static_cast<Index>(r - first_row), static_cast<Index>(c - first_col)) = *v;
    }
  }
  return out;
}

std::string write_matrix_csv(const LabeledMatrix& m) {
  std::ostringstream out;
  const bool labeled = !m.row_labels.empty() || !m.col_labels.empty();
  if (labeled) {
    for (Index c = 0; c < m.values.cols(); ++c) out << ',' << csv_field(label_or_index(m.col_labels, c, "c"));
    out << '\n';
  }
  for (Index r = 0; r < m.values.rows(); ++r) {
    if (labeled) out << csv_field(label_or_index(m.row_labels, r, "r")) << ',';
    for (Index c = 0; c < m.values.cols(); ++c) {
      if (c) out << ',';
      out << format_number(m.values(r, c));
    }
    out << '\n';
  }
  return out.str();
}

std::string emit_results_csv(const RcotSolution& sol, std::vector<std::string>* warnings) {
  if (sol.status != LpStatus::Optimal) throw InputError("cannot tabulate a " + to_string(sol.status) + " result");
  std::ostringstream out;
  out << "capability,value,percent\n";
  const double total = sol.x_star.sum();
  if (total == 0.0 && warnings) warnings->push_back("capability values sum to zero; percentages reported as 0.0%");
  for (Index j = 0; j < sol.x_star.size(); ++j) {
    const double pct = total == 0.0 ? 0.0 : 100.0 * sol.x_star(j) / total;
    out << csv_field(label_or_index(sol.tech_labels, j, "tech")) << ',' << format_fixed(sol.x_star(j), 4) << ','
        << format_fixed(pct, 1) << "%\n";
  }
  out << "total," << format_fixed(total, 4) << ',' << (total == 0.0 ? "0.0%" : "100.0%") << '\n';
  out << "objective," << format_fixed(sol.z, 4) << ",\n";
  for (Index r = 0; r < sol.phi.size(); ++r) {
    out << csv_field("factor_use[" + label_or_index(sol.factor_labels, r, "factor") + "]") << ','
        << format_fixed(sol.phi(r), 4) << ",\n";
  }
  return out.str();
}

std::string emit_chord_csv(const Matrix& a_star, const Labels& sectors, const Labels& technologies, bool nonzero_only) {
  if (!a_star.allFinite()) throw InputError("chord matrix must be finite");
  std::ostringstream out;
  out << "source_sector,target_technology,coefficient\n";
  for (Index i = 0; i < a_star.rows(); ++i) {
    for (Index j = 0; j < a_star.cols(); ++j) {
      if (nonzero_only && a_star(i, j) == 0.0) continue;
      out << csv_field(label_or_index(sectors, i, "sector")) << ',' << csv_field(label_or_index(technologies, j, "tech"))
          << ',' << format_number(a_star(i, j)) << '\n';
    }
  }
  return out.str();
}

std::string trajectory_csv(const std::vector<Marking>& markings, const Matrix& u_minus, const Matrix& u_plus,
                           const IncidenceMatrices& inc) {
  std::ostringstream out;
  out << "step,kind,label,value\n";
  for (std::size_t k = 0; k < markings.size(); ++k) {
    const auto& q = markings[k];
    for (Index i = 0; i < q.q_b.size(); ++i) {
      out << k << ",QB," << csv_field(inc.place_label(i)) << ',' << format_number(q.q_b(i)) << '\n';
    }
    for (Index e = 0; e < q.q_e.size(); ++e) {
      out << k << ",QE," << csv_field(inc.capabilities[static_cast<std::size_t>(e)]) << ',' << format_number(q.q_e(e))
          << '\n';
    }
  }
  for (Index k = 0; k < u_minus.rows(); ++k) {
    for (Index e = 0; e < u_minus.cols(); ++e) {
      const std::string& cap = inc.capabilities[static_cast<std::size_t>(e)];
      out << k << ",U-," << csv_field(cap) << ',' << format_number(u_minus(k, e)) << '\n';
      out << k << ",U+," << csv_field(cap) << ',' << format_number(u_plus(k, e)) << '\n';
    }
  }
  return out.str();
}

}  // namespace hfgt
