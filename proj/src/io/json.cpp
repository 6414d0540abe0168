#include "hfgt/io/json.hpp"

#include "hfgt/error.hpp"
#include "hfgt/io/json_util.hpp"

namespace hfgt {

using json = nlohmann::ordered_json;

namespace {

json flat(const Matrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
  return out;
}

Matrix unflat(const json& doc, const char* key, Index rows, Index cols) {
  const json& arr = jsonio::require(doc, key);
  if (!arr.is_array()) throw InputError(std::string("'") + key + "' must be an array");
  if (static_cast<Index>(arr.size()) != rows * cols) {
    throw InputError(std::string("'") + key + "' has " + std::to_string(arr.size()) + " entries but shape is " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = jsonio::number(arr[static_cast<std::size_t>(r * cols + c)], key);
  }
  return m;
}

}  // namespace

std::string write_incidence_json(const IncidenceMatrices& inc) {
  check_consistent(inc);
  json doc;
  doc["schema"] = "hfgt-incidence";
  doc["version"] = kIncidenceSchemaVersion;
  doc["operands"] = inc.operands;
  doc["buffers"] = inc.buffers;
  doc["capabilities"] = inc.capabilities;
  doc["shape"] = {inc.rows(), inc.cols()};
  doc["mPlus"] = flat(inc.m_plus);
  doc["mMinus"] = flat(inc.m_minus);
  return doc.dump(2) + "\n";
}

IncidenceMatrices read_incidence_json(std::string_view text) {
  const json doc = jsonio::parse(text);
  jsonio::check_schema(doc, "hfgt-incidence", kIncidenceSchemaVersion);
  IncidenceMatrices inc;
  inc.operands = jsonio::labels(doc, "operands");
  inc.buffers = jsonio::labels(doc, "buffers");
  inc.capabilities = jsonio::labels(doc, "capabilities");
  const json& shape = jsonio::require(doc, "shape");
  if (!shape.is_array() || shape.size() != 2 || !shape[0].is_number_unsigned() || !shape[1].is_number_unsigned()) {
    throw InputError("'shape' must be [rows, cols] with nonnegative integers");
  }
  const auto rows = shape[0].get<Index>();
  const auto cols = shape[1].get<Index>();
  if (rows == 0 || cols == 0) throw InputError("incidence shape " + std::to_string(rows) + "x" + std::to_string(cols) + " is empty");
  if (rows != static_cast<Index>(inc.operands.size() * inc.buffers.size())) {
    throw InputError("shape rows must equal |operands| x |buffers|");
  }
  if (cols != static_cast<Index>(inc.capabilities.size())) throw InputError("shape cols must equal |capabilities|");
  inc.m_plus = unflat(doc, "mPlus", rows, cols);
  inc.m_minus = unflat(doc, "mMinus", rows, cols);
  inc.m = matricize(inc.m_plus, inc.m_minus);
  check_consistent(inc);
  return inc;
}

std::string write_rcot_json(const RcotInstance& inst) {
  inst.check();
  json doc;
  doc["schema"] = "hfgt-rcot";
  doc["version"] = kRcotSchemaVersion;
  doc["sectors"] = inst.sector_labels;
  doc["technologies"] = inst.tech_labels;
  doc["factors"] = inst.factor_labels;
  doc["iStar"] = jsonio::rows(inst.i_star);
  doc["aStar"] = jsonio::rows(inst.a_star);
  doc["fStar"] = jsonio::rows(inst.f_star);
  doc["y"] = jsonio::vec(inst.y);
  doc["f"] = jsonio::vec(inst.f);
  doc["pi"] = jsonio::vec(inst.pi);
  return doc.dump(2) + "\n";
}

RcotInstance read_rcot_json(std::string_view text) {
  const json doc = jsonio::parse(text);
  jsonio::check_schema(doc, "hfgt-rcot", kRcotSchemaVersion);
  RcotInstance inst;
  inst.sector_labels = jsonio::labels(doc, "sectors", false);
  inst.tech_labels = jsonio::labels(doc, "technologies", false);
  inst.factor_labels = jsonio::labels(doc, "factors", false);
  inst.a_star = jsonio::matrix(doc, "aStar");
  inst.i_star = jsonio::matrix(doc, "iStar");
  inst.f_star = jsonio::matrix(doc, "fStar", inst.a_star.cols());
  inst.y = jsonio::vector(doc, "y");
  inst.f = jsonio::vector(doc, "f", false);
  inst.pi = jsonio::vector(doc, "pi", false);
  if (inst.i_star.rows() != inst.a_star.rows() || inst.i_star.cols() != inst.a_star.cols()) {
    throw InputError("iStar and aStar must have the same shape");
  }
  inst.check();
  return inst;
}

std::string write_eio_json(const EioDocument& d) {
  d.eio.check();
  json doc;
  doc["schema"] = "hfgt-eio";
  doc["version"] = kEioSchemaVersion;
  doc["sectors"] = d.eio.labels;
  doc["factors"] = d.eio.factor_labels;
  doc["a"] = jsonio::rows(d.eio.a);
  doc["f"] = jsonio::rows(d.eio.f);
  doc["y"] = jsonio::vec(d.y);
  return doc.dump(2) + "\n";
}

EioDocument read_eio_json(std::string_view text) {
  const json doc = jsonio::parse(text);
  jsonio::check_schema(doc, "hfgt-eio", kEioSchemaVersion);
  EioDocument d;
  const bool has_a = doc.contains("a");
  const bool has_flows = doc.contains("z") || doc.contains("x");
  if (has_a == has_flows) throw InputError("give either 'a' or both 'z' and 'x'");
  if (has_a) {
    d.eio.a = jsonio::matrix(doc, "a");
  } else {
    d.eio.a = coefficients_from_flows(jsonio::matrix(doc, "z"), jsonio::vector(doc, "x"));
  }
  d.eio.f = jsonio::matrix(doc, "f", d.eio.a.cols(), false);
  d.eio.labels = jsonio::labels(doc, "sectors", false);
  d.eio.factor_labels = jsonio::labels(doc, "factors", false);
  d.y = jsonio::vector(doc, "y");
  d.eio.check();
  if (d.y.size() != d.eio.sectors()) throw InputError("'y' must have one entry per sector");
  return d;
}

std::string rcot_results_json(const RcotSolution& sol, const LinearProgram* lp) {
  json doc;
  doc["schema"] = "hfgt-results";
  doc["version"] = 1;
  doc["status"] = to_string(sol.status);
  if (sol.status == LpStatus::Optimal) {
    doc["objective"] = sol.z;
    json caps = json::array();
    for (Index j = 0; j < sol.x_star.size(); ++j) {
      const std::string label =
          j < static_cast<Index>(sol.tech_labels.size()) ? sol.tech_labels[static_cast<std::size_t>(j)] : std::to_string(j);
      caps.push_back({{"label", label}, {"value", sol.x_star(j)}});
    }
    doc["capabilities"] = caps;
    json factors = json::array();
    for (Index r = 0; r < sol.phi.size(); ++r) {
      const std::string label = r < static_cast<Index>(sol.factor_labels.size())
                                    ? sol.factor_labels[static_cast<std::size_t>(r)]
                                    : std::to_string(r);
      factors.push_back({{"label", label}, {"use", sol.phi(r)}});
    }
    doc["factor_use"] = factors;
    if (lp) {
      json rows = json::array();
      for (Index i = 0; i < lp->num_rows(); ++i) {
        rows.push_back({{"label", lp->row_labels.empty() ? std::to_string(i) : lp->row_labels[static_cast<std::size_t>(i)]},
                        {"slack", sol.lp.slacks(i)},
                        {"dual", sol.lp.duals(i)}});
      }
      doc["rows"] = rows;
    }
  }
  doc["iterations"] = sol.lp.iterations;
  return doc.dump(2) + "\n";
}

std::string leontief_results_json(const LeontiefSolution& sol, const SquareEio& eio) {
  json doc;
  doc["schema"] = "hfgt-leontief-results";
  doc["version"] = 1;
  json out = json::array();
  for (Index i = 0; i < sol.x.size(); ++i) {
    const std::string label = eio.labels.empty() ? "sector" + std::to_string(i + 1) : eio.labels[static_cast<std::size_t>(i)];
    out.push_back({{"label", label}, {"output", sol.x(i)}});
  }
  doc["output"] = out;
  json use = json::array();
  for (Index r = 0; r < sol.phi.size(); ++r) {
    const std::string label =
        eio.factor_labels.empty() ? "factor" + std::to_string(r + 1) : eio.factor_labels[static_cast<std::size_t>(r)];
    use.push_back({{"label", label}, {"use", sol.phi(r)}});
  }
  doc["factor_use"] = use;
  doc["nonnegative"] = sol.nonnegative;
  return doc.dump(2) + "\n";
}

}  // namespace hfgt
