#include "hfgt/io/json_util.hpp"

#include "hfgt/error.hpp"

#include <cmath>

namespace hfgt::jsonio {

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

void check_schema(const json& doc, const std::string& schema, int version) {
  if (!doc.is_object()) throw InputError("document must be a JSON object");
  const json& s = require(doc, "schema");
  if (!s.is_string() || s.get<std::string>() != schema) throw InputError("expected schema '" + schema + "'");
  const json& v = require(doc, "version");
  if (!v.is_number_integer() || v.get<int>() != version) {
    throw InputError("unsupported " + schema + " version " + v.dump() + " (expected " + std::to_string(version) + ")");
  }
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  return doc.at(key);
}

double number(const json& value, const char* key) {
  if (!value.is_number()) throw InputError(std::string("'") + key + "' entries must be numbers");
  const double v = value.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string("'") + key + "' entries must be finite");
  return v;
}

std::string string(const json& doc, const char* key, const std::string& fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_string()) throw InputError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

Labels labels(const json& doc, const char* key, bool required) {
  if (!required && !doc.contains(key)) return {};
  const json& arr = require(doc, key);
  if (!arr.is_array()) throw InputError(std::string("'") + key + "' must be an array of strings");
  Labels out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw InputError(std::string("'") + key + "' must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Matrix matrix(const json& doc, const char* key, Index empty_cols, bool required) {
  if (!required && !doc.contains(key)) return Matrix(0, empty_cols);
  const json& arr = require(doc, key);
  if (!arr.is_array()) throw InputError(std::string("'") + key + "' must be an array of rows");
  if (arr.empty()) return Matrix(0, empty_cols);
  const std::size_t cols = arr[0].is_array() ? arr[0].size() : 0;
  Matrix m(static_cast<Index>(arr.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < arr.size(); ++r) {
    if (!arr[r].is_array() || arr[r].size() != cols) {
      throw InputError(std::string("'") + key + "' rows must be arrays of equal length");
    }
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = number(arr[r][c], key);
  }
  return m;
}

Vector vector(const json& doc, const char* key, bool required) {
  if (!required && !doc.contains(key)) return Vector(0);
  const json& arr = require(doc, key);
  if (!arr.is_array()) throw InputError(std::string("'") + key + "' must be an array of numbers");
  Vector v(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Index>(i)) = number(arr[i], key);
  return v;
}

json rows(const Matrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json vec(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace hfgt::jsonio
