#pragma once

// Checked accessors shared by the JSON readers. Every failure is an
// InputError naming the offending key.

#include "hfgt/types.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace hfgt::jsonio {

using json = nlohmann::ordered_json;

json parse(std::string_view text);
void check_schema(const json& doc, const std::string& schema, int version);

const json& require(const json& doc, const char* key);
double number(const json& value, const char* key);
std::string string(const json& doc, const char* key, const std::string& fallback);

/// Missing keys give an empty list unless required.
Labels labels(const json& doc, const char* key, bool required = true);

/// Array of equal-length rows. An empty array yields 0 x empty_cols.
Matrix matrix(const json& doc, const char* key, Index empty_cols = 0, bool required = true);
Vector vector(const json& doc, const char* key, bool required = true);

json rows(const Matrix& m);
json vec(const Vector& v);

}  // namespace hfgt::jsonio
