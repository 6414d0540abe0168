#pragma once

#include <string>

namespace hfgt {

/// Whole file as bytes; InputError when it cannot be opened.
std::string read_text_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace hfgt
