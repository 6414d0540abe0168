#include "hfgt/io/file.hpp"

#include "hfgt/error.hpp"

#include <fstream>
#include <sstream>

namespace hfgt {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InputError("write to '" + path + "' failed");
}

}  // namespace hfgt
