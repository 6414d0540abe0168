#pragma once

// System descriptions in XML:
//
//   <system name="...">
//     <operand id="" name="" unit=""/>
//     <resource id="" name="" kind="transformation|independent-buffer|transportation"/>
//     <process id="" name="" kind="transformation|refined-transportation">
//       <input operand="" coeff=""/>  <output operand="" coeff=""/>
//     </process>
//     <capability id="" name="" resource="" process="" duration="0">
//       <pull operand="" buffer=""/>  <push operand="" buffer=""/>
//     </capability>
//   </system>
//
// Pull/push entries left out default to the capability's own resource when
// that resource is a buffer.

#include "hfgt/core.hpp"
#include "hfgt/error.hpp"

#include <string>
#include <string_view>

namespace hfgt {

/// Schema or syntax problem at a position in the document (1-based).
class XmlError : public InputError {
 public:
  XmlError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Syntax and schema checks only; the returned model may still fail validate().
SystemModel parse_system_xml(std::string_view text);

/// parse_system_xml followed by require_valid.
SystemModel load_system_xml(const std::string& path);

std::string write_system_xml(const SystemModel& model);

}  // namespace hfgt
