#pragma once

// Golden cases: a model, a scenario and expected results with tolerances,
// re-run end to end and compared value by value.

#include "hfgt/config.hpp"

#include <string>
#include <vector>

namespace hfgt {

struct GoldenValue {
  std::string name;  // "objective", "x[j]" or "phi[r]", 1-based
  double expected = 0.0;
  double tolerance = 0.0;
  std::string source;
};

struct GoldenCase {
  std::string name;
  std::string model_path;     // XML system description
  std::string scenario_path;  // scenario JSON
  std::string rcot_path;      // optional RCOT instance JSON for the rcot pipeline
  std::vector<GoldenValue> expected;
};

/// Relative paths inside the file resolve against its directory.
GoldenCase load_golden(const std::string& path);

enum class GoldenPipeline { HfnmcfStatic, Rcot };

std::string to_string(GoldenPipeline p);

struct GoldenComparison {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double delta = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct GoldenReport {
  std::string case_name;
  GoldenPipeline pipeline = GoldenPipeline::HfnmcfStatic;
  std::string status;
  std::vector<GoldenComparison> comparisons;

  bool passed() const;
  std::string to_text() const;
};

GoldenReport run_golden(const GoldenCase& c, GoldenPipeline pipeline, const Tolerances& tol = default_tolerances());

}  // namespace hfgt
