#include "hfgt/golden.hpp"

#include "hfgt/error.hpp"
#include "hfgt/hfnmcf.hpp"
#include "hfgt/io/file.hpp"
#include "hfgt/io/format.hpp"
#include "hfgt/io/json.hpp"
#include "hfgt/io/json_util.hpp"
#include "hfgt/io/scenario.hpp"
#include "hfgt/io/xml.hpp"
#include "hfgt/rcot.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

namespace hfgt {

namespace {

std::string resolve(const std::filesystem::path& base, const std::string& rel) {
  if (rel.empty()) return rel;
  const std::filesystem::path p(rel);
  return p.is_absolute() ? rel : (base / p).lexically_normal().string();
}

std::optional<double> lookup(const RcotSolution& sol, const std::string& name) {
  if (name == "objective") return sol.z;
  auto indexed = [&](const char* prefix, const Vector& v) -> std::optional<double> {
    const std::string p = std::string(prefix) + "[";
    if (name.rfind(p, 0) != 0 || name.back() != ']') return std::nullopt;
    const auto idx = parse_number(name.substr(p.size(), name.size() - p.size() - 1));
    if (!idx || *idx < 1 || *idx > static_cast<double>(v.size()) || std::floor(*idx) != *idx) return std::nullopt;
    return v(static_cast<Index>(*idx) - 1);
  };
  if (auto v = indexed("x", sol.x_star)) return v;
  return indexed("phi", sol.phi);
}

}  // namespace

GoldenCase load_golden(const std::string& path) {
  const auto doc = jsonio::parse(read_text_file(path));
  jsonio::check_schema(doc, "hfgt-golden", 1);
  const auto base = std::filesystem::path(path).parent_path();
  GoldenCase c;
  c.name = jsonio::string(doc, "name", path);
  c.model_path = resolve(base, jsonio::string(doc, "model", ""));
  c.scenario_path = resolve(base, jsonio::string(doc, "scenario", ""));
  c.rcot_path = resolve(base, jsonio::string(doc, "rcot", ""));
  if (c.model_path.empty() || c.scenario_path.empty()) throw InputError("golden case needs 'model' and 'scenario'");
  const auto& expected = jsonio::require(doc, "expected");
  if (!expected.is_array()) throw InputError("'expected' must be an array");
  for (const auto& e : expected) {
    GoldenValue v;
    v.name = jsonio::string(e, "name", "");
    v.expected = jsonio::number(jsonio::require(e, "value"), "value");
    v.tolerance = jsonio::number(jsonio::require(e, "tolerance"), "tolerance");
    v.source = jsonio::string(e, "source", "");
    c.expected.push_back(std::move(v));
  }
  return c;
}

std::string to_string(GoldenPipeline p) { return p == GoldenPipeline::Rcot ? "rcot" : "hfnmcf-static"; }

bool GoldenReport::passed() const {
  if (status != "optimal") return false;
  for (const auto& c : comparisons) {
    if (!c.passed) return false;
  }
  return true;
}

std::string GoldenReport::to_text() const {
  std::ostringstream out;
  out << (passed() ? "PASS " : "FAIL ") << case_name << " via " << to_string(pipeline) << " (" << status << ")\n";
  out << "  name                  expected              actual                delta                 tolerance\n";
  for (const auto& c : comparisons) {
    auto col = [](std::string s) {
      s.resize(std::max<std::size_t>(s.size(), 22), ' ');
      return s + " ";
    };
    out << "  " << col(c.name) << col(format_number(c.expected)) << col(format_number(c.actual))
        << col(format_number(c.delta)) << col(format_number(c.tolerance)) << (c.passed ? "ok" : "MISMATCH") << '\n';
  }
  return out.str();
}

GoldenReport run_golden(const GoldenCase& c, GoldenPipeline pipeline, const Tolerances& tol) {
  const SystemModel model = load_system_xml(c.model_path);
  const Scenario scenario = parse_scenario_json(read_text_file(c.scenario_path));
  RcotSolution sol;
  if (pipeline == GoldenPipeline::HfnmcfStatic) {
    sol = solve_static(static_from_scenario(model, scenario), scenario.balance, tol);
  } else if (!c.rcot_path.empty()) {
    sol = solve_rcot(read_rcot_json(read_text_file(c.rcot_path)), tol);
  } else {
    sol = solve_rcot(rcot_from_model(model, scenario), tol);
  }
  GoldenReport report;
  report.case_name = c.name;
  report.pipeline = pipeline;
  report.status = to_string(sol.status);
  for (const auto& e : c.expected) {
    GoldenComparison cmp;
    cmp.name = e.name;
    cmp.expected = e.expected;
    cmp.tolerance = e.tolerance;
    const auto actual = sol.status == LpStatus::Optimal ? lookup(sol, e.name) : std::nullopt;
    if (sol.status == LpStatus::Optimal && !actual && e.name != "objective") {
      throw InputError("golden value '" + e.name + "' does not name an objective, x[j] or phi[r] entry");
    }
    cmp.actual = actual.value_or(std::nan(""));
    cmp.delta = cmp.actual - cmp.expected;
    cmp.passed = actual && std::abs(cmp.delta) <= cmp.tolerance;
    report.comparisons.push_back(cmp);
  }
  return report;
}

}  // namespace hfgt
