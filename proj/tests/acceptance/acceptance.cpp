#include "hfgt/hfnmcf.hpp"
#include "hfgt/incidence.hpp"
#include "hfgt/io/file.hpp"
#include "hfgt/io/json.hpp"
#include "hfgt/io/scenario.hpp"
#include "hfgt/io/xml.hpp"
#include "hfgt/leontief.hpp"
#include "hfgt/lp.hpp"
#include "hfgt/petri.hpp"
#include "hfgt/rcot.hpp"
#include "support.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace hfgt;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

SystemModel economy_model() { return load_system_xml(testing::data_path("economy.xml")); }
Scenario economy_scenario() { return parse_scenario_json(read_text_file(testing::data_path("economy_scenario.json"))); }

constexpr double kZ = 805.7241;
const std::vector<double> kX = {99.7883, 0, 87.5364, 0, 26.6439, 71.9531};

Outcome rcot_reproduction() {
  const Timer t;
  const RcotInstance inst = read_rcot_json(read_text_file(testing::data_path("economy_rcot.json")));
  const RcotSolution sol = solve_rcot(inst);
  const double elapsed = t.seconds();
  if (sol.status != LpStatus::Optimal) return {false, "status " + to_string(sol.status)};
  double worst = 0.0;
  for (std::size_t j = 0; j < kX.size(); ++j) worst = std::max(worst, std::abs(sol.x_star(static_cast<Index>(j)) - kX[j]));
  const double dz = std::abs(sol.z - kZ);
  const bool ok = dz <= 1e-3 && worst <= 5e-3 && elapsed < 1.0;
  return {ok, "Z=" + num(sol.z) + " |dZ|=" + num(dz) + " max|dx|=" + num(worst) + " time=" + num(elapsed) + "s"};
}

Outcome static_equivalence() {
  const RcotSolution r = solve_rcot(read_rcot_json(read_text_file(testing::data_path("economy_rcot.json"))));
  const Scenario sc = economy_scenario();
  const RcotSolution s = solve_static(static_from_scenario(economy_model(), sc), sc.balance);
  if (r.status != LpStatus::Optimal || s.status != LpStatus::Optimal) return {false, "non-optimal solve"};
  const double dx = (r.x_star - s.x_star).cwiseAbs().maxCoeff();
  const double dphi = (r.phi - s.phi).cwiseAbs().maxCoeff();
  const double dz = std::abs(r.z - s.z);
  const bool ok = dx <= 1e-6 && dphi <= 1e-6 && dz <= 1e-6;
  return {ok, "max|dx|=" + num(dx) + " max|dphi|=" + num(dphi) + " |dZ|=" + num(dz)};
}

Outcome factor_use() {
  const RcotSolution r = solve_rcot(read_rcot_json(read_text_file(testing::data_path("economy_rcot.json"))));
  if (r.status != LpStatus::Optimal) return {false, "non-optimal solve"};
  // binding holds the sector rows first, then capital and water.
  const double capital_slack = r.binding(3);
  const double water_slack = r.binding(4);
  const bool phi_ok = std::abs(r.phi(0) - 498.92) <= 0.01 && std::abs(r.phi(1) - 342.00) <= 0.01;
  const bool water_ok = std::abs(water_slack) <= 1e-6;
  const bool capital_ok = std::abs(capital_slack - 41.08) <= 0.01;
  return {phi_ok && water_ok && capital_ok, "phi=[" + num(r.phi(0)) + ", " + num(r.phi(1)) + "] expected [498.92, 342.00]" +
                                                " water slack=" + num(water_slack) + " capital slack=" +
                                                num(capital_slack) + " expected 41.08"};
}

Outcome incidence_golden() {
  const IncidenceMatrices inc = build_incidence(economy_model());
  const std::vector<std::vector<std::string>> plus = {{"1", "0", "0", "0", "0", "0"},
                                                      {"0", "1", "1", "0", "0", "0"},
                                                      {"0", "0", "0", "1", "1", "1"},
                                                      {"0", "0", "0", "0", "0", "0"},
                                                      {"0", "0", "0", "0", "0", "0"}};
  const std::vector<std::vector<std::string>> minus = {{"0.35", "0.15", "0.23", "0.26", "0.28", "0.24"},
                                                       {"0.25", "0.22", "0.16", "0.22", "0.21", "0.25"},
                                                       {"0.20", "0.26", "0.30", "0.31", "0.33", "0.30"},
                                                       {"2.1", "3.2", "1.9", "1.2", "0.8", "1.4"},
                                                       {"1.2", "2.2", "1.3", "1.3", "1.1", "1.1"}};
  const std::vector<std::vector<std::string>> net = {{"0.65", "-0.15", "-0.23", "-0.26", "-0.28", "-0.24"},
                                                     {"-0.25", "0.78", "0.84", "-0.16", "-0.22", "-0.25"},
                                                     {"-0.20", "-0.26", "-0.30", "0.69", "0.67", "0.70"},
                                                     {"-2.1", "-3.2", "-1.9", "-1.2", "-0.8", "-1.4"},
                                                     {"-1.2", "-2.2", "-1.3", "-1.3", "-1.1", "-1.1"}};
  std::string detail;
  auto compare = [&](const char* name, const Matrix& m, const std::vector<std::vector<std::string>>& expected) {
    int bad = 0;
    if (m.rows() != 5 || m.cols() != 6) {
      detail += std::string(name) + " has the wrong shape; ";
      return false;
    }
    for (Index i = 0; i < 5; ++i) {
      for (Index j = 0; j < 6; ++j) {
        const std::string& text = expected[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (m(i, j) != std::stod(text)) {
          ++bad;
          detail += std::string(name) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")=" +
                    exact(m(i, j)) + " vs " + text + "; ";
        }
      }
    }
    detail += std::string(name) + " mismatches=" + std::to_string(bad) + "; ";
    return bad == 0;
  };
  const bool a = compare("M+", inc.m_plus, plus);
  const bool b = compare("M-", inc.m_minus, minus);
  const bool c = compare("M", inc.m, net);
  return {a && b && c, detail};
}

Outcome leontief_embedding() {
  const Timer t;
  std::mt19937 rng(20240501);
  std::uniform_int_distribution<int> size(1, 5), factors(1, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng), k = factors(rng);
    const Matrix a = testing::from_rows(oracle::random_productive(rng, n, 0.9));
    Matrix f(k, n);
    for (Index r = 0; r < k; ++r) {
      for (Index j = 0; j < n; ++j) f(r, j) = 0.1 + 2.0 * u(rng);
    }
    Vector y(n), pi(k);
    for (Index i = 0; i < n; ++i) y(i) = 50.0 * u(rng);
    for (Index r = 0; r < k; ++r) pi(r) = 0.1 + u(rng);
    const LeontiefSolution leo = solve({a, f, {}, {}}, y);
    const Vector caps = 2.0 * leo.phi + Vector::Ones(k);
    const RcotSolution r = solve_rcot(rcot_from_square({a, f, {}, {}}, y, caps, pi));
    if (r.status != LpStatus::Optimal) {
      ++failures;
      continue;
    }
    worst = std::max(worst, (r.x_star - leo.x).cwiseAbs().maxCoeff());
  }
  const double elapsed = t.seconds();
  const bool ok = failures == 0 && worst <= 1e-6 && elapsed < 10.0;
  return {ok, "100 economies, max|x_rcot-x_leontief|=" + num(worst) + " non-optimal=" + std::to_string(failures) +
                  " time=" + num(elapsed) + "s"};
}

Outcome lp_oracle() {
  const Timer t;
  std::mt19937 rng(77);
  int mismatches = 0, uncertified = 0, optimal = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const oracle::BasicLp b = oracle::random_lp(rng, 3, 4);
    const LinearProgram lp = testing::to_program(b);
    const oracle::VertexResult truth = oracle::enumerate_vertices(b);
    const LpResult r = solve_lp(lp);
    if ((r.status == LpStatus::Optimal) != truth.feasible) {
      ++mismatches;
      continue;
    }
    if (r.status != LpStatus::Optimal) continue;
    ++optimal;
    const double d = std::abs(r.objective - truth.objective);
    worst = std::max(worst, d);
    if (d > 1e-7) ++mismatches;
    if (!certify(lp, r).passed()) ++uncertified;
  }
  const double elapsed = t.seconds();
  const bool ok = mismatches == 0 && uncertified == 0 && elapsed < 10.0;
  return {ok, "100 LPs (" + std::to_string(optimal) + " optimal), max|dZ|=" + num(worst) +
                  " mismatches=" + std::to_string(mismatches) + " uncertified=" + std::to_string(uncertified) +
                  " time=" + num(elapsed) + "s"};
}

SystemModel random_net(std::mt19937& rng) {
  std::uniform_int_distribution<int> ops(1, 3), bufs(1, 3), caps(1, 4), dur(0, 3), coin(0, 1);
  std::uniform_real_distribution<double> coef(0.2, 2.0);
  SystemModel m;
  const int no = ops(rng), nb = bufs(rng), nc = caps(rng);
  for (int o = 0; o < no; ++o) m.operands.push_back({"o" + std::to_string(o), "", "u"});
  for (int b = 0; b < nb; ++b) m.resources.push_back({"b" + std::to_string(b), "", ResourceKind::IndependentBuffer});
  std::uniform_int_distribution<int> pick_op(0, no - 1), pick_buf(0, nb - 1);
  for (int c = 0; c < nc; ++c) {
    Process p{"p" + std::to_string(c), "", ProcessKind::Transformation, {}, {}};
    Capability cap{"c" + std::to_string(c), "", "b" + std::to_string(pick_buf(rng)), p.id, {}, {}, dur(rng)};
    const int in = pick_op(rng);
    p.inputs.push_back({m.operands[static_cast<std::size_t>(in)].id, coef(rng)});
    cap.pull.push_back({p.inputs[0].operand, "b" + std::to_string(pick_buf(rng))});
    const int out = coin(rng) ? pick_op(rng) : in;
    p.outputs.push_back({m.operands[static_cast<std::size_t>(out)].id, coef(rng)});
    cap.push.push_back({p.outputs[0].operand, "b" + std::to_string(pick_buf(rng))});
    if (out != in && coin(rng)) {
      p.inputs.push_back({p.outputs[0].operand, coef(rng)});
      cap.pull.push_back({p.outputs[0].operand, "b" + std::to_string(pick_buf(rng))});
    }
    m.processes.push_back(p);
    m.capabilities.push_back(cap);
  }
  return m;
}

Outcome petri_conservation() {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> horizon(1, 20);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  double worst_qe = 0.0, worst_replay = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const SystemModel model = random_net(rng);
    require_valid(model);
    EngineeringSystemNet net = EngineeringSystemNet::from_model(model, trial % 2 ? 1.0 : 0.5);
    const Index K = horizon(rng);
    Matrix schedule(K, net.transitions());
    for (Index k = 0; k < K; ++k) {
      for (Index e = 0; e < net.transitions(); ++e) schedule(k, e) = u(rng);
    }
    Marking initial = net.zero_marking();
    for (Index i = 0; i < net.places(); ++i) initial.q_b(i) = u(rng);
    for (Index e = 0; e < net.transitions(); ++e) initial.q_e(e) = u(rng);
    const Trajectory t = simulate(net, initial, schedule);

    for (Index k = 0; k <= K; ++k) {
      Vector expect = initial.q_e;
      for (Index j = 0; j < k; ++j) expect += (t.u_minus.row(j) - t.u_plus.row(j)).transpose() * net.dt;
      worst_qe = std::max(worst_qe, (t.markings[static_cast<std::size_t>(k)].q_e - expect).cwiseAbs().maxCoeff());
    }

    HfnmcfProblem p;
    p.net = net;
    p.horizon = K;
    p.initial_b = initial.q_b;
    p.initial_e = initial.q_e;
    p.pins_minus = {Matrix::Identity(net.transitions(), net.transitions()), schedule.transpose()};
    const HfnmcfSolution sol = solve_full(p);
    if (sol.status != LpStatus::Optimal) {
      ++failures;
      continue;
    }
    for (Index k = 0; k <= K; ++k) {
      const auto& a = sol.markings[static_cast<std::size_t>(k)];
      const auto& b = t.markings[static_cast<std::size_t>(k)];
      worst_replay = std::max({worst_replay, (a.q_b - b.q_b).cwiseAbs().maxCoeff(), (a.q_e - b.q_e).cwiseAbs().maxCoeff()});
    }
    worst_replay = std::max(worst_replay, (sol.u_plus - t.u_plus).cwiseAbs().maxCoeff());
  }
  const bool ok = failures == 0 && worst_qe <= 1e-8 && worst_replay <= 1e-8;
  return {ok, "50 nets, max Q_E residual=" + num(worst_qe) + " max replay difference=" + num(worst_replay) +
                  " non-optimal=" + std::to_string(failures)};
}

Outcome surplus_identity() {
  const Scenario sc = economy_scenario();
  const StaticEioReduction red = static_from_scenario(economy_model(), sc);
  const RcotSolution s = solve_static(red, BalanceMode::Inequality);
  const HfnmcfSolution full = solve_full(embed_static(red, EngineeringSystemNet::from_model(economy_model())));
  if (s.status != LpStatus::Optimal || full.status != LpStatus::Optimal) return {false, "non-optimal solve"};
  const Index products = static_cast<Index>(sc.demand.size());
  const Vector final_products = full.markings.back().q_b.head(products);
  const Vector slacks = s.binding.head(products);
  const double d = (final_products - slacks).cwiseAbs().maxCoeff();
  return {d <= 1e-8, "max|Q_B[final] - static slack| over product rows=" + num(d)};
}

Outcome round_trips() {
  int models = 0, failures = 0;
  std::string detail;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(HFGT_DATA_DIR)) {
    if (entry.path().extension() == ".xml") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    ++models;
    const SystemModel m = load_system_xml(path.string());
    const std::string xml = write_system_xml(m);
    const SystemModel back = parse_system_xml(xml);
    const bool xml_ok = back == m && write_system_xml(back) == xml;
    const IncidenceMatrices inc = build_incidence(m);
    const std::string json = write_incidence_json(inc);
    const IncidenceMatrices inc_back = read_incidence_json(json);
    const bool json_ok = inc_back == inc && write_incidence_json(inc_back) == json;
    if (!xml_ok || !json_ok) {
      ++failures;
      detail += path.filename().string() + (xml_ok ? "" : " xml") + (json_ok ? "" : " json") + "; ";
    }
  }
  return {models > 0 && failures == 0,
          std::to_string(models) + " bundled models, failures=" + std::to_string(failures) + (detail.empty() ? "" : " " + detail)};
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"RCOT reproduction", rcot_reproduction},
      {"static network flow equals RCOT", static_equivalence},
      {"factor use and slacks", factor_use},
      {"incidence matrices against the reference values", incidence_golden},
      {"Leontief embedding", leontief_embedding},
      {"LP against vertex enumeration", lp_oracle},
      {"Petri net conservation and replay", petri_conservation},
      {"surplus identity", surplus_identity},
      {"XML and JSON round trips", round_trips},
  };
  return all;
}

bool report(int n) {
  const Criterion& c = criteria()[static_cast<std::size_t>(n - 1)];
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::cout << "C" << n << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << c.title << ": " << o.detail << '\n';
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  int criterion = 0;
  app.add_option("--criterion", criterion, "Run a single criterion (1-9); all when omitted")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  bool ok = true;
  if (criterion > 0) {
    ok = report(criterion);
  } else {
    for (int n = 1; n <= static_cast<int>(criteria().size()); ++n) ok = report(n) && ok;
  }
  return ok ? 0 : 1;
}
