#include "hfgt/config.hpp"
#include "hfgt/error.hpp"
#include "hfgt/golden.hpp"
#include "hfgt/hfnmcf.hpp"
#include "hfgt/incidence.hpp"
#include "hfgt/io/csv.hpp"
#include "hfgt/io/file.hpp"
#include "hfgt/io/format.hpp"
#include "hfgt/io/json.hpp"
#include "hfgt/io/json_util.hpp"
#include "hfgt/io/scenario.hpp"
#include "hfgt/io/xml.hpp"
#include "hfgt/leontief.hpp"
#include "hfgt/petri.hpp"
#include "hfgt/rcot.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace hfgt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitGoldenMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitNumeric = 4;

struct Globals {
  std::string tolerance_config;
  std::string output;
  std::string format = "csv";
  Tolerances tol;
};

void emit(const Globals& g, const std::string& text) {
  if (g.output.empty() || g.output == "-") {
    std::cout << text;
  } else {
    write_text_file(g.output, text);
  }
}

void maybe_dump(const std::string& path, const LinearProgram& lp) {
  if (!path.empty()) write_text_file(path, dump_lp(lp));
}

int report_status(LpStatus status) {
  if (status == LpStatus::Optimal) return kExitOk;
  std::cerr << "hfgt: problem is " << to_string(status) << "\n";
  return kExitNoSolution;
}

int emit_rcot(const Globals& g, const RcotSolution& sol, const LinearProgram& lp) {
  if (sol.status != LpStatus::Optimal) {
    if (g.format == "json") emit(g, rcot_results_json(sol, &lp));
    return report_status(sol.status);
  }
  if (g.format == "json") {
    emit(g, rcot_results_json(sol, &lp));
  } else {
    std::vector<std::string> warnings;
    emit(g, emit_results_csv(sol, &warnings));
    for (const auto& w : warnings) std::cerr << "hfgt: warning: " << w << "\n";
  }
  return kExitOk;
}

Vector read_vector_csv(const std::string& path) {
  const LabeledMatrix m = read_matrix_csv(read_text_file(path));
  if (m.values.cols() == 1) return m.values.col(0);
  if (m.values.rows() == 1) return m.values.row(0).transpose();
  throw InputError("'" + path + "' must hold a single row or column");
}

std::string leontief_csv(const LeontiefSolution& sol, const SquareEio& eio) {
  std::ostringstream out;
  out << "kind,label,value\n";
  for (Index i = 0; i < sol.x.size(); ++i) {
    out << "output," << csv_field(eio.labels.empty() ? "sector" + std::to_string(i + 1) : eio.labels[static_cast<std::size_t>(i)])
        << ',' << format_number(sol.x(i)) << '\n';
  }
  for (Index r = 0; r < sol.phi.size(); ++r) {
    out << "factor_use,"
        << csv_field(eio.factor_labels.empty() ? "factor" + std::to_string(r + 1)
                                                : eio.factor_labels[static_cast<std::size_t>(r)])
        << ',' << format_number(sol.phi(r)) << '\n';
  }
  return out.str();
}

std::string full_json(const HfnmcfSolution& sol, const HfnmcfProblem& p) {
  jsonio::json doc;
  doc["schema"] = "hfgt-full-results";
  doc["version"] = 1;
  doc["status"] = to_string(sol.status);
  if (sol.status == LpStatus::Optimal) {
    doc["objective"] = sol.lp.objective;
    const auto& inc = p.net.incidence;
    jsonio::json steps = jsonio::json::array();
    for (std::size_t k = 0; k < sol.markings.size(); ++k) {
      jsonio::json step;
      step["step"] = k;
      jsonio::json qb = jsonio::json::object(), qe = jsonio::json::object();
      for (Index i = 0; i < inc.rows(); ++i) qb[inc.place_label(i)] = sol.markings[k].q_b(i);
      for (Index e = 0; e < inc.cols(); ++e) qe[inc.capabilities[static_cast<std::size_t>(e)]] = sol.markings[k].q_e(e);
      step["QB"] = qb;
      step["QE"] = qe;
      if (static_cast<Index>(k) < sol.u_minus.rows()) {
        jsonio::json um = jsonio::json::object(), up = jsonio::json::object();
        for (Index e = 0; e < inc.cols(); ++e) {
          um[inc.capabilities[static_cast<std::size_t>(e)]] = sol.u_minus(static_cast<Index>(k), e);
          up[inc.capabilities[static_cast<std::size_t>(e)]] = sol.u_plus(static_cast<Index>(k), e);
        }
        step["U-"] = um;
        step["U+"] = up;
      }
      steps.push_back(step);
    }
    doc["steps"] = steps;
  }
  if (!sol.conflicting_rows.empty()) doc["conflicting_rows"] = sol.conflicting_rows;
  return doc.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Input-output economics, choice-of-technology and hetero-functional network flow tools"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tolerance-config", g.tolerance_config, "JSON file overriding numeric tolerances")
      ->check(CLI::ExistingFile);
  app.add_option("-o,--output", g.output, "Write results here instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // convert
  auto* convert = app.add_subcommand("convert", "XML system description to incidence JSON, canonical XML or DOT");
  std::string convert_in, convert_emit = "incidence";
  convert->add_option("model", convert_in, "System XML")->required()->check(CLI::ExistingFile);
  convert->add_option("--emit", convert_emit, "What to write")->check(CLI::IsMember({"incidence", "xml", "dot"}));

  // leontief
  auto* leontief = app.add_subcommand("leontief", "Total output and factor use of a square economy");
  std::string leo_json, leo_a, leo_f, leo_y;
  bool leo_inverse = false;
  leontief->add_option("input", leo_json, "Economy JSON (hfgt-eio)")->check(CLI::ExistingFile);
  leontief->add_option("--a", leo_a, "Technical coefficients CSV")->check(CLI::ExistingFile);
  leontief->add_option("--f", leo_f, "Factor requirements CSV")->check(CLI::ExistingFile);
  leontief->add_option("--y", leo_y, "Final demand CSV (one row or column)")->check(CLI::ExistingFile);
  leontief->add_flag("--inverse", leo_inverse, "Write the Leontief inverse as CSV instead");

  // rcot
  auto* rcot = app.add_subcommand("rcot", "Rectangular choice-of-technology LP");
  std::string rcot_in, rcot_model, rcot_scenario, rcot_dump;
  rcot->add_option("input", rcot_in, "RCOT instance JSON (hfgt-rcot)")->check(CLI::ExistingFile);
  rcot->add_option("--model", rcot_model, "System XML (with --scenario, instead of an instance file)")
      ->check(CLI::ExistingFile);
  rcot->add_option("--scenario", rcot_scenario, "Scenario JSON")->check(CLI::ExistingFile);
  rcot->add_option("--dump-lp", rcot_dump, "Write the assembled LP as text");

  // hfnmcf-static
  auto* stat = app.add_subcommand("hfnmcf-static", "Static network minimum cost flow: min cost.U s.t. M U >= C");
  std::string st_model, st_scenario, st_balance, st_dump;
  stat->add_option("model", st_model, "System XML")->required()->check(CLI::ExistingFile);
  stat->add_option("scenario", st_scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  stat->add_option("--balance", st_balance, "Override the scenario's balance mode")
      ->check(CLI::IsMember({"inequality", "equality"}));
  stat->add_option("--dump-lp", st_dump, "Write the assembled LP as text");

  // hfnmcf-full
  auto* full = app.add_subcommand("hfnmcf-full", "Discrete-time network minimum cost flow over markings and firings");
  std::string fu_model, fu_scenario, fu_dump;
  full->add_option("model", fu_model, "System XML")->required()->check(CLI::ExistingFile);
  full->add_option("scenario", fu_scenario, "Scenario JSON with a 'full' section")->required()->check(CLI::ExistingFile);
  full->add_option("--dump-lp", fu_dump, "Write the assembled LP as text");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Replay a firing schedule through the engineering system net");
  std::string sim_model, sim_schedule, sim_scenario;
  double sim_dt = 1.0;
  sim->add_option("model", sim_model, "System XML")->required()->check(CLI::ExistingFile);
  sim->add_option("schedule", sim_schedule, "CSV with K rows of input firings, one column per capability")
      ->required()
      ->check(CLI::ExistingFile);
  sim->add_option("--scenario", sim_scenario, "Scenario JSON; its 'full.initial' gives the initial marking")
      ->check(CLI::ExistingFile);
  sim->add_option("--dt", sim_dt, "Time step (ignored when the scenario sets one)");

  // chord
  auto* chord = app.add_subcommand("chord", "Long-format technical coefficients for chord diagrams");
  std::string chord_in;
  bool chord_nonzero = false;
  chord->add_option("input", chord_in, "RCOT instance JSON")->required()->check(CLI::ExistingFile);
  chord->add_flag("--nonzero", chord_nonzero, "Skip zero coefficients");

  // golden
  auto* golden = app.add_subcommand("golden", "Re-run a golden case and compare against its expected values");
  std::string golden_in, golden_pipeline = "both";
  golden->add_option("case", golden_in, "Golden case JSON")->required()->check(CLI::ExistingFile);
  golden->add_option("--pipeline", golden_pipeline, "Which pipeline to run")
      ->check(CLI::IsMember({"rcot", "hfnmcf-static", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    g.tol = g.tolerance_config.empty() ? default_tolerances() : load_tolerances(g.tolerance_config);

    if (*convert) {
      const SystemModel model = load_system_xml(convert_in);
      if (convert_emit == "xml") {
        emit(g, write_system_xml(model));
      } else if (convert_emit == "dot") {
        emit(g, to_dot(EngineeringSystemNet::from_model(model)));
      } else {
        emit(g, write_incidence_json(build_incidence(model)));
      }
      return kExitOk;
    }

    if (*leontief) {
      EioDocument doc;
      if (!leo_json.empty()) {
        if (!leo_a.empty() || !leo_f.empty() || !leo_y.empty()) throw InputError("give an economy JSON or CSV files, not both");
        doc = read_eio_json(read_text_file(leo_json));
      } else {
        if (leo_a.empty() || leo_y.empty()) throw InputError("leontief needs an economy JSON, or --a and --y");
        const LabeledMatrix a = read_matrix_csv(read_text_file(leo_a));
        doc.eio.a = a.values;
        doc.eio.labels = a.col_labels;
        if (!leo_f.empty()) {
          const LabeledMatrix f = read_matrix_csv(read_text_file(leo_f));
          doc.eio.f = f.values;
          doc.eio.factor_labels = f.row_labels;
        } else {
          doc.eio.f = Matrix(0, a.values.cols());
        }
        doc.y = read_vector_csv(leo_y);
      }
      if (leo_inverse) {
        emit(g, write_matrix_csv({leontief_inverse(doc.eio.a, g.tol), doc.eio.labels, doc.eio.labels}));
        return kExitOk;
      }
      const LeontiefSolution sol = solve(doc.eio, doc.y, g.tol);
      if (!sol.nonnegative) std::cerr << "hfgt: warning: some outputs are negative beyond tolerance\n";
      emit(g, g.format == "json" ? leontief_results_json(sol, doc.eio) : leontief_csv(sol, doc.eio));
      return kExitOk;
    }

    if (*rcot) {
      RcotInstance inst;
      if (!rcot_in.empty()) {
        if (!rcot_model.empty() || !rcot_scenario.empty()) throw InputError("give an instance file or --model/--scenario, not both");
        inst = read_rcot_json(read_text_file(rcot_in));
      } else {
        if (rcot_model.empty() || rcot_scenario.empty()) throw InputError("rcot needs an instance file, or --model and --scenario");
        inst = rcot_from_model(load_system_xml(rcot_model), parse_scenario_json(read_text_file(rcot_scenario)));
      }
      const LinearProgram lp = build_rcot_lp(inst);
      maybe_dump(rcot_dump, lp);
      return emit_rcot(g, solve_rcot(inst, g.tol), lp);
    }

    if (*stat) {
      const SystemModel model = load_system_xml(st_model);
      Scenario scenario = parse_scenario_json(read_text_file(st_scenario));
      if (!st_balance.empty()) scenario.balance = st_balance == "equality" ? BalanceMode::Equality : BalanceMode::Inequality;
      const StaticEioReduction red = static_from_scenario(model, scenario);
      const LinearProgram lp = static_lp(red, scenario.balance);
      maybe_dump(st_dump, lp);
      return emit_rcot(g, solve_static(red, scenario.balance, g.tol), lp);
    }

    if (*full) {
      const SystemModel model = load_system_xml(fu_model);
      const HfnmcfProblem problem = full_from_scenario(model, parse_scenario_json(read_text_file(fu_scenario)));
      maybe_dump(fu_dump, build_full(problem));
      const HfnmcfSolution sol = solve_full(problem, g.tol);
      if (sol.status == LpStatus::Optimal) {
        emit(g, g.format == "json" ? full_json(sol, problem)
                                   : trajectory_csv(sol.markings, sol.u_minus, sol.u_plus, problem.net.incidence));
      } else if (g.format == "json") {
        emit(g, full_json(sol, problem));
      }
      if (!sol.conflicting_rows.empty()) {
        std::cerr << "hfgt: these equality constraints cannot hold together:\n";
        for (const auto& r : sol.conflicting_rows) std::cerr << "  " << r << "\n";
      }
      return report_status(sol.status);
    }

    if (*sim) {
      const SystemModel model = load_system_xml(sim_model);
      double dt = sim_dt;
      Marking initial;
      std::optional<Scenario> scenario;
      if (!sim_scenario.empty()) {
        scenario = parse_scenario_json(read_text_file(sim_scenario));
        if (scenario->full) dt = scenario->full->dt;
      }
      const EngineeringSystemNet net = EngineeringSystemNet::from_model(model, dt);
      initial = net.zero_marking();
      if (scenario && scenario->full) {
        const HfnmcfProblem p = full_from_scenario(model, *scenario);
        initial.q_b = p.initial_b;
        initial.q_e = p.initial_e;
      }
      const Matrix schedule = read_matrix_csv(read_text_file(sim_schedule)).values;
      const Trajectory t = simulate(net, initial, schedule);
      for (const auto& d : t.dropped) {
        std::cerr << "hfgt: warning: firing of " << format_number(d.amount) << " on '"
                  << net.incidence.capabilities[static_cast<std::size_t>(d.transition)] << "' at step " << d.step
                  << " completes past the horizon and was dropped\n";
      }
      emit(g, trajectory_csv(t.markings, t.u_minus, t.u_plus, net.incidence));
      return kExitOk;
    }

    if (*chord) {
      const RcotInstance inst = read_rcot_json(read_text_file(chord_in));
      emit(g, emit_chord_csv(inst.a_star, inst.sector_labels, inst.tech_labels, chord_nonzero));
      return kExitOk;
    }

    if (*golden) {
      const GoldenCase c = load_golden(golden_in);
      std::string text;
      bool ok = true;
      for (const auto p : {GoldenPipeline::HfnmcfStatic, GoldenPipeline::Rcot}) {
        if (golden_pipeline != "both" && golden_pipeline != to_string(p)) continue;
        const GoldenReport r = run_golden(c, p, g.tol);
        ok = ok && r.passed();
        text += r.to_text();
      }
      emit(g, text);
      return ok ? kExitOk : kExitGoldenMismatch;
    }
  } catch (const NumericError& e) {
    std::cerr << "hfgt: numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const InputError& e) {
    std::cerr << "hfgt: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
