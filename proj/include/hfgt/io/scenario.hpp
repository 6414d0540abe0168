#pragma once

// Scenario documents ("hfgt-scenario", version 1) attach economic data to a
// system model. Places are named "operand@buffer"; a bare operand id is
// accepted when the model has a single buffer.
//
// Places listed under "availability" are factors; every other place is a
// product whose demand defaults to 0. Factors must come after products in
// the incidence row order.

#include "hfgt/core.hpp"
#include "hfgt/hfnmcf.hpp"
#include "hfgt/incidence.hpp"
#include "hfgt/rcot.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hfgt {

inline constexpr int kScenarioSchemaVersion = 1;

struct FiringPin {
  std::string capability;
  bool output = false;          // pins U+ when true, U- otherwise
  std::vector<double> values;   // one per step
};

struct PlaceBound {
  double lower = -kInfinity;
  double upper = kInfinity;
};

struct FullScenario {
  Index horizon = 1;
  double dt = 1.0;
  std::map<std::string, double> initial_places;       // unlisted places start at 0
  std::map<std::string, double> initial_transitions;
  std::map<std::string, double> final_places;         // only listed places are fixed
  std::map<std::string, double> final_transitions;
  std::optional<std::map<std::string, double>> firing_cost;  // per capability, on U- at every step
  std::map<std::string, PlaceBound> place_bounds;     // applied at steps 1..K
  std::vector<FiringPin> pins;
};

struct Scenario {
  std::map<std::string, double> demand;
  std::map<std::string, double> availability;
  std::map<std::string, double> prices;
  BalanceMode balance = BalanceMode::Inequality;
  std::optional<FullScenario> full;
};

Scenario parse_scenario_json(std::string_view text);
std::string write_scenario_json(const Scenario& scenario);

/// Resolves "operand@buffer" or a bare operand id to an incidence row.
Index resolve_place(const IncidenceMatrices& inc, const std::string& key);

/// y, f, pi and F* (the M- rows of the factor places) aligned with the rows.
struct StaticInputs {
  Vector y;
  Vector f;
  Vector pi;
  Matrix f_star;
};

StaticInputs static_inputs(const IncidenceMatrices& inc, const Scenario& scenario);

StaticEioReduction static_from_scenario(const SystemModel& model, const Scenario& scenario);

/// I* and A* are the product rows of M+ and M-, F* the factor rows of M-.
RcotInstance rcot_from_model(const SystemModel& model, const Scenario& scenario);

/// Without "firing_cost" each U-[k] is charged pi' F* dt, matching the static
/// objective.
HfnmcfProblem full_from_scenario(const SystemModel& model, const Scenario& scenario);

}  // namespace hfgt
