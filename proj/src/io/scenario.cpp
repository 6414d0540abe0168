#include "hfgt/io/scenario.hpp"

#include "hfgt/error.hpp"
#include "hfgt/io/json_util.hpp"

#include <algorithm>

namespace hfgt {

using json = jsonio::json;

namespace {

std::map<std::string, double> number_map(const json& doc, const char* key) {
  std::map<std::string, double> out;
  if (!doc.contains(key)) return out;
  const json& obj = doc.at(key);
  if (!obj.is_object()) throw InputError(std::string("'") + key + "' must be an object of numbers");
  for (const auto& [k, v] : obj.items()) out[k] = jsonio::number(v, key);
  return out;
}

json map_json(const std::map<std::string, double>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

double bound_value(const json& v, const char* key, double fallback) {
  if (v.is_null()) return fallback;
  return jsonio::number(v, key);
}

FullScenario parse_full(const json& doc) {
  if (!doc.is_object()) throw InputError("'full' must be an object");
  FullScenario full;
  const json& h = jsonio::require(doc, "horizon");
  if (!h.is_number_integer() || h.get<long long>() < 1) throw InputError("'horizon' must be an integer >= 1");
  full.horizon = h.get<Index>();
  if (doc.contains("dt")) full.dt = jsonio::number(doc.at("dt"), "dt");
  if (!(full.dt > 0.0)) throw InputError("'dt' must be positive");
  for (const char* side : {"initial", "final"}) {
    if (!doc.contains(side)) continue;
    const json& part = doc.at(side);
    if (!part.is_object()) throw InputError(std::string("'") + side + "' must be an object");
    for (const auto& [k, v] : part.items()) {
      if (k != "places" && k != "transitions") throw InputError(std::string("unknown key '") + k + "' in '" + side + "'");
    }
    const bool initial = std::string(side) == "initial";
    (initial ? full.initial_places : full.final_places) = number_map(part, "places");
    (initial ? full.initial_transitions : full.final_transitions) = number_map(part, "transitions");
  }
  if (doc.contains("firing_cost")) full.firing_cost = number_map(doc, "firing_cost");
  if (doc.contains("place_bounds")) {
    const json& pb = doc.at("place_bounds");
    if (!pb.is_object()) throw InputError("'place_bounds' must be an object");
    for (const auto& [k, v] : pb.items()) {
      if (!v.is_object()) throw InputError("place bound for '" + k + "' must be {\"lower\", \"upper\"}");
      PlaceBound b;
      if (v.contains("lower")) b.lower = bound_value(v.at("lower"), "lower", -kInfinity);
      if (v.contains("upper")) b.upper = bound_value(v.at("upper"), "upper", kInfinity);
      full.place_bounds[k] = b;
    }
  }
  if (doc.contains("pins")) {
    const json& pins = doc.at("pins");
    if (!pins.is_array()) throw InputError("'pins' must be an array");
    for (const auto& p : pins) {
      FiringPin pin;
      pin.capability = jsonio::string(p, "capability", "");
      if (pin.capability.empty()) throw InputError("pin needs a 'capability'");
      const std::string firing = jsonio::string(p, "firing", "input");
      if (firing != "input" && firing != "output") throw InputError("pin 'firing' must be \"input\" or \"output\"");
      pin.output = firing == "output";
      const Vector values = jsonio::vector(p, "values");
      pin.values.assign(values.data(), values.data() + values.size());
      full.pins.push_back(std::move(pin));
    }
  }
  for (const auto& [k, v] : doc.items()) {
    static const std::vector<std::string> known = {"horizon", "dt",           "initial", "final",
                                                   "firing_cost", "place_bounds", "pins"};
    if (std::find(known.begin(), known.end(), k) == known.end()) throw InputError("unknown key '" + k + "' in 'full'");
  }
  return full;
}

Index capability_col(const IncidenceMatrices& inc, const std::string& id) {
  const auto col = inc.col_of(id);
  if (!col) throw InputError("unknown capability '" + id + "'");
  return *col;
}

Labels capability_names(const SystemModel& model) {
  Labels out;
  for (const auto& c : model.capabilities) out.push_back(c.name.empty() ? c.id : c.name);
  return out;
}

}  // namespace

Scenario parse_scenario_json(std::string_view text) {
  const json doc = jsonio::parse(text);
  jsonio::check_schema(doc, "hfgt-scenario", kScenarioSchemaVersion);
  for (const auto& [k, v] : doc.items()) {
    static const std::vector<std::string> known = {"schema", "version", "demand", "availability",
                                                   "prices", "balance", "full", "description"};
    if (std::find(known.begin(), known.end(), k) == known.end()) throw InputError("unknown scenario key '" + k + "'");
  }
  Scenario s;
  s.demand = number_map(doc, "demand");
  s.availability = number_map(doc, "availability");
  s.prices = number_map(doc, "prices");
  const std::string balance = jsonio::string(doc, "balance", "inequality");
  if (balance == "inequality") {
    s.balance = BalanceMode::Inequality;
  } else if (balance == "equality") {
    s.balance = BalanceMode::Equality;
  } else {
    throw InputError("'balance' must be \"inequality\" or \"equality\"");
  }
  if (doc.contains("full")) s.full = parse_full(doc.at("full"));
  return s;
}

std::string write_scenario_json(const Scenario& s) {
  json doc;
  doc["schema"] = "hfgt-scenario";
  doc["version"] = kScenarioSchemaVersion;
  doc["demand"] = map_json(s.demand);
  doc["availability"] = map_json(s.availability);
  doc["prices"] = map_json(s.prices);
  doc["balance"] = s.balance == BalanceMode::Inequality ? "inequality" : "equality";
  if (s.full) {
    const auto& f = *s.full;
    json full;
    full["horizon"] = f.horizon;
    full["dt"] = f.dt;
    full["initial"] = {{"places", map_json(f.initial_places)}, {"transitions", map_json(f.initial_transitions)}};
    full["final"] = {{"places", map_json(f.final_places)}, {"transitions", map_json(f.final_transitions)}};
    if (f.firing_cost) full["firing_cost"] = map_json(*f.firing_cost);
    json pb = json::object();
    for (const auto& [k, b] : f.place_bounds) {
      json entry = json::object();
      if (b.lower > -kInfinity) entry["lower"] = b.lower;
      if (b.upper < kInfinity) entry["upper"] = b.upper;
      pb[k] = entry;
    }
    full["place_bounds"] = pb;
    json pins = json::array();
    for (const auto& p : f.pins) {
      pins.push_back({{"capability", p.capability}, {"firing", p.output ? "output" : "input"}, {"values", p.values}});
    }
    full["pins"] = pins;
    doc["full"] = full;
  }
  return doc.dump(2) + "\n";
}

Index resolve_place(const IncidenceMatrices& inc, const std::string& key) {
  const auto at = key.find('@');
  if (at != std::string::npos) {
    const auto row = inc.row_of(key.substr(0, at), key.substr(at + 1));
    if (!row) throw InputError("unknown place '" + key + "'");
    return *row;
  }
  if (inc.buffers.size() != 1) throw InputError("place '" + key + "' needs an explicit @buffer (model has several buffers)");
  const auto row = inc.row_of(key, inc.buffers.front());
  if (!row) throw InputError("unknown operand '" + key + "'");
  return *row;
}

StaticInputs static_inputs(const IncidenceMatrices& inc, const Scenario& s) {
  const Index rows = inc.rows();
  std::vector<int> factor(static_cast<std::size_t>(rows), 0);
  Vector avail = Vector::Zero(rows), price = Vector::Zero(rows), demand = Vector::Zero(rows);
  for (const auto& [k, v] : s.availability) {
    const Index r = resolve_place(inc, k);
    factor[static_cast<std::size_t>(r)] = 1;
    avail(r) = v;
  }
  for (const auto& [k, v] : s.prices) {
    const Index r = resolve_place(inc, k);
    if (!factor[static_cast<std::size_t>(r)]) throw InputError("price given for '" + k + "', which has no availability");
    price(r) = v;
  }
  for (const auto& [k, _] : s.availability) {
    if (!s.prices.count(k)) throw InputError("factor '" + k + "' has no price");
  }
  for (const auto& [k, v] : s.demand) {
    const Index r = resolve_place(inc, k);
    if (factor[static_cast<std::size_t>(r)]) throw InputError("'" + k + "' is listed both as demand and availability");
    demand(r) = v;
  }
  Index products = 0;
  while (products < rows && !factor[static_cast<std::size_t>(products)]) ++products;
  for (Index r = products; r < rows; ++r) {
    if (!factor[static_cast<std::size_t>(r)]) {
      throw InputError("factor places must come after all product places in the row order ('" + inc.place_label(r) +
                       "' follows a factor)");
    }
  }
  StaticInputs out;
  out.y = demand.head(products);
  out.f = avail.tail(rows - products);
  out.pi = price.tail(rows - products);
  out.f_star = inc.m_minus.bottomRows(rows - products);
  return out;
}

StaticEioReduction static_from_scenario(const SystemModel& model, const Scenario& s) {
  const IncidenceMatrices inc = build_incidence(model);
  const StaticInputs in = static_inputs(inc, s);
  StaticEioReduction red = build_static(model, in.y, in.f, in.pi, in.f_star);
  red.capability_labels = capability_names(model);
  return red;
}

RcotInstance rcot_from_model(const SystemModel& model, const Scenario& s) {
  const IncidenceMatrices inc = build_incidence(model);
  const StaticInputs in = static_inputs(inc, s);
  const Index n = in.y.size();
  RcotInstance inst;
  inst.i_star = inc.m_plus.topRows(n);
  inst.a_star = inc.m_minus.topRows(n);
  inst.f_star = in.f_star;
  inst.y = in.y;
  inst.f = in.f;
  inst.pi = in.pi;
  inst.tech_labels = capability_names(model);
  for (Index r = 0; r < inc.rows(); ++r) {
    (r < n ? inst.sector_labels : inst.factor_labels).push_back(inc.place(r).first);
  }
  if ((inc.m_plus.bottomRows(inc.rows() - n).array() != 0.0).any()) {
    throw InputError("a capability produces a factor; the model has no RCOT form");
  }
  inst.check();
  return inst;
}

HfnmcfProblem full_from_scenario(const SystemModel& model, const Scenario& s) {
  if (!s.full) throw InputError("scenario has no 'full' section");
  const FullScenario& f = *s.full;
  HfnmcfProblem p;
  p.net = EngineeringSystemNet::from_model(model, f.dt);
  p.horizon = f.horizon;
  const auto& inc = p.net.incidence;
  const HfnmcfLayout l = p.layout();
  const Index K = l.horizon;

  p.initial_b = Vector::Zero(l.places);
  for (const auto& [k, v] : f.initial_places) p.initial_b(resolve_place(inc, k)) = v;
  p.initial_e = Vector::Zero(l.transitions);
  for (const auto& [k, v] : f.initial_transitions) p.initial_e(capability_col(inc, k)) = v;

  for (const auto& [k, v] : f.final_places) {
    LinearRow row{Vector::Zero(l.total()), Sense::Equal, v, "final_b[" + k + "]"};
    row.coeffs(l.q_b(K, resolve_place(inc, k))) = 1.0;
    p.extra_rows.push_back(std::move(row));
  }
  for (const auto& [k, v] : f.final_transitions) {
    LinearRow row{Vector::Zero(l.total()), Sense::Equal, v, "final_e[" + k + "]"};
    row.coeffs(l.q_e(K, capability_col(inc, k))) = 1.0;
    p.extra_rows.push_back(std::move(row));
  }

  Vector per_firing = Vector::Zero(l.transitions);
  if (f.firing_cost) {
    for (const auto& [k, v] : *f.firing_cost) per_firing(capability_col(inc, k)) = v;
  } else if (!s.availability.empty()) {
    const StaticInputs in = static_inputs(inc, s);
    per_firing = in.f_star.transpose() * in.pi;
  }
  p.linear_cost = Vector::Zero(l.total());
  for (Index k = 0; k < K; ++k) {
    for (Index e = 0; e < l.transitions; ++e) p.linear_cost(l.u_minus(k, e)) = per_firing(e) * f.dt;
  }

  for (const auto& [k, b] : f.place_bounds) {
    const Index r = resolve_place(inc, k);
    for (Index step = 1; step <= K; ++step) p.bounds.push_back({l.q_b(step, r), b.lower, b.upper});
  }

  for (const bool output : {false, true}) {
    std::vector<const FiringPin*> chosen;
    for (const auto& pin : f.pins) {
      if (pin.output == output) chosen.push_back(&pin);
    }
    if (chosen.empty()) continue;
    FiringPins pins{Matrix::Zero(static_cast<Index>(chosen.size()), l.transitions),
                    Matrix::Zero(static_cast<Index>(chosen.size()), K)};
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      if (static_cast<Index>(chosen[i]->values.size()) != K) {
        throw InputError("pin on '" + chosen[i]->capability + "' needs one value per step (" + std::to_string(K) + ")");
      }
      pins.d(static_cast<Index>(i), capability_col(inc, chosen[i]->capability)) = 1.0;
      for (Index k = 0; k < K; ++k) pins.c(static_cast<Index>(i), k) = chosen[i]->values[static_cast<std::size_t>(k)];
    }
    (output ? p.pins_plus : p.pins_minus) = std::move(pins);
  }
  return p;
}

}  // namespace hfgt
