#include "hfgt/config.hpp"

#include "hfgt/error.hpp"

#include <json.hpp>

#include <fstream>

namespace hfgt {

const Tolerances& default_tolerances() {
  static const Tolerances defaults{};
  return defaults;
}

Tolerances load_tolerances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open tolerance config '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("tolerance config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw InputError("tolerance config must be a JSON object");

  Tolerances t;
  auto set = [&](const char* key, auto& field) {
    if (!doc.contains(key)) return;
    try {
      doc.at(key).get_to(field);
    } catch (const nlohmann::json::exception&) {
      throw InputError(std::string("tolerance config: '") + key + "' has the wrong type");
    }
  };
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    static const char* known[] = {"spectral_tol", "spectral_max_iter", "productive_margin", "inverse_residual",
                                  "nonnegativity", "lp_feasibility", "lp_optimality", "lp_pivot", "lp_ratio_eps",
                                  "lp_refactor_period", "lp_max_iter", "cert_primal", "cert_dual",
                                  "cert_complementarity", "cert_gap"};
    bool found = false;
    for (const char* k : known) found = found || it.key() == k;
    if (!found) throw InputError("tolerance config: unknown key '" + it.key() + "'");
  }
  set("spectral_tol", t.spectral_tol);
  set("spectral_max_iter", t.spectral_max_iter);
  set("productive_margin", t.productive_margin);
  set("inverse_residual", t.inverse_residual);
  set("nonnegativity", t.nonnegativity);
  set("lp_feasibility", t.lp_feasibility);
  set("lp_optimality", t.lp_optimality);
  set("lp_pivot", t.lp_pivot);
  set("lp_ratio_eps", t.lp_ratio_eps);
  set("lp_refactor_period", t.lp_refactor_period);
  set("lp_max_iter", t.lp_max_iter);
  set("cert_primal", t.cert_primal);
  set("cert_dual", t.cert_dual);
  set("cert_complementarity", t.cert_complementarity);
  set("cert_gap", t.cert_gap);
  return t;
}

}  // namespace hfgt
