// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hecke_bose/hecke_bose.hpp"

namespace hecke_bose::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json complex_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Json point_json(const LatticePoint& x) { return Json(x.to_vector()); }

inline Json params_json(const Params& p) {
  return Json{{"k", p.k()}, {"L", p.L()}, {"alpha", to_string(p.alpha)}, {"beta", to_string(p.beta)}};
}

inline Json report_json(const Report& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(Json{{"x", point_json(f.x)}, {"detail", f.detail}});
  return Json{{"schema", kSchemaVersion},
              {"suite", r.suite},
              {"params", params_json(r.params)},
              {"window", r.window},
              {"seed", r.seed},
              {"checks_run", r.checks_run},
              {"failures", failures},
              {"elapsed_ms", r.elapsed_ms}};
}

/// Reads spectral parameters from a bethe report ("roots": [[re, im], ...]).
inline std::vector<Complex> roots_from_json(const Json& j) {
  if (!j.contains("roots") || !j["roots"].is_array()) throw std::invalid_argument("root file has no \"roots\" array");
  std::vector<Complex> out;
  for (const auto& z : j["roots"]) {
    if (!z.is_array() || z.size() != 2) throw std::invalid_argument("root entries must be [re, im] pairs");
    out.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  return out;
}

}  // namespace hecke_bose::cli
