// Copyright 2026 the meanineq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "meanineq/analysis.hpp"
#include "meanineq/errors.hpp"
#include "meanineq/measure.hpp"
#include "meanineq/search.hpp"

namespace meanineq {

// JSON schemas used by the CLI and embedded in report witnesses:
//   MeasureSpace  {"weights":[...]}            (+ "label" when set)
//   StepFunction  {"space":"<label>","values":[...]}

inline nlohmann::json to_json(const MeasureSpace& space) {
  nlohmann::json j{{"weights", space.weights()}};
  if (!space.label().empty()) j["label"] = space.label();
  return j;
}

inline nlohmann::json to_json(const StepFunction& f) {
  return nlohmann::json{{"space", f.space().label()},
                        {"values", f.values()}};
}

inline MeasureSpace space_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("weights")) {
    throw validation_error("space JSON must be {\"weights\":[...]}");
  }
  return MeasureSpace(j.at("weights").get<std::vector<double>>(),
                      j.value("label", std::string{}));
}

/// Accepts either a bare array or {"values":[...]}.
inline std::vector<double> values_from_json(const nlohmann::json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_object() && j.contains("values")) {
    return j.at("values").get<std::vector<double>>();
  }
  throw validation_error(
      "function JSON must be an array or {\"values\":[...]}");
}

inline nlohmann::json to_json(const ConcavityVerdict& v) {
  nlohmann::json j{{"concave_on_grid", v.concave_on_grid},
                   {"worst_violation", v.worst_violation},
                   {"s_range", {v.s_range.lo, v.s_range.hi}},
                   {"t_range", {v.t_range.lo, v.t_range.hi}},
                   {"steps", v.steps},
                   {"tolerance", v.tolerance}};
  if (v.has_witness) {
    j["violating_triple"] = {{"point1", v.point1},
                             {"point2", v.point2},
                             {"midpoint_defect", v.midpoint_defect}};
  }
  return j;
}

inline nlohmann::json to_json(const PowerFit& fit, const std::string& spec) {
  return nlohmann::json{{"c", fit.c},
                        {"p", fit.p},
                        {"max_relative_residual", fit.max_relative_residual},
                        {"generator", spec}};
}

inline nlohmann::json to_json(const OptimalityResult& r) {
  return nlohmann::json{{"best_exponent", r.best_exponent},
                        {"min_gap", r.min_gap},
                        {"searched_family", r.searched_family},
                        {"achieved_equality", r.achieved_equality}};
}

inline nlohmann::json to_json(const HardyReport& r) {
  return nlohmann::json{{"passes", r.passes},
                        {"indeterminate", r.indeterminate},
                        {"positivity_ok", r.positivity_ok},
                        {"worst_defect", r.worst_defect},
                        {"worst_point", r.worst_point},
                        {"detail", r.detail}};
}

inline nlohmann::json to_json(const StrictGapResult& r) {
  return nlohmann::json{{"lower_functional", r.lower_functional},
                        {"upper_functional", r.upper_functional},
                        {"margin", r.margin},
                        {"strict", r.strict}};
}

}  // namespace meanineq
