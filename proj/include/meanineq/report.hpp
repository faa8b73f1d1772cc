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

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <json.hpp>

#include "meanineq/measure.hpp"

namespace meanineq {

/// Which way the checked inequality points.
enum class Direction { Leq, Geq };

/// Equality/violation verdicts are judged relative to the magnitude of the
/// two sides, never below 1 so that near-zero comparisons stay absolute.
inline double verdict_scale(double lhs, double rhs) {
  return std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}

/// Outcome of one inequality check.
///
/// The gap is oriented so that "holds" is uniformly gap >= -tol*scale:
/// rhs - lhs for a "<=" inequality, lhs - rhs for a ">=" one.  The witness
/// holds the serialized inputs so any report can be replayed.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool holds = false;
  bool is_equality = false;
  double tolerance = kDefaultTolerance;
  nlohmann::json witness;

  nlohmann::json to_json() const {
    return nlohmann::json{{"name", name},
                          {"lhs", lhs},
                          {"rhs", rhs},
                          {"gap", gap},
                          {"holds", holds},
                          {"is_equality", is_equality},
                          {"tolerance", tolerance},
                          {"witness", witness}};
  }
};

inline InequalityReport make_report(std::string name, double lhs, double rhs,
                                    Direction dir, double tolerance,
                                    nlohmann::json witness) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = dir == Direction::Leq ? rhs - lhs : lhs - rhs;
  const double s = verdict_scale(lhs, rhs);
  r.holds = r.gap >= -tolerance * s;
  r.is_equality = std::fabs(r.gap) <= tolerance * s;
  r.tolerance = tolerance;
  r.witness = std::move(witness);
  return r;
}

}  // namespace meanineq
