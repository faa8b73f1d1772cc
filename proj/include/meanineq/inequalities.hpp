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

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "meanineq/errors.hpp"
#include "meanineq/generator.hpp"
#include "meanineq/measure.hpp"
#include "meanineq/report.hpp"

namespace meanineq {

// Every checker computes both sides of one inequality exactly as displayed
// and wraps them in an InequalityReport whose witness replays the inputs.
// All functions are pure; batch checks may run entries concurrently.

namespace detail {

inline nlohmann::json pair_witness(const GeneratorPair& pair) {
  return nlohmann::json{{"phi", pair.phi.spec_string()},
                        {"psi", pair.psi.spec_string()}};
}

}  // namespace detail

/// integral(f*g) <= P_phi(f) * P_psi(g).
inline InequalityReport holder_report(const GeneratorPair& pair,
                                      const StepFunction& f,
                                      const StepFunction& g,
                                      const MeasureSpace& mu,
                                      double tolerance = kDefaultTolerance) {
  const double lhs = integrate(pointwise_product(f, g), mu);
  const double rhs =
      p_functional(pair.phi, f, mu) * p_functional(pair.psi, g, mu);
  nlohmann::json witness = detail::pair_witness(pair);
  witness["mu"] = mu.weights();
  witness["f"] = f.values();
  witness["g"] = g.values();
  return make_report("holder", lhs, rhs, Direction::Leq, tolerance,
                     std::move(witness));
}

/// integral(f*g) >= P_phi(f * 1_supp(g)) * P_psi(g restricted to supp(g)),
/// for phi = power with exponent in (0,1) and psi = power with a negative
/// exponent.  Atoms where g vanishes are excluded before psi ever runs.
inline InequalityReport reversed_holder_report(
    const GeneratorPair& pair, const StepFunction& f, const StepFunction& g,
    const MeasureSpace& mu, double tolerance = kDefaultTolerance) {
  if (!pair.phi.is_power() || pair.phi.exponent() <= 0.0 ||
      pair.phi.exponent() >= 1.0) {
    throw validation_error(
        "reversed_holder_report: phi must be a power with exponent in (0,1)");
  }
  if (!pair.psi.is_power() || pair.psi.exponent() >= 0.0) {
    throw validation_error(
        "reversed_holder_report: psi must be a power with negative exponent");
  }
  require_same_space(f, g, "reversed_holder_report");
  require_same_space(f, mu, "reversed_holder_report");
  if (is_zero(g)) {
    throw degenerate_error("reversed_holder_report: g vanishes identically");
  }

  const double lhs = integrate(pointwise_product(f, g), mu);

  std::vector<double> masked_f(f.size());
  std::vector<double> supp_weights;
  std::vector<double> supp_g;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.value(i) > 0.0) {
      masked_f[i] = f.value(i);
      supp_weights.push_back(mu.weight(i));
      supp_g.push_back(g.value(i));
    }
  }
  const MeasureSpace supp_space(std::move(supp_weights));
  const StepFunction g_on_supp(supp_space, std::move(supp_g));
  const double rhs =
      p_functional(pair.phi, StepFunction(mu, std::move(masked_f)), mu) *
      p_functional(pair.psi, g_on_supp, supp_space);

  nlohmann::json witness = detail::pair_witness(pair);
  witness["mu"] = mu.weights();
  witness["f"] = f.values();
  witness["g"] = g.values();
  return make_report("reversed-holder", lhs, rhs, Direction::Geq, tolerance,
                     std::move(witness));
}

namespace detail {

inline void require_product_of(const StepFunction& F, const MeasureSpace& mu,
                               const MeasureSpace& nu, const char* what) {
  if (!F.space().is_product() || !same_space(F.space().factor_x(), mu) ||
      !same_space(F.space().factor_y(), nu)) {
    throw validation_error(std::string(what) +
                           ": F must live on the product of mu and nu");
  }
}

}  // namespace detail

/// { integral_X ( integral_Y F dnu )^p dmu }^{1/p}
///     <= integral_Y ( integral_X F^p dmu )^{1/p} dnu.
/// Asserted for p >= 1; smaller p is still computed and simply reported.
inline InequalityReport gmi_report(double p, const StepFunction& F,
                                   const MeasureSpace& mu,
                                   const MeasureSpace& nu,
                                   double tolerance = kDefaultTolerance) {
  if (!std::isfinite(p) || p == 0.0) {
    throw validation_error("gmi_report: p must be finite and nonzero");
  }
  detail::require_product_of(F, mu, nu, "gmi_report");
  const StepFunction inner = partial_integral_y(F, nu);
  const double lhs =
      std::pow(integrate(pointwise_power(inner, p), mu), 1.0 / p);
  double rhs = 0.0;
  for (std::size_t y = 0; y < nu.atom_count(); ++y) {
    if (nu.weight(y) == 0.0) continue;
    rhs += nu.weight(y) *
           std::pow(integrate(pointwise_power(slice_y(F, y), p), mu), 1.0 / p);
  }
  nlohmann::json witness{{"p", p},
                         {"mu", mu.weights()},
                         {"nu", nu.weights()},
                         {"F", F.values()}};
  return make_report("gmi", lhs, rhs, Direction::Leq, tolerance,
                     std::move(witness));
}

/// psi{ integral_X phi( integral_Y F dnu ) dmu }
///     <= integral_Y psi( integral_X phi(F) dmu ) dnu,
/// or the reversed direction when requested.
inline InequalityReport generalized_minkowski_report(
    const GeneratorPair& pair, const StepFunction& F, const MeasureSpace& mu,
    const MeasureSpace& nu, Direction direction = Direction::Leq,
    double tolerance = kDefaultTolerance) {
  detail::require_product_of(F, mu, nu, "generalized_minkowski_report");
  const StepFunction inner = partial_integral_y(F, nu);
  const double lhs =
      pair.psi.eval(integrate(compose(pair.phi, inner), mu));
  double rhs = 0.0;
  for (std::size_t y = 0; y < nu.atom_count(); ++y) {
    if (nu.weight(y) == 0.0) continue;
    rhs += nu.weight(y) *
           pair.psi.eval(integrate(compose(pair.phi, slice_y(F, y)), mu));
  }
  nlohmann::json witness = detail::pair_witness(pair);
  witness["mu"] = mu.weights();
  witness["nu"] = nu.weights();
  witness["F"] = F.values();
  witness["direction"] = direction == Direction::Leq ? "forward" : "reversed";
  return make_report("genmink", lhs, rhs, direction, tolerance,
                     std::move(witness));
}

/// P_phi(f + g) <= P_phi(f) + P_phi(g).
inline InequalityReport minkowski_triangle_report(
    const Generator& gen, const StepFunction& f, const StepFunction& g,
    const MeasureSpace& mu, double tolerance = kDefaultTolerance) {
  const double lhs = p_functional(gen, pointwise_sum(f, g), mu);
  const double rhs = p_functional(gen, f, mu) + p_functional(gen, g, mu);
  nlohmann::json witness{{"phi", gen.spec_string()},
                         {"mu", mu.weights()},
                         {"f", f.values()},
                         {"g", g.values()}};
  return make_report("minkowski", lhs, rhs, Direction::Leq, tolerance,
                     std::move(witness));
}

/// Mulholland subadditivity for one quadruple:
/// boxplus(t+v, u+w) <= boxplus(t, u) + boxplus(v, w).
inline InequalityReport mulholland_report(const Generator& gen, double t,
                                          double u, double v, double w,
                                          double tolerance = kDefaultTolerance) {
  for (double x : {t, u, v, w}) {
    if (!std::isfinite(x) || x < 0.0) {
      throw validation_error("mulholland: entries must be finite and >= 0");
    }
  }
  const double lhs = mulholland_sum(gen, t + v, u + w);
  const double rhs = mulholland_sum(gen, t, u) + mulholland_sum(gen, v, w);
  nlohmann::json witness{{"phi", gen.spec_string()},
                         {"quad", std::array<double, 4>{t, u, v, w}}};
  return make_report("mulholland", lhs, rhs, Direction::Leq, tolerance,
                     std::move(witness));
}

inline std::vector<InequalityReport> mulholland_subadditivity_check(
    const Generator& gen, std::span<const std::array<double, 4>> quadruples,
    double tolerance = kDefaultTolerance) {
  std::vector<InequalityReport> out;
  out.reserve(quadruples.size());
  for (const auto& q : quadruples) {
    out.push_back(mulholland_report(gen, q[0], q[1], q[2], q[3], tolerance));
  }
  return out;
}

/// M_phi((a+b)/2) <= (M_phi(a) + M_phi(b)) / 2.
inline InequalityReport quasi_mean_midpoint_report(
    const Generator& gen, std::span<const double> a, std::span<const double> b,
    std::span<const double> weights, double tolerance = kDefaultTolerance) {
  if (a.size() != b.size()) {
    throw validation_error("quasi_mean_midpoint: a and b length mismatch");
  }
  std::vector<double> mid(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) mid[j] = 0.5 * (a[j] + b[j]);
  const double lhs = quasi_mean(gen, mid, weights);
  const double rhs =
      0.5 * (quasi_mean(gen, a, weights) + quasi_mean(gen, b, weights));
  nlohmann::json witness{{"phi", gen.spec_string()},
                         {"a", std::vector<double>(a.begin(), a.end())},
                         {"b", std::vector<double>(b.begin(), b.end())},
                         {"weights", std::vector<double>(weights.begin(),
                                                         weights.end())}};
  return make_report("quasimean-midpoint", lhs, rhs, Direction::Leq, tolerance,
                     std::move(witness));
}

/// Two-block function on a 2x2 product: F(., y0) = (t, u), F(., y1) = (v, w),
/// with X atoms of weight b and Y atoms of weight c.
struct TwoBlock {
  StepFunction F;
  MeasureSpace mu;
  MeasureSpace nu;
};

inline TwoBlock build_two_block(double t, double u, double v, double w,
                                double b = 0.5, double c = 0.5) {
  for (double x : {t, u, v, w}) {
    if (!std::isfinite(x) || x < 0.0) {
      throw validation_error("build_two_block: entries must be finite and >= 0");
    }
  }
  if (!(b > 0.0 && b <= 1.0)) {
    throw validation_error("build_two_block: b must be in (0, 1]");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw validation_error("build_two_block: c must be > 0");
  }
  MeasureSpace mu({b, b}, "X2");
  MeasureSpace nu({c, c}, "Y2");
  StepFunction F(product_space(mu, nu), {t, v, u, w});
  return TwoBlock{std::move(F), std::move(mu), std::move(nu)};
}

}  // namespace meanineq
