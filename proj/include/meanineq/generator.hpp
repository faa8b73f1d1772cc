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
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meanineq/errors.hpp"
#include "meanineq/measure.hpp"

namespace meanineq {

enum class GeneratorKind { Power, Expm1, Log1p, Tabulated };

namespace detail {
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace detail

/// Monotone generator phi : R+ -> R+ with phi(0) = 0.
///
/// Four kinds: power c*t^p, expm1, log1p, and tabulated (monotone piecewise
/// linear through knots starting at (0,0)).  Built-in kinds have range
/// [0, inf); tabulated generators raise range errors beyond their last knot
/// instead of extrapolating.  A power with negative exponent is the extended
/// path used by the reversed inequalities: it is decreasing, defined only on
/// t > 0, and evaluating it at 0 is a domain error.  Instances are immutable;
/// every operation here is pure and safe to call concurrently.
class Generator {
 public:
  static Generator power(double c, double p) {
    if (!std::isfinite(c) || c <= 0.0) {
      throw validation_error("power generator needs coefficient > 0");
    }
    if (!std::isfinite(p) || p == 0.0) {
      throw validation_error("power generator needs a nonzero exponent");
    }
    Generator g;
    g.kind_ = GeneratorKind::Power;
    g.coeff_ = c;
    g.exponent_ = p;
    return g;
  }

  static Generator expm1() {
    Generator g;
    g.kind_ = GeneratorKind::Expm1;
    return g;
  }

  static Generator log1p() {
    Generator g;
    g.kind_ = GeneratorKind::Log1p;
    return g;
  }

  static Generator tabulated(std::vector<std::array<double, 2>> knots,
                             std::string origin = "") {
    if (knots.size() < 2) {
      throw validation_error("tabulated generator needs at least two knots");
    }
    if (knots.front()[0] != 0.0 || knots.front()[1] != 0.0) {
      throw validation_error("tabulated generator must start at (0,0)");
    }
    for (std::size_t i = 0; i < knots.size(); ++i) {
      if (!std::isfinite(knots[i][0]) || !std::isfinite(knots[i][1])) {
        throw validation_error("tabulated knot " + std::to_string(i) +
                               " is not finite");
      }
      if (i > 0 && (knots[i][0] <= knots[i - 1][0] ||
                    knots[i][1] <= knots[i - 1][1])) {
        throw validation_error(
            "tabulated knots must be strictly increasing in both columns");
      }
    }
    Generator g;
    g.kind_ = GeneratorKind::Tabulated;
    g.knots_ = std::move(knots);
    g.origin_ = std::move(origin);
    return g;
  }

  /// CSV with two columns t,phi; strictly increasing; first row "0,0".
  static Generator tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open table file: " + path);
    std::vector<std::array<double, 2>> knots;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::istringstream ls(line);
      double t = 0.0, phi = 0.0;
      char comma = 0;
      if (!(ls >> t >> comma >> phi) || comma != ',') {
        throw validation_error("table " + path + " line " +
                               std::to_string(line_no) +
                               ": expected \"t,phi\"");
      }
      knots.push_back({t, phi});
    }
    return tabulated(std::move(knots), "table:" + path);
  }

  /// Mini-language: "power:<c>,<p>" | "expm1" | "log1p" | "table:<path>".
  static Generator parse(std::string_view spec) {
    if (spec == "expm1") return expm1();
    if (spec == "log1p") return log1p();
    if (spec.rfind("power:", 0) == 0) {
      const std::string body(spec.substr(6));
      const auto comma = body.find(',');
      if (comma == std::string::npos) {
        throw validation_error("generator spec: power needs \"<c>,<p>\"");
      }
      std::size_t used = 0;
      double c = 0.0, p = 0.0;
      try {
        c = std::stod(body.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument("");
        const std::string ptail = body.substr(comma + 1);
        p = std::stod(ptail, &used);
        if (used != ptail.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw validation_error("generator spec: cannot parse power numbers in \"" +
                               std::string(spec) + "\"");
      }
      return power(c, p);
    }
    if (spec.rfind("table:", 0) == 0) {
      return tabulated_from_csv(std::string(spec.substr(6)));
    }
    throw validation_error("generator spec: unknown kind \"" +
                           std::string(spec) + "\"");
  }

  /// lambda * phi.  The scan and search code relies on every functional built
  /// from a generator being invariant under this.
  Generator scaled(double lambda) const {
    if (!std::isfinite(lambda) || lambda <= 0.0) {
      throw validation_error("generator scale must be > 0");
    }
    Generator g = *this;
    if (kind_ == GeneratorKind::Power) {
      g.coeff_ *= lambda;
    } else {
      g.scale_ *= lambda;
    }
    g.origin_.clear();
    return g;
  }

  GeneratorKind kind() const { return kind_; }
  bool is_power() const { return kind_ == GeneratorKind::Power; }
  double coefficient() const { return coeff_; }
  double exponent() const { return exponent_; }
  double output_scale() const { return scale_; }
  const std::vector<std::array<double, 2>>& knots() const { return knots_; }

  bool increasing() const {
    return kind_ != GeneratorKind::Power || exponent_ > 0.0;
  }

  /// Largest representable input; +inf for built-in kinds.
  double domain_sup() const {
    return kind_ == GeneratorKind::Tabulated
               ? knots_.back()[0]
               : std::numeric_limits<double>::infinity();
  }

  /// Supremum of the represented range; +inf for built-in increasing kinds.
  double range_sup() const {
    return kind_ == GeneratorKind::Tabulated
               ? scale_ * knots_.back()[1]
               : std::numeric_limits<double>::infinity();
  }

  double eval(double t) const {
    if (!std::isfinite(t) || t < 0.0) {
      throw domain_error("generator eval: t must be finite and >= 0, got " +
                         detail::fmt_double(t));
    }
    switch (kind_) {
      case GeneratorKind::Power:
        if (t == 0.0) {
          if (exponent_ < 0.0) {
            throw domain_error(
                "generator eval: negative exponent undefined at t = 0");
          }
          return 0.0;
        }
        return coeff_ * std::pow(t, exponent_);
      case GeneratorKind::Expm1:
        return scale_ * std::expm1(t);
      case GeneratorKind::Log1p:
        return scale_ * std::log1p(t);
      case GeneratorKind::Tabulated: {
        const double tmax = knots_.back()[0];
        if (t > tmax * (1.0 + 1e-12)) {
          throw domain_error("generator eval: t = " + detail::fmt_double(t) +
                             " beyond tabulated domain [0, " +
                             detail::fmt_double(tmax) + "]");
        }
        return scale_ * interp(std::min(t, tmax));
      }
    }
    throw error("unreachable generator kind");
  }

  double operator()(double t) const { return eval(t); }

  /// phi^{-1}(s): closed form for power kinds, bisection otherwise.
  double inverse(double s) const {
    if (!std::isfinite(s)) {
      throw range_error("generator inverse: s must be finite");
    }
    switch (kind_) {
      case GeneratorKind::Power: {
        if (exponent_ > 0.0) {
          if (s < 0.0) {
            throw range_error("generator inverse: s = " +
                              detail::fmt_double(s) + " below range");
          }
          if (s == 0.0) return 0.0;
        } else if (s <= 0.0) {
          throw range_error(
              "generator inverse: negative-exponent power attains only s > 0");
        }
        return std::pow(s / coeff_, 1.0 / exponent_);
      }
      case GeneratorKind::Expm1:
      case GeneratorKind::Log1p: {
        if (s < 0.0) {
          throw range_error("generator inverse: s = " + detail::fmt_double(s) +
                            " below range");
        }
        if (s == 0.0) return 0.0;
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 1200 && eval(hi) < s; ++i) {
          lo = hi;
          hi *= 2.0;
        }
        return bisect(s, lo, hi);
      }
      case GeneratorKind::Tabulated: {
        const double smax = range_sup();
        if (s < 0.0 || s > smax * (1.0 + 1e-12)) {
          throw range_error("generator inverse: s = " + detail::fmt_double(s) +
                            " outside tabulated range [0, " +
                            detail::fmt_double(smax) + "]");
        }
        if (s == 0.0) return 0.0;
        return bisect(std::min(s, smax), 0.0, knots_.back()[0]);
      }
    }
    throw error("unreachable generator kind");
  }

  /// The inverse as a generator of the same kind family.  Swapping tabulated
  /// columns is exact; expm1 and log1p invert each other; a power inverts to
  /// a power.  Not representable for scaled expm1/log1p.
  Generator inverse_generator() const {
    switch (kind_) {
      case GeneratorKind::Power:
        return power(std::pow(coeff_, -1.0 / exponent_), 1.0 / exponent_);
      case GeneratorKind::Expm1:
        if (scale_ != 1.0) {
          throw validation_error(
              "inverse of a scaled expm1 is not representable");
        }
        return log1p();
      case GeneratorKind::Log1p:
        if (scale_ != 1.0) {
          throw validation_error(
              "inverse of a scaled log1p is not representable");
        }
        return expm1();
      case GeneratorKind::Tabulated: {
        std::vector<std::array<double, 2>> swapped(knots_.size());
        for (std::size_t i = 0; i < knots_.size(); ++i) {
          swapped[i] = {scale_ * knots_[i][1], knots_[i][0]};
        }
        return tabulated(std::move(swapped));
      }
    }
    throw error("unreachable generator kind");
  }

  std::string spec_string() const {
    std::string prefix =
        scale_ != 1.0 ? "scaled(" + detail::fmt_double(scale_) + ")*" : "";
    switch (kind_) {
      case GeneratorKind::Power:
        return "power:" + detail::fmt_double(coeff_) + "," +
               detail::fmt_double(exponent_);
      case GeneratorKind::Expm1:
        return prefix + "expm1";
      case GeneratorKind::Log1p:
        return prefix + "log1p";
      case GeneratorKind::Tabulated:
        if (!origin_.empty()) return prefix + origin_;
        return prefix + "tabulated(" + std::to_string(knots_.size()) +
               " knots)";
    }
    throw error("unreachable generator kind");
  }

 private:
  Generator() = default;

  double interp(double t) const {
    auto it = std::upper_bound(
        knots_.begin(), knots_.end(), t,
        [](double v, const std::array<double, 2>& k) { return v < k[0]; });
    if (it == knots_.begin()) return knots_.front()[1];
    if (it == knots_.end()) return knots_.back()[1];
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo[0]) / (hi[0] - lo[0]);
    return lo[1] + w * (hi[1] - lo[1]);
  }

  // Monotonicity makes plain bisection unconditionally safe; 200 halvings
  // push the bracket far below one ulp of the answer.
  double bisect(double s, double lo, double hi) const {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (eval(mid) < s) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  GeneratorKind kind_ = GeneratorKind::Power;
  double coeff_ = 1.0;
  double exponent_ = 1.0;
  double scale_ = 1.0;
  std::vector<std::array<double, 2>> knots_;
  std::string origin_;
};

struct GeneratorPair {
  Generator phi;
  Generator psi;
};

/// phi composed with f, atom by atom.
inline StepFunction compose(const Generator& gen, const StepFunction& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = gen.eval(f.value(i));
  return StepFunction(f.space(), std::move(out));
}

/// phi^{-1}( integral of phi(f) ).  Atoms of weight zero are null sets and
/// are skipped, so the extended negative-exponent path never sees them.
inline double p_functional(const Generator& gen, const StepFunction& f,
                           const MeasureSpace& mu) {
  require_same_space(f, mu, "p_functional");
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.atom_count(); ++i) {
    if (mu.weight(i) == 0.0) continue;
    acc += gen.eval(f.value(i)) * mu.weight(i);
  }
  return gen.inverse(acc);
}

/// Weighted quasi-arithmetic mean phi^{-1}( sum q_j phi(a_j) ).
inline double quasi_mean(const Generator& gen, std::span<const double> values,
                         std::span<const double> weights) {
  if (values.size() != weights.size() || values.empty()) {
    throw validation_error("quasi_mean: values and weights must match");
  }
  double wsum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw validation_error("quasi_mean: weights must be finite and >= 0");
    }
    wsum += w;
  }
  if (!nearly_equal(wsum, 1.0)) {
    throw validation_error("quasi_mean: weights sum to " +
                           detail::fmt_double(wsum) + ", expected 1");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j]) || values[j] < 0.0) {
      throw validation_error("quasi_mean: values must be finite and >= 0");
    }
    if (weights[j] == 0.0) continue;
    acc += weights[j] * gen.eval(values[j]);
  }
  return gen.inverse(acc);
}

/// phi^{-1}( phi(t1) + phi(t2) ); symmetric, and t = 0 is its unit.
inline double mulholland_sum(const Generator& gen, double t1, double t2) {
  return gen.inverse(gen.eval(t1) + gen.eval(t2));
}

}  // namespace meanineq
