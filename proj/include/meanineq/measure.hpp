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

#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "meanineq/errors.hpp"

namespace meanineq {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kAbsoluteTolerance = 1e-12;

/// Relative comparison with an absolute fallback near zero.
inline bool nearly_equal(double a, double b, double rel = kDefaultTolerance,
                         double abs_tol = kAbsoluteTolerance) {
  const double diff = std::fabs(a - b);
  if (diff <= abs_tol) return true;
  return diff <= rel * std::max(std::fabs(a), std::fabs(b));
}

/// Finite atomic measure space: a non-negative weight per atom.
///
/// Immutable after construction.  A product space remembers its two factors,
/// which is what lets step functions over it be sliced and partially
/// integrated without re-supplying the factor spaces.
class MeasureSpace {
 public:
  MeasureSpace() = default;

  explicit MeasureSpace(std::vector<double> weights, std::string label = "") {
    if (weights.empty()) {
      throw validation_error("measure space needs at least one atom");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
        throw validation_error("weight[" + std::to_string(i) +
                               "] must be finite and >= 0, got " +
                               std::to_string(weights[i]));
      }
    }
    weights_ = std::move(weights);
    label_ = std::move(label);
    total_mass_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  }

  std::size_t atom_count() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_.at(i); }
  double total_mass() const { return total_mass_; }
  const std::string& label() const { return label_; }

  bool probabilistic(double tol = kDefaultTolerance) const {
    return nearly_equal(total_mass_, 1.0, tol);
  }

  bool is_product() const { return static_cast<bool>(factors_); }

  const MeasureSpace& factor_x() const {
    require_product();
    return factors_->first;
  }
  const MeasureSpace& factor_y() const {
    require_product();
    return factors_->second;
  }

  friend bool same_space(const MeasureSpace& a, const MeasureSpace& b) {
    return a.weights_ == b.weights_;
  }

  friend MeasureSpace product_space(const MeasureSpace& mu,
                                    const MeasureSpace& nu);

 private:
  void require_product() const {
    if (!factors_) throw validation_error("space is not a product space");
  }

  std::vector<double> weights_;
  double total_mass_ = 0.0;
  std::string label_;
  std::shared_ptr<const std::pair<MeasureSpace, MeasureSpace>> factors_;
};

inline MeasureSpace make_space(std::vector<double> weights,
                               std::string label = "") {
  return MeasureSpace(std::move(weights), std::move(label));
}

/// Pairing of an (x, y) atom with its row-major position (X outer).
struct ProductIndex {
  std::size_t x_index = 0;
  std::size_t y_index = 0;
  std::size_t flat_index = 0;
};

inline ProductIndex product_index(std::size_t x, std::size_t y,
                                  std::size_t y_count) {
  if (y_count == 0) throw validation_error("product index needs y_count > 0");
  if (y >= y_count) throw range_error("y index out of range");
  return ProductIndex{x, y, x * y_count + y};
}

/// Row-major product of two spaces; weight(x,y) = mu(x) * nu(y).
inline MeasureSpace product_space(const MeasureSpace& mu,
                                  const MeasureSpace& nu) {
  const std::size_t nx = mu.atom_count();
  const std::size_t ny = nu.atom_count();
  if (nx == 0 || ny == 0) throw validation_error("empty factor space");
  if (nx > std::numeric_limits<std::size_t>::max() / ny) {
    throw size_error("product space atom count overflows");
  }
  std::vector<double> w(nx * ny);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      w[x * ny + y] = mu.weight(x) * nu.weight(y);
    }
  }
  std::string label;
  if (!mu.label().empty() || !nu.label().empty()) {
    label = mu.label() + "x" + nu.label();
  }
  MeasureSpace prod(std::move(w), std::move(label));
  prod.factors_ =
      std::make_shared<const std::pair<MeasureSpace, MeasureSpace>>(mu, nu);
  return prod;
}

/// Non-negative step function: one value per atom of its space.
class StepFunction {
 public:
  StepFunction(MeasureSpace space, std::vector<double> values)
      : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_.atom_count()) {
      throw validation_error("value count " + std::to_string(values_.size()) +
                             " does not match atom count " +
                             std::to_string(space_.atom_count()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
        throw validation_error("value[" + std::to_string(i) +
                               "] must be finite and >= 0, got " +
                               std::to_string(values_[i]));
      }
    }
  }

  const MeasureSpace& space() const { return space_; }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t i) const { return values_.at(i); }
  std::size_t size() const { return values_.size(); }

  /// Value at product atom (x, y); requires a product space.
  double value_at(std::size_t x, std::size_t y) const {
    const std::size_t ny = space_.factor_y().atom_count();
    return values_.at(product_index(x, y, ny).flat_index);
  }

 private:
  MeasureSpace space_;
  std::vector<double> values_;
};

inline StepFunction constant_function(const MeasureSpace& space,
                                      double value) {
  return StepFunction(space,
                      std::vector<double>(space.atom_count(), value));
}

inline bool is_zero(const StepFunction& f) {
  for (double v : f.values()) {
    if (v != 0.0) return false;
  }
  return true;
}

inline void require_same_space(const StepFunction& f, const MeasureSpace& mu,
                               const char* what) {
  if (!same_space(f.space(), mu)) {
    throw validation_error(std::string(what) + ": step function space mismatch");
  }
}

/// Exact integral over a finite atomic space: sum of value * weight.
inline double integrate(const StepFunction& f, const MeasureSpace& mu) {
  require_same_space(f, mu, "integrate");
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.atom_count(); ++i) {
    acc += f.value(i) * mu.weight(i);
  }
  return acc;
}

inline void require_same_space(const StepFunction& f, const StepFunction& g,
                               const char* what) {
  if (!same_space(f.space(), g.space())) {
    throw validation_error(std::string(what) + ": operand space mismatch");
  }
}

inline StepFunction pointwise_product(const StepFunction& f,
                                      const StepFunction& g) {
  require_same_space(f, g, "pointwise_product");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = f.value(i) * g.value(i);
  }
  return StepFunction(f.space(), std::move(out));
}

inline StepFunction pointwise_sum(const StepFunction& f,
                                  const StepFunction& g) {
  require_same_space(f, g, "pointwise_sum");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = f.value(i) + g.value(i);
  }
  return StepFunction(f.space(), std::move(out));
}

inline StepFunction pointwise_scale(const StepFunction& f, double s) {
  if (!std::isfinite(s) || s < 0.0) {
    throw validation_error("scale factor must be finite and >= 0");
  }
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * f.value(i);
  return StepFunction(f.space(), std::move(out));
}

/// Atomwise power; keeps the result inside S_+.  A negative exponent at a
/// zero value has no non-negative meaning and is rejected.
inline StepFunction pointwise_power(const StepFunction& f, double r) {
  if (!std::isfinite(r)) throw validation_error("exponent must be finite");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = f.value(i);
    if (v == 0.0 && r < 0.0) {
      throw domain_error("pointwise_power: negative exponent at zero value");
    }
    out[i] = std::pow(v, r);
  }
  return StepFunction(f.space(), std::move(out));
}

/// x -> F(x, y) for a fixed y atom.
inline StepFunction slice_y(const StepFunction& F, std::size_t y_index) {
  const MeasureSpace& xs = F.space().factor_x();
  const std::size_t ny = F.space().factor_y().atom_count();
  if (y_index >= ny) throw range_error("slice_y: y index out of range");
  std::vector<double> out(xs.atom_count());
  for (std::size_t x = 0; x < out.size(); ++x) {
    out[x] = F.value(x * ny + y_index);
  }
  return StepFunction(xs, std::move(out));
}

/// G(x) = sum_y F(x, y) * nu(y); the inner integral of the product formulas.
inline StepFunction partial_integral_y(const StepFunction& F,
                                       const MeasureSpace& nu) {
  const MeasureSpace& xs = F.space().factor_x();
  const std::size_t ny = F.space().factor_y().atom_count();
  if (nu.atom_count() != ny) {
    throw validation_error("partial_integral_y: nu atom count mismatch");
  }
  std::vector<double> out(xs.atom_count(), 0.0);
  for (std::size_t x = 0; x < out.size(); ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      out[x] += F.value(x * ny + y) * nu.weight(y);
    }
  }
  return StepFunction(xs, std::move(out));
}

}  // namespace meanineq
