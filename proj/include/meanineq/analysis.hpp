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
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "meanineq/errors.hpp"
#include "meanineq/generator.hpp"
#include "meanineq/measure.hpp"
#include "meanineq/report.hpp"

namespace meanineq {

struct GridRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Result of a midpoint-concavity scan of F(s,t) = phi^{-1}(s) psi^{-1}(t).
///
/// worst_violation is the largest midpoint defect
///   (F(P) + F(Q))/2 - F((P+Q)/2)
/// over all grid pairs; positive means the midpoint dips below the chord.
/// Since every represented generator is continuous and monotone, midpoint
/// concavity on a covering grid stands in for full concavity.
struct ConcavityVerdict {
  bool concave_on_grid = true;
  double worst_violation = 0.0;
  bool has_witness = false;
  std::array<double, 2> point1{};
  std::array<double, 2> point2{};
  double midpoint_defect = 0.0;
  GridRange s_range{};
  GridRange t_range{};
  std::size_t steps = 0;
  double tolerance = kDefaultTolerance;
};

/// Scans all pairs of grid points in lexicographic order; the reported
/// witness is the maximal defect, first occurrence winning ties.
inline ConcavityVerdict concavity_scan(const GeneratorPair& pair,
                                       GridRange s_range, GridRange t_range,
                                       std::size_t steps,
                                       double tolerance = kDefaultTolerance) {
  if (steps < 3) throw validation_error("concavity_scan: steps must be >= 3");
  if (!(s_range.lo > 0.0 && s_range.hi > s_range.lo) ||
      !(t_range.lo > 0.0 && t_range.hi > t_range.lo)) {
    throw validation_error("concavity_scan: ranges must be positive intervals");
  }

  const std::size_t n = steps;
  std::vector<double> s(n), t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(n - 1);
    s[i] = s_range.lo + w * (s_range.hi - s_range.lo);
    t[i] = t_range.lo + w * (t_range.hi - t_range.lo);
  }

  // F factorizes as phi^{-1}(s) * psi^{-1}(t), so tabulate the two inverse
  // profiles at grid points and at all pairwise midpoints once.
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = pair.phi.inverse(s[i]);
    b[i] = pair.psi.inverse(t[i]);
  }
  std::vector<double> am(n * n), bm(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      am[i * n + k] = pair.phi.inverse(0.5 * (s[i] + s[k]));
      bm[i * n + k] = pair.psi.inverse(0.5 * (t[i] + t[k]));
    }
  }

  ConcavityVerdict v;
  v.s_range = s_range;
  v.t_range = t_range;
  v.steps = steps;
  v.tolerance = tolerance;
  v.worst_violation = -std::numeric_limits<double>::infinity();

  const std::size_t total = n * n;
  for (std::size_t p1 = 0; p1 < total; ++p1) {
    const std::size_t i1 = p1 / n, j1 = p1 % n;
    const double f1 = a[i1] * b[j1];
    for (std::size_t p2 = p1 + 1; p2 < total; ++p2) {
      const std::size_t i2 = p2 / n, j2 = p2 % n;
      const double f2 = a[i2] * b[j2];
      const double fmid = am[i1 * n + i2] * bm[j1 * n + j2];
      const double defect = 0.5 * (f1 + f2) - fmid;
      if (defect > v.worst_violation) {
        v.worst_violation = defect;
        v.point1 = {s[i1], t[j1]};
        v.point2 = {s[i2], t[j2]};
        v.midpoint_defect = defect;
      }
    }
  }
  v.concave_on_grid = v.worst_violation <= tolerance;
  v.has_witness = !v.concave_on_grid;
  return v;
}

/// Per-point view of the same scan for plotting: for every grid point the
/// worst midpoint defect over all pairs having it as an endpoint.
struct GridDefect {
  double s = 0.0;
  double t = 0.0;
  double worst_defect = 0.0;
};

inline std::vector<GridDefect> concavity_defect_grid(
    const GeneratorPair& pair, GridRange s_range, GridRange t_range,
    std::size_t steps) {
  if (steps < 3) throw validation_error("concavity grid: steps must be >= 3");
  if (!(s_range.lo > 0.0 && s_range.hi > s_range.lo) ||
      !(t_range.lo > 0.0 && t_range.hi > t_range.lo)) {
    throw validation_error("concavity grid: ranges must be positive intervals");
  }
  const std::size_t n = steps;
  std::vector<double> s(n), t(n), a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(n - 1);
    s[i] = s_range.lo + w * (s_range.hi - s_range.lo);
    t[i] = t_range.lo + w * (t_range.hi - t_range.lo);
    a[i] = pair.phi.inverse(s[i]);
    b[i] = pair.psi.inverse(t[i]);
  }
  std::vector<double> am(n * n), bm(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      am[i * n + k] = pair.phi.inverse(0.5 * (s[i] + s[k]));
      bm[i * n + k] = pair.psi.inverse(0.5 * (t[i] + t[k]));
    }
  }
  std::vector<GridDefect> out(n * n);
  for (std::size_t p1 = 0; p1 < n * n; ++p1) {
    out[p1] = {s[p1 / n], t[p1 % n],
               -std::numeric_limits<double>::infinity()};
  }
  for (std::size_t p1 = 0; p1 < n * n; ++p1) {
    const std::size_t i1 = p1 / n, j1 = p1 % n;
    const double f1 = a[i1] * b[j1];
    for (std::size_t p2 = p1 + 1; p2 < n * n; ++p2) {
      const std::size_t i2 = p2 / n, j2 = p2 % n;
      const double defect =
          0.5 * (f1 + a[i2] * b[j2]) - am[i1 * n + i2] * bm[j1 * n + j2];
      out[p1].worst_defect = std::max(out[p1].worst_defect, defect);
      out[p2].worst_defect = std::max(out[p2].worst_defect, defect);
    }
  }
  return out;
}

/// det d2F for F(s,t) = s^{1/p} t^{1/q}, with the positive factor
/// s^{2/p-2} t^{2/q-2} stripped: (1/(pq)) (1 - (1/p + 1/q)).
inline double power_hessian_det(double p, double q) {
  if (!std::isfinite(p) || !std::isfinite(q) || p == 0.0 || q == 0.0) {
    throw domain_error("power_hessian_det: p and q must be finite and nonzero");
  }
  return (1.0 / (p * q)) * (1.0 - (1.0 / p + 1.0 / q));
}

/// Central finite-difference Hessian determinant of s^{1/p} t^{1/q} at a
/// point, normalized by the same positive factor so it is directly
/// comparable with power_hessian_det.  Deliberately computed with raw
/// std::pow, independent of the Generator evaluation path.
inline double hessian_fd_check(double p, double q,
                               std::array<double, 2> point = {1.0, 1.0},
                               double h = 1e-4) {
  if (p == 0.0 || q == 0.0) {
    throw domain_error("hessian_fd_check: p and q must be nonzero");
  }
  const double s = point[0], t = point[1];
  if (!(s > 0.0 && t > 0.0)) {
    throw domain_error("hessian_fd_check: point must be positive");
  }
  if (!(h > 0.0)) throw validation_error("hessian_fd_check: h must be > 0");
  const double a = 1.0 / p, bq = 1.0 / q;
  const auto F = [&](double x, double y) {
    return std::pow(x, a) * std::pow(y, bq);
  };
  const double hs = h * s, ht = h * t;
  const double f0 = F(s, t);
  const double fss = (F(s + hs, t) - 2.0 * f0 + F(s - hs, t)) / (hs * hs);
  const double ftt = (F(s, t + ht) - 2.0 * f0 + F(s, t - ht)) / (ht * ht);
  const double fst = (F(s + hs, t + ht) - F(s + hs, t - ht) -
                      F(s - hs, t + ht) + F(s - hs, t - ht)) /
                     (4.0 * hs * ht);
  const double det = fss * ftt - fst * fst;
  const double factor =
      std::pow(s, 2.0 * a - 2.0) * std::pow(t, 2.0 * bq - 2.0);
  return det / factor;
}

/// Least-squares fit phi(t) ~= c * t^p on a positive grid.
struct PowerFit {
  double c = 1.0;
  double p = 1.0;
  double max_relative_residual = 0.0;
};

inline PowerFit power_fit(const Generator& gen, std::span<const double> grid) {
  std::vector<double> xs, ys, phis;
  for (double t : grid) {
    if (!(t > 0.0)) throw validation_error("power_fit: grid must be positive");
    const double phi = gen.eval(t);
    if (!(phi > 0.0)) {
      throw domain_error("power_fit: phi(t) = 0 at t = " +
                         detail::fmt_double(t));
    }
    xs.push_back(std::log(t));
    ys.push_back(std::log(phi));
    phis.push_back(phi);
  }
  std::vector<double> distinct = xs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  if (distinct.size() < 3) {
    throw validation_error("power_fit: need at least 3 distinct grid points");
  }

  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  const double p = (n * sxy - sx * sy) / denom;
  const double c = std::exp((sy - p * sx) / n);

  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = c * std::exp(p * xs[i]);
    worst = std::max(worst, std::fabs(fit - phis[i]) / phis[i]);
  }
  return PowerFit{c, p, worst};
}

/// Worst relative defect of phi-hat(xy) = phi-hat(x) phi-hat(y), where
/// phi-hat = phi / phi(1).  Zero (to rounding) exactly for power kinds.
inline double multiplicativity_check(
    const Generator& gen, std::span<const std::array<double, 2>> pairs) {
  const double phi1 = gen.eval(1.0);
  if (!(phi1 > 0.0) || !std::isfinite(phi1)) {
    throw degenerate_error("multiplicativity_check: phi(1) must be positive");
  }
  double worst = 0.0;
  for (const auto& [x, y] : pairs) {
    if (!(x > 0.0 && y > 0.0)) {
      throw validation_error("multiplicativity_check: pairs must be positive");
    }
    const double fxy = gen.eval(x * y) / phi1;
    const double fx = gen.eval(x) / phi1;
    const double fy = gen.eval(y) / phi1;
    worst = std::max(worst, std::fabs(fxy - fx * fy) / std::fabs(fxy));
  }
  return worst;
}

/// Finite-difference probe of the classical sufficient conditions for the
/// quasi-mean midpoint inequality: phi, phi', phi'' positive and phi'/phi''
/// concave.  A vanishing phi'' makes the ratio meaningless, so that case is
/// flagged indeterminate rather than failed.
struct HardyReport {
  bool passes = false;
  bool indeterminate = false;
  bool positivity_ok = false;
  double worst_defect = 0.0;
  double worst_point = 0.0;
  std::string detail;
};

inline HardyReport hardy_condition_check(const Generator& gen,
                                         std::span<const double> grid,
                                         double h = 1e-4,
                                         double tolerance = 1e-5) {
  if (grid.size() < 3) {
    throw validation_error("hardy_condition_check: need at least 3 grid points");
  }
  HardyReport rep;
  rep.positivity_ok = true;

  const auto derivs = [&](double t) -> std::array<double, 3> {
    const double step = std::min(h * std::max(1.0, t), 0.5 * t);
    const double fp = gen.eval(t + step);
    const double f0 = gen.eval(t);
    const double fm = gen.eval(t - step);
    return {f0, (fp - fm) / (2.0 * step), (fp - 2.0 * f0 + fm) / (step * step)};
  };

  // Positivity of phi, phi', phi'' on the grid; detect a vanishing phi''.
  for (double t : grid) {
    if (!(t > 0.0)) {
      throw validation_error("hardy_condition_check: grid must be positive");
    }
    const auto [f0, d1, d2] = derivs(t);
    const double d2_floor = 1e-7 * std::max({1.0, std::fabs(f0), std::fabs(d1)});
    if (std::fabs(d2) <= d2_floor) {
      rep.indeterminate = true;
      rep.worst_point = t;
      rep.detail = "phi'' vanishes near t = " + detail::fmt_double(t);
      return rep;
    }
    if (f0 <= 0.0 || d1 <= 0.0 || d2 < 0.0) {
      rep.positivity_ok = false;
      rep.worst_point = t;
      rep.detail = "positivity fails at t = " + detail::fmt_double(t);
      return rep;
    }
  }

  const auto ratio = [&](double t) {
    const auto [f0, d1, d2] = derivs(t);
    (void)f0;
    return d1 / d2;
  };

  // Midpoint concavity of phi'/phi'' over all grid pairs.
  rep.worst_defect = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      const double ri = ratio(grid[i]);
      const double rj = ratio(grid[j]);
      const double rm = ratio(0.5 * (grid[i] + grid[j]));
      const double defect = 0.5 * (ri + rj) - rm;
      const double scaled =
          defect / std::max({1.0, std::fabs(ri), std::fabs(rj)});
      if (scaled > rep.worst_defect) {
        rep.worst_defect = scaled;
        rep.worst_point = 0.5 * (grid[i] + grid[j]);
      }
    }
  }
  rep.passes = rep.worst_defect <= tolerance;
  if (!rep.passes) {
    rep.detail = "phi'/phi'' midpoint concavity fails near t = " +
                 detail::fmt_double(rep.worst_point);
  }
  return rep;
}

/// The lower-exponent functional against the higher one for a non-constant
/// function on a probabilistic space; the ordering is strict.
struct StrictGapResult {
  double lower_functional = 0.0;  // P with exponent p_prime
  double upper_functional = 0.0;  // P with exponent p
  double margin = 0.0;
  bool strict = false;
};

inline StrictGapResult strict_gap_demo(double p, double p_prime,
                                       const StepFunction& f,
                                       const MeasureSpace& mu,
                                       double tolerance = kDefaultTolerance) {
  if (!(p_prime < p)) {
    throw validation_error("strict_gap_demo: need p_prime < p");
  }
  if (!mu.probabilistic(tolerance)) {
    throw validation_error("strict_gap_demo: mu must be probabilistic");
  }
  double lo = f.value(0), hi = f.value(0);
  for (double v : f.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi - lo <= tolerance * std::max(1.0, hi)) {
    throw validation_error("strict_gap_demo: f must be non-constant");
  }
  StrictGapResult r;
  r.lower_functional = p_functional(Generator::power(1.0, p_prime), f, mu);
  r.upper_functional = p_functional(Generator::power(1.0, p), f, mu);
  r.margin = r.upper_functional - r.lower_functional;
  r.strict = r.margin >
             tolerance * verdict_scale(r.lower_functional, r.upper_functional);
  return r;
}

/// Worst relative disagreement of the two-point equal-weight quasi-means of
/// two generators over the sample pairs.  Zero iff the generators induce the
/// same mean on the samples (e.g. when one is a positive multiple of the
/// other).
inline double functional_equivalence_scan(
    const Generator& gen_a, const Generator& gen_b,
    std::span<const std::array<double, 2>> samples) {
  const std::array<double, 2> half{0.5, 0.5};
  double worst = 0.0;
  for (const auto& [t, u] : samples) {
    if (!(t > 0.0 && u > 0.0)) {
      throw validation_error("functional_equivalence_scan: samples must be positive");
    }
    const std::array<double, 2> pairv{t, u};
    const double ma = quasi_mean(gen_a, pairv, half);
    const double mb = quasi_mean(gen_b, pairv, half);
    const double scale = std::max({1e-300, std::fabs(ma), std::fabs(mb)});
    worst = std::max(worst, std::fabs(ma - mb) / scale);
  }
  return worst;
}

}  // namespace meanineq
