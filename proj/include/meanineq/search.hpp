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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "meanineq/analysis.hpp"
#include "meanineq/errors.hpp"
#include "meanineq/generator.hpp"
#include "meanineq/inequalities.hpp"
#include "meanineq/measure.hpp"
#include "meanineq/random.hpp"
#include "meanineq/report.hpp"

namespace meanineq {

/// Result of a one-parameter optimality scan over the power family.
///
/// A failed search (min_gap staying positive) is evidence, not proof, that
/// no equality partner exists: the scan is confined to g = f^r.
struct OptimalityResult {
  double best_exponent = 0.0;
  double min_gap = 0.0;
  std::string searched_family;
  bool achieved_equality = false;
};

namespace detail {

template <class F>
double golden_section_min(F&& f, double lo, double hi, int iters = 120) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-14 * std::max(1.0, std::fabs(a));
       ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Grid scan plus golden-section refinement around the best grid point.
template <class GapFn>
OptimalityResult exponent_scan(GapFn&& gap_at, GridRange exponents,
                               std::size_t steps, std::string family,
                               double tolerance) {
  if (steps < 2) throw validation_error("exponent scan: steps must be >= 2");
  if (!(exponents.hi > exponents.lo)) {
    throw validation_error("exponent scan: empty exponent range");
  }
  const double span = exponents.hi - exponents.lo;
  double best_r = exponents.lo;
  double best_gap = std::numeric_limits<double>::infinity();
  double best_scale = 1.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double r =
        exponents.lo + span * static_cast<double>(k) / (steps - 1.0);
    const auto [gap, scale] = gap_at(r);
    if (gap < best_gap) {
      best_gap = gap;
      best_r = r;
      best_scale = scale;
    }
  }
  const double delta = span / (steps - 1.0);
  const double lo = std::max(exponents.lo, best_r - delta);
  const double hi = std::min(exponents.hi, best_r + delta);
  const double refined = golden_section_min(
      [&](double r) { return gap_at(r).first; }, lo, hi);
  const auto [rgap, rscale] = gap_at(refined);
  if (rgap < best_gap) {
    best_gap = rgap;
    best_r = refined;
    best_scale = rscale;
  }
  OptimalityResult res;
  res.best_exponent = best_r;
  res.min_gap = best_gap;
  res.searched_family = std::move(family);
  res.achieved_equality = std::fabs(best_gap) <= tolerance * best_scale;
  return res;
}

}  // namespace detail

/// Scan g = f^r for the exponent that brings the Holder gap closest to
/// equality.
inline OptimalityResult optimality_search(const GeneratorPair& pair,
                                          const StepFunction& f,
                                          const MeasureSpace& mu,
                                          GridRange exponents,
                                          std::size_t steps = 64,
                                          double tolerance = kDefaultTolerance) {
  if (is_zero(f)) throw degenerate_error("optimality_search: f vanishes");
  auto gap_at = [&](double r) -> std::pair<double, double> {
    const auto rep =
        holder_report(pair, f, pointwise_power(f, r), mu, tolerance);
    return {rep.gap, verdict_scale(rep.lhs, rep.rhs)};
  };
  return detail::exponent_scan(gap_at, exponents, steps,
                               "holder equality via g = f^r", tolerance);
}

/// Scan f = g^r (on supp(g)) for the exponent that makes the reversed
/// Holder inequality an equality; for conjugate powers the optimum is q/p.
inline OptimalityResult reversed_optimality_search(
    const GeneratorPair& pair, const StepFunction& g, const MeasureSpace& mu,
    GridRange exponents, std::size_t steps = 64,
    double tolerance = kDefaultTolerance) {
  if (is_zero(g)) throw degenerate_error("reversed_optimality_search: g vanishes");
  auto gap_at = [&](double r) -> std::pair<double, double> {
    std::vector<double> fv(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.value(i) > 0.0) fv[i] = std::pow(g.value(i), r);
    }
    const auto rep = reversed_holder_report(
        pair, StepFunction(g.space(), std::move(fv)), g, mu, tolerance);
    return {rep.gap, verdict_scale(rep.lhs, rep.rhs)};
  };
  return detail::exponent_scan(gap_at, exponents, steps,
                               "reversed holder equality via f = g^r",
                               tolerance);
}

enum class SearchTarget { Holder, GeneralizedMinkowskiTwoBlock };

struct SearchOptions {
  SearchTarget target = SearchTarget::Holder;
  std::uint64_t seed = 0;
  std::size_t budget = 10000;
  int jobs = 1;
  double tolerance = kDefaultTolerance;
  /// Y space for the two-block target (defaults to two atoms of weight 1).
  std::optional<MeasureSpace> nu;
  /// Coordinate box for candidate values.
  GridRange value_range{0.1, 10.0};
};

struct CounterexampleWitness {
  InequalityReport report;
  std::vector<double> f_values;            // Holder target
  std::vector<double> g_values;            // Holder target
  std::array<double, 4> quadruple{};       // two-block target
  std::size_t restart_index = 0;
  std::size_t evaluations = 0;
};

namespace detail {

struct RawGap {
  double gap = 0.0;
  double scale = 1.0;
};

/// Holder gap without report plumbing; used inside the search hot loop.
inline RawGap holder_gap_raw(const GeneratorPair& pair,
                             std::span<const double> f,
                             std::span<const double> g,
                             const MeasureSpace& mu) {
  double lhs = 0.0, accf = 0.0, accg = 0.0;
  for (std::size_t i = 0; i < mu.atom_count(); ++i) {
    const double w = mu.weight(i);
    if (w == 0.0) continue;
    lhs += f[i] * g[i] * w;
    accf += pair.phi.eval(f[i]) * w;
    accg += pair.psi.eval(g[i]) * w;
  }
  const double rhs = pair.phi.inverse(accf) * pair.psi.inverse(accg);
  return {rhs - lhs, verdict_scale(lhs, rhs)};
}

/// Forward generalized-Minkowski gap on the two-block function.
inline RawGap two_block_gap_raw(const GeneratorPair& pair,
                                const std::array<double, 4>& q,
                                const MeasureSpace& mu,
                                const MeasureSpace& nu) {
  const auto [t, u, v, w] = q;
  const double c0 = nu.weight(0), c1 = nu.weight(1);
  const double b0 = mu.weight(0), b1 = mu.weight(1);
  const double lhs = pair.psi.eval(
      b0 * pair.phi.eval(c0 * t + c1 * v) + b1 * pair.phi.eval(c0 * u + c1 * w));
  const double rhs =
      c0 * pair.psi.eval(b0 * pair.phi.eval(t) + b1 * pair.phi.eval(u)) +
      c1 * pair.psi.eval(b0 * pair.phi.eval(v) + b1 * pair.phi.eval(w));
  return {rhs - lhs, verdict_scale(lhs, rhs)};
}

struct RestartOutcome {
  bool certified = false;
  std::vector<double> coords;  // log-space
  RawGap value{};
  std::size_t evaluations = 0;
};

/// Coordinate-wise multiplicative local search from a random start.
/// Deterministic given the restart seed.
template <class Objective>
RestartOutcome run_restart(Objective&& objective, std::size_t dim,
                           std::uint64_t restart_seed, std::size_t max_evals,
                           GridRange box, double tolerance) {
  Rng rng(restart_seed);
  const double lo = std::log(box.lo), hi = std::log(box.hi);
  RestartOutcome out;
  std::vector<double> x(dim);
  for (auto& xi : x) xi = rng.uniform(lo, hi);

  auto certified = [&](const RawGap& g) {
    return g.gap < -10.0 * tolerance * g.scale;
  };

  RawGap best = objective(x);
  ++out.evaluations;
  if (certified(best)) {
    out.certified = true;
    out.coords = x;
    out.value = best;
    return out;
  }

  double step = 1.0;
  while (out.evaluations < max_evals) {
    bool improved = false;
    for (std::size_t d = 0; d < dim && out.evaluations < max_evals; ++d) {
      for (double dir : {+1.0, -1.0}) {
        if (out.evaluations >= max_evals) break;
        std::vector<double> trial = x;
        trial[d] = std::clamp(trial[d] + dir * step, lo, hi);
        if (trial[d] == x[d]) continue;
        const RawGap r = objective(trial);
        ++out.evaluations;
        if (r.gap < best.gap) {
          best = r;
          x = std::move(trial);
          improved = true;
          if (certified(best)) {
            out.certified = true;
            out.coords = x;
            out.value = best;
            return out;
          }
        }
      }
    }
    if (!improved) {
      step *= 0.6;
      if (step < 1e-5) {
        // Restart from a fresh point inside the same sub-stream.
        for (auto& xi : x) xi = rng.uniform(lo, hi);
        best = objective(x);
        ++out.evaluations;
        if (certified(best)) {
          out.certified = true;
          out.coords = x;
          out.value = best;
          return out;
        }
        step = 1.0;
      }
    }
  }
  out.coords = x;
  out.value = best;
  return out;
}

}  // namespace detail

/// Random-restart local search for a certified violation (gap below
/// -10 * tolerance * scale) of the target inequality.
///
/// Restart k draws from derive_seed(seed, k); runs merge by picking the
/// certified witness with the smallest restart index, so serial and
/// parallel (--jobs) executions return the same answer.  Absence of a
/// violation is a normal outcome, not an error.
inline std::optional<CounterexampleWitness> counterexample_search(
    const GeneratorPair& pair, const MeasureSpace& mu,
    const SearchOptions& options = {}) {
  if (options.budget == 0) {
    throw validation_error("counterexample_search: budget must be >= 1");
  }

  const bool holder = options.target == SearchTarget::Holder;
  if (holder && (mu.atom_count() < 2 || mu.atom_count() > 4)) {
    throw validation_error(
        "counterexample_search: holder target expects 2..4 atoms");
  }
  MeasureSpace nu = options.nu.value_or(MeasureSpace({1.0, 1.0}, "Y2"));
  if (!holder) {
    if (mu.atom_count() != 2 || nu.atom_count() != 2) {
      throw validation_error(
          "counterexample_search: two-block target expects 2-atom mu and nu");
    }
  }

  const std::size_t dim = holder ? 2 * mu.atom_count() : 4;
  constexpr std::size_t kEvalsPerRestart = 400;
  const std::size_t n_restarts =
      std::max<std::size_t>(1, options.budget / kEvalsPerRestart);
  const std::size_t per_restart =
      std::max<std::size_t>(1, options.budget / n_restarts);

  auto objective = [&](const std::vector<double>& logx) -> detail::RawGap {
    if (holder) {
      const std::size_t n = mu.atom_count();
      std::vector<double> f(n), g(n);
      for (std::size_t i = 0; i < n; ++i) {
        f[i] = std::exp(logx[i]);
        g[i] = std::exp(logx[n + i]);
      }
      return detail::holder_gap_raw(pair, f, g, mu);
    }
    std::array<double, 4> q{};
    for (std::size_t i = 0; i < 4; ++i) q[i] = std::exp(logx[i]);
    return detail::two_block_gap_raw(pair, q, mu, nu);
  };

  std::optional<std::pair<std::size_t, detail::RestartOutcome>> best;
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    for (std::size_t k = 0; k < n_restarts; ++k) {
      auto outcome =
          detail::run_restart(objective, dim, derive_seed(options.seed, k),
                              per_restart, options.value_range,
                              options.tolerance);
      if (outcome.certified) {
        best = {k, std::move(outcome)};
        break;
      }
    }
  } else {
    std::mutex m;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int tid = 0; tid < jobs; ++tid) {
      workers.emplace_back([&, tid] {
        for (std::size_t k = static_cast<std::size_t>(tid); k < n_restarts;
             k += static_cast<std::size_t>(jobs)) {
          {
            std::lock_guard<std::mutex> lock(m);
            if (best && best->first < k) continue;
          }
          auto outcome = detail::run_restart(
              objective, dim, derive_seed(options.seed, k), per_restart,
              options.value_range, options.tolerance);
          if (outcome.certified) {
            std::lock_guard<std::mutex> lock(m);
            if (!best || k < best->first) best = {k, std::move(outcome)};
          }
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  if (!best) return std::nullopt;

  // Re-verify through the full checker; the report it returns is the output.
  CounterexampleWitness witness;
  witness.restart_index = best->first;
  witness.evaluations = best->second.evaluations;
  const auto& logx = best->second.coords;
  if (holder) {
    const std::size_t n = mu.atom_count();
    witness.f_values.resize(n);
    witness.g_values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      witness.f_values[i] = std::exp(logx[i]);
      witness.g_values[i] = std::exp(logx[n + i]);
    }
    witness.report =
        holder_report(pair, StepFunction(mu, witness.f_values),
                      StepFunction(mu, witness.g_values), mu,
                      options.tolerance);
  } else {
    for (std::size_t i = 0; i < 4; ++i) witness.quadruple[i] = std::exp(logx[i]);
    const auto& [t, u, v, w] = witness.quadruple;
    MeasureSpace prod = product_space(mu, nu);
    StepFunction F(prod, {t, v, u, w});
    witness.report = generalized_minkowski_report(pair, F, mu, nu,
                                                  Direction::Leq,
                                                  options.tolerance);
  }
  return witness;
}

}  // namespace meanineq
