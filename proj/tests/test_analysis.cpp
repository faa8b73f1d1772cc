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

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "meanineq/analysis.hpp"
#include "meanineq/random.hpp"
#include "meanineq/search.hpp"
#include "oracles.hpp"

using namespace meanineq;

namespace {

GeneratorPair power_pair(double p, double q) {
  return {Generator::power(1, p), Generator::power(1, q)};
}

const GridRange kS{0.1, 4.0};
const GridRange kT{0.1, 4.0};

}  // namespace

TEST_CASE("concavity_scan classifies power pairs") {
  SECTION("conjugate boundary (2,2) is concave") {
    const auto v = concavity_scan(power_pair(2, 2), kS, kT, 9);
    CHECK(v.concave_on_grid);
    CHECK(v.worst_violation <= v.tolerance);
  }

  SECTION("(3,3) is concave since 1/3 + 1/3 < 1") {
    CHECK(concavity_scan(power_pair(3, 3), kS, kT, 9).concave_on_grid);
  }

  SECTION("(3, 1.2) violates with an explicit triple") {
    const auto v = concavity_scan(power_pair(3, 1.2), kS, kT, 9);
    CHECK_FALSE(v.concave_on_grid);
    REQUIRE(v.has_witness);
    CHECK(v.midpoint_defect > 1e-4);
    // Re-evaluate the reported triple independently.
    const double a = 1.0 / 3.0, b = 1.0 / 1.2;
    const auto F = [&](std::array<double, 2> pt) {
      return std::pow(pt[0], a) * std::pow(pt[1], b);
    };
    const std::array<double, 2> mid{0.5 * (v.point1[0] + v.point2[0]),
                                    0.5 * (v.point1[1] + v.point2[1])};
    CHECK(0.5 * (F(v.point1) + F(v.point2)) - F(mid) ==
          Catch::Approx(v.midpoint_defect).epsilon(1e-10));
  }

  SECTION("scan is deterministic") {
    const auto v1 = concavity_scan(power_pair(3, 1.2), kS, kT, 9);
    const auto v2 = concavity_scan(power_pair(3, 1.2), kS, kT, 9);
    CHECK(v1.worst_violation == v2.worst_violation);
    CHECK(v1.point1 == v2.point1);
    CHECK(v1.point2 == v2.point2);
  }

  SECTION("input validation") {
    CHECK_THROWS_AS(concavity_scan(power_pair(2, 2), kS, kT, 2),
                    validation_error);
    CHECK_THROWS_AS(concavity_scan(power_pair(2, 2), {0.0, 1.0}, kT, 5),
                    validation_error);
    CHECK_THROWS_AS(concavity_scan(power_pair(2, 2), {2.0, 1.0}, kT, 5),
                    validation_error);
  }
}

TEST_CASE("power_hessian_det matches the closed form") {
  CHECK(power_hessian_det(2, 2) == 0.0);
  CHECK(power_hessian_det(3, 3) ==
        Catch::Approx(1.0 / 27.0).epsilon(1e-15));
  CHECK(power_hessian_det(3, 1.2) ==
        Catch::Approx(-0.0462962962962963).epsilon(1e-12));
  CHECK_THROWS_AS(power_hessian_det(0, 2), domain_error);
}

TEST_CASE("finite differences confirm the determinant") {
  CHECK(std::fabs(hessian_fd_check(2, 2)) < 1e-6);
  CHECK(hessian_fd_check(3, 3) > 0.0);
  CHECK(hessian_fd_check(3, 1.2) < 0.0);

  SECTION("agreement within 1e-5 at (1,1)") {
    Rng rng(19);
    for (int rep = 0; rep < 20; ++rep) {
      const double p = rng.uniform(1.2, 5.0);
      const double q = rng.uniform(1.2, 5.0);
      CHECK(std::fabs(hessian_fd_check(p, q) - power_hessian_det(p, q)) <
            1e-5);
    }
  }

  SECTION("signs agree at random interior points when |det| > 1e-4") {
    Rng rng(29);
    for (int rep = 0; rep < 40; ++rep) {
      const double p = rng.uniform(1.2, 5.0);
      const double q = rng.uniform(1.2, 5.0);
      const double det = power_hessian_det(p, q);
      if (std::fabs(det) <= 1e-4) continue;
      const std::array<double, 2> point{rng.uniform(0.3, 3.0),
                                        rng.uniform(0.3, 3.0)};
      const double fd = hessian_fd_check(p, q, point);
      CHECK(std::signbit(fd) == std::signbit(det));
    }
  }

  CHECK_THROWS_AS(hessian_fd_check(2, 2, {0.0, 1.0}), domain_error);
}

TEST_CASE("power_fit recovers noiseless powers") {
  std::vector<double> grid;
  for (int i = 0; i < 25; ++i) grid.push_back(0.1 + 0.4 * i);

  const auto fit = power_fit(Generator::power(3, 2.5), grid);
  CHECK(fit.c == Catch::Approx(3.0).epsilon(1e-10));
  CHECK(fit.p == Catch::Approx(2.5).epsilon(1e-10));
  CHECK(fit.max_relative_residual < 1e-10);

  const auto id = power_fit(Generator::power(1, 1), grid);
  CHECK(id.c == Catch::Approx(1.0).epsilon(1e-10));
  CHECK(id.p == Catch::Approx(1.0).epsilon(1e-10));

  CHECK(power_fit(Generator::expm1(), grid).max_relative_residual > 0.01);

  CHECK_THROWS_AS(power_fit(Generator::power(1, 2),
                            std::vector<double>{1.0, 2.0}),
                  validation_error);
  CHECK_THROWS_AS(power_fit(Generator::power(1, 2),
                            std::vector<double>{1.0, 1.0, 1.0, 1.0}),
                  validation_error);
  CHECK_THROWS_AS(power_fit(Generator::power(1, 2),
                            std::vector<double>{0.0, 1.0, 2.0}),
                  validation_error);
}

TEST_CASE("multiplicativity_check separates powers from expm1") {
  std::vector<std::array<double, 2>> pairs;
  Rng rng(37);
  for (int i = 0; i < 40; ++i) {
    pairs.push_back({rng.log_uniform(0.5, 4.0), rng.log_uniform(0.5, 4.0)});
  }
  CHECK(multiplicativity_check(Generator::power(1, 2.7), pairs) < 1e-10);
  CHECK(multiplicativity_check(Generator::power(4, 0.6), pairs) < 1e-10);
  CHECK(multiplicativity_check(
            Generator::expm1(),
            std::vector<std::array<double, 2>>{{2.0, 2.0}}) > 0.1);

  // Pairs with a unit coordinate contribute nothing.
  CHECK(multiplicativity_check(
            Generator::expm1(),
            std::vector<std::array<double, 2>>{{2.0, 1.0}, {1.0, 3.0}}) <
        1e-12);
}

TEST_CASE("tight power fits imply multiplicativity") {
  std::vector<double> grid;
  for (int i = 0; i < 30; ++i) grid.push_back(0.5 + 0.3 * i);
  std::vector<std::array<double, 2>> pairs;
  for (int i = 0; i + 1 < 12; ++i) {
    pairs.push_back({grid[i], grid[i + 1] / 4.0});
  }
  for (const auto& gen :
       {Generator::power(1, 2), Generator::power(3, 0.5),
        Generator::power(2, 1.8), Generator::expm1(), Generator::log1p()}) {
    const auto fit = power_fit(gen, grid);
    if (fit.max_relative_residual < 1e-8) {
      CHECK(multiplicativity_check(gen, pairs) < 1e-6);
    }
  }
}

TEST_CASE("hardy_condition_check classifies generators") {
  std::vector<double> grid;
  for (int i = 0; i < 12; ++i) grid.push_back(0.4 + 0.3 * i);

  const auto he = hardy_condition_check(Generator::expm1(), grid);
  CHECK(he.passes);
  CHECK_FALSE(he.indeterminate);

  CHECK(hardy_condition_check(Generator::power(1, 2), grid).passes);
  CHECK(hardy_condition_check(Generator::power(1, 3.5), grid).passes);

  const auto hlin = hardy_condition_check(Generator::power(1, 1), grid);
  CHECK(hlin.indeterminate);
  CHECK_FALSE(hlin.passes);

  const auto hconc = hardy_condition_check(Generator::power(1, 0.5), grid);
  CHECK_FALSE(hconc.passes);
  CHECK_FALSE(hconc.positivity_ok);

  // Piecewise-linear generators have no curvature inside segments.
  const auto htab = hardy_condition_check(
      Generator::tabulated({{0, 0}, {2, 3}, {4, 7}, {8, 16}}), grid);
  CHECK(htab.indeterminate);
  CHECK_FALSE(htab.passes);
}

TEST_CASE("certified concavity violations yield Holder counterexamples") {
  // The two probes agree: a pair flagged non-concave by the grid scan also
  // admits a certified inequality violation, and a concave pair does not.
  const GeneratorPair bad{Generator::power(1, 3), Generator::power(1, 1.2)};
  const auto verdict = concavity_scan(bad, kS, kT, 9);
  REQUIRE_FALSE(verdict.concave_on_grid);
  SearchOptions opt;
  opt.seed = 77;
  opt.budget = 10000;
  const auto witness = counterexample_search(bad, make_space({0.5, 0.5}), opt);
  CHECK(witness.has_value());

  const GeneratorPair good{Generator::power(1, 2), Generator::power(1, 2)};
  REQUIRE(concavity_scan(good, kS, kT, 9).concave_on_grid);
  CHECK_FALSE(
      counterexample_search(good, make_space({0.5, 0.5}), opt).has_value());
}

TEST_CASE("strict_gap_demo orders power functionals") {
  const auto mu = make_space({0.5, 0.5});

  const auto r = strict_gap_demo(2, 1, StepFunction(mu, {1, 2}), mu);
  CHECK(r.lower_functional == Catch::Approx(1.5).epsilon(1e-14));
  CHECK(r.upper_functional ==
        Catch::Approx(1.5811388300841898).epsilon(1e-14));
  CHECK(r.strict);

  const auto r2 = strict_gap_demo(3, 2, StepFunction(mu, {1, 3}), mu);
  CHECK(r2.lower_functional ==
        Catch::Approx(2.23606797749979).epsilon(1e-13));
  CHECK(r2.upper_functional ==
        Catch::Approx(2.41014226417523).epsilon(1e-13));
  CHECK(r2.strict);

  CHECK_THROWS_AS(strict_gap_demo(2, 1, constant_function(mu, 1.5), mu),
                  validation_error);
  CHECK_THROWS_AS(strict_gap_demo(1, 2, StepFunction(mu, {1, 2}), mu),
                  validation_error);
  CHECK_THROWS_AS(strict_gap_demo(2, 1, StepFunction(make_space({1, 1}), {1, 2}),
                                  make_space({1, 1})),
                  validation_error);
}

TEST_CASE("functional_equivalence_scan") {
  std::vector<std::array<double, 2>> samples{{1, 4}, {0.5, 2}, {2, 3}};

  SECTION("scaling a generator does not change its mean") {
    for (const auto& gen :
         {Generator::power(1, 2), Generator::expm1(), Generator::log1p()}) {
      CHECK(functional_equivalence_scan(gen, gen.scaled(7.0), samples) <
            1e-10);
    }
  }

  SECTION("different powers disagree") {
    CHECK(functional_equivalence_scan(
              Generator::power(1, 2), Generator::power(1, 3),
              std::vector<std::array<double, 2>>{{1, 4}}) > 0.01);
  }

  SECTION("equal sample coordinates contribute nothing") {
    CHECK(functional_equivalence_scan(
              Generator::power(1, 2), Generator::power(1, 3),
              std::vector<std::array<double, 2>>{{2, 2}, {0.7, 0.7}}) <
          1e-12);
  }
}
