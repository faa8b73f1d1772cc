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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "meanineq/generator.hpp"
#include "meanineq/measure.hpp"
#include "meanineq/random.hpp"
#include "oracles.hpp"

using namespace meanineq;

namespace {

std::vector<Generator> builtin_zoo() {
  return {Generator::power(1, 2), Generator::power(3, 0.5),
          Generator::power(2, 1), Generator::expm1(), Generator::log1p(),
          Generator::tabulated({{0, 0}, {1, 2}, {2, 3}, {5, 9}})};
}

}  // namespace

TEST_CASE("generator evaluation basics") {
  CHECK(Generator::power(1, 2).eval(3.0) == 9.0);
  CHECK(Generator::expm1().eval(1.0) ==
        Catch::Approx(1.718281828459045).epsilon(1e-15));
  for (const auto& gen : builtin_zoo()) {
    CHECK(gen.eval(0.0) == 0.0);
    CHECK_THROWS_AS(gen.eval(-1.0), domain_error);
  }
}

TEST_CASE("generator construction validation") {
  CHECK_THROWS_AS(Generator::power(0.0, 2.0), validation_error);
  CHECK_THROWS_AS(Generator::power(-1.0, 2.0), validation_error);
  CHECK_THROWS_AS(Generator::power(1.0, 0.0), validation_error);
  CHECK_THROWS_AS(Generator::tabulated({{0, 0}}), validation_error);
  CHECK_THROWS_AS(Generator::tabulated({{0.5, 0}, {1, 1}}), validation_error);
  CHECK_THROWS_AS(Generator::tabulated({{0, 0}, {1, 1}, {1, 2}}),
                  validation_error);
  CHECK_THROWS_AS(Generator::tabulated({{0, 0}, {1, 1}, {2, 0.5}}),
                  validation_error);
}

TEST_CASE("negative exponent is the extended path on t > 0") {
  const auto gamma = Generator::power(1, -1);
  CHECK(gamma.eval(2.0) == 0.5);
  CHECK_THROWS_AS(gamma.eval(0.0), domain_error);
  CHECK_FALSE(gamma.increasing());
  CHECK(gamma.inverse(0.5) == Catch::Approx(2.0));
  CHECK_THROWS_AS(gamma.inverse(0.0), range_error);
}

TEST_CASE("inverse closed forms and bisection") {
  CHECK(Generator::power(1, 2).inverse(9.0) == Catch::Approx(3.0));
  CHECK(Generator::log1p().inverse(1.0) ==
        Catch::Approx(1.718281828459045).epsilon(1e-12));
  CHECK(Generator::expm1().inverse(1.718281828459045) ==
        Catch::Approx(1.0).epsilon(1e-12));

  const auto tab = Generator::tabulated({{0, 0}, {1, 2}, {2, 3}});
  CHECK(tab.eval(0.5) == Catch::Approx(1.0));
  CHECK(tab.inverse(2.5) == Catch::Approx(1.5).epsilon(1e-12));
  CHECK_THROWS_AS(tab.inverse(3.5), range_error);
  CHECK_THROWS_AS(tab.eval(2.5), domain_error);
  CHECK_THROWS_AS(tab.inverse(-0.5), range_error);
}

TEST_CASE("inverse then eval is the identity", "[property]") {
  Rng rng(5);
  for (const auto& gen : builtin_zoo()) {
    const double tmax = std::min(gen.domain_sup(), 20.0);
    for (int rep = 0; rep < 40; ++rep) {
      const double t = rng.uniform(0.0, tmax);
      const double s = gen.eval(t);
      CHECK(gen.inverse(s) == Catch::Approx(t).epsilon(1e-10).margin(1e-10));
      CHECK(gen.eval(gen.inverse(s)) ==
            Catch::Approx(s).epsilon(1e-10).margin(1e-10));
    }
  }
}

TEST_CASE("inverse_generator stays in the kind family") {
  const auto inv2 = Generator::power(1, 2).inverse_generator();
  CHECK(inv2.is_power());
  CHECK(inv2.exponent() == Catch::Approx(0.5));

  const auto invp = Generator::power(3, 2.5).inverse_generator();
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const double t = rng.uniform(0.01, 10.0);
    CHECK(invp.eval(Generator::power(3, 2.5).eval(t)) ==
          Catch::Approx(t).epsilon(1e-12));
  }

  CHECK(Generator::expm1().inverse_generator().kind() ==
        GeneratorKind::Log1p);
  CHECK(Generator::log1p().inverse_generator().kind() ==
        GeneratorKind::Expm1);

  const auto tab = Generator::tabulated({{0, 0}, {1, 2}, {2, 3}});
  const auto tinv = tab.inverse_generator();
  CHECK(tinv.eval(2.0) == Catch::Approx(1.0));
  CHECK(tinv.eval(3.0) == Catch::Approx(2.0));
}

TEST_CASE("spec mini-language parses and round-trips") {
  const auto p = Generator::parse("power:1,2");
  CHECK(p.is_power());
  CHECK(p.coefficient() == 1.0);
  CHECK(p.exponent() == 2.0);
  CHECK(Generator::parse(p.spec_string()).eval(3.0) == 9.0);
  CHECK(Generator::parse("expm1").kind() == GeneratorKind::Expm1);
  CHECK(Generator::parse("log1p").kind() == GeneratorKind::Log1p);

  CHECK_THROWS_AS(Generator::parse("power:1"), validation_error);
  CHECK_THROWS_AS(Generator::parse("power:a,b"), validation_error);
  CHECK_THROWS_AS(Generator::parse("power:1,2,3"), validation_error);
  CHECK_THROWS_AS(Generator::parse("bogus"), validation_error);
  CHECK_THROWS_AS(Generator::parse("table:/nonexistent/file.csv"),
                  validation_error);
}

TEST_CASE("tabulated generator loads from CSV") {
  const std::string path = "test_generator_table.csv";
  {
    std::ofstream out(path);
    out << "0,0\n0.5,1\n1,3\n2,4\n";
  }
  const auto tab = Generator::parse("table:" + path);
  CHECK(tab.eval(0.25) == Catch::Approx(0.5));
  CHECK(tab.eval(1.5) == Catch::Approx(3.5));
  CHECK(tab.spec_string() == "table:" + path);

  {
    std::ofstream out(path);
    out << "0,0\n1,1\n0.5,2\n";
  }
  CHECK_THROWS_AS(Generator::parse("table:" + path), validation_error);
  std::remove(path.c_str());
}

TEST_CASE("p_functional examples") {
  const auto mu = make_space({0.5, 0.5});
  const StepFunction f(mu, {1, 2});
  CHECK(p_functional(Generator::power(1, 2), f, mu) ==
        Catch::Approx(1.5811388300841898).epsilon(1e-14));

  // Constants on a probabilistic space are fixed points of every generator.
  for (const auto& gen : builtin_zoo()) {
    const double c = std::min(1.7, gen.domain_sup() / 4.0);
    CHECK(p_functional(gen, constant_function(mu, c), mu) ==
          Catch::Approx(c).epsilon(1e-10));
  }

  // P is invariant under phi -> lambda * phi.
  CHECK(p_functional(Generator::power(5, 2), f, mu) ==
        Catch::Approx(p_functional(Generator::power(1, 2), f, mu))
            .epsilon(1e-12));
}

TEST_CASE("p_functional range error names the failure") {
  const auto tab = Generator::tabulated({{0, 0}, {1, 1}});
  const auto mu = make_space({1.0, 1.0});
  // Total mass 2 pushes the integral of phi(f) = 2 past the last knot.
  CHECK_THROWS_AS(p_functional(tab, constant_function(mu, 1.0), mu),
                  range_error);
}

TEST_CASE("quasi_mean basics") {
  const std::vector<double> half{0.5, 0.5};
  CHECK(quasi_mean(Generator::power(1, 1), std::vector<double>{1, 3}, half) ==
        Catch::Approx(2.0));
  CHECK(quasi_mean(Generator::power(1, 2), std::vector<double>{1, 3}, half) ==
        Catch::Approx(2.2360679774997896).epsilon(1e-14));
  for (const auto& gen : builtin_zoo()) {
    CHECK(quasi_mean(gen, std::vector<double>{1.2, 1.2, 1.2},
                     std::vector<double>{0.2, 0.5, 0.3}) ==
          Catch::Approx(1.2).epsilon(1e-10));
  }
  CHECK_THROWS_AS(quasi_mean(Generator::power(1, 2),
                             std::vector<double>{1, 2},
                             std::vector<double>{0.5, 0.6}),
                  validation_error);
  CHECK_THROWS_AS(quasi_mean(Generator::power(1, 2),
                             std::vector<double>{1, 2},
                             std::vector<double>{1.5, -0.5}),
                  validation_error);
}

TEST_CASE("quasi_mean stays between min and max", "[property]") {
  Rng rng(23);
  for (const auto& gen : builtin_zoo()) {
    for (int rep = 0; rep < 30; ++rep) {
      const std::size_t n = rng.uniform_index(2, 5);
      std::vector<double> a(n), w(n);
      double wsum = 0.0;
      const double cap = std::min(gen.domain_sup(), 8.0);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.uniform(0.0, cap);
        w[i] = rng.uniform(0.01, 1.0);
        wsum += w[i];
      }
      for (auto& wi : w) wi /= wsum;
      const double m = quasi_mean(gen, a, w);
      const double lo = *std::min_element(a.begin(), a.end());
      const double hi = *std::max_element(a.begin(), a.end());
      CHECK(m >= lo - 1e-9 * std::max(1.0, hi));
      CHECK(m <= hi + 1e-9 * std::max(1.0, hi));
    }
  }
}

TEST_CASE("mulholland_sum basics") {
  CHECK(mulholland_sum(Generator::power(1, 2), 3, 4) == Catch::Approx(5.0));
  CHECK(mulholland_sum(Generator::power(1, 1), 1.3, 2.4) ==
        Catch::Approx(3.7));
  Rng rng(31);
  for (const auto& gen : builtin_zoo()) {
    const double t = rng.uniform(0.0, std::min(gen.domain_sup(), 4.0) / 2.0);
    CHECK(mulholland_sum(gen, t, 0.0) == Catch::Approx(t).margin(1e-10));
    CHECK(mulholland_sum(gen, 0.7, t) ==
          Catch::Approx(mulholland_sum(gen, t, 0.7)).epsilon(1e-12));
  }
}

TEST_CASE("functionals are scale invariant", "[property]") {
  Rng rng(41);
  const auto mu = make_space({0.3, 0.7});
  for (const auto& gen : {Generator::power(1, 2), Generator::expm1(),
                          Generator::log1p(),
                          Generator::tabulated({{0, 0}, {1, 2}, {4, 5}})}) {
    for (double lambda : {0.25, 3.0, 17.5}) {
      const auto scaled = gen.scaled(lambda);
      const double cap = std::min(gen.domain_sup(), 3.9);
      for (int rep = 0; rep < 10; ++rep) {
        const double a = rng.uniform(0.0, cap), b = rng.uniform(0.0, cap);
        const StepFunction f(mu, {a, b});
        CHECK(p_functional(scaled, f, mu) ==
              Catch::Approx(p_functional(gen, f, mu))
                  .epsilon(1e-10)
                  .margin(1e-10));
        CHECK(quasi_mean(scaled, std::vector<double>{a, b},
                         std::vector<double>{0.5, 0.5}) ==
              Catch::Approx(quasi_mean(gen, std::vector<double>{a, b},
                                       std::vector<double>{0.5, 0.5}))
                  .epsilon(1e-10)
                  .margin(1e-10));
        // Keep phi(t1) + phi(t2) inside the represented range of the
        // tabulated generator.
        const double t1 = 0.15 * a, t2 = 0.15 * b;
        CHECK(mulholland_sum(scaled, t1, t2) ==
              Catch::Approx(mulholland_sum(gen, t1, t2))
                  .epsilon(1e-10)
                  .margin(1e-10));
      }
    }
  }
}

TEST_CASE("power functionals increase with the exponent", "[property]") {
  Rng rng(53);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = rng.uniform_index(2, 5);
    std::vector<double> w(n), fv(n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = rng.uniform(0.05, 1.0);
      wsum += w[i];
      fv[i] = rng.uniform(0.1, 5.0);
    }
    for (auto& wi : w) wi /= wsum;
    fv[0] += 1.0;  // guarantee non-constant
    const auto mu = make_space(w);
    const StepFunction f(mu, fv);
    double prev = -1.0;
    for (double p : {0.5, 1.0, 1.7, 2.0, 3.0, 5.0}) {
      const double cur = p_functional(Generator::power(1, p), f, mu);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}
