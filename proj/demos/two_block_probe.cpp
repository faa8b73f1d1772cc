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

// The generalized Minkowski display survives a non-power generator as long
// as Y is probabilistic, but fails once Y carries mass 2.  This probe shows
// both regimes for phi = expm1 with its exact inverse.

#include <cstdio>

#include "meanineq/inequalities.hpp"
#include "meanineq/search.hpp"

int main() {
  using namespace meanineq;
  const GeneratorPair pair{Generator::expm1(), Generator::log1p()};

  // Probabilistic Y: the two-point quasi-mean midpoint inequality holds.
  const std::vector<double> a{0.5, 3.0}, b{2.0, 0.25}, w{0.5, 0.5};
  const auto mid = quasi_mean_midpoint_report(Generator::expm1(), a, b, w);
  std::printf("probabilistic Y : gap %+.6f (%s)\n", mid.gap,
              mid.holds ? "holds" : "violated");

  // Y of mass 2: the search certifies a two-block violation.
  SearchOptions opt;
  opt.target = SearchTarget::GeneralizedMinkowskiTwoBlock;
  opt.seed = 1;
  opt.budget = 20000;
  opt.nu = MeasureSpace({1.0, 1.0});
  const auto witness =
      counterexample_search(pair, MeasureSpace({0.5, 0.5}), opt);
  if (witness) {
    const auto& q = witness->quadruple;
    std::printf("Y of mass 2     : gap %+.6f at (t,u,v,w)=(%g,%g,%g,%g)\n",
                witness->report.gap, q[0], q[1], q[2], q[3]);
  } else {
    std::printf("Y of mass 2     : no violation found (unexpected)\n");
  }
  return witness ? 0 : 1;
}
