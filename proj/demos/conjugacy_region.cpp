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

// Prints a text map of which power pairs (p, q) give a concave
// F(s,t) = s^{1/p} t^{1/q}: '#' concave, '.' not.  The frontier traces the
// conjugacy curve 1/p + 1/q = 1.

#include <cstdio>

#include "meanineq/analysis.hpp"

int main() {
  using namespace meanineq;
  const int n = 24;
  const double lo = 1.1, hi = 5.0;
  std::printf("F(s,t)=s^(1/p) t^(1/q) midpoint-concavity on [0.1,4]^2\n");
  std::printf("p right, q down; '#' concave, '.' not\n\n");
  for (int j = 0; j < n; ++j) {
    const double q = lo + (hi - lo) * j / (n - 1.0);
    for (int i = 0; i < n; ++i) {
      const double p = lo + (hi - lo) * i / (n - 1.0);
      const auto verdict =
          concavity_scan({Generator::power(1, p), Generator::power(1, q)},
                         {0.1, 4.0}, {0.1, 4.0}, 7);
      std::putchar(verdict.concave_on_grid ? '#' : '.');
    }
    std::printf("  q=%.2f\n", q);
  }
  return 0;
}
