// Copyright 2026 The policycert Authors.
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

// Shared helpers for the test binaries. Sampling here deliberately uses the
// standard library generator, not the library's own streams.

#ifndef POLICYCERT_TESTS_TEST_SUPPORT_H_
#define POLICYCERT_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "policycert/sample_batch.h"

namespace policycert::testing {

inline std::vector<double> uniform_draws(std::mt19937_64& rng, int n, double lo = 0.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = u(rng);
  return v;
}

inline SampleBatch uniform_batch(std::mt19937_64& rng, int n,
                                 std::optional<double> upper_bound = 1.0) {
  return SampleBatch(uniform_draws(rng, n), upper_bound);
}

// Integral over g in [tau, 1] of the staircase upper quantile
// J_(ceil(n (g + eps))) (J_ub once the index passes n), divided by
// (1 - tau). Evaluated by midpoint quadrature on `steps` cells, so it shares
// no index arithmetic with the closed-form bound.
inline double staircase_oracle(const std::vector<double>& sorted, double j_ub, double tau,
                               double eps, int steps = 2'000'000) {
  const int n = static_cast<int>(sorted.size());
  const double h = (1.0 - tau) / steps;
  double total = 0.0;
  for (int s = 0; s < steps; ++s) {
    const double g = tau + (s + 0.5) * h;
    const double idx = std::ceil(n * (g + eps) - 1e-12);
    total += idx > n ? j_ub : sorted[static_cast<std::size_t>(std::max(1.0, idx)) - 1];
  }
  return total * h / (1.0 - tau);
}

// Binomial 3-sigma half-width.
inline double three_sigma(double p, int trials) {
  return 3.0 * std::sqrt(p * (1.0 - p) / trials);
}

}  // namespace policycert::testing

#endif  // POLICYCERT_TESTS_TEST_SUPPORT_H_
