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

// Binomial distribution machinery and the DKW gap.
//
// The binomial CDF is evaluated by summing the probability mass function
// away from the mode, starting from a single pmf value computed with
// Loader's saddle-point expansion. Each tail sum only touches terms that
// shrink geometrically, so the result is accurate to ~1e-15 absolute for
// every n the library is used with (tested to 1e-12 against exact rational
// arithmetic).

#ifndef POLICYCERT_STATS_H_
#define POLICYCERT_STATS_H_

namespace policycert {

struct BinomialParams {
  int n = 1;       // trial count, n >= 1
  double p = 0.5;  // success probability

  // Throws InvalidArgument unless n >= 1 and 0 <= p <= 1.
  void validate() const;
};

// Pr[X = k] for X ~ Binomial(n, p). Zero outside 0..n.
double binom_pmf(int k, int n, double p);

// Pr[X <= k] for X ~ Binomial(n, p).
//
// k = -1 is allowed and returns 0. Outside [0, 1] the success probability
// follows the point-mass conventions: p <= 0 puts all mass at zero (so the
// CDF is 1 for k >= 0) and p >= 1 puts all mass at n. Rejects k > n, k < -1,
// n < 1 and non-finite p.
double binom_cdf(int k, int n, double p);
inline double binom_cdf(int k, const BinomialParams& params) {
  return binom_cdf(k, params.n, params.p);
}

// Largest p in [0, 1] with binom_cdf(k; n, p) >= target. Returns 1 when
// k == n. Solved by a fixed 60-step bisection, so the answer is within
// 2^-60 of the true root and always satisfies the inequality.
double binom_cdf_inverse_p(int k, int n, double target);

// sqrt(-ln(delta) / (2n)), the uniform deviation of the empirical CDF that
// the DKW inequality guarantees with probability 1 - delta. Valid for
// delta in (0, 0.5].
double dkw_gap(double delta, int n);

namespace internal {

// ln(n!) - ln(sqrt(2 pi n) (n/e)^n).
double stirling_error(double n);

// x ln(x/np) + np - x, evaluated without cancellation.
double binomial_deviance(double x, double np);

}  // namespace internal
}  // namespace policycert

#endif  // POLICYCERT_STATS_H_
