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

#include "policycert/stats.h"

#include <cmath>
#include <numbers>

#include "policycert/error.h"

namespace policycert {
namespace {

constexpr double kLn2Pi = 1.837877066409345483560659472811;
constexpr double kTailTolerance = 1e-17;

// Sum of pmf(i) for i = k, k-1, ..., 0. Requires k < (n + 1) p, so every
// step away from k shrinks the terms.
double lower_tail(int k, int n, double p) {
  const double q = 1.0 - p;
  double term = binom_pmf(k, n, p);
  double sum = term;
  for (int i = k; i > 0 && term > 0.0; --i) {
    const double ratio = (i * q) / ((n - i + 1) * p);
    term *= ratio;
    sum += term;
    if (term * ratio < kTailTolerance * sum * (1.0 - ratio)) break;
  }
  return sum;
}

// Sum of pmf(i) for i = j, j+1, ..., n. Requires j > (n + 1) p - 1.
double upper_tail(int j, int n, double p) {
  const double q = 1.0 - p;
  double term = binom_pmf(j, n, p);
  double sum = term;
  for (int i = j; i < n && term > 0.0; ++i) {
    const double ratio = ((n - i) * p) / ((i + 1) * q);
    term *= ratio;
    sum += term;
    if (term * ratio < kTailTolerance * sum * (1.0 - ratio)) break;
  }
  return sum;
}

}  // namespace

void BinomialParams::validate() const {
  internal::require(n >= 1, "binomial trial count must be >= 1");
  internal::require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
                    "binomial success probability must lie in [0, 1]");
}

namespace internal {

double stirling_error(double n) {
  constexpr double kS0 = 1.0 / 12.0;
  constexpr double kS1 = 1.0 / 360.0;
  constexpr double kS2 = 1.0 / 1260.0;
  constexpr double kS3 = 1.0 / 1680.0;
  constexpr double kS4 = 1.0 / 1188.0;
  if (n <= 15.0) {
    // Extended precision keeps the cancellation below 1e-17 here.
    const long double x = n;
    if (x == 0.0L) return 0.0;
    return static_cast<double>(std::lgamma(x + 1.0L) - (x + 0.5L) * std::log(x) +
                               x - 0.5L * static_cast<long double>(kLn2Pi));
  }
  const double nn = n * n;
  if (n > 500) return (kS0 - kS1 / nn) / n;
  if (n > 80) return (kS0 - (kS1 - kS2 / nn) / nn) / n;
  if (n > 35) return (kS0 - (kS1 - (kS2 - kS3 / nn) / nn) / nn) / n;
  return (kS0 - (kS1 - (kS2 - (kS3 - kS4 / nn) / nn) / nn) / nn) / n;
}

double binomial_deviance(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

}  // namespace internal

double binom_pmf(int k, int n, double p) {
  internal::require(n >= 0, "binomial trial count must be >= 0");
  internal::require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
                    "binomial success probability must lie in [0, 1]");
  if (k < 0 || k > n) return 0.0;
  const double q = 1.0 - p;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (q == 0.0) return k == n ? 1.0 : 0.0;
  if (k == 0) {
    if (n == 0) return 1.0;
    const double lc =
        p < 0.1 ? -internal::binomial_deviance(n, n * q) - n * p : n * std::log(q);
    return std::exp(lc);
  }
  if (k == n) {
    const double lc =
        q < 0.1 ? -internal::binomial_deviance(n, n * p) - n * q : n * std::log(p);
    return std::exp(lc);
  }
  const double x = k;
  const double m = n;
  const double lc = internal::stirling_error(m) - internal::stirling_error(x) -
                    internal::stirling_error(m - x) -
                    internal::binomial_deviance(x, m * p) -
                    internal::binomial_deviance(m - x, m * q);
  const double lf = kLn2Pi + std::log(x) + std::log1p(-x / m);
  return std::exp(lc - 0.5 * lf);
}

double binom_cdf(int k, int n, double p) {
  internal::require(n >= 1, "binomial trial count must be >= 1");
  internal::require(std::isfinite(p), "binomial success probability must be finite");
  internal::require(k >= -1, "binomial CDF argument must be >= -1");
  internal::require(k <= n, "binomial CDF argument exceeds the trial count");
  if (k < 0) return 0.0;
  if (k == n) return 1.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  if (k <= n * p) return lower_tail(k, n, p);
  return 1.0 - upper_tail(k + 1, n, p);
}

double binom_cdf_inverse_p(int k, int n, double target) {
  internal::require(n >= 1, "binomial trial count must be >= 1");
  internal::require(k >= 0 && k <= n, "failure count must lie in [0, n]");
  internal::require(std::isfinite(target) && target > 0.0 && target < 1.0,
                    "target probability must lie in (0, 1)");
  if (k == n) return 1.0;
  // binom_cdf(k; n, 0) = 1 >= target and binom_cdf(k; n, 1) = 0 < target.
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (binom_cdf(k, n, mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double dkw_gap(double delta, int n) {
  internal::require(n >= 1, "sample count must be >= 1");
  internal::require(std::isfinite(delta) && delta > 0.0 && delta <= 0.5,
                    "DKW gap requires delta in (0, 0.5]");
  return std::sqrt(-std::log(delta) / (2.0 * n));
}

}  // namespace policycert
