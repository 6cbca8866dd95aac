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

#include "policycert/bounds.h"

#include <algorithm>
#include <cmath>
#include <ranges>
#include <string>

#include "policycert/error.h"
#include "policycert/stats.h"

namespace policycert {
namespace {

bool in_open_unit(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

void require_var_args(double tau, double delta) {
  internal::require(in_open_unit(tau), "VaR quantile tau must lie in (0, 1)");
  internal::require(in_open_unit(delta), "error rate delta must lie in (0, 1)");
}

void require_dkw_delta(double delta) {
  internal::require(std::isfinite(delta) && delta > 0.0 && delta <= 0.5,
                    "error rate delta must lie in (0, 0.5]");
}

bool var_feasible(int n, double tau, double delta) {
  return binom_cdf(n - 1, n, tau) >= 1.0 - delta;
}

}  // namespace

std::string_view measure_name(Measure measure) {
  switch (measure) {
    case Measure::kVaR:
      return "var";
    case Measure::kExpectation:
      return "expectation";
    case Measure::kCVaR:
      return "cvar";
    case Measure::kFailureProbability:
      return "failprob";
  }
  return "unknown";
}

Measure parse_measure(std::string_view name) {
  if (name == "var") return Measure::kVaR;
  if (name == "expectation" || name == "e" || name == "mean") {
    return Measure::kExpectation;
  }
  if (name == "cvar") return Measure::kCVaR;
  if (name == "failprob" || name == "failure_probability") {
    return Measure::kFailureProbability;
  }
  internal::throw_invalid("unknown measure '" + std::string(name) + "'");
}

void RiskSpec::validate() const {
  switch (measure) {
    case Measure::kVaR:
      require_var_args(tau, delta);
      break;
    case Measure::kExpectation:
      require_dkw_delta(delta);
      break;
    case Measure::kCVaR:
      internal::require(std::isfinite(tau) && tau >= 0.0 && tau < 1.0,
                        "CVaR quantile tau must lie in [0, 1)");
      require_dkw_delta(delta);
      break;
    case Measure::kFailureProbability:
      internal::require(in_open_unit(delta),
                        "error rate delta must lie in (0, 1)");
      break;
  }
}

int var_min_samples(double tau, double delta) {
  require_var_args(tau, delta);
  // The closed form can be off by one at exact ties; settle it with the
  // same predicate var_order_index uses.
  int n = std::max(1, static_cast<int>(std::ceil(std::log(delta) / std::log(tau))) - 1);
  while (!var_feasible(n, tau, delta)) ++n;
  return n;
}

int var_order_index(int n, double tau, double delta) {
  require_var_args(tau, delta);
  internal::require(n >= 1, "sample count must be >= 1");
  if (!var_feasible(n, tau, delta)) {
    throw InsufficientSamples(n, var_min_samples(tau, delta), "VaR bound");
  }
  // binom_cdf(k - 1; n, tau) is nondecreasing in k, so the first feasible
  // index is a partition point.
  const auto ks = std::views::iota(1, n + 1);
  const auto it = std::ranges::partition_point(ks, [&](int k) {
    return binom_cdf(k - 1, n, tau) < 1.0 - delta;
  });
  return *it;
}

BoundResult var_bound(const SampleBatch& batch, double tau, double delta) {
  const int k = var_order_index(batch.size(), tau, delta);
  BoundResult result;
  result.value = batch.order_statistic(k);
  result.measure = Measure::kVaR;
  result.k_index = k;
  result.nominal_confidence = 1.0 - delta;
  return result;
}

BoundResult cvar_bound_from_gap(const SampleBatch& batch, double tau,
                                double epsilon, double delta, Measure tag) {
  if (!batch.upper_bound()) {
    throw Error(ErrorCode::kMissingUpperBound,
                std::string(measure_name(tag)) +
                    " bound requires an almost-sure upper bound on the samples");
  }
  internal::require(std::isfinite(tau) && tau >= 0.0 && tau < 1.0,
                    "quantile tau must lie in [0, 1)");
  internal::require(std::isfinite(epsilon) && epsilon > 0.0,
                    "CDF offset epsilon must be positive");
  const double upper = *batch.upper_bound();
  const int n = batch.size();

  BoundResult result;
  result.measure = tag;
  result.epsilon = epsilon;
  result.nominal_confidence = 1.0 - delta;

  const auto excess = [&](int k) {
    return static_cast<double>(k) / n - epsilon - tau;
  };
  // Start near the root of k/n = epsilon + tau and walk to the smallest k
  // with a nonnegative first-step weight.
  int k = std::clamp(static_cast<int>(std::floor(n * (epsilon + tau))), 1, n + 1);
  while (k > 1 && excess(k - 1) >= 0.0) --k;
  while (k <= n && excess(k) < 0.0) ++k;
  if (k > n) {
    result.value = upper;
    result.defaulted = true;
    return result;
  }

  const auto values = batch.values();
  double tail = 0.0;
  for (int i = k; i < n; ++i) tail += values[static_cast<std::size_t>(i)];
  const double integral =
      epsilon * upper + excess(k) * batch.order_statistic(k) + tail / n;
  result.value = integral / (1.0 - tau);
  result.k_index = k;
  return result;
}

BoundResult expectation_bound(const SampleBatch& batch, double delta) {
  require_dkw_delta(delta);
  return cvar_bound_from_gap(batch, 0.0, dkw_gap(delta, batch.size()), delta,
                             Measure::kExpectation);
}

BoundResult cvar_bound(const SampleBatch& batch, double tau, double delta) {
  RiskSpec{Measure::kCVaR, tau, delta}.validate();
  return cvar_bound_from_gap(batch, tau, dkw_gap(delta, batch.size()), delta,
                             Measure::kCVaR);
}

BoundResult failure_prob_bound(int failures, int n, double delta) {
  internal::require(n >= 1, "sample count must be >= 1");
  internal::require(failures >= 0 && failures <= n,
                    "failure count must lie in [0, n]");
  internal::require(in_open_unit(delta), "error rate delta must lie in (0, 1)");
  BoundResult result;
  result.value = binom_cdf_inverse_p(failures, n, delta);
  result.measure = Measure::kFailureProbability;
  result.nominal_confidence = 1.0 - delta;
  return result;
}

BoundResult var_bound_max_baseline(const SampleBatch& batch, double tau,
                                   double delta) {
  require_var_args(tau, delta);
  const int n = batch.size();
  if (!var_feasible(n, tau, delta)) {
    throw InsufficientSamples(n, var_min_samples(tau, delta),
                              "largest-order-statistic VaR baseline");
  }
  BoundResult result;
  result.value = batch.order_statistic(n);
  result.measure = Measure::kVaR;
  result.k_index = n;
  result.nominal_confidence = 1.0 - delta;
  return result;
}

BoundResult var_bound_dkw_baseline(const SampleBatch& batch, double tau,
                                   double delta) {
  internal::require(in_open_unit(tau), "VaR quantile tau must lie in (0, 1)");
  require_dkw_delta(delta);
  const int n = batch.size();
  const auto index_for = [&](int m) {
    return static_cast<long long>(std::ceil(m * (tau + dkw_gap(delta, m))));
  };
  const long long k = index_for(n);
  if (k > n) {
    int required = std::max(
        n + 1, static_cast<int>(-std::log(delta) / (2.0 * (1.0 - tau) * (1.0 - tau))));
    while (index_for(required) > required) ++required;
    throw InsufficientSamples(n, required, "DKW-quantile VaR baseline");
  }
  BoundResult result;
  result.k_index = static_cast<int>(std::max(1LL, k));
  result.value = batch.order_statistic(*result.k_index);
  result.measure = Measure::kVaR;
  result.epsilon = dkw_gap(delta, n);
  result.nominal_confidence = 1.0 - delta;
  return result;
}

BoundResult compute_bound(const SampleBatch& batch, const RiskSpec& spec) {
  spec.validate();
  switch (spec.measure) {
    case Measure::kVaR:
      return var_bound(batch, spec.tau, spec.delta);
    case Measure::kExpectation:
      return expectation_bound(batch, spec.delta);
    case Measure::kCVaR:
      return cvar_bound(batch, spec.tau, spec.delta);
    case Measure::kFailureProbability:
      return failure_prob_bound(batch.count_above(0.0), batch.size(),
                                spec.delta);
  }
  internal::throw_invalid("unknown measure");
}

}  // namespace policycert
