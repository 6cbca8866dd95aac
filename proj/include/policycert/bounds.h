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

// Distribution-free finite-sample upper bounds on VaR, expectation, CVaR and
// failure probability. Each bound holds with probability at least 1 - delta
// over the draw of the IID samples.

#ifndef POLICYCERT_BOUNDS_H_
#define POLICYCERT_BOUNDS_H_

#include <optional>
#include <string_view>

#include "policycert/sample_batch.h"

namespace policycert {

enum class Measure { kVaR, kExpectation, kCVaR, kFailureProbability };

std::string_view measure_name(Measure measure);
// Accepts "var", "expectation" (or "e", "mean"), "cvar", "failprob"
// (or "failure_probability"). Throws InvalidArgument otherwise.
Measure parse_measure(std::string_view name);

struct RiskSpec {
  Measure measure = Measure::kVaR;
  double tau = 0.0;    // quantile; ignored for expectation and failprob
  double delta = 0.2;  // bound error rate

  // Throws InvalidArgument when tau/delta fall outside the measure's domain.
  void validate() const;
};

struct BoundResult {
  double value = 0.0;
  Measure measure = Measure::kVaR;
  std::optional<int> k_index;     // order statistic used, 1-indexed
  std::optional<double> epsilon;  // DKW gap (possibly shift-inflated)
  bool defaulted = false;         // value is the almost-sure bound J_ub
  double nominal_confidence = 0.0;
};

// Smallest k with binom_cdf(k - 1; n, tau) >= 1 - delta. Throws
// InsufficientSamples when even k = n is infeasible.
int var_order_index(int n, double tau, double delta);

// ceil(ln(delta) / ln(tau)), the least n for which a VaR bound exists.
int var_min_samples(double tau, double delta);

// J_(k*) with k* = var_order_index(n, tau, delta).
BoundResult var_bound(const SampleBatch& batch, double tau, double delta);

// eps J_ub + (k/n - eps) J_(k) + (1/n) sum_{i>k} J_(i), eps = dkw_gap.
// Defaults to J_ub when n < -ln(delta)/2. Requires batch.upper_bound().
BoundResult expectation_bound(const SampleBatch& batch, double delta);

// Tail version of expectation_bound, normalised by 1/(1 - tau). Defaults
// to J_ub when n < -ln(delta) / (2 (1 - tau)^2). tau = 0 reproduces
// expectation_bound exactly.
BoundResult cvar_bound(const SampleBatch& batch, double tau, double delta);

// The CVaR staircase bound for an explicit CDF offset `epsilon` (the DKW
// gap, or the gap plus a shift budget). Defaults to J_ub when no k <= n
// satisfies k/n - epsilon - tau >= 0.
BoundResult cvar_bound_from_gap(const SampleBatch& batch, double tau,
                                double epsilon, double delta,
                                Measure tag = Measure::kCVaR);

// One-sided Clopper-Pearson upper limit on the failure probability after
// observing `failures` out of `n` Bernoulli trials.
BoundResult failure_prob_bound(int failures, int n, double delta);

// Baselines used for comparison only.
// Largest order statistic J_(n); same feasibility rule as var_bound.
BoundResult var_bound_max_baseline(const SampleBatch& batch, double tau,
                                   double delta);
// J_(k) with k = ceil(n (tau + eps)), the empirical quantile shifted by the
// DKW gap.
BoundResult var_bound_dkw_baseline(const SampleBatch& batch, double tau,
                                   double delta);

// Dispatches on spec.measure. For failure probability the batch holds
// constraint values and every value > 0 counts as a failure.
BoundResult compute_bound(const SampleBatch& batch, const RiskSpec& spec);

}  // namespace policycert

#endif  // POLICYCERT_BOUNDS_H_
