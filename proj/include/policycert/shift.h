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

// Sensitivity of the bounds to a simulator/deployment mismatch, and bounds
// that stay valid under a known mismatch budget.
//
// The mismatch is measured by the one-sided Kolmogorov-Smirnov distance
// alpha >= sup_x CDF_sim(x) - CDF_true(x): how much probability mass the
// deployment distribution moves towards higher cost.

#ifndef POLICYCERT_SHIFT_H_
#define POLICYCERT_SHIFT_H_

#include <optional>

#include "policycert/bounds.h"
#include "policycert/sample_batch.h"

namespace policycert {

struct ShiftBudget {
  double alpha = 0.0;

  void validate() const;
};

struct SensitivityResult {
  double delta_true = 0.0;  // error rate that still holds under the shift
  double delta_sim = 0.0;   // nominal error rate the bound was built for
  double alpha = 0.0;
  std::optional<int> k_star;        // VaR order-statistic index
  std::optional<double> epsilon;    // DKW gap at delta_sim
  std::optional<double> max_alpha;  // admissible alpha (E/CVaR)
  std::optional<int> k_star_alpha;  // failure-probability threshold count
};

// delta_true = 1 - binom_cdf(k* - 1; n, min(tau + alpha, 1)).
SensitivityResult var_sensitivity(int n, double tau, double delta_sim,
                                  double alpha);

// delta_true = exp(-2n (eps - alpha)^2). Also covers the expectation bound.
// Throws AlphaTooLarge when alpha > sqrt(-ln(2 delta_sim) / (2n)).
SensitivityResult cvar_sensitivity(int n, double delta_sim, double alpha);

// Requires the simulator's failure probability q_sim, so this is an
// analysis tool for synthetic studies rather than a certificate.
// delta_true = binom_cdf(k*_alpha - 1; n, q_sim) with
// k*_alpha = min{k : binom_cdf(k; n, q_sim + alpha) >= delta_sim}.
SensitivityResult failure_prob_sensitivity(int n, double q_sim,
                                           double delta_sim, double alpha);

// VaR bound at quantile tau + alpha. Throws kInvalidQuantile when
// tau + alpha >= 1.
BoundResult robust_var_bound(const SampleBatch& batch, double tau,
                             double delta, double alpha);

// CVaR (tau > 0) or expectation (tau = 0) bound with the DKW gap widened
// to eps + alpha.
BoundResult robust_cvar_bound(const SampleBatch& batch, double tau,
                              double delta, double alpha);

// max{q in [0, 1] : binom_cdf(k; n, q - alpha) >= delta}, which equals
// min(failure_prob_bound + alpha, 1).
BoundResult robust_failure_prob_bound(int failures, int n, double delta,
                                      double alpha);

// Dispatch by measure, mirroring compute_bound.
BoundResult compute_robust_bound(const SampleBatch& batch, const RiskSpec& spec,
                                 double alpha);

// Plug-in estimate of sup_x F_a(x) - F_b(x) from two empirical CDFs,
// clamped at 0. For diagnostics only; never used to certify.
double one_sided_ks_distance(const SampleBatch& a, const SampleBatch& b);

}  // namespace policycert

#endif  // POLICYCERT_SHIFT_H_
