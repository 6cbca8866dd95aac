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

#include "policycert/shift.h"

#include <algorithm>
#include <cmath>

#include "policycert/error.h"
#include "policycert/stats.h"

namespace policycert {
namespace {

void require_alpha(double alpha) { ShiftBudget{alpha}.validate(); }

}  // namespace

void ShiftBudget::validate() const {
  internal::require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0,
                    "shift budget alpha must lie in [0, 1]");
}

SensitivityResult var_sensitivity(int n, double tau, double delta_sim,
                                  double alpha) {
  require_alpha(alpha);
  const int k_star = var_order_index(n, tau, delta_sim);
  SensitivityResult result;
  result.delta_sim = delta_sim;
  result.alpha = alpha;
  result.k_star = k_star;
  const double shifted = std::min(tau + alpha, 1.0);
  result.delta_true = 1.0 - binom_cdf(k_star - 1, n, shifted);
  return result;
}

SensitivityResult cvar_sensitivity(int n, double delta_sim, double alpha) {
  require_alpha(alpha);
  const double epsilon = dkw_gap(delta_sim, n);
  const double max_alpha = std::sqrt(-std::log(2.0 * delta_sim) / (2.0 * n));
  if (alpha > max_alpha) throw AlphaTooLarge(alpha, max_alpha);
  SensitivityResult result;
  result.delta_sim = delta_sim;
  result.alpha = alpha;
  result.epsilon = epsilon;
  result.max_alpha = max_alpha;
  const double gap = epsilon - alpha;
  result.delta_true = std::exp(-2.0 * n * gap * gap);
  return result;
}

SensitivityResult failure_prob_sensitivity(int n, double q_sim,
                                           double delta_sim, double alpha) {
  require_alpha(alpha);
  internal::require(n >= 1, "sample count must be >= 1");
  internal::require(std::isfinite(q_sim) && q_sim >= 0.0 && q_sim <= 1.0,
                    "q_sim must lie in [0, 1]");
  internal::require(q_sim + alpha <= 1.0, "q_sim + alpha must not exceed 1");
  internal::require(std::isfinite(delta_sim) && delta_sim > 0.0 && delta_sim < 1.0,
                    "error rate delta must lie in (0, 1)");
  int k = 0;
  while (binom_cdf(k, n, q_sim + alpha) < delta_sim) ++k;  // terminates at k = n
  SensitivityResult result;
  result.delta_sim = delta_sim;
  result.alpha = alpha;
  result.k_star_alpha = k;
  result.delta_true = binom_cdf(k - 1, n, q_sim);
  return result;
}

BoundResult robust_var_bound(const SampleBatch& batch, double tau, double delta,
                             double alpha) {
  require_alpha(alpha);
  if (!(tau + alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidQuantile,
                "robust VaR needs tau + alpha < 1");
  }
  return var_bound(batch, tau + alpha, delta);
}

BoundResult robust_cvar_bound(const SampleBatch& batch, double tau,
                              double delta, double alpha) {
  require_alpha(alpha);
  const Measure tag = tau == 0.0 ? Measure::kExpectation : Measure::kCVaR;
  RiskSpec{Measure::kCVaR, tau, delta}.validate();
  return cvar_bound_from_gap(batch, tau, dkw_gap(delta, batch.size()) + alpha,
                             delta, tag);
}

BoundResult robust_failure_prob_bound(int failures, int n, double delta,
                                      double alpha) {
  require_alpha(alpha);
  // Validates the remaining arguments.
  BoundResult result = failure_prob_bound(failures, n, delta);
  if (failures == n) return result;
  // binom_cdf(k; n, q - alpha) is 1 for q <= alpha and decreasing after, so
  // the feasible set is an interval [0, q_max].
  double lo = 0.0;
  double hi = 1.0;
  if (binom_cdf(failures, n, hi - alpha) >= delta) {
    lo = hi;
  } else {
    for (int iter = 0; iter < 60; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (binom_cdf(failures, n, mid - alpha) >= delta) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  result.value = lo;
  return result;
}

BoundResult compute_robust_bound(const SampleBatch& batch, const RiskSpec& spec,
                                 double alpha) {
  spec.validate();
  switch (spec.measure) {
    case Measure::kVaR:
      return robust_var_bound(batch, spec.tau, spec.delta, alpha);
    case Measure::kExpectation:
      return robust_cvar_bound(batch, 0.0, spec.delta, alpha);
    case Measure::kCVaR:
      return robust_cvar_bound(batch, spec.tau, spec.delta, alpha);
    case Measure::kFailureProbability:
      return robust_failure_prob_bound(batch.count_above(0.0), batch.size(),
                                       spec.delta, alpha);
  }
  internal::throw_invalid("unknown measure");
}

double one_sided_ks_distance(const SampleBatch& a, const SampleBatch& b) {
  const auto xa = a.values();
  const auto xb = b.values();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  // Both empirical CDFs are right-continuous step functions; the supremum
  // of their difference is attained at one of the sample points.
  while (i < xa.size() || j < xb.size()) {
    double x;
    if (j >= xb.size() || (i < xa.size() && xa[i] <= xb[j])) {
      x = xa[i];
    } else {
      x = xb[j];
    }
    while (i < xa.size() && xa[i] <= x) ++i;
    while (j < xb.size() && xb[j] <= x) ++j;
    best = std::max(best, static_cast<double>(i) / na - static_cast<double>(j) / nb);
  }
  return best;
}

}  // namespace policycert
