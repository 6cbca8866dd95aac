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

// Constraint tests with a guaranteed false-acceptance rate and selection
// among several candidate policies.
//
// A test accepts "P(g) <= C" when the finite-sample upper bound on P(g) is
// at most C. Because the bound holds with probability 1 - delta, an unsafe
// policy is accepted with probability at most delta.

#ifndef POLICYCERT_VERIFY_H_
#define POLICYCERT_VERIFY_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "policycert/bounds.h"
#include "policycert/sample_batch.h"

namespace policycert {

struct FailureCount {
  int failures = 0;
  int n = 0;
};

struct ConstraintSpec {
  RiskSpec measure;
  double cutoff = 0.0;
};

struct TestOutcome {
  bool accepted = false;
  // Absent when the bound was infeasible (too few samples); the test then
  // rejects and `reason` says why.
  std::optional<BoundResult> bound;
  double cutoff = 0.0;
  double guaranteed_false_accept_rate = 0.0;
  std::string reason;
};

// Accepts iff compute_bound(batch, spec.measure).value <= spec.cutoff.
// Insufficient samples reject; a missing upper bound or bad arguments throw.
TestOutcome constraint_test(const SampleBatch& batch, const ConstraintSpec& spec);
// Failure-probability constraint from a failure count.
TestOutcome constraint_test(FailureCount counts, const ConstraintSpec& spec);

// Two ways to test the chance constraint Pr[g <= 0] >= tau.
enum class ChanceRoute {
  kViaVarOrderStatistic,   // VaR_tau bound on g compared with 0
  kViaFailureProbability,  // failure-probability bound compared with 1 - tau
};

std::string_view chance_route_name(ChanceRoute route);
ChanceRoute parse_chance_route(std::string_view name);

TestOutcome chance_constraint_test(const SampleBatch& g, double tau,
                                   double delta, ChanceRoute route);

// True when both routes reach the same decision on `g`. Values must be 0/1.
bool chance_constraint_routes_agree(const SampleBatch& g, double tau,
                                    double delta);

enum class Correction { kSidak, kBonferroni, kNone };

std::string_view correction_name(Correction correction);
Correction parse_correction(std::string_view name);

// Per-policy error rate that keeps the selected bound valid at level delta.
// kSidak: 1 - (1 - delta)^(1/m); kBonferroni: delta / m; kNone: delta.
double inflate_delta(double delta, int m, Correction correction);

struct SelectionReport {
  std::vector<BoundResult> per_policy_bounds;
  double inflated_delta = 0.0;
  Correction correction = Correction::kSidak;
  int chosen_index = 0;
  double chosen_bound = 0.0;
};

struct SelectionOptions {
  Correction correction = Correction::kSidak;
  // Accept bounds that fell back to J_ub instead of aborting.
  bool allow_defaulted = false;
};

// Bounds every batch at the inflated error rate and returns the argmin
// (ties go to the lowest index). Each batch must come from fresh, mutually
// independent rollouts of its policy. Throws SelectionError naming the
// offending policy when one of its bounds is infeasible.
SelectionReport select_policy(std::span<const SampleBatch> batches,
                              const RiskSpec& spec,
                              const SelectionOptions& options = {});

}  // namespace policycert

#endif  // POLICYCERT_VERIFY_H_
