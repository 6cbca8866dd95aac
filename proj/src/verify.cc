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

#include "policycert/verify.h"

#include <cmath>
#include <string>

#include "policycert/error.h"

namespace policycert {
namespace {

template <typename BoundFn>
TestOutcome run_test(const ConstraintSpec& spec, BoundFn&& make_bound) {
  internal::require(std::isfinite(spec.cutoff), "cutoff must be finite");
  TestOutcome outcome;
  outcome.cutoff = spec.cutoff;
  outcome.guaranteed_false_accept_rate = spec.measure.delta;
  try {
    outcome.bound = make_bound();
  } catch (const InsufficientSamples& e) {
    outcome.accepted = false;
    outcome.reason = e.what();
    return outcome;
  }
  outcome.accepted = outcome.bound->value <= spec.cutoff;
  outcome.reason = outcome.accepted ? "bound within cutoff" : "bound exceeds cutoff";
  return outcome;
}

}  // namespace

TestOutcome constraint_test(const SampleBatch& batch, const ConstraintSpec& spec) {
  spec.measure.validate();
  return run_test(spec, [&] { return compute_bound(batch, spec.measure); });
}

TestOutcome constraint_test(FailureCount counts, const ConstraintSpec& spec) {
  internal::require(spec.measure.measure == Measure::kFailureProbability,
                    "failure counts only support failure-probability constraints");
  spec.measure.validate();
  return run_test(spec, [&] {
    return failure_prob_bound(counts.failures, counts.n, spec.measure.delta);
  });
}

std::string_view chance_route_name(ChanceRoute route) {
  switch (route) {
    case ChanceRoute::kViaVarOrderStatistic:
      return "var";
    case ChanceRoute::kViaFailureProbability:
      return "failprob";
  }
  return "unknown";
}

ChanceRoute parse_chance_route(std::string_view name) {
  if (name == "var" || name == "via_var_order_statistic") {
    return ChanceRoute::kViaVarOrderStatistic;
  }
  if (name == "failprob" || name == "via_failure_probability") {
    return ChanceRoute::kViaFailureProbability;
  }
  internal::throw_invalid("unknown chance-constraint route '" +
                          std::string(name) + "'");
}

TestOutcome chance_constraint_test(const SampleBatch& g, double tau,
                                   double delta, ChanceRoute route) {
  switch (route) {
    case ChanceRoute::kViaVarOrderStatistic:
      return constraint_test(g, {{Measure::kVaR, tau, delta}, 0.0});
    case ChanceRoute::kViaFailureProbability:
      return constraint_test(FailureCount{g.count_above(0.0), g.size()},
                             {{Measure::kFailureProbability, tau, delta}, 1.0 - tau});
  }
  internal::throw_invalid("unknown chance-constraint route");
}

bool chance_constraint_routes_agree(const SampleBatch& g, double tau,
                                    double delta) {
  for (double v : g.values()) {
    internal::require(v == 0.0 || v == 1.0, "chance-constraint samples must be binary");
  }
  const bool via_var =
      chance_constraint_test(g, tau, delta, ChanceRoute::kViaVarOrderStatistic).accepted;
  const bool via_failprob =
      chance_constraint_test(g, tau, delta, ChanceRoute::kViaFailureProbability).accepted;
  return via_var == via_failprob;
}

std::string_view correction_name(Correction correction) {
  switch (correction) {
    case Correction::kSidak:
      return "sidak";
    case Correction::kBonferroni:
      return "bonferroni";
    case Correction::kNone:
      return "none";
  }
  return "unknown";
}

Correction parse_correction(std::string_view name) {
  if (name == "sidak") return Correction::kSidak;
  if (name == "bonferroni") return Correction::kBonferroni;
  if (name == "none") return Correction::kNone;
  internal::throw_invalid("unknown correction '" + std::string(name) + "'");
}

double inflate_delta(double delta, int m, Correction correction) {
  internal::require(std::isfinite(delta) && delta > 0.0 && delta < 1.0,
                    "error rate delta must lie in (0, 1)");
  internal::require(m >= 1, "policy count must be >= 1");
  if (m == 1) return delta;
  switch (correction) {
    case Correction::kSidak:
      // 1 - (1 - delta)^(1/m) without cancellation for small delta.
      return -std::expm1(std::log1p(-delta) / m);
    case Correction::kBonferroni:
      return delta / m;
    case Correction::kNone:
      return delta;
  }
  internal::throw_invalid("unknown correction");
}

SelectionReport select_policy(std::span<const SampleBatch> batches,
                              const RiskSpec& spec,
                              const SelectionOptions& options) {
  internal::require(!batches.empty(), "selection needs at least one policy");
  spec.validate();
  const int m = static_cast<int>(batches.size());

  SelectionReport report;
  report.correction = options.correction;
  report.inflated_delta = inflate_delta(spec.delta, m, options.correction);
  RiskSpec inflated = spec;
  inflated.delta = report.inflated_delta;

  report.per_policy_bounds.reserve(batches.size());
  for (int i = 0; i < m; ++i) {
    BoundResult bound;
    try {
      bound = compute_bound(batches[static_cast<std::size_t>(i)], inflated);
    } catch (const Error& e) {
      throw SelectionError(i, e.code(), e.what());
    }
    if (bound.defaulted && !options.allow_defaulted) {
      throw SelectionError(i, ErrorCode::kInsufficientSamples,
                           "bound defaulted to the almost-sure upper bound");
    }
    report.per_policy_bounds.push_back(bound);
  }
  report.chosen_index = 0;
  for (int i = 1; i < m; ++i) {
    if (report.per_policy_bounds[static_cast<std::size_t>(i)].value <
        report.per_policy_bounds[static_cast<std::size_t>(report.chosen_index)].value) {
      report.chosen_index = i;
    }
  }
  report.chosen_bound =
      report.per_policy_bounds[static_cast<std::size_t>(report.chosen_index)].value;
  return report;
}

}  // namespace policycert
