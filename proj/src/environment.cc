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

#include "policycert/environment.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "policycert/error.h"
#include "policycert/parallel.h"

namespace policycert {
namespace {

bool all_finite(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

[[noreturn]] void throw_non_finite(std::uint64_t seed, int t, const char* what) {
  std::ostringstream os;
  os << "rollout seed " << seed << " step " << t << ": non-finite " << what;
  throw Error(ErrorCode::kNonFinite, os.str());
}

double clip_term(double value, const std::optional<CostClip>& clip, bool& clipped) {
  if (!clip) return value;
  const double c = std::clamp(value, clip->lo, clip->hi);
  if (c != value) clipped = true;
  return c;
}

}  // namespace

double RandomStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Policy Policy::open_loop(std::vector<Vector> controls) {
  internal::require(!controls.empty(), "open-loop plan must have at least one step");
  return Policy(OpenLoop{std::move(controls)});
}

Policy Policy::closed_loop(int horizon, Feedback feedback) {
  internal::require(horizon >= 1, "policy horizon must be >= 1");
  internal::require(static_cast<bool>(feedback), "closed-loop policy needs a feedback map");
  return Policy(ClosedLoop{horizon, std::move(feedback)});
}

int Policy::horizon() const {
  if (const auto* plan = std::get_if<OpenLoop>(&impl_)) {
    return static_cast<int>(plan->controls.size());
  }
  return std::get<ClosedLoop>(impl_).horizon;
}

const std::vector<Vector>& Policy::controls() const {
  const auto* plan = std::get_if<OpenLoop>(&impl_);
  if (plan == nullptr) internal::throw_invalid("closed-loop policy has no fixed plan");
  return plan->controls;
}

Vector Policy::control(int t, const Vector& state, RandomStream& rng) const {
  if (const auto* plan = std::get_if<OpenLoop>(&impl_)) {
    return plan->controls.at(static_cast<std::size_t>(t));
  }
  return std::get<ClosedLoop>(impl_).feedback(t, state, rng);
}

std::optional<double> Environment::cost_upper_bound() const {
  const auto clip = cost_clip();
  if (!clip) return std::nullopt;
  return horizon() * clip->hi + (has_terminal_cost() ? clip->hi : 0.0);
}

Policy Environment::zero_policy() const {
  const ControlBounds bounds = control_bounds();
  Vector u(static_cast<std::size_t>(control_dim()), 0.0);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::clamp(0.0, bounds.lo[j], bounds.hi[j]);
  return Policy::open_loop(std::vector<Vector>(static_cast<std::size_t>(horizon()), u));
}

RolloutRecord rollout(const Environment& env, const Policy& policy,
                      std::uint64_t seed) {
  const int horizon = env.horizon();
  if (policy.horizon() != horizon) {
    internal::throw_invalid("policy horizon " + std::to_string(policy.horizon()) +
                            " does not match environment horizon " +
                            std::to_string(horizon));
  }
  const auto clip = env.cost_clip();

  RolloutRecord record;
  record.seed = seed;
  record.states.reserve(static_cast<std::size_t>(horizon) + 1);
  record.controls.reserve(static_cast<std::size_t>(horizon));

  RandomStream param_rng(seed, kLaneParameters);
  const Vector params = env.sample_parameters(param_rng);
  RandomStream init_rng(seed, kLaneInitialState);
  record.states.push_back(env.initial_state(params, init_rng));
  if (!all_finite(record.states.back())) throw_non_finite(seed, 0, "initial state");

  double total = 0.0;
  for (int t = 0; t < horizon; ++t) {
    const Vector& x = record.states.back();
    RandomStream policy_rng(seed, kLanePolicyBase + static_cast<std::uint64_t>(t));
    Vector u = policy.control(t, x, policy_rng);
    if (static_cast<int>(u.size()) != env.control_dim()) {
      internal::throw_invalid("control dimension mismatch at step " + std::to_string(t));
    }
    if (!all_finite(u)) throw_non_finite(seed, t, "control");
    const double c = env.stage_cost(t, x, u, params);
    if (!std::isfinite(c)) throw_non_finite(seed, t, "stage cost");
    total += clip_term(c, clip, record.clipped);
    RandomStream step_rng(seed, static_cast<std::uint64_t>(t));
    Vector next = env.transition(t, x, u, params, step_rng);
    if (!all_finite(next)) throw_non_finite(seed, t + 1, "state");
    record.controls.push_back(std::move(u));
    record.states.push_back(std::move(next));
  }
  if (env.has_terminal_cost()) {
    const double c = env.terminal_cost(record.states.back(), params);
    if (!std::isfinite(c)) throw_non_finite(seed, horizon, "terminal cost");
    total += clip_term(c, clip, record.clipped);
  }
  record.total_cost = total;
  record.constraint_value = env.constraint(record.states, record.controls, params);
  if (!std::isfinite(record.constraint_value)) {
    throw_non_finite(seed, horizon, "constraint value");
  }
  return record;
}

std::vector<RolloutRecord> collect_rollouts(const Environment& env,
                                            const Policy& policy, int n,
                                            std::uint64_t seed_base,
                                            int threads) {
  internal::require(n >= 0, "rollout count must be >= 0");
  std::vector<RolloutRecord> records(static_cast<std::size_t>(n));
  internal::parallel_for(n, threads, [&](int i) {
    records[static_cast<std::size_t>(i)] =
        rollout(env, policy, seed_base + static_cast<std::uint64_t>(i));
  });
  return records;
}

std::vector<double> sample_values(const Environment& env, const Policy& policy,
                                  int n, std::uint64_t seed_base,
                                  RecordField field, int threads) {
  internal::require(n >= 1, "sample count must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(n));
  internal::parallel_for(n, threads, [&](int i) {
    const RolloutRecord r = rollout(env, policy, seed_base + static_cast<std::uint64_t>(i));
    values[static_cast<std::size_t>(i)] =
        field == RecordField::kCost ? r.total_cost : r.constraint_value;
  });
  return values;
}

std::optional<double> field_upper_bound(const Environment& env, RecordField field) {
  return field == RecordField::kCost ? env.cost_upper_bound()
                                     : env.constraint_upper_bound();
}

SampleBatch sample_batch(const Environment& env, const Policy& policy, int n,
                         std::uint64_t seed_base, RecordField field, int threads) {
  return SampleBatch(sample_values(env, policy, n, seed_base, field, threads),
                     field_upper_bound(env, field));
}

}  // namespace policycert
