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

// Stochastic rollout harness.
//
// An Environment describes X_0 ~ X0, X_{t+1} ~ F_t(X_t, U_t), stage costs
// c_t, a terminal cost c_T and a trajectory constraint g. A rollout draws
// every random quantity from RandomStreams keyed by the rollout seed, so a
// (environment, policy, seed) triple always reproduces the same record and
// rollouts with different seeds are independent.

#ifndef POLICYCERT_ENVIRONMENT_H_
#define POLICYCERT_ENVIRONMENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "policycert/bounds.h"
#include "policycert/random.h"
#include "policycert/sample_batch.h"

namespace policycert {

using Vector = std::vector<double>;

struct ControlBounds {
  Vector lo;
  Vector hi;
};

// Per-term clip range applied to every stage cost and the terminal cost.
struct CostClip {
  double lo = 0.0;
  double hi = 0.0;
};

class Policy {
 public:
  // (t, state, randomness) -> control.
  using Feedback = std::function<Vector(int, const Vector&, RandomStream&)>;

  static Policy open_loop(std::vector<Vector> controls);
  static Policy closed_loop(int horizon, Feedback feedback);

  bool is_open_loop() const { return std::holds_alternative<OpenLoop>(impl_); }
  int horizon() const;
  // Open-loop plan; throws InvalidArgument for closed-loop policies.
  const std::vector<Vector>& controls() const;

  Vector control(int t, const Vector& state, RandomStream& rng) const;

 private:
  struct OpenLoop {
    std::vector<Vector> controls;
  };
  struct ClosedLoop {
    int horizon;
    Feedback feedback;
  };
  explicit Policy(std::variant<OpenLoop, ClosedLoop> impl) : impl_(std::move(impl)) {}

  std::variant<OpenLoop, ClosedLoop> impl_;
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string_view kind() const = 0;
  virtual int horizon() const = 0;
  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;
  virtual ControlBounds control_bounds() const = 0;

  // Per-rollout physical parameters (mass, friction analogs). Drawn once per
  // rollout from its own lane of the rollout seed.
  virtual Vector sample_parameters(RandomStream& /*rng*/) const { return {}; }
  virtual Vector initial_state(const Vector& params, RandomStream& rng) const = 0;
  virtual Vector transition(int t, const Vector& state, const Vector& control,
                            const Vector& params, RandomStream& rng) const = 0;
  virtual double stage_cost(int t, const Vector& state, const Vector& control,
                            const Vector& params) const = 0;
  virtual double terminal_cost(const Vector& state, const Vector& params) const = 0;
  virtual bool has_terminal_cost() const { return true; }
  // Evaluated on the completed trajectory; g <= 0 means the constraint holds.
  virtual double constraint(std::span<const Vector> states,
                            std::span<const Vector> controls,
                            const Vector& params) const = 0;

  virtual std::optional<CostClip> cost_clip() const { return std::nullopt; }
  // Almost-sure upper bound on the total cost. The default derives it from
  // the clip range: T * hi, plus hi again when there is a terminal cost.
  virtual std::optional<double> cost_upper_bound() const;
  virtual std::optional<double> constraint_upper_bound() const { return std::nullopt; }

  // Closed-form value of a performance measure of the total cost under
  // `policy`, when the environment knows one. Failure probability refers
  // to the constraint.
  virtual std::optional<double> analytic_measure(const RiskSpec& /*spec*/,
                                                 const Policy& /*policy*/) const {
    return std::nullopt;
  }

  // The configuration this environment was built from.
  virtual nlohmann::json config() const = 0;

  // A plan of zeros clamped into the control bounds.
  Policy zero_policy() const;
};

struct RolloutRecord {
  std::uint64_t seed = 0;
  std::vector<Vector> states;    // length T + 1
  std::vector<Vector> controls;  // length T
  double total_cost = 0.0;
  double constraint_value = 0.0;
  bool clipped = false;
};

// Runs one trajectory. Never truncates on constraint violation. Throws
// kNonFinite (with seed and step) if a state, control or cost is not finite.
RolloutRecord rollout(const Environment& env, const Policy& policy,
                      std::uint64_t seed);

enum class RecordField { kCost, kConstraint };

// Rollouts at seeds seed_base .. seed_base + n - 1. `threads` > 1 spreads
// them over worker threads; the result does not depend on scheduling.
std::vector<RolloutRecord> collect_rollouts(const Environment& env,
                                            const Policy& policy, int n,
                                            std::uint64_t seed_base,
                                            int threads = 1);

// Sorted batch of the chosen field over n rollouts, with the matching
// almost-sure upper bound attached when the environment declares one.
SampleBatch sample_batch(const Environment& env, const Policy& policy, int n,
                         std::uint64_t seed_base,
                         RecordField field = RecordField::kCost,
                         int threads = 1);

// Raw (unsorted, seed-ordered) values; cheaper when only values are needed.
std::vector<double> sample_values(const Environment& env, const Policy& policy,
                                  int n, std::uint64_t seed_base,
                                  RecordField field, int threads = 1);

std::optional<double> field_upper_bound(const Environment& env, RecordField field);

}  // namespace policycert

#endif  // POLICYCERT_ENVIRONMENT_H_
