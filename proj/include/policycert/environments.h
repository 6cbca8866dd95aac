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

// Builtin synthetic environments and the config factory.

#ifndef POLICYCERT_ENVIRONMENTS_H_
#define POLICYCERT_ENVIRONMENTS_H_

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "policycert/distributions.h"
#include "policycert/environment.h"

namespace policycert {

// x_{t+1} = s A x_t + B u_t + w_t with w_t ~ N(0, process_noise^2 I) and
// X_0 = x0 + reset_noise_scale * N(0, I). The dynamics scale s is 1, or
// drawn per rollout from Uniform[dynamics_scale_range]. Costs are diagonal
// quadratics. The constraint watches |x_t[0]| against `limit`.
class LinearGaussianEnv final : public Environment {
 public:
  struct Params {
    int horizon = 20;
    std::vector<Vector> A = {{1.0}};
    std::vector<Vector> B = {{1.0}};
    Vector x0 = {0.0};
    double reset_noise_scale = 0.1;
    double process_noise = 0.1;
    Vector state_cost = {1.0};
    Vector control_cost = {0.1};
    Vector terminal_cost = {1.0};
    ControlBounds bounds = {{-1.0}, {1.0}};
    std::optional<CostClip> clip;
    std::optional<std::pair<double, double>> dynamics_scale_range;
    double limit = 1.0;
    bool binary_constraint = true;
  };

  explicit LinearGaussianEnv(Params params);

  std::string_view kind() const override { return "linear_gaussian"; }
  int horizon() const override { return p_.horizon; }
  int state_dim() const override { return static_cast<int>(p_.x0.size()); }
  int control_dim() const override { return static_cast<int>(p_.B.front().size()); }
  ControlBounds control_bounds() const override { return p_.bounds; }
  Vector sample_parameters(RandomStream& rng) const override;
  Vector initial_state(const Vector& params, RandomStream& rng) const override;
  Vector transition(int t, const Vector& state, const Vector& control,
                    const Vector& params, RandomStream& rng) const override;
  double stage_cost(int t, const Vector& state, const Vector& control,
                    const Vector& params) const override;
  double terminal_cost(const Vector& state, const Vector& params) const override;
  bool has_terminal_cost() const override;
  double constraint(std::span<const Vector> states, std::span<const Vector> controls,
                    const Vector& params) const override;
  std::optional<CostClip> cost_clip() const override { return p_.clip; }
  std::optional<double> constraint_upper_bound() const override;
  nlohmann::json config() const override;

  const Params& params() const { return p_; }

 private:
  Params p_;
};

// Scalar walk towards `goal` with a cliff: x_{t+1} = x_t + u_t + noise.
// Every step spent past `cliff` adds `penalty`, a cost discontinuity.
class CliffWalkEnv final : public Environment {
 public:
  struct Params {
    int horizon = 20;
    double x0 = 0.0;
    double reset_noise_scale = 0.1;
    double process_noise = 0.1;
    double goal = 1.0;
    double cliff = 1.5;
    double penalty = 10.0;
    double control_cost = 0.1;
    double max_step = 0.5;
    CostClip clip = {0.0, 20.0};
    bool binary_constraint = true;
  };

  explicit CliffWalkEnv(Params params);

  std::string_view kind() const override { return "cliff_walk"; }
  int horizon() const override { return p_.horizon; }
  int state_dim() const override { return 1; }
  int control_dim() const override { return 1; }
  ControlBounds control_bounds() const override {
    return {{-p_.max_step}, {p_.max_step}};
  }
  Vector initial_state(const Vector& params, RandomStream& rng) const override;
  Vector transition(int t, const Vector& state, const Vector& control,
                    const Vector& params, RandomStream& rng) const override;
  double stage_cost(int t, const Vector& state, const Vector& control,
                    const Vector& params) const override;
  double terminal_cost(const Vector& state, const Vector& params) const override;
  double constraint(std::span<const Vector> states, std::span<const Vector> controls,
                    const Vector& params) const override;
  std::optional<CostClip> cost_clip() const override { return p_.clip; }
  std::optional<double> constraint_upper_bound() const override;
  nlohmann::json config() const override;

 private:
  double location_cost(double x) const;

  Params p_;
};

// Binary task with a closed-form failure probability. The state is
// [position, failed]; position moves by u_t / T, so after T steps it is
// the mean control. On the last step the task fails with probability
// p = clamp(base_failure_prob + offset + slope * position, 0, 1).
// Cost and constraint are both the failure indicator.
class BernoulliTaskEnv final : public Environment {
 public:
  struct Params {
    int horizon = 5;
    double base_failure_prob = 0.5;
    double slope = 0.5;
    double offset = 0.0;  // deployment shift of the failure probability
  };

  explicit BernoulliTaskEnv(Params params);

  std::string_view kind() const override { return "bernoulli_task"; }
  int horizon() const override { return p_.horizon; }
  int state_dim() const override { return 2; }
  int control_dim() const override { return 1; }
  ControlBounds control_bounds() const override { return {{-1.0}, {1.0}}; }
  Vector initial_state(const Vector& params, RandomStream& rng) const override;
  Vector transition(int t, const Vector& state, const Vector& control,
                    const Vector& params, RandomStream& rng) const override;
  double stage_cost(int t, const Vector& state, const Vector& control,
                    const Vector& params) const override;
  double terminal_cost(const Vector& state, const Vector& params) const override;
  double constraint(std::span<const Vector> states, std::span<const Vector> controls,
                    const Vector& params) const override;
  std::optional<double> cost_upper_bound() const override { return 1.0; }
  std::optional<double> constraint_upper_bound() const override { return 1.0; }
  std::optional<double> analytic_measure(const RiskSpec& spec,
                                         const Policy& policy) const override;
  nlohmann::json config() const override;

  // Exact failure probability of an open-loop plan.
  double failure_probability(const Policy& policy) const;
  // Constant plan whose failure probability is q. Throws InvalidArgument
  // when q is out of reach of the control bounds.
  Policy plan_for_failure_probability(double q) const;

 private:
  double failure_probability_at(double position) const;

  Params p_;
};

// Horizon-1 "environment" whose total cost is drawn directly from a scalar
// distribution and shifted by `offset`. Its constraint is
// g = J - constraint_threshold. All measures are known in closed form.
class DirectDistributionEnv final : public Environment {
 public:
  DirectDistributionEnv(std::shared_ptr<const ScalarDistribution> distribution,
                        nlohmann::json distribution_config, double offset,
                        double constraint_threshold);

  std::string_view kind() const override { return "direct"; }
  int horizon() const override { return 1; }
  int state_dim() const override { return 1; }
  int control_dim() const override { return 1; }
  ControlBounds control_bounds() const override { return {{0.0}, {0.0}}; }
  Vector initial_state(const Vector& params, RandomStream& rng) const override;
  Vector transition(int t, const Vector& state, const Vector& control,
                    const Vector& params, RandomStream& rng) const override;
  double stage_cost(int t, const Vector& state, const Vector& control,
                    const Vector& params) const override;
  double terminal_cost(const Vector& state, const Vector& params) const override;
  double constraint(std::span<const Vector> states, std::span<const Vector> controls,
                    const Vector& params) const override;
  std::optional<double> cost_upper_bound() const override;
  std::optional<double> constraint_upper_bound() const override;
  std::optional<double> analytic_measure(const RiskSpec& spec,
                                         const Policy& policy) const override;
  nlohmann::json config() const override;

  const ScalarDistribution& distribution() const { return *distribution_; }
  double offset() const { return offset_; }

 private:
  std::shared_ptr<const ScalarDistribution> distribution_;
  nlohmann::json distribution_config_;
  double offset_;
  double threshold_;
};

// Builds an environment from {"kind": ..., ...}. Throws ConfigError with
// the offending field path, or Error(kUnknownEnvironment). `path` prefixes
// field names in diagnostics.
std::unique_ptr<Environment> make_environment(const nlohmann::json& config,
                                              const std::string& path = "");

std::unique_ptr<ScalarDistribution> make_distribution(const nlohmann::json& config,
                                                      const std::string& path = "");

struct EnvironmentInfo {
  std::string kind;
  std::string description;
  nlohmann::json example_config;
};

// The builtin catalog, with a complete example config for each kind.
std::vector<EnvironmentInfo> builtin_environments();

}  // namespace policycert

#endif  // POLICYCERT_ENVIRONMENTS_H_
