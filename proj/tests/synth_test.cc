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


#include "policycert/cem.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "policycert/environments.h"
#include "policycert/error.h"

namespace policycert {
namespace {

using nlohmann::json;

constexpr double kA = 0.9;
constexpr double kB = 0.5;
constexpr double kQ = 1.0;
constexpr double kR = 0.1;
constexpr double kX0 = 1.0;
constexpr int kT = 5;

json lq_config(double noise) {
  return {{"kind", "linear_gaussian"},
          {"horizon", kT},
          {"A", {{kA}}},
          {"B", {{kB}}},
          {"x0", {kX0}},
          {"reset_noise_scale", noise},
          {"process_noise", noise},
          {"state_cost", {kQ}},
          {"control_cost", {kR}},
          {"terminal_cost", {kQ}},
          {"control_bounds", {{"lo", {-5.0}}, {"hi", {5.0}}}}};
}

// Open-loop LQ optimum by least squares. States are affine in the plan,
// x_t = a^t x0 + sum_{s<t} a^(t-1-s) b u_s, so the cost is a convex
// quadratic u'Hu + 2g'u + const; solve H u = -g by Gaussian elimination.
double lq_optimum() {
  std::vector<std::vector<double>> M(kT + 1, std::vector<double>(kT, 0.0));
  std::vector<double> c(kT + 1);
  for (int t = 0; t <= kT; ++t) {
    c[t] = std::pow(kA, t) * kX0;
    for (int s = 0; s < t; ++s) M[t][s] = std::pow(kA, t - 1 - s) * kB;
  }
  std::vector<std::vector<double>> H(kT, std::vector<double>(kT + 1, 0.0));
  for (int i = 0; i < kT; ++i) {
    for (int j = 0; j < kT; ++j) {
      for (int t = 0; t <= kT; ++t) H[i][j] += kQ * M[t][i] * M[t][j];
    }
    H[i][i] += kR;
    for (int t = 0; t <= kT; ++t) H[i][kT] -= kQ * M[t][i] * c[t];
  }
  for (int p = 0; p < kT; ++p) {
    for (int r = p + 1; r < kT; ++r) {
      const double f = H[r][p] / H[p][p];
      for (int k = p; k <= kT; ++k) H[r][k] -= f * H[p][k];
    }
  }
  std::vector<double> u(kT);
  for (int p = kT - 1; p >= 0; --p) {
    double v = H[p][kT];
    for (int k = p + 1; k < kT; ++k) v -= H[p][k] * u[k];
    u[p] = v / H[p][p];
  }
  double cost = 0.0;
  for (int t = 0; t <= kT; ++t) {
    double x = c[t];
    for (int s = 0; s < kT; ++s) x += M[t][s] * u[s];
    cost += kQ * x * x;
    if (t < kT) cost += kR * u[t] * u[t];
  }
  return cost;
}

CemConfig small_config() {
  CemConfig c;
  c.horizon = kT;
  return c;
}

TEST(Cem, ReachesLqOptimumOnNoiselessSystem) {
  const auto env = make_environment(lq_config(0.0));
  const double optimum = lq_optimum();
  const double zero_cost = rollout(*env, env->zero_policy(), 0).total_cost;
  ASSERT_LT(optimum, zero_cost);
  const CemResult r = cem_optimize(*env, small_config(), 3);
  const double achieved = rollout(*env, r.plan, 0).total_cost;
  EXPECT_EQ(achieved, r.plan_cost);
  EXPECT_GE(achieved, optimum - 1e-12);
  EXPECT_LE(achieved, 1.05 * optimum) << "optimum " << optimum;
}

TEST(Cem, DeterministicAndThreadIndependent) {
  const auto env = make_environment(lq_config(0.1));
  CemConfig c = small_config();
  const CemResult a = cem_optimize(*env, c, 77);
  const CemResult b = cem_optimize(*env, c, 77);
  c.threads = 4;
  const CemResult d = cem_optimize(*env, c, 77);
  EXPECT_EQ(a.plan.controls(), b.plan.controls());
  EXPECT_EQ(a.plan.controls(), d.plan.controls());
  EXPECT_EQ(a.plan_cost, d.plan_cost);
  ASSERT_EQ(a.trace.size(), 10u);
  EXPECT_NE(cem_optimize(*env, small_config(), 78).plan.controls(), a.plan.controls());
}

TEST(Cem, WholePopulationAsElitesIsLegal) {
  const auto env = make_environment(lq_config(0.1));
  CemConfig c = small_config();
  c.population = 12;
  c.elites = 12;
  c.generations = 3;
  const CemResult r = cem_optimize(*env, c, 1);
  EXPECT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.plan.horizon(), kT);
}

TEST(Cem, RejectsBadConfigs) {
  const auto env = make_environment(lq_config(0.1));
  CemConfig c = small_config();
  c.elites = 200;
  EXPECT_THROW(cem_optimize(*env, c, 0), Error);
  c = small_config();
  c.horizon = 6;
  EXPECT_THROW(cem_optimize(*env, c, 0), Error);
  c = small_config();
  c.init_std = -1.0;
  EXPECT_THROW(cem_optimize(*env, c, 0), Error);
}

// Soft property over 50 seeded runs on the builtin LinearGaussian config:
// the median elite cost falls (or holds) at >= 90% of generation steps, and
// always ends below where it started.
TEST(Cem, MedianEliteCostTrendsDown) {
  const auto env = make_environment(builtin_environments().front().example_config);
  CemConfig c;
  c.horizon = env->horizon();
  int steps = 0;
  int down = 0;
  for (int run = 0; run < 50; ++run) {
    const CemResult r = cem_optimize(*env, c, 1000 + run);
    for (std::size_t g = 1; g < r.trace.size(); ++g) {
      ++steps;
      down += r.trace[g].median_elite_cost <= r.trace[g - 1].median_elite_cost ? 1 : 0;
    }
    EXPECT_LT(r.trace.back().median_elite_cost, r.trace.front().median_elite_cost);
  }
  EXPECT_GE(down, 0.9 * steps) << down << " of " << steps;
}

TEST(RandomPolicies, ShapeBoundsAndDeterminism) {
  for (const auto& info : builtin_environments()) {
    const auto env = make_environment(info.example_config);
    const auto plans = random_policies(*env, 20, 9);
    ASSERT_EQ(plans.size(), 20u);
    const ControlBounds b = env->control_bounds();
    for (const Policy& p : plans) {
      ASSERT_EQ(static_cast<int>(p.controls().size()), env->horizon());
      for (const Vector& u : p.controls()) {
        ASSERT_EQ(static_cast<int>(u.size()), env->control_dim());
        for (std::size_t j = 0; j < u.size(); ++j) {
          EXPECT_GE(u[j], b.lo[j]);
          EXPECT_LE(u[j], b.hi[j]);
        }
      }
    }
    const auto again = random_policies(*env, 20, 9);
    for (std::size_t i = 0; i < plans.size(); ++i) {
      EXPECT_EQ(plans[i].controls(), again[i].controls());
    }
  }
  const auto env = make_environment({{"kind", "bernoulli_task"}});
  EXPECT_EQ(random_policies(*env, 1, 0).size(), 1u);
  EXPECT_THROW(random_policies(*env, 0, 0), Error);
}

TEST(RandomPolicies, SpanSafeAndUnsafeRegimes) {
  const auto env = make_environment({{"kind", "bernoulli_task"}});
  const auto& task = dynamic_cast<const BernoulliTaskEnv&>(*env);
  int safe = 0;
  int unsafe = 0;
  for (const Policy& p : random_policies(*env, 20, 4)) {
    (task.failure_probability(p) <= 0.3 ? safe : unsafe) += 1;
  }
  EXPECT_GT(safe, 0);
  EXPECT_GT(unsafe, 0);
}

}  // namespace
}  // namespace policycert
