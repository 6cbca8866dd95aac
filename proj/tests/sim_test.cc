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


#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "policycert/config.h"
#include "policycert/distributions.h"
#include "policycert/environment.h"
#include "policycert/environments.h"
#include "policycert/error.h"
#include "policycert/rollout_io.h"
#include "test_support.h"

namespace policycert {
namespace {

using nlohmann::json;

json scalar_lg(double process_noise, double reset_noise, int horizon) {
  return {{"kind", "linear_gaussian"},
          {"horizon", horizon},
          {"A", {{1.0}}},
          {"B", {{1.0}}},
          {"x0", {0.0}},
          {"reset_noise_scale", reset_noise},
          {"process_noise", process_noise},
          {"state_cost", {1.0}},
          {"control_cost", {0.1}},
          {"terminal_cost", {1.0}}};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// Composite Simpson rule on [a, b] with an even number of cells.
template <typename F>
double simpson(F f, double a, double b, int cells) {
  const double h = (b - a) / cells;
  double s = f(a) + f(b);
  for (int i = 1; i < cells; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

TEST(Rollout, ZeroNoiseFixedPoint) {
  const auto env = make_environment(scalar_lg(0.0, 0.0, 7));
  const RolloutRecord r = rollout(*env, env->zero_policy(), 123);
  ASSERT_EQ(r.states.size(), 8u);
  ASSERT_EQ(r.controls.size(), 7u);
  for (const auto& x : r.states) EXPECT_EQ(x.front(), 0.0);
  EXPECT_EQ(r.total_cost, 0.0);
  EXPECT_EQ(r.constraint_value, 0.0);
  EXPECT_FALSE(r.clipped);
}

TEST(Rollout, SeedDeterminism) {
  for (const auto& info : builtin_environments()) {
    const auto env = make_environment(info.example_config);
    const Policy plan = env->zero_policy();
    const RolloutRecord a = rollout(*env, plan, 99);
    const RolloutRecord b = rollout(*env, plan, 99);
    EXPECT_EQ(a.total_cost, b.total_cost) << info.kind;
    EXPECT_EQ(a.constraint_value, b.constraint_value);
    EXPECT_EQ(a.states, b.states);
    EXPECT_EQ(a.controls, b.controls);
    // Thread count never changes results.
    EXPECT_EQ(sample_values(*env, plan, 200, 5, RecordField::kCost, 1),
              sample_values(*env, plan, 200, 5, RecordField::kCost, 4));
  }
}

TEST(Rollout, ClosedLoopPolicyIsSeedDeterministic) {
  const auto env = make_environment(scalar_lg(0.3, 0.1, 10));
  const Policy feedback = Policy::closed_loop(10, [](int, const Vector& x, RandomStream& rng) {
    return Vector{-0.5 * x.front() + 0.05 * rng.normal()};
  });
  EXPECT_FALSE(feedback.is_open_loop());
  EXPECT_THROW(feedback.controls(), Error);
  const RolloutRecord a = rollout(*env, feedback, 4);
  const RolloutRecord b = rollout(*env, feedback, 4);
  EXPECT_EQ(a.controls, b.controls);
  EXPECT_NE(rollout(*env, feedback, 5).total_cost, a.total_cost);
}

TEST(Rollout, RecordedCostIsRecomputable) {
  const auto env = make_environment(scalar_lg(0.2, 0.1, 12));
  const Policy plan = Policy::open_loop(std::vector<Vector>(12, Vector{0.3}));
  const RolloutRecord r = rollout(*env, plan, 8);
  double total = 0.0;
  for (int t = 0; t < 12; ++t) {
    const double x = r.states[static_cast<std::size_t>(t)].front();
    total += x * x + 0.1 * 0.3 * 0.3;
  }
  total += r.states.back().front() * r.states.back().front();
  EXPECT_NEAR(r.total_cost, total, 1e-12);
}

TEST(Rollout, HorizonMismatchAndNonFiniteStates) {
  const auto env = make_environment(scalar_lg(0.1, 0.1, 5));
  EXPECT_THROW(rollout(*env, Policy::open_loop(std::vector<Vector>(4, Vector{0.0})), 0), Error);
  json blowup = scalar_lg(0.1, 0.1, 5);
  blowup["A"] = {{1e300}};
  blowup["x0"] = {1.0};
  const auto bad = make_environment(blowup);
  try {
    rollout(*bad, bad->zero_policy(), 17);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
    EXPECT_NE(std::string(e.what()).find("17"), std::string::npos);
  }
}

// x_1 = w with w ~ N(0, 1) and cost min(x_1^2, 4).
TEST(Rollout, ClippedChiSquareMeanMatchesQuadrature) {
  json c = scalar_lg(1.0, 0.0, 1);
  c["state_cost"] = {0.0};
  c["control_cost"] = {0.0};
  c["cost_clip"] = {0.0, 4.0};
  const auto env = make_environment(c);
  const double oracle = simpson(
      [](double w) { return std::min(w * w, 4.0) * std::exp(-0.5 * w * w) / std::sqrt(2 * M_PI); },
      -12.0, 12.0, 200000);
  EXPECT_NEAR(oracle, 0.920537, 5e-7);

  const int n = 1'000'000;
  const std::vector<double> v = sample_values(*env, env->zero_policy(), n, 1, RecordField::kCost, 8);
  double m2 = 0.0;
  const double m = mean_of(v);
  for (double x : v) m2 += (x - m) * (x - m);
  const double se = std::sqrt(m2 / (n - 1) / n);
  EXPECT_NEAR(m, oracle, 3.0 * se);
  EXPECT_EQ(*env->cost_upper_bound(), 8.0);
}

TEST(SampleBatch, BernoulliFailureRate) {
  const auto env = make_environment(
      {{"kind", "bernoulli_task"}, {"horizon", 5}, {"base_failure_prob", 0.5}, {"slope", 0.5}});
  // Position after the horizon is the mean control, so p = 0.5 + 0.5 u.
  const Policy plan = Policy::open_loop(std::vector<Vector>(5, Vector{-0.4}));
  const double p = 0.5 + 0.5 * -0.4;
  const auto& task = dynamic_cast<const BernoulliTaskEnv&>(*env);
  EXPECT_NEAR(task.failure_probability(plan), p, 1e-15);
  EXPECT_NEAR(task.failure_probability(task.plan_for_failure_probability(0.3)), 0.3, 1e-12);
  const auto narrow = make_environment({{"kind", "bernoulli_task"}, {"slope", 0.1}});
  EXPECT_THROW(
      dynamic_cast<const BernoulliTaskEnv&>(*narrow).plan_for_failure_probability(0.05), Error);

  const int n = 100'000;
  const SampleBatch b = sample_batch(*env, plan, n, 7, RecordField::kConstraint, 8);
  const double rate = static_cast<double>(b.count_above(0.0)) / n;
  EXPECT_NEAR(rate, p, testing::three_sigma(p, n));
  EXPECT_EQ(*b.upper_bound(), 1.0);
}

TEST(SampleBatch, SingleRolloutAndDisjointRangesLookIndependent) {
  for (const auto& info : builtin_environments()) {
    json c = info.example_config;
    if (info.kind == "bernoulli_task") c["base_failure_prob"] = 0.4;
    const auto env = make_environment(c);
    const Policy plan = env->zero_policy();
    const SampleBatch one = sample_batch(*env, plan, 1, 42);
    EXPECT_EQ(one.order_statistic(1), rollout(*env, plan, 42).total_cost);

    const int pairs = 10'000;
    const auto a = sample_values(*env, plan, pairs, 0, RecordField::kCost, 8);
    const auto b = sample_values(*env, plan, pairs, pairs, RecordField::kCost, 8);
    EXPECT_LT(std::abs(correlation(a, b)), 0.05) << info.kind;
  }
}

TEST(SampleBatch, ClippingKeepsValuesUnderUpperBound) {
  json c = scalar_lg(0.8, 0.5, 15);
  c["cost_clip"] = {0.0, 1.0};
  const auto env = make_environment(c);
  const auto records = collect_rollouts(*env, env->zero_policy(), 2000, 3, 4);
  const double ub = *env->cost_upper_bound();
  EXPECT_EQ(ub, 16.0);
  int clipped = 0;
  for (const auto& r : records) {
    EXPECT_LE(r.total_cost, ub);
    clipped += r.clipped ? 1 : 0;
  }
  EXPECT_GT(clipped, 0);
  const SampleBatch b = sample_batch(*env, env->zero_policy(), 2000, 3);
  EXPECT_EQ(*b.upper_bound(), ub);
}

TEST(DirectEnvironment, UniformClosedForms) {
  const auto env = make_environment(builtin_environments().back().example_config);
  const Policy p = env->zero_policy();
  EXPECT_NEAR(*env->analytic_measure({Measure::kVaR, 0.7, 0.2}, p), 0.7, 1e-15);
  EXPECT_NEAR(*env->analytic_measure({Measure::kExpectation, 0.0, 0.2}, p), 0.5, 1e-15);
  EXPECT_NEAR(*env->analytic_measure({Measure::kCVaR, 0.7, 0.2}, p), 0.85, 1e-15);
}

TEST(DirectEnvironment, EmpiricalQuantilesMatchClosedForm) {
  const json configs[] = {
      {{"type", "uniform"}, {"lo", 0.0}, {"hi", 1.0}},
      {{"type", "truncated_normal"}, {"mean", 1.0}, {"std", 0.5}, {"lo", 0.0}, {"hi", 2.0}},
      {{"type", "mixture"},
       {"components",
        {{{"weight", 0.7}, {"lo", 0.0}, {"hi", 1.0}}, {{"weight", 0.3}, {"lo", 2.0}, {"hi", 3.0}}}}}};
  for (const json& d : configs) {
    const auto env = make_environment({{"kind", "direct"}, {"distribution", d}});
    std::vector<double> v =
        sample_values(*env, env->zero_policy(), 1'000'000, 11, RecordField::kCost, 8);
    std::sort(v.begin(), v.end());
    for (double tau : {0.5, 0.7, 0.9}) {
      const double empirical = v[static_cast<std::size_t>(std::ceil(tau * 1e6)) - 1];
      const double truth = *env->analytic_measure({Measure::kVaR, tau, 0.2}, env->zero_policy());
      EXPECT_NEAR(empirical, truth, 0.005) << d.dump() << " tau=" << tau;
    }
  }
}

TEST(Distributions, TruncatedNormalAgainstBoost) {
  const TruncatedNormalDistribution tn(1.0, 0.5, 0.0, 2.0);
  const boost::math::normal z;
  const double a = boost::math::cdf(z, -2.0);
  const double b = boost::math::cdf(z, 2.0);
  for (double tau : {0.05, 0.3, 0.5, 0.8, 0.99}) {
    const double oracle = 1.0 + 0.5 * boost::math::quantile(z, a + tau * (b - a));
    EXPECT_NEAR(tn.quantile(tau), oracle, 1e-9);
    EXPECT_NEAR(tn.cdf(oracle), tau, 1e-9);
  }
  EXPECT_NEAR(tn.mean(), 1.0, 1e-12);  // symmetric truncation
  for (double tau : {0.0, 0.4, 0.9}) {
    const double integral =
        simpson([&](double g) { return tn.quantile(std::clamp(g, 1e-12, 1 - 1e-12)); }, tau, 1.0,
                20000);
    EXPECT_NEAR(tn.cvar(tau), integral / (1.0 - tau), 1e-5) << tau;
  }
  const TruncatedNormalDistribution one_sided(0.0, 1.0, 0.0,
                                              std::numeric_limits<double>::infinity());
  EXPECT_NEAR(one_sided.mean(), std::sqrt(2.0 / M_PI), 1e-12);
}

TEST(Distributions, MixtureAndUniform) {
  const UniformMixtureDistribution mix({{0.7, 0.0, 1.0}, {0.3, 2.0, 3.0}});
  EXPECT_NEAR(mix.quantile(0.35), 0.5, 1e-12);
  EXPECT_NEAR(mix.quantile(0.85), 2.5, 1e-12);
  EXPECT_NEAR(mix.cdf(1.5), 0.7, 1e-15);
  EXPECT_NEAR(mix.mean(), 0.7 * 0.5 + 0.3 * 2.5, 1e-15);
  // Upper 30% is exactly the second component.
  EXPECT_NEAR(mix.cvar(0.7), 2.5, 1e-12);
  EXPECT_EQ(mix.support_max(), 3.0);

  const UniformDistribution u(2.0, 4.0);
  EXPECT_NEAR(u.cvar(0.5), 3.5, 1e-15);
  EXPECT_NEAR(u.quantile(0.25), 2.5, 1e-15);
  EXPECT_THROW(UniformDistribution(1.0, 1.0), Error);
  // Weights are normalised.
  EXPECT_NEAR(UniformMixtureDistribution({{0.5, 0.0, 1.0}}).quantile(0.25), 0.25, 1e-15);
  EXPECT_THROW(UniformMixtureDistribution({{0.0, 0.0, 1.0}}), Error);
}

TEST(RolloutIo, RoundTripIsBitExact) {
  const auto env = make_environment(scalar_lg(0.3, 0.2, 6));
  const auto records = collect_rollouts(*env, env->zero_policy(), 50, 1000);
  for (bool traj : {false, true}) {
    std::stringstream s;
    write_rollouts(s, records, {traj});
    const auto back = read_rollouts(s);
    ASSERT_EQ(back.size(), records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      EXPECT_EQ(back[i].seed, records[i].seed);
      EXPECT_EQ(back[i].total_cost, records[i].total_cost);
      EXPECT_EQ(back[i].constraint_value, records[i].constraint_value);
      EXPECT_EQ(back[i].clipped, records[i].clipped);
      if (traj) {
        EXPECT_EQ(back[i].states, records[i].states);
      }
    }
  }
}

TEST(RolloutIo, EmptyFileAndFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "policycert_sim_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "empty.jsonl").string();
  persist_rollouts({}, path);
  EXPECT_EQ(std::filesystem::file_size(path), 0u);
  EXPECT_TRUE(load_rollouts(path).empty());
  EXPECT_THROW(load_rollouts((dir / "missing.jsonl").string()), Error);

  const std::string nums = (dir / "nums.txt").string();
  write_text_file(nums, "0.5\n1.5\n\n2.5\n");
  EXPECT_EQ(load_samples(nums, RecordField::kCost), (std::vector<double>{0.5, 1.5, 2.5}));
  write_text_file(nums, "[3, 1, 2]");
  EXPECT_EQ(load_samples(nums, RecordField::kCost), (std::vector<double>{3, 1, 2}));
  std::filesystem::remove_all(dir);
}

TEST(RolloutIo, MalformedLineIsNamed) {
  std::stringstream s(
      "{\"seed\": 1, \"total_cost\": 1.0, \"constraint_value\": 0, \"clipped\": false}\n"
      "{\"seed\": 2, \"total_cost\": 2.0, \"constraint_value\": 0, \"clipped\": false}\n"
      "not json\n");
  try {
    read_rollouts(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_EQ(std::string(e.what()).rfind("line 3", 0), 0u) << e.what();
  }
  std::stringstream missing("{\"seed\": 1}\n");
  EXPECT_THROW(read_rollouts(missing), Error);
}

TEST(Config, SyntaxErrorsCarryLine) {
  try {
    parse_config_text("{\n  // comment\n  \"kind\": ,\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  const json ok = parse_config_text("/* block */ {\"a\": 1 // trailing\n}");
  EXPECT_EQ(ok["a"], 1);
}

TEST(Config, FieldErrorsCarryPath) {
  auto field_of = [](const json& c) -> std::string {
    try {
      make_environment(c, "environment");
    } catch (const ConfigError& e) {
      return e.field();
    }
    return "<none>";
  };
  json lg = scalar_lg(0.1, 0.1, 3);
  lg["A"] = "matrix";
  EXPECT_EQ(field_of(lg), "environment.A");
  lg = scalar_lg(0.1, 0.1, 3);
  lg["process_noise"] = -1.0;
  EXPECT_EQ(field_of(lg), "environment.process_noise");
  lg = scalar_lg(0.1, 0.1, 3);
  lg["extra"] = 1;
  EXPECT_EQ(field_of(lg), "environment.extra");
  EXPECT_EQ(field_of({{"kind", "direct"}, {"distribution", {{"type", "cauchy"}}}}),
            "environment.distribution.type");
  EXPECT_EQ(field_of({{"schema_version", 2}, {"kind", "direct"}}), "environment.schema_version");
  try {
    make_environment({{"kind", "mujoco"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownEnvironment);
  }
}

TEST(Catalog, ExamplesBuildAndShipInConfigs) {
  const auto catalog = builtin_environments();
  ASSERT_EQ(catalog.size(), 4u);
  for (const auto& info : catalog) {
    const auto env = make_environment(info.example_config);
    EXPECT_EQ(env->kind(), info.kind);
    EXPECT_EQ(make_environment(env->config())->config(), env->config());
  }
}

}  // namespace
}  // namespace policycert
