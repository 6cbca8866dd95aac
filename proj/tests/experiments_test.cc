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


#include "policycert/experiments.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "policycert/config.h"
#include "policycert/environments.h"
#include "policycert/error.h"
#include "policycert/stats.h"

namespace policycert {
namespace {

using nlohmann::json;

using Table = std::vector<std::vector<std::string>>;

Table parse_csv(const std::string& text) {
  Table rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const Table& t, const std::string& name) {
  const auto& h = t.front();
  const auto it = std::find(h.begin(), h.end(), name);
  EXPECT_NE(it, h.end()) << name;
  return static_cast<std::size_t>(it - h.begin());
}

json uniform_env() {
  return {{"kind", "direct"}, {"distribution", {{"type", "uniform"}, {"lo", 0.0}, {"hi", 1.0}}}};
}

json bernoulli_env() {
  return {{"kind", "bernoulli_task"}, {"base_failure_prob", 0.5}, {"slope", 0.5}};
}

json small_validate(const std::string& measure) {
  return {{"schema_version", 1},
          {"environment", uniform_env()},
          {"measure", {{"measure", measure}, {"tau", 0.7}, {"delta", 0.2}}},
          {"n", 50},
          {"repetitions", 200},
          {"reference_rollouts", 2000},
          {"seed", 9},
          {"histogram_bins", 16}};
}

ExperimentConfig parsed(const json& j) { return parse_experiment_config(j); }

// Small configs for every runner.
std::vector<std::pair<std::string, json>> all_small_configs() {
  json sens = small_validate("var");
  sens["shift"] = {{"offsets", {0.0, 0.05}}, {"alphas", {0.0, 0.05}}};
  json robust = {{"environment", bernoulli_env()},
                 {"policy", {{"source", "failure_probability"}, {"failure_probability", 0.2}}},
                 {"measure", {{"measure", "failprob"}, {"delta", 0.2}}},
                 {"n", 60},
                 {"repetitions", 100},
                 {"reference_rollouts", 1000},
                 {"seed", 4},
                 {"shift", {{"offsets", {0.0, 0.1}}, {"robust_alphas", {0.0, 0.1}}}}};
  json curve = {{"environment", bernoulli_env()},
                {"measure", {{"measure", "var"}, {"tau", 0.7}, {"delta", 0.2}}},
                {"seed", 5},
                {"curve",
                 {{"n_values", {10, 20}}, {"grid_points", 8}, {"trials", 100}, {"empirical_n", {10}}}}};
  json select = small_validate("var");
  select["n"] = 30;
  select["repetitions"] = 40;
  select["selection"] = {{"policies", 4}};
  return {{"validate", small_validate("var")},
          {"sensitivity", sens},
          {"robust", robust},
          {"curve", curve},
          {"select-study", select}};
}

ExperimentFiles run_named(const std::string& name, const ExperimentConfig& c) {
  if (name == "validate") return run_validate(c);
  if (name == "sensitivity") return run_sensitivity(c);
  if (name == "robust") return run_robust(c);
  if (name == "curve") return run_curve(c);
  return run_selection_study(c);
}

TEST(Validate, CoverageRecomputesFromBoundHistogram) {
  for (const std::string m : {"var", "expectation", "cvar"}) {
    const ExperimentFiles f = run_validate(parsed(small_validate(m)));
    const json summary = json::parse(f.at("summary.json"));
    const Table hist = parse_csv(f.at("bound_histogram.csv"));
    long total = 0;
    long ref = 0;
    long analytic = 0;
    for (std::size_t i = 1; i < hist.size(); ++i) {
      total += std::stol(hist[i][column(hist, "count")]);
      ref += std::stol(hist[i][column(hist, "covering_reference")]);
      analytic += std::stol(hist[i][column(hist, "covering_analytic")]);
    }
    EXPECT_EQ(total, 200);
    EXPECT_EQ(summary["coverage"]["against_reference"].get<double>(), ref / 200.0) << m;
    EXPECT_EQ(summary["coverage"]["against_analytic"].get<double>(), analytic / 200.0) << m;

    // bounds.csv agrees with the histogram and follows the seed layout.
    const Table bounds = parse_csv(f.at("bounds.csv"));
    ASSERT_EQ(bounds.size(), 201u);
    long covered = 0;
    for (std::size_t r = 1; r < bounds.size(); ++r) {
      EXPECT_EQ(std::stoul(bounds[r][column(bounds, "seed_begin")]), 9u + 2000u + (r - 1) * 50u);
      covered += bounds[r][column(bounds, "covers_analytic")] == "true";
    }
    EXPECT_EQ(covered, analytic);
    EXPECT_EQ(summary["reference_estimate"]["label"], "monte_carlo_estimate");
  }
}

TEST(Validate, VarTightnessFields) {
  const json s = json::parse(run_validate(parsed(small_validate("var"))).at("summary.json"));
  const int k = s["var_tightness"]["k_index"];
  EXPECT_EQ(k, var_order_index(50, 0.7, 0.2));
  EXPECT_NEAR(s["var_tightness"]["exact_coverage_continuous"].get<double>(),
              binom_cdf(k - 1, 50, 0.7), 1e-15);
  EXPECT_NEAR(s["var_tightness"]["ceiling"].get<double>(), 0.8 + binom_pmf(k - 1, 50, 0.7), 1e-15);
}

TEST(Runners, ByteDeterministicAcrossRunsAndThreads) {
  for (auto [name, j] : all_small_configs()) {
    const ExperimentFiles a = run_named(name, parsed(j));
    const ExperimentFiles b = run_named(name, parsed(j));
    j["threads"] = 4;
    const ExperimentFiles c = run_named(name, parsed(j));
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(a, c) << name;
  }
}

TEST(Runners, SvgOnlyWhenRequested) {
  json j = small_validate("var");
  EXPECT_EQ(run_validate(parsed(j)).count("histogram.svg"), 0u);
  j["svg"] = true;
  const std::string svg = run_validate(parsed(j)).at("histogram.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

void collect_paths(const json& x, const std::string& prefix, std::set<std::string>& out) {
  if (prefix == "environment") {
    out.insert(prefix);
  } else if (x.is_object()) {
    for (auto it = x.begin(); it != x.end(); ++it) {
      collect_paths(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (x.is_array() && !x.empty() && (x.front().is_object() || x.front().is_array())) {
    collect_paths(x.front(), prefix + "[]", out);
  } else {
    out.insert(prefix);
  }
}

TEST(Runners, OutputsMatchGoldenSchemas) {
  std::ifstream in(POLICYCERT_GOLDEN_SCHEMAS);
  ASSERT_TRUE(in.good());
  const json golden = json::parse(in);
  std::set<std::string> seen;
  for (const auto& [name, j] : all_small_configs()) {
    for (const auto& [file, text] : run_named(name, parsed(j))) {
      if (file.ends_with(".json")) {
        const json report = json::parse(text);
        EXPECT_EQ(report["schema_version"], 1) << file;
        std::set<std::string> paths;
        collect_paths(report, "", paths);
        const auto expected = golden["json"].at(file).get<std::set<std::string>>();
        EXPECT_EQ(paths, expected) << file;
      } else if (file.ends_with(".csv")) {
        const Table t = parse_csv(text);
        EXPECT_EQ(t.front(), golden["csv"].at(file).get<std::vector<std::string>>()) << file;
      }
      seen.insert(file);
    }
  }
  for (const auto& [file, _] : golden["json"].items()) EXPECT_TRUE(seen.count(file)) << file;
  for (const auto& [file, _] : golden["csv"].items()) EXPECT_TRUE(seen.count(file)) << file;
}

TEST(Sensitivity, CvarZeroShiftKeepsNominalRate) {
  json j = small_validate("cvar");
  j["shift"] = {{"offsets", {0.0, 0.02}}, {"alphas", {0.0, 0.02}}};
  const Table t = parse_csv(run_sensitivity(parsed(j)).at("sensitivity.csv"));
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(std::stod(t[1][column(t, "delta_true_theoretical")]),
            std::stod(t[1][column(t, "delta_sim")]));
  EXPECT_GT(std::stod(t[2][column(t, "delta_true_theoretical")]), 0.2);
}

TEST(MonteCarloMeasure, PlugInEstimates) {
  const std::vector<double> v = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  EXPECT_EQ(monte_carlo_measure(v, {Measure::kVaR, 0.7, 0.2}), 0.7);
  EXPECT_EQ(monte_carlo_measure(v, {Measure::kVaR, 0.71, 0.2}), 0.8);
  EXPECT_NEAR(monte_carlo_measure(v, {Measure::kExpectation, 0.0, 0.2}), 0.55, 1e-15);
  // Upper 30% of the empirical distribution is {0.8, 0.9, 1.0}.
  EXPECT_NEAR(monte_carlo_measure(v, {Measure::kCVaR, 0.7, 0.2}), 0.9, 1e-12);
  // Half of the 0.7 atom falls in the upper 35%.
  EXPECT_NEAR(monte_carlo_measure(v, {Measure::kCVaR, 0.65, 0.2}),
              (0.05 * 0.7 + 0.1 * (0.8 + 0.9 + 1.0)) / 0.35, 1e-12);
  const std::vector<double> g = {0.0, 1.0, 0.0, 1.0};
  EXPECT_EQ(monte_carlo_measure(g, {Measure::kFailureProbability, 0.0, 0.2}), 0.5);
}

TEST(AcceptanceThreshold, MatchesScan) {
  for (int n : {1, 10, 50, 500}) {
    for (double tau : {0.5, 0.7, 0.9}) {
      int expected = -1;
      for (int k = 0; k <= n; ++k) {
        if (binom_cdf(k, n, 1.0 - tau) <= 0.2) expected = k;
      }
      EXPECT_EQ(acceptance_threshold(n, tau, 0.2), expected);
    }
  }
  EXPECT_EQ(acceptance_threshold(10, 0.7, 0.2), 1);
  EXPECT_NEAR(three_sigma(0.8, 1000), 3.0 * std::sqrt(0.16 / 1000.0), 1e-15);
}

std::string error_field(const json& j) {
  try {
    parse_experiment_config(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

TEST(ExperimentConfigParse, ErrorsNameTheField) {
  json j = small_validate("var");
  j["repetitons"] = 10;
  EXPECT_EQ(error_field(j), "repetitons");
  j = small_validate("var");
  j["measure"]["measure"] = "median";
  EXPECT_EQ(error_field(j), "measure.measure");
  j = small_validate("var");
  j["measure"]["tau"] = 1.5;
  EXPECT_EQ(error_field(j), "measure");
  j = small_validate("var");
  j["repetitions"] = 0;
  EXPECT_EQ(error_field(j), "repetitions");
  j = small_validate("var");
  j["schema_version"] = 3;
  EXPECT_EQ(error_field(j), "schema_version");
  j = small_validate("var");
  j["shift"] = {{"offsets", {0.0, 0.1}}, {"alphas", {0.0}}};
  EXPECT_EQ(error_field(j), "shift.alphas");
  j = small_validate("var");
  j["selection"] = {{"corrections", {"holm"}}};
  EXPECT_EQ(error_field(j), "selection.corrections");
  j = small_validate("var");
  j["environment"]["distribution"]["hi"] = "one";
  EXPECT_EQ(error_field(j), "environment.distribution.hi");
  j = small_validate("var");
  j.erase("environment");
  EXPECT_EQ(error_field(j), "environment");
  j = small_validate("var");
  j["policy"] = {{"source", "random"}, {"count", 3}, {"index", 3}};
  EXPECT_EQ(error_field(j), "policy.index");
}

TEST(ExperimentConfigParse, ShippedConfigsLoad) {
  for (const char* name : {"validate_var", "validate_expectation", "validate_cvar",
                           "sensitivity_var", "sensitivity_cvar", "robust_failprob", "curve",
                           "select_study"}) {
    const std::string path =
        std::string(POLICYCERT_SOURCE_DIR) + "/configs/experiments/" + name + ".json";
    EXPECT_NO_THROW(load_experiment_config(path)) << name;
  }
}

TEST(MakePolicy, Sources) {
  const auto bern = make_environment(bernoulli_env());
  PolicySource s;
  s.kind = "failure_probability";
  s.failure_probability = 0.25;
  const Policy p = make_policy(*bern, s);
  EXPECT_NEAR(dynamic_cast<const BernoulliTaskEnv&>(*bern).failure_probability(p), 0.25, 1e-12);

  const auto direct = make_environment(uniform_env());
  EXPECT_THROW(make_policy(*direct, s), ConfigError);

  PolicySource inl;
  inl.kind = "inline";
  inl.plan = json::array({{0.1}, {0.2}, {0.3}, {0.4}, {0.5}});
  EXPECT_EQ(make_policy(*bern, inl).controls()[2], (Vector{0.3}));

  PolicySource rnd;
  rnd.kind = "random";
  rnd.count = 5;
  rnd.index = 3;
  rnd.seed = 8;
  EXPECT_EQ(make_policy(*bern, rnd).controls(), random_policies(*bern, 5, 8)[3].controls());
}

}  // namespace
}  // namespace policycert
