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

// Monte Carlo validation experiments. Each runner returns its output files
// in memory (name -> contents) so callers decide where they go; all outputs
// other than SVGs are byte-deterministic for a fixed config.
//
// Seed layout for an experiment with base seed S, reference size N_ref and
// batch size n: the simulator reference uses seeds [S, S + N_ref), and
// repetition r draws its batch from [S + N_ref + r n, S + N_ref + (r+1) n).
// Deployment ("true") references for shifted environments follow after all
// repetitions.

#ifndef POLICYCERT_EXPERIMENTS_H_
#define POLICYCERT_EXPERIMENTS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "policycert/bounds.h"
#include "policycert/cem.h"
#include "policycert/environment.h"
#include "policycert/verify.h"

namespace policycert {

struct PolicySource {
  // zero | file | inline | cem | random | failure_probability
  std::string kind = "zero";
  std::string path;               // file
  nlohmann::json plan;            // inline
  CemConfig cem;                  // cem
  int index = 0;                  // random: which of the drawn plans
  int count = 1;                  // random: how many plans to draw
  std::uint64_t seed = 0;         // cem, random
  double failure_probability = 0; // failure_probability (bernoulli_task only)
};

struct ShiftSweep {
  std::string key = "offset";  // environment field the offsets are added to
  std::vector<double> offsets;
  // One alpha per offset. When empty the alpha is estimated by the one-sided
  // KS distance between simulator and shifted references.
  std::vector<double> alphas;
  std::vector<double> robust_alphas;
};

struct CurveOptions {
  std::vector<int> n_values = {10, 50, 100, 500};
  int grid_points = 50;
  double p_lo = 0.01;
  double p_hi = 0.99;
  int trials = 1000;
  std::vector<int> empirical_n = {10};
};

struct SelectionStudyOptions {
  int policies = 20;
  std::vector<Correction> corrections = {Correction::kNone, Correction::kSidak,
                                         Correction::kBonferroni};
  bool allow_defaulted = false;
};

struct ExperimentConfig {
  nlohmann::json environment;
  PolicySource policy;
  RiskSpec spec{Measure::kVaR, 0.7, 0.2};
  int n = 100;
  int repetitions = 1000;
  int reference_rollouts = 10000;
  std::uint64_t seed = 0;
  int histogram_bins = 40;
  int threads = 1;
  bool svg = false;
  ShiftSweep shift;
  CurveOptions curve;
  SelectionStudyOptions selection;
  std::string output_dir;  // CLI default when --out is not given

  void validate() const;
};

// Parses an experiment config. Relative plan paths resolve against
// `base_dir`. Throws ConfigError naming the offending field.
ExperimentConfig parse_experiment_config(const nlohmann::json& config,
                                         const std::string& base_dir = "");
ExperimentConfig load_experiment_config(const std::string& path);

Policy make_policy(const Environment& env, const PolicySource& source, int threads = 1);

// Which rollout field a measure is computed on.
RecordField measure_field(Measure measure);

// Plug-in estimate of a measure from samples: VaR_tau is x_(ceil(N tau)),
// CVaR integrates the empirical quantile function over [tau, 1] and the
// failure probability is the fraction of values above zero.
double monte_carlo_measure(std::span<const double> values, const RiskSpec& spec);

// Binomial 3-sigma half-width for a proportion p estimated from `trials`.
double three_sigma(double p, int trials);

using ExperimentFiles = std::map<std::string, std::string>;

// Coverage of repeated bound constructions against the Monte Carlo
// reference and, when available, the closed-form truth.
// Files: summary.json, bounds.csv, cost_histogram.csv,
// bound_histogram.csv, histogram.svg (if svg).
ExperimentFiles run_validate(const ExperimentConfig& config);

// Nominal bounds from the simulator checked against shifted deployments.
// Files: sensitivity.csv, sensitivity_summary.json, sensitivity.svg.
ExperimentFiles run_sensitivity(const ExperimentConfig& config);

// Shift-robust bounds for every (alpha, shift) cell.
// Files: robust.csv, robust_summary.json.
ExperimentFiles run_robust(const ExperimentConfig& config);

// Acceptance probability of the chance-constraint test against the
// success probability p. Needs a bernoulli_task environment for the
// empirical curve. Files: acceptance_curve.csv, curve_summary.json,
// acceptance_curve.svg.
ExperimentFiles run_curve(const ExperimentConfig& config);

// Coverage of the selected bound across repeated selections, per
// correction. Files: selection_study.csv, selection_summary.json.
ExperimentFiles run_selection_study(const ExperimentConfig& config);

// max{k : binom_cdf(k; n, 1 - tau) <= delta}, or -1 when even k = 0 fails.
int acceptance_threshold(int n, double tau, double delta);

}  // namespace policycert

#endif  // POLICYCERT_EXPERIMENTS_H_
