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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include "policycert/config.h"
#include "policycert/environments.h"
#include "policycert/error.h"
#include "policycert/parallel.h"
#include "policycert/report.h"
#include "policycert/rollout_io.h"
#include "policycert/shift.h"
#include "policycert/stats.h"

namespace policycert {
namespace {

using nlohmann::json;

// Tolerance on "shift <= alpha" comparisons between config-supplied reals.
constexpr double kShiftSlack = 1e-12;

struct Setup {
  std::unique_ptr<Environment> env;
  Policy policy;
  RecordField field;
};

Setup make_setup(const ExperimentConfig& config) {
  config.validate();
  auto env = make_environment(config.environment, "environment");
  Policy policy = make_policy(*env, config.policy, config.threads);
  return {std::move(env), std::move(policy), measure_field(config.spec.measure)};
}

std::uint64_t repetition_seed(const ExperimentConfig& c, int r) {
  return c.seed + static_cast<std::uint64_t>(c.reference_rollouts) +
         static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(c.n);
}

// First seed after the reference and all repetitions.
std::uint64_t deployment_seed(const ExperimentConfig& c, int block) {
  return repetition_seed(c, c.repetitions) +
         static_cast<std::uint64_t>(block) * static_cast<std::uint64_t>(c.reference_rollouts);
}

std::vector<SampleBatch> simulator_batches(const ExperimentConfig& c, const Setup& s) {
  const auto ub = field_upper_bound(*s.env, s.field);
  std::vector<std::optional<SampleBatch>> slots(static_cast<std::size_t>(c.repetitions));
  internal::parallel_for(c.repetitions, c.threads, [&](int r) {
    slots[static_cast<std::size_t>(r)].emplace(
        sample_values(*s.env, s.policy, c.n, repetition_seed(c, r), s.field), ub);
  });
  std::vector<SampleBatch> batches;
  batches.reserve(slots.size());
  for (auto& slot : slots) batches.push_back(std::move(*slot));
  return batches;
}

double truth_of(const Environment& env, const Policy& policy, const RiskSpec& spec,
                std::span<const double> reference) {
  if (auto exact = env.analytic_measure(spec, policy)) return *exact;
  return monte_carlo_measure(reference, spec);
}

double fraction_at_least(std::span<const BoundResult> bounds, double truth) {
  const auto hits = std::count_if(bounds.begin(), bounds.end(),
                                  [truth](const BoundResult& b) { return b.value >= truth; });
  return static_cast<double>(hits) / static_cast<double>(bounds.size());
}

std::vector<double> filter_at_least(std::span<const double> values, double threshold) {
  std::vector<double> kept;
  for (double v : values) {
    if (v >= threshold) kept.push_back(v);
  }
  return kept;
}

json spec_json(const RiskSpec& spec) {
  return {{"measure", measure_name(spec.measure)}, {"tau", spec.tau}, {"delta", spec.delta}};
}

json header_json(const std::string& experiment, const ExperimentConfig& c,
                 const Environment& env) {
  return {{"schema_version", kSchemaVersion},
          {"experiment", experiment},
          {"environment", env.config()},
          {"policy_source", c.policy.kind},
          {"measure", spec_json(c.spec)},
          {"n", c.n},
          {"repetitions", c.repetitions},
          {"reference_rollouts", c.reference_rollouts},
          {"seed", c.seed}};
}

json shifted_environment(const ExperimentConfig& c, double offset) {
  json shifted = c.environment;
  const auto it = shifted.find(c.shift.key);
  double base = 0.0;
  if (it != shifted.end()) {
    if (!it->is_number()) {
      throw ConfigError("environment." + c.shift.key, 0, "shift key must name a numeric field");
    }
    base = it->get<double>();
  }
  shifted[c.shift.key] = base + offset;
  return shifted;
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    xs[static_cast<std::size_t>(i)] =
        points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  }
  return xs;
}

CemConfig parse_cem(const ConfigReader& r, int default_horizon) {
  r.reject_unknown({"generations", "population", "elites", "horizon", "init_mean",
                    "init_std", "evaluations_per_candidate", "std_floor"});
  CemConfig c;
  c.horizon = default_horizon;
  c.generations = r.integer("generations", c.generations);
  c.population = r.integer("population", c.population);
  c.elites = r.integer("elites", c.elites);
  c.horizon = r.integer("horizon", c.horizon);
  c.init_mean = r.number("init_mean", c.init_mean);
  c.init_std = r.number("init_std", c.init_std);
  c.evaluations_per_candidate =
      r.integer("evaluations_per_candidate", c.evaluations_per_candidate);
  c.std_floor = r.number("std_floor", c.std_floor);
  return c;
}

template <typename T>
T config_guard(const std::string& field, auto&& body) {
  try {
    return body();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(field, 0, e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  internal::require(n >= 1, "n must be >= 1");
  internal::require(repetitions >= 1, "repetitions must be >= 1");
  internal::require(reference_rollouts >= 1, "reference_rollouts must be >= 1");
  internal::require(histogram_bins >= 1, "histogram_bins must be >= 1");
  internal::require(threads >= 1, "threads must be >= 1");
  spec.validate();
}

ExperimentConfig parse_experiment_config(const json& config, const std::string& base_dir) {
  const ConfigReader r(config, "");
  r.reject_unknown({"schema_version", "environment", "policy", "measure", "n",
                    "repetitions", "reference_rollouts", "seed", "histogram_bins",
                    "threads", "svg", "shift", "curve", "selection", "output_dir"});
  if (r.has("schema_version") && r.integer("schema_version") != kSchemaVersion) {
    r.fail("schema_version", "unsupported schema version (expected 1)");
  }
  ExperimentConfig c;
  c.environment = r.child("environment").node();
  const auto env = make_environment(c.environment, "environment");

  if (auto p = r.optional_child("policy")) {
    p->reject_unknown({"source", "path", "plan", "cem", "index", "count", "seed",
                       "failure_probability"});
    c.policy.kind = p->string("source", "zero");
    c.policy.seed = p->seed("seed", 0);
    if (c.policy.kind == "file") {
      std::filesystem::path path = p->string("path");
      if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
      c.policy.path = path.string();
    } else if (c.policy.kind == "inline") {
      if (!p->has("plan")) p->fail("plan", "required field is missing");
      c.policy.plan = p->node()["plan"];
    } else if (c.policy.kind == "cem") {
      const json empty = json::object();
      c.policy.cem = p->has("cem") ? parse_cem(p->child("cem"), env->horizon())
                                   : parse_cem(ConfigReader(empty, p->field("cem")),
                                               env->horizon());
    } else if (c.policy.kind == "random") {
      c.policy.count = p->integer("count", 1);
      c.policy.index = p->integer("index", 0);
      if (c.policy.count < 1) p->fail("count", "must be >= 1");
      if (c.policy.index < 0 || c.policy.index >= c.policy.count) {
        p->fail("index", "must lie in [0, count)");
      }
    } else if (c.policy.kind == "failure_probability") {
      c.policy.failure_probability = p->number("failure_probability");
    } else if (c.policy.kind != "zero") {
      p->fail("source", "expected zero, file, inline, cem, random or failure_probability");
    }
  }

  if (auto m = r.optional_child("measure")) {
    m->reject_unknown({"measure", "tau", "delta"});
    c.spec.measure = config_guard<Measure>(m->field("measure"), [&] {
      return parse_measure(m->string("measure"));
    });
    c.spec.tau = m->number("tau", c.spec.measure == Measure::kVaR ||
                                          c.spec.measure == Measure::kCVaR
                                      ? 0.7
                                      : 0.0);
    c.spec.delta = m->number("delta", 0.2);
    config_guard<int>(m->path(), [&] {
      c.spec.validate();
      return 0;
    });
  }

  c.n = r.integer("n", c.n);
  c.repetitions = r.integer("repetitions", c.repetitions);
  c.reference_rollouts = r.integer("reference_rollouts", c.reference_rollouts);
  c.seed = r.seed("seed", c.seed);
  c.histogram_bins = r.integer("histogram_bins", c.histogram_bins);
  c.threads = r.integer("threads", c.threads);
  c.svg = r.boolean("svg", c.svg);
  c.output_dir = r.string("output_dir", "");
  if (c.n < 1) r.fail("n", "must be >= 1");
  if (c.repetitions < 1) r.fail("repetitions", "must be >= 1");
  if (c.reference_rollouts < 1) r.fail("reference_rollouts", "must be >= 1");
  if (c.histogram_bins < 1) r.fail("histogram_bins", "must be >= 1");
  if (c.threads < 1) r.fail("threads", "must be >= 1");

  if (auto s = r.optional_child("shift")) {
    s->reject_unknown({"key", "offsets", "alphas", "robust_alphas"});
    c.shift.key = s->string("key", c.shift.key);
    c.shift.offsets = s->numbers("offsets", {});
    c.shift.alphas = s->numbers("alphas", {});
    c.shift.robust_alphas = s->numbers("robust_alphas", {});
    if (!c.shift.alphas.empty() && c.shift.alphas.size() != c.shift.offsets.size()) {
      s->fail("alphas", "needs one alpha per offset");
    }
    for (double a : c.shift.alphas) {
      if (a < 0.0 || a > 1.0) s->fail("alphas", "alphas must lie in [0, 1]");
    }
    for (double a : c.shift.robust_alphas) {
      if (a < 0.0 || a > 1.0) s->fail("robust_alphas", "alphas must lie in [0, 1]");
    }
  }

  if (auto cv = r.optional_child("curve")) {
    cv->reject_unknown({"n_values", "grid_points", "p_lo", "p_hi", "trials", "empirical_n"});
    auto ints = [&](std::string_view key, std::vector<int> fallback) {
      if (!cv->has(key)) return fallback;
      std::vector<int> out;
      for (double x : cv->numbers(key)) {
        if (x < 1 || x != std::floor(x)) cv->fail(key, "expected positive integers");
        out.push_back(static_cast<int>(x));
      }
      return out;
    };
    c.curve.n_values = ints("n_values", c.curve.n_values);
    c.curve.empirical_n = ints("empirical_n", c.curve.empirical_n);
    c.curve.grid_points = cv->integer("grid_points", c.curve.grid_points);
    c.curve.p_lo = cv->number("p_lo", c.curve.p_lo);
    c.curve.p_hi = cv->number("p_hi", c.curve.p_hi);
    c.curve.trials = cv->integer("trials", c.curve.trials);
    if (c.curve.grid_points < 1) cv->fail("grid_points", "must be >= 1");
    if (!(0.0 <= c.curve.p_lo && c.curve.p_lo <= c.curve.p_hi && c.curve.p_hi <= 1.0)) {
      cv->fail("p_lo", "need 0 <= p_lo <= p_hi <= 1");
    }
    if (c.curve.trials < 0) cv->fail("trials", "must be >= 0");
  }

  if (auto sel = r.optional_child("selection")) {
    sel->reject_unknown({"policies", "corrections", "allow_defaulted"});
    c.selection.policies = sel->integer("policies", c.selection.policies);
    if (c.selection.policies < 1) sel->fail("policies", "must be >= 1");
    if (sel->has("corrections")) {
      const json& list = sel->node()["corrections"];
      if (!list.is_array() || list.empty()) sel->fail("corrections", "expected a list of names");
      c.selection.corrections.clear();
      for (const auto& name : list) {
        if (!name.is_string()) sel->fail("corrections", "expected a list of names");
        c.selection.corrections.push_back(config_guard<Correction>(
            sel->field("corrections"), [&] { return parse_correction(name.get<std::string>()); }));
      }
    }
    c.selection.allow_defaulted = sel->boolean("allow_defaulted", false);
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  const json config = load_config_file(path);
  return parse_experiment_config(config,
                                 std::filesystem::path(path).parent_path().string());
}

Policy make_policy(const Environment& env, const PolicySource& source, int threads) {
  if (source.kind == "zero") return env.zero_policy();
  if (source.kind == "file") return load_plan(source.path);
  if (source.kind == "inline") return plan_from_json(source.plan);
  if (source.kind == "cem") {
    CemConfig cem = source.cem;
    cem.threads = threads;
    return cem_optimize(env, cem, source.seed).plan;
  }
  if (source.kind == "random") {
    return random_policies(env, source.count, source.seed).at(
        static_cast<std::size_t>(source.index));
  }
  if (source.kind == "failure_probability") {
    const auto* task = dynamic_cast<const BernoulliTaskEnv*>(&env);
    if (task == nullptr) {
      throw ConfigError("policy.source", 0,
                        "failure_probability plans need a bernoulli_task environment");
    }
    return task->plan_for_failure_probability(source.failure_probability);
  }
  throw ConfigError("policy.source", 0, "unknown policy source '" + source.kind + "'");
}

RecordField measure_field(Measure measure) {
  return measure == Measure::kFailureProbability ? RecordField::kConstraint
                                                 : RecordField::kCost;
}

double monte_carlo_measure(std::span<const double> values, const RiskSpec& spec) {
  internal::require(!values.empty(), "Monte Carlo estimate needs samples");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  switch (spec.measure) {
    case Measure::kVaR: {
      const auto k = static_cast<std::size_t>(
          std::clamp(std::ceil(n * spec.tau - 1e-9), 1.0, n));
      return sorted[k - 1];
    }
    case Measure::kExpectation:
      return std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    case Measure::kCVaR: {
      // Integral of the empirical quantile function over [tau, 1]: sample
      // x_(i) owns the quantile interval [(i - 1)/N, i/N].
      double integral = 0.0;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double lo = std::max(static_cast<double>(i) / n, spec.tau);
        const double hi = static_cast<double>(i + 1) / n;
        if (hi > lo) integral += sorted[i] * (hi - lo);
      }
      return integral / (1.0 - spec.tau);
    }
    case Measure::kFailureProbability: {
      const auto fails = std::count_if(sorted.begin(), sorted.end(),
                                       [](double g) { return g > 0.0; });
      return static_cast<double>(fails) / n;
    }
  }
  return 0.0;
}

double three_sigma(double p, int trials) {
  return 3.0 * std::sqrt(std::max(0.0, p * (1.0 - p)) / trials);
}

int acceptance_threshold(int n, double tau, double delta) {
  int k = -1;
  while (k + 1 <= n && binom_cdf(k + 1, n, 1.0 - tau) <= delta) ++k;
  return k;
}

// ---------------------------------------------------------------------------

ExperimentFiles run_validate(const ExperimentConfig& c) {
  const Setup s = make_setup(c);
  const std::vector<double> reference =
      sample_values(*s.env, s.policy, c.reference_rollouts, c.seed, s.field, c.threads);
  const double reference_estimate = monte_carlo_measure(reference, c.spec);
  const auto analytic = s.env->analytic_measure(c.spec, s.policy);

  const std::vector<SampleBatch> batches = simulator_batches(c, s);
  std::vector<BoundResult> bounds(batches.size());
  internal::parallel_for(c.repetitions, c.threads, [&](int r) {
    bounds[static_cast<std::size_t>(r)] =
        compute_bound(batches[static_cast<std::size_t>(r)], c.spec);
  });

  CsvTable table({"repetition", "seed_begin", "bound", "k_index", "epsilon", "defaulted",
                  "covers_reference", "covers_analytic"});
  std::vector<double> values;
  int defaulted = 0;
  for (int r = 0; r < c.repetitions; ++r) {
    const BoundResult& b = bounds[static_cast<std::size_t>(r)];
    values.push_back(b.value);
    defaulted += b.defaulted ? 1 : 0;
    table.add(r, repetition_seed(c, r), b.value, b.k_index, b.epsilon, b.defaulted,
              b.value >= reference_estimate,
              analytic ? std::optional<bool>(b.value >= *analytic) : std::nullopt);
  }

  std::vector<double> sorted_bounds = values;
  std::sort(sorted_bounds.begin(), sorted_bounds.end());
  const auto q_index = static_cast<std::size_t>(std::clamp(
      std::ceil(c.repetitions * c.spec.delta - 1e-9) - 1.0, 0.0, c.repetitions - 1.0));
  const double coverage_reference = fraction_at_least(bounds, reference_estimate);
  const std::optional<double> coverage_analytic =
      analytic ? std::optional<double>(fraction_at_least(bounds, *analytic)) : std::nullopt;
  const double target = 1.0 - c.spec.delta;
  const double tol = three_sigma(target, c.repetitions);
  const double judged = coverage_analytic.value_or(coverage_reference);

  json summary = header_json("validate", c, *s.env);
  summary["reference_estimate"] = {{"value", reference_estimate},
                                   {"label", "monte_carlo_estimate"},
                                   {"rollouts", c.reference_rollouts}};
  summary["analytic_truth"] = analytic ? json(*analytic) : json(nullptr);
  summary["bound"] = {
      {"mean", std::accumulate(values.begin(), values.end(), 0.0) / c.repetitions},
      {"min", sorted_bounds.front()},
      {"max", sorted_bounds.back()},
      {"delta_quantile", sorted_bounds[q_index]},
      {"defaulted_count", defaulted}};
  summary["coverage"] = {
      {"against_reference", coverage_reference},
      {"against_analytic", coverage_analytic ? json(*coverage_analytic) : json(nullptr)},
      {"target", target},
      {"three_sigma", tol},
      {"meets_target", judged >= target - tol}};
  if (c.spec.measure == Measure::kVaR) {
    const int k = *bounds.front().k_index;
    const double exact = binom_cdf(k - 1, c.n, c.spec.tau);
    const double ceiling = target + binom_pmf(k - 1, c.n, c.spec.tau);
    summary["var_tightness"] = {{"k_index", k},
                                {"exact_coverage_continuous", exact},
                                {"ceiling", ceiling},
                                {"within_ceiling", judged <= ceiling + tol}};
  }

  const double lo = std::min(*std::min_element(reference.begin(), reference.end()),
                             sorted_bounds.front());
  const double hi = std::max(*std::max_element(reference.begin(), reference.end()),
                             sorted_bounds.back());
  const Histogram cost_hist = make_histogram(reference, c.histogram_bins, lo, hi);
  const Histogram bound_hist = make_histogram(values, c.histogram_bins, lo, hi);
  auto hist_csv = [](const Histogram& h) {
    CsvTable t({"bin_lo", "bin_hi", "count"});
    for (std::size_t b = 0; b < h.counts.size(); ++b) t.add(h.edges[b], h.edges[b + 1], h.counts[b]);
    return t.str();
  };
  // Per-bin counts of covering bounds, so coverage can be recomputed from
  // this file alone.
  CsvTable bound_table({"bin_lo", "bin_hi", "count", "covering_reference", "covering_analytic"});
  {
    const Histogram ref_cover = make_histogram(
        filter_at_least(values, reference_estimate), c.histogram_bins, lo, hi);
    const std::optional<Histogram> analytic_cover =
        analytic ? std::optional<Histogram>(make_histogram(filter_at_least(values, *analytic),
                                                           c.histogram_bins, lo, hi))
                 : std::nullopt;
    for (std::size_t b = 0; b < bound_hist.counts.size(); ++b) {
      bound_table.add(bound_hist.edges[b], bound_hist.edges[b + 1], bound_hist.counts[b],
                      ref_cover.counts[b],
                      analytic_cover ? std::optional<int>(analytic_cover->counts[b])
                                     : std::nullopt);
    }
  }

  ExperimentFiles files;
  files["summary.json"] = dump_report(summary);
  files["bounds.csv"] = table.str();
  files["cost_histogram.csv"] = hist_csv(cost_hist);
  files["bound_histogram.csv"] = bound_table.str();
  if (c.svg) {
    const std::vector<HistogramSeries> series = {{"reference costs", cost_hist},
                                                 {"bounds", bound_hist}};
    std::vector<std::pair<std::string, double>> markers = {
        {"reference " + std::string(measure_name(c.spec.measure)), reference_estimate}};
    files["histogram.svg"] = render_histogram_svg(
        {"Bound distribution vs reference costs", "value", "relative count"}, series, markers);
  }
  return files;
}

ExperimentFiles run_sensitivity(const ExperimentConfig& c) {
  if (c.shift.offsets.empty()) {
    throw ConfigError("shift.offsets", 0, "sensitivity needs at least one offset");
  }
  const Setup s = make_setup(c);
  const std::vector<double> sim_reference =
      sample_values(*s.env, s.policy, c.reference_rollouts, c.seed, s.field, c.threads);
  const SampleBatch sim_batch(sim_reference);
  const std::vector<SampleBatch> batches = simulator_batches(c, s);
  std::vector<BoundResult> bounds(batches.size());
  internal::parallel_for(c.repetitions, c.threads, [&](int r) {
    bounds[static_cast<std::size_t>(r)] =
        compute_bound(batches[static_cast<std::size_t>(r)], c.spec);
  });
  const double q_sim =
      c.spec.measure == Measure::kFailureProbability ? truth_of(*s.env, s.policy, c.spec, sim_reference)
                                                     : 0.0;

  CsvTable table({"offset", "alpha", "alpha_ks_estimate", "true_measure", "delta_sim",
                  "delta_true_theoretical", "guaranteed_confidence", "empirical_confidence",
                  "three_sigma", "holds"});
  std::vector<double> xs, guaranteed, empirical;
  bool all_hold = true;
  for (std::size_t i = 0; i < c.shift.offsets.size(); ++i) {
    const double offset = c.shift.offsets[i];
    const auto true_env = make_environment(shifted_environment(c, offset), "environment");
    const std::vector<double> true_reference =
        sample_values(*true_env, s.policy, c.reference_rollouts,
                      deployment_seed(c, static_cast<int>(i)), s.field, c.threads);
    const double truth = truth_of(*true_env, s.policy, c.spec, true_reference);
    const double ks = one_sided_ks_distance(sim_batch, SampleBatch(true_reference));
    const double alpha = c.shift.alphas.empty() ? ks : c.shift.alphas[i];

    std::optional<double> delta_true;
    switch (c.spec.measure) {
      case Measure::kVaR:
        delta_true = var_sensitivity(c.n, c.spec.tau, c.spec.delta, alpha).delta_true;
        break;
      case Measure::kExpectation:
      case Measure::kCVaR:
        try {
          delta_true = cvar_sensitivity(c.n, c.spec.delta, alpha).delta_true;
        } catch (const AlphaTooLarge&) {
          delta_true = std::nullopt;  // outside the admissible range
        }
        break;
      case Measure::kFailureProbability:
        delta_true =
            failure_prob_sensitivity(c.n, q_sim, c.spec.delta, std::min(alpha, 1.0 - q_sim))
                .delta_true;
        break;
    }
    const double conf = fraction_at_least(bounds, truth);
    const std::optional<double> guarantee =
        delta_true ? std::optional<double>(1.0 - *delta_true) : std::nullopt;
    const std::optional<double> tol =
        guarantee ? std::optional<double>(three_sigma(*guarantee, c.repetitions)) : std::nullopt;
    const std::optional<bool> holds =
        guarantee ? std::optional<bool>(conf >= *guarantee - *tol) : std::nullopt;
    if (holds && !*holds) all_hold = false;
    table.add(offset, alpha, ks, truth, c.spec.delta, delta_true, guarantee, conf, tol, holds);
    xs.push_back(offset);
    guaranteed.push_back(guarantee.value_or(NAN));
    empirical.push_back(conf);
  }

  json summary = header_json("sensitivity", c, *s.env);
  summary["shift_key"] = c.shift.key;
  summary["alpha_source"] = c.shift.alphas.empty() ? "ks_estimate" : "config";
  summary["rows"] = static_cast<int>(c.shift.offsets.size());
  summary["all_hold"] = all_hold;

  ExperimentFiles files;
  files["sensitivity.csv"] = table.str();
  files["sensitivity_summary.json"] = dump_report(summary);
  if (c.svg) {
    const std::vector<LineSeries> series = {{"guaranteed 1 - delta_true", xs, guaranteed},
                                            {"empirical confidence", xs, empirical}};
    files["sensitivity.svg"] = render_lines_svg(
        {"Confidence under distribution shift", "shift offset", "confidence"}, series);
  }
  return files;
}

ExperimentFiles run_robust(const ExperimentConfig& c) {
  if (c.shift.robust_alphas.empty()) {
    throw ConfigError("shift.robust_alphas", 0, "robust study needs at least one alpha");
  }
  const std::vector<double> shifts =
      c.shift.offsets.empty() ? std::vector<double>{0.0} : c.shift.offsets;
  const Setup s = make_setup(c);
  const std::vector<double> sim_reference =
      sample_values(*s.env, s.policy, c.reference_rollouts, c.seed, s.field, c.threads);
  const SampleBatch sim_batch(sim_reference);
  const std::vector<SampleBatch> batches = simulator_batches(c, s);

  struct Deployment {
    double shift;
    double truth;
    double ks;
  };
  std::vector<Deployment> deployments;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const auto true_env = make_environment(shifted_environment(c, shifts[i]), "environment");
    const std::vector<double> ref =
        sample_values(*true_env, s.policy, c.reference_rollouts,
                      deployment_seed(c, static_cast<int>(i)), s.field, c.threads);
    deployments.push_back({shifts[i], truth_of(*true_env, s.policy, c.spec, ref),
                           one_sided_ks_distance(sim_batch, SampleBatch(ref))});
  }

  CsvTable table({"alpha", "shift", "alpha_ks_estimate", "true_measure", "admissible",
                  "mean_bound", "empirical_confidence", "target", "three_sigma",
                  "robust_bound_holds", "infeasible"});
  const double target = 1.0 - c.spec.delta;
  const double tol = three_sigma(target, c.repetitions);
  bool all_admissible_hold = true;
  for (double alpha : c.shift.robust_alphas) {
    std::vector<std::optional<BoundResult>> bounds(batches.size());
    internal::parallel_for(c.repetitions, c.threads, [&](int r) {
      try {
        bounds[static_cast<std::size_t>(r)] =
            compute_robust_bound(batches[static_cast<std::size_t>(r)], c.spec, alpha);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInsufficientSamples &&
            e.code() != ErrorCode::kInvalidQuantile) {
          throw;
        }
      }
    });
    const auto feasible = std::count_if(bounds.begin(), bounds.end(),
                                        [](const auto& b) { return b.has_value(); });
    for (const Deployment& d : deployments) {
      const bool admissible = d.shift <= alpha + kShiftSlack;
      if (feasible == 0) {
        table.add(alpha, d.shift, d.ks, d.truth, admissible, std::optional<double>(),
                  std::optional<double>(), target, tol, std::optional<bool>(), true);
        if (admissible) all_admissible_hold = false;
        continue;
      }
      double sum = 0.0;
      int hits = 0;
      for (const auto& b : bounds) {
        // An infeasible robust bound certifies nothing: it counts as a miss.
        if (!b) continue;
        sum += b->value;
        hits += b->value >= d.truth ? 1 : 0;
      }
      const double conf = static_cast<double>(hits) / c.repetitions;
      const bool holds = conf >= target - tol;
      if (admissible && !holds) all_admissible_hold = false;
      table.add(alpha, d.shift, d.ks, d.truth, admissible, sum / static_cast<double>(feasible),
                conf, target, tol, holds, feasible < c.repetitions);
    }
  }

  json summary = header_json("robust", c, *s.env);
  summary["shift_key"] = c.shift.key;
  summary["alphas"] = c.shift.robust_alphas;
  summary["shifts"] = shifts;
  summary["all_admissible_hold"] = all_admissible_hold;

  ExperimentFiles files;
  files["robust.csv"] = table.str();
  files["robust_summary.json"] = dump_report(summary);
  return files;
}

ExperimentFiles run_curve(const ExperimentConfig& c) {
  c.validate();
  const double tau = c.spec.tau;
  const double delta = c.spec.delta;
  internal::require(tau > 0.0 && tau < 1.0, "acceptance curve needs tau in (0, 1)");
  const std::vector<double> grid = linspace(c.curve.p_lo, c.curve.p_hi, c.curve.grid_points);

  std::unique_ptr<Environment> env;
  const BernoulliTaskEnv* task = nullptr;
  if (!c.curve.empirical_n.empty() && c.curve.trials > 0) {
    env = make_environment(c.environment, "environment");
    task = dynamic_cast<const BernoulliTaskEnv*>(env.get());
    if (task == nullptr) {
      throw ConfigError("environment.kind", 0,
                        "the empirical acceptance curve needs a bernoulli_task environment");
    }
  }

  std::vector<int> all_n = c.curve.n_values;
  for (int n : c.curve.empirical_n) {
    if (std::find(all_n.begin(), all_n.end(), n) == all_n.end()) all_n.push_back(n);
  }

  CsvTable table({"n", "p", "failure_probability", "k_max", "theoretical_acceptance",
                  "empirical_acceptance", "trials", "tolerance", "within_tolerance",
                  "constraint_satisfied"});
  json per_n = json::array();
  std::vector<LineSeries> series;
  bool all_within = true;
  bool guarantee_holds = true;
  std::uint64_t cursor = c.seed;
  for (int n : all_n) {
    const int k_max = acceptance_threshold(n, tau, delta);
    const bool empirical =
        task != nullptr &&
        std::find(c.curve.empirical_n.begin(), c.curve.empirical_n.end(), n) !=
            c.curve.empirical_n.end();
    double worst_violating = 0.0;
    LineSeries theory{"theory n=" + std::to_string(n), {}, {}};
    LineSeries observed{"empirical n=" + std::to_string(n), {}, {}};
    for (double p : grid) {
      const double theo = k_max < 0 ? 0.0 : binom_cdf(k_max, n, 1.0 - p);
      const bool satisfied = p >= tau;
      if (!satisfied) worst_violating = std::max(worst_violating, theo);
      theory.x.push_back(p);
      theory.y.push_back(theo);
      if (!empirical) {
        table.add(n, p, 1.0 - p, k_max, theo, std::optional<double>(), 0,
                  std::optional<double>(), std::optional<bool>(), satisfied);
        continue;
      }
      const Policy plan = task->plan_for_failure_probability(1.0 - p);
      std::vector<char> accepted(static_cast<std::size_t>(c.curve.trials));
      const std::uint64_t base = cursor;
      internal::parallel_for(c.curve.trials, c.threads, [&](int t) {
        const std::uint64_t begin =
            base + static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(n);
        const SampleBatch g(sample_values(*task, plan, n, begin, RecordField::kConstraint));
        accepted[static_cast<std::size_t>(t)] =
            chance_constraint_test(g, tau, delta, ChanceRoute::kViaFailureProbability).accepted;
      });
      cursor += static_cast<std::uint64_t>(c.curve.trials) * static_cast<std::uint64_t>(n);
      const double freq =
          static_cast<double>(std::count(accepted.begin(), accepted.end(), 1)) / c.curve.trials;
      // 3 sigma plus a half-count continuity correction.
      const double tol = three_sigma(theo, c.curve.trials) + 0.5 / c.curve.trials;
      const bool within = std::abs(freq - theo) <= tol;
      all_within = all_within && within;
      observed.x.push_back(p);
      observed.y.push_back(freq);
      table.add(n, p, 1.0 - p, k_max, theo, freq, c.curve.trials, tol, within, satisfied);
    }
    guarantee_holds = guarantee_holds && worst_violating <= delta;
    per_n.push_back({{"n", n},
                     {"k_max", k_max},
                     {"max_acceptance_when_violated", worst_violating},
                     {"empirical", empirical}});
    series.push_back(std::move(theory));
    if (empirical) series.push_back(std::move(observed));
  }

  json summary = {{"schema_version", kSchemaVersion},
                  {"experiment", "curve"},
                  {"tau", tau},
                  {"delta", delta},
                  {"grid_points", c.curve.grid_points},
                  {"trials", c.curve.trials},
                  {"seed", c.seed},
                  {"per_n", per_n},
                  {"false_acceptance_bounded", guarantee_holds},
                  {"empirical_within_tolerance", all_within}};
  ExperimentFiles files;
  files["acceptance_curve.csv"] = table.str();
  files["curve_summary.json"] = dump_report(summary);
  if (c.svg) {
    files["acceptance_curve.svg"] = render_lines_svg(
        {"Acceptance probability of the chance-constraint test", "success probability p",
         "acceptance probability"},
        series, delta);
  }
  return files;
}

ExperimentFiles run_selection_study(const ExperimentConfig& c) {
  const Setup s = make_setup(c);
  const int m = c.selection.policies;
  std::vector<Policy> policies;
  if (c.policy.kind == "random") {
    policies = random_policies(*s.env, m, c.policy.seed);
  } else {
    policies.assign(static_cast<std::size_t>(m), s.policy);
  }
  const auto mu = static_cast<std::uint64_t>(m);
  const auto nref = static_cast<std::uint64_t>(c.reference_rollouts);
  const auto n = static_cast<std::uint64_t>(c.n);

  std::vector<double> truths(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const Policy& policy = policies[static_cast<std::size_t>(i)];
    std::vector<double> ref;
    if (!s.env->analytic_measure(c.spec, policy)) {
      ref = sample_values(*s.env, policy, c.reference_rollouts,
                          c.seed + static_cast<std::uint64_t>(i) * nref, s.field, c.threads);
    }
    truths[static_cast<std::size_t>(i)] = truth_of(*s.env, policy, c.spec, ref);
  }

  const auto ub = field_upper_bound(*s.env, s.field);
  const std::size_t n_corr = c.selection.corrections.size();
  struct Outcome {
    int chosen;
    double bound;
    bool covered;
  };
  std::vector<std::vector<Outcome>> outcomes(static_cast<std::size_t>(c.repetitions));
  internal::parallel_for(c.repetitions, c.threads, [&](int r) {
    std::vector<SampleBatch> batches;
    batches.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const std::uint64_t begin = c.seed + mu * nref +
                                  (static_cast<std::uint64_t>(r) * mu +
                                   static_cast<std::uint64_t>(i)) * n;
      batches.emplace_back(sample_values(*s.env, policies[static_cast<std::size_t>(i)], c.n,
                                         begin, s.field),
                           ub);
    }
    auto& row = outcomes[static_cast<std::size_t>(r)];
    for (Correction corr : c.selection.corrections) {
      const SelectionReport rep =
          select_policy(batches, c.spec, {corr, c.selection.allow_defaulted});
      row.push_back({rep.chosen_index, rep.chosen_bound,
                     rep.chosen_bound >= truths[static_cast<std::size_t>(rep.chosen_index)]});
    }
  });

  CsvTable detail({"repetition", "correction", "chosen_index", "chosen_bound", "covered"});
  CsvTable table({"correction", "inflated_delta", "repetitions", "coverage", "target",
                  "three_sigma", "meets_target"});
  json per_correction = json::array();
  const double target = 1.0 - c.spec.delta;
  const double tol = three_sigma(target, c.repetitions);
  for (std::size_t j = 0; j < n_corr; ++j) {
    const Correction corr = c.selection.corrections[j];
    int covered = 0;
    for (int r = 0; r < c.repetitions; ++r) {
      const Outcome& o = outcomes[static_cast<std::size_t>(r)][j];
      covered += o.covered ? 1 : 0;
      detail.add(r, std::string(correction_name(corr)), o.chosen, o.bound, o.covered);
    }
    const double coverage = static_cast<double>(covered) / c.repetitions;
    const double inflated = inflate_delta(c.spec.delta, m, corr);
    table.add(std::string(correction_name(corr)), inflated, c.repetitions, coverage, target,
              tol, coverage >= target - tol);
    per_correction.push_back({{"correction", correction_name(corr)},
                              {"inflated_delta", inflated},
                              {"coverage", coverage},
                              {"meets_target", coverage >= target - tol}});
  }

  json summary = header_json("select-study", c, *s.env);
  summary["policies"] = m;
  summary["target"] = target;
  summary["three_sigma"] = tol;
  summary["uncorrected_limit"] = std::pow(target, m);
  summary["per_correction"] = per_correction;

  ExperimentFiles files;
  files["selection_study.csv"] = table.str();
  files["selections.csv"] = detail.str();
  files["selection_summary.json"] = dump_report(summary);
  return files;
}

}  // namespace policycert
