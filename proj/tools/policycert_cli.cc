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

// policycert command-line front end.
//
// Exit codes: 0 success (or accepted), 1 rejected by a constraint test,
// 2 library error or infeasible request (JSON error on stdout), 64 usage
// error such as an unknown flag, 65 malformed config file.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "policycert/bounds.h"
#include "policycert/cem.h"
#include "policycert/config.h"
#include "policycert/environments.h"
#include "policycert/error.h"
#include "policycert/experiments.h"
#include "policycert/report.h"
#include "policycert/rollout_io.h"
#include "policycert/shift.h"
#include "policycert/verify.h"

namespace pc = policycert;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 64;
constexpr int kExitConfig = 65;

struct MeasureFlags {
  std::string measure = "var";
  std::optional<double> tau;
  double delta = 0.2;

  pc::RiskSpec spec() const {
    pc::RiskSpec s;
    s.measure = pc::parse_measure(measure);
    const bool quantile = s.measure == pc::Measure::kVaR || s.measure == pc::Measure::kCVaR;
    s.tau = tau.value_or(quantile ? 0.7 : 0.0);
    s.delta = delta;
    s.validate();
    return s;
  }
};

// Where samples come from: a file, fresh rollouts, or (failure
// probability only) a failure count.
struct SampleFlags {
  std::string in;
  std::string field = "auto";
  std::string env;
  std::string plan;
  int n = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  std::optional<int> k;
  std::optional<double> upper_bound;
};

void add_measure_flags(CLI::App* cmd, MeasureFlags& f) {
  cmd->add_option("--measure", f.measure, "var | expectation | cvar | failprob")
      ->capture_default_str();
  cmd->add_option("--tau", f.tau, "quantile level (default 0.7 for var/cvar)");
  cmd->add_option("--delta", f.delta, "bound error rate")->capture_default_str();
}

void add_sample_flags(CLI::App* cmd, SampleFlags& f) {
  cmd->add_option("--in", f.in, "samples: JSON array, rollout JSONL or one number per line");
  cmd->add_option("--field", f.field, "cost | constraint | auto")->capture_default_str();
  cmd->add_option("--env", f.env, "environment config file (simulate instead of --in)");
  cmd->add_option("--plan", f.plan, "plan file for --env (default: zero plan)");
  cmd->add_option("--n", f.n, "sample count for --env, or trial count with --k");
  cmd->add_option("--seed", f.seed, "first rollout seed for --env")->capture_default_str();
  cmd->add_option("--threads", f.threads, "rollout threads")->capture_default_str();
  cmd->add_option("--k", f.k, "failure count (failprob only, with --n)");
  cmd->add_option("--upper-bound", f.upper_bound, "almost-sure upper bound J_ub");
}

pc::RecordField resolve_field(const std::string& field, pc::Measure m) {
  if (field == "cost") return pc::RecordField::kCost;
  if (field == "constraint") return pc::RecordField::kConstraint;
  if (field == "auto") return pc::measure_field(m);
  throw pc::Error(pc::ErrorCode::kInvalidArgument,
                  "unknown field '" + field + "' (expected cost, constraint or auto)");
}

std::unique_ptr<pc::Environment> load_environment(const std::string& path) {
  return pc::make_environment(pc::load_config_file(path));
}

pc::SampleBatch load_batch(const SampleFlags& f, pc::Measure m) {
  const pc::RecordField field = resolve_field(f.field, m);
  if (!f.in.empty() && !f.env.empty()) {
    throw pc::Error(pc::ErrorCode::kInvalidArgument, "give either --in or --env, not both");
  }
  if (!f.in.empty()) return pc::SampleBatch(pc::load_samples(f.in, field), f.upper_bound);
  if (f.env.empty()) {
    throw pc::Error(pc::ErrorCode::kInvalidArgument, "need samples: --in FILE or --env CONFIG");
  }
  if (f.n < 1) throw pc::Error(pc::ErrorCode::kInvalidArgument, "--env needs --n >= 1");
  const auto env = load_environment(f.env);
  const pc::Policy policy = f.plan.empty() ? env->zero_policy() : pc::load_plan(f.plan);
  auto ub = f.upper_bound ? f.upper_bound : pc::field_upper_bound(*env, field);
  return pc::SampleBatch(pc::sample_values(*env, policy, f.n, f.seed, field, f.threads), ub);
}

// Failure count from --k/--n or from samples.
pc::FailureCount load_failures(const SampleFlags& f) {
  if (f.k) {
    if (f.n < 1 || *f.k < 0 || *f.k > f.n) {
      throw pc::Error(pc::ErrorCode::kInvalidArgument, "--k needs --n >= 1 and 0 <= k <= n");
    }
    return {*f.k, f.n};
  }
  const pc::SampleBatch g = load_batch(f, pc::Measure::kFailureProbability);
  return {g.count_above(0.0), g.size()};
}

json optional_json(const auto& x) { return x ? json(*x) : json(nullptr); }

void print(const json& report) { std::cout << pc::dump_report(report); }

// --- bound ---------------------------------------------------------------

struct BoundCmd {
  MeasureFlags measure;
  SampleFlags samples;
  std::optional<double> alpha;
};

int run_bound(const BoundCmd& c) {
  const pc::RiskSpec spec = c.measure.spec();
  pc::BoundResult b;
  int n = 0;
  if (spec.measure == pc::Measure::kFailureProbability) {
    const pc::FailureCount fc = load_failures(c.samples);
    n = fc.n;
    b = c.alpha ? pc::robust_failure_prob_bound(fc.failures, fc.n, spec.delta, *c.alpha)
                : pc::failure_prob_bound(fc.failures, fc.n, spec.delta);
  } else {
    if (c.samples.k) {
      throw pc::Error(pc::ErrorCode::kInvalidArgument, "--k only applies to failprob");
    }
    const pc::SampleBatch batch = load_batch(c.samples, spec.measure);
    n = batch.size();
    b = c.alpha ? pc::compute_robust_bound(batch, spec, *c.alpha) : pc::compute_bound(batch, spec);
  }
  json report = {{"schema_version", pc::kSchemaVersion},
                 {"measure", pc::measure_name(spec.measure)},
                 {"tau", spec.tau},
                 {"delta", spec.delta},
                 {"n", n},
                 {"bound", b.value},
                 {"k_index", optional_json(b.k_index)},
                 {"epsilon", optional_json(b.epsilon)},
                 {"defaulted", b.defaulted},
                 {"nominal_confidence", b.nominal_confidence}};
  if (c.alpha) report["alpha"] = *c.alpha;
  print(report);
  return kExitOk;
}

// --- test ----------------------------------------------------------------

struct TestCmd {
  MeasureFlags measure;
  SampleFlags samples;
  std::optional<double> cutoff;
  bool chance = false;
  std::string route = "failprob";
};

int run_test(const TestCmd& c) {
  pc::TestOutcome outcome;
  json report = {{"schema_version", pc::kSchemaVersion}};
  if (c.chance) {
    if (c.cutoff) {
      throw pc::Error(pc::ErrorCode::kInvalidArgument, "--chance takes no --cutoff");
    }
    const double tau = c.measure.tau.value_or(0.7);
    const pc::ChanceRoute route = pc::parse_chance_route(c.route);
    std::vector<double> g;
    if (c.samples.k) {
      const pc::FailureCount fc = load_failures(c.samples);
      g.assign(static_cast<std::size_t>(fc.n), 0.0);
      std::fill_n(g.begin(), fc.failures, 1.0);
    } else {
      const pc::SampleBatch batch = load_batch(c.samples, pc::Measure::kFailureProbability);
      g.assign(batch.values().begin(), batch.values().end());
    }
    outcome = pc::chance_constraint_test(pc::SampleBatch(g), tau, c.measure.delta, route);
    report["test"] = "chance";
    report["tau"] = tau;
    report["route"] = pc::chance_route_name(route);
  } else {
    if (!c.cutoff) throw pc::Error(pc::ErrorCode::kInvalidArgument, "need --cutoff or --chance");
    const pc::ConstraintSpec spec{c.measure.spec(), *c.cutoff};
    if (spec.measure.measure == pc::Measure::kFailureProbability) {
      outcome = pc::constraint_test(load_failures(c.samples), spec);
    } else {
      outcome = pc::constraint_test(load_batch(c.samples, spec.measure.measure), spec);
    }
    report["test"] = "constraint";
    report["measure"] = pc::measure_name(spec.measure.measure);
    report["tau"] = spec.measure.tau;
  }
  report.update(pc::to_json(outcome));
  print(report);
  return outcome.accepted ? kExitOk : kExitRejected;
}

// --- select --------------------------------------------------------------

struct SelectCmd {
  MeasureFlags measure;
  std::vector<std::string> in;
  std::vector<std::string> plans;
  int random = 0;
  std::uint64_t policy_seed = 0;
  std::string env;
  std::optional<int> budget;
  std::optional<int> n;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string field = "auto";
  std::optional<double> upper_bound;
  std::string correction = "sidak";
  bool unsafe_no_correction = false;
  bool allow_defaulted = false;
};

int run_select(const SelectCmd& c) {
  const pc::Correction correction = pc::parse_correction(c.correction);
  if (correction == pc::Correction::kNone && !c.unsafe_no_correction) {
    throw pc::Error(pc::ErrorCode::kInvalidArgument,
                    "--correction none voids the guarantee for the selected policy; pass "
                    "--unsafe-no-correction to proceed anyway");
  }
  const pc::RiskSpec spec = c.measure.spec();
  const pc::RecordField field = resolve_field(c.field, spec.measure);
  std::vector<pc::SampleBatch> batches;
  int n = 0;
  if (!c.in.empty()) {
    if (!c.env.empty() || !c.plans.empty() || c.random > 0) {
      throw pc::Error(pc::ErrorCode::kInvalidArgument,
                      "--in sample files exclude --env, --plan and --random");
    }
    for (const auto& path : c.in) batches.emplace_back(pc::load_samples(path, field), c.upper_bound);
    n = batches.front().size();
  } else {
    if (c.env.empty()) {
      throw pc::Error(pc::ErrorCode::kInvalidArgument, "need --in files or --env with policies");
    }
    const auto env = load_environment(c.env);
    std::vector<pc::Policy> policies;
    for (const auto& path : c.plans) {
      for (auto& p : pc::load_plans(path)) policies.push_back(std::move(p));
    }
    if (c.random > 0) {
      for (auto& p : pc::random_policies(*env, c.random, c.policy_seed)) {
        policies.push_back(std::move(p));
      }
    }
    if (policies.empty()) {
      throw pc::Error(pc::ErrorCode::kInvalidArgument, "need --plan files or --random M");
    }
    const int m = static_cast<int>(policies.size());
    if (c.budget.has_value() == c.n.has_value()) {
      throw pc::Error(pc::ErrorCode::kInvalidArgument, "give exactly one of --budget and --n");
    }
    n = c.n ? *c.n : *c.budget / m;  // even split of the total budget
    if (n < 1) {
      throw pc::InsufficientSamples(n, 1, "budget leaves no samples per policy");
    }
    const auto ub = c.upper_bound ? c.upper_bound : pc::field_upper_bound(*env, field);
    for (int i = 0; i < m; ++i) {
      const std::uint64_t begin =
          c.seed + static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n);
      batches.emplace_back(
          pc::sample_values(*env, policies[static_cast<std::size_t>(i)], n, begin, field, c.threads),
          ub);
    }
  }
  const pc::SelectionReport rep = pc::select_policy(batches, spec, {correction, c.allow_defaulted});
  json report = {{"schema_version", pc::kSchemaVersion},
                 {"measure", pc::measure_name(spec.measure)},
                 {"tau", spec.tau},
                 {"delta", spec.delta},
                 {"m", static_cast<int>(batches.size())},
                 {"n", n}};
  report.update(pc::to_json(rep));
  print(report);
  return kExitOk;
}

// --- shift-confidence ----------------------------------------------------

struct ShiftConfidenceCmd {
  MeasureFlags measure;
  int n = 0;
  double alpha = 0.0;
  std::optional<double> q_sim;
};

int run_shift_confidence(const ShiftConfidenceCmd& c) {
  const pc::RiskSpec spec = c.measure.spec();
  pc::SensitivityResult r;
  switch (spec.measure) {
    case pc::Measure::kVaR:
      r = pc::var_sensitivity(c.n, spec.tau, spec.delta, c.alpha);
      break;
    case pc::Measure::kExpectation:
    case pc::Measure::kCVaR:
      r = pc::cvar_sensitivity(c.n, spec.delta, c.alpha);
      break;
    case pc::Measure::kFailureProbability:
      if (!c.q_sim) {
        throw pc::Error(pc::ErrorCode::kInvalidArgument, "failprob needs --q-sim");
      }
      r = pc::failure_prob_sensitivity(c.n, *c.q_sim, spec.delta, c.alpha);
      break;
  }
  json report = {{"schema_version", pc::kSchemaVersion},
                 {"measure", pc::measure_name(spec.measure)},
                 {"tau", spec.tau},
                 {"n", c.n}};
  report.update(pc::to_json(r));
  print(report);
  return kExitOk;
}

// --- experiments ---------------------------------------------------------

struct ExperimentCmd {
  std::string config;
  std::string out;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  bool svg = false;
};

int run_experiment(const std::string& name, const ExperimentCmd& c,
                   pc::ExperimentFiles (*runner)(const pc::ExperimentConfig&)) {
  pc::ExperimentConfig config = pc::load_experiment_config(c.config);
  if (c.threads) config.threads = *c.threads;
  if (c.seed) config.seed = *c.seed;
  if (c.svg) config.svg = true;
  const pc::ExperimentFiles files = runner(config);
  std::filesystem::path dir = !c.out.empty()                 ? c.out
                              : !config.output_dir.empty()   ? config.output_dir
                                                             : "policycert_out/" + name;
  std::filesystem::create_directories(dir);
  json listing = json::array();
  for (const auto& [file, contents] : files) {
    pc::write_text_file((dir / file).string(), contents);
    listing.push_back(file);
  }
  print({{"schema_version", pc::kSchemaVersion},
         {"experiment", name},
         {"output_dir", dir.string()},
         {"files", listing}});
  return kExitOk;
}

// --- synth ---------------------------------------------------------------

struct SynthCmd {
  std::string env;
  std::string out;
  std::string trace;
  std::string method = "cem";
  std::uint64_t seed = 0;
  int count = 1;
  int threads = 1;
  pc::CemConfig cem;
  std::optional<int> horizon;
};

int run_synth(SynthCmd c) {
  const auto env = load_environment(c.env);
  json report = {{"schema_version", pc::kSchemaVersion}, {"method", c.method}, {"seed", c.seed}};
  if (c.method == "cem") {
    c.cem.horizon = c.horizon.value_or(env->horizon());
    c.cem.threads = c.threads;
    const pc::CemResult result = pc::cem_optimize(*env, c.cem, c.seed);
    json plan = {{"schema_version", pc::kSchemaVersion},
                 {"plan", pc::plan_to_json(result.plan)},
                 {"cost", result.plan_cost}};
    pc::write_text_file(c.out, pc::dump_report(plan));
    pc::CsvTable trace({"generation", "best_cost", "median_elite_cost", "mean_cost"});
    for (const auto& g : result.trace) {
      trace.add(g.generation, g.best_cost, g.median_elite_cost, g.mean_cost);
    }
    const std::string trace_path =
        c.trace.empty() ? (std::filesystem::path(c.out).replace_extension("").string() +
                           "_trace.csv")
                        : c.trace;
    pc::write_text_file(trace_path, trace.str());
    report["plan_cost"] = result.plan_cost;
    report["generations"] = c.cem.generations;
    report["trace"] = trace_path;
  } else if (c.method == "random") {
    pc::write_text_file(c.out,
                        pc::dump_report(pc::plans_to_json(pc::random_policies(*env, c.count, c.seed))));
    report["count"] = c.count;
  } else {
    throw pc::Error(pc::ErrorCode::kInvalidArgument,
                    "unknown method '" + c.method + "' (expected cem or random)");
  }
  report["plan_file"] = c.out;
  print(report);
  return kExitOk;
}

// --- rollout / envs ------------------------------------------------------

struct RolloutCmd {
  std::string env;
  std::string plan;
  std::string out;
  int n = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  bool trajectories = false;
};

int run_rollout(const RolloutCmd& c) {
  const auto env = load_environment(c.env);
  const pc::Policy policy = c.plan.empty() ? env->zero_policy() : pc::load_plan(c.plan);
  const auto records = pc::collect_rollouts(*env, policy, c.n, c.seed, c.threads);
  pc::persist_rollouts(records, c.out, {c.trajectories});
  print({{"schema_version", pc::kSchemaVersion},
         {"rollouts", c.n},
         {"seed_begin", c.seed},
         {"out", c.out}});
  return kExitOk;
}

int run_envs() {
  json list = json::array();
  for (const auto& info : pc::builtin_environments()) {
    list.push_back({{"kind", info.kind},
                    {"description", info.description},
                    {"example_config", info.example_config}});
  }
  print({{"schema_version", pc::kSchemaVersion}, {"environments", list}});
  return kExitOk;
}

int report_error(const std::exception& e, int code) {
  std::cout << pc::dump_report(pc::error_json(e));
  std::cerr << "policycert: " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution-free performance bounds for stochastic policies"};
  app.require_subcommand(1);
  std::function<int()> action;

  BoundCmd bound;
  auto* bound_cmd = app.add_subcommand("bound", "upper bound on a performance measure");
  add_measure_flags(bound_cmd, bound.measure);
  add_sample_flags(bound_cmd, bound.samples);
  bound_cmd->add_option("--alpha", bound.alpha, "shift budget: build the robust bound");
  bound_cmd->callback([&] { action = [&] { return run_bound(bound); }; });

  TestCmd test;
  auto* test_cmd = app.add_subcommand("test", "constraint test (exit 0 accept, 1 reject)");
  add_measure_flags(test_cmd, test.measure);
  add_sample_flags(test_cmd, test.samples);
  test_cmd->add_option("--cutoff", test.cutoff, "accept when the bound is <= cutoff");
  test_cmd->add_flag("--chance", test.chance, "test Pr[g <= 0] >= tau on constraint values");
  test_cmd->add_option("--route", test.route, "chance route: var | failprob")
      ->capture_default_str();
  test_cmd->callback([&] { action = [&] { return run_test(test); }; });

  SelectCmd select;
  auto* select_cmd = app.add_subcommand("select", "pick the policy with the lowest bound");
  add_measure_flags(select_cmd, select.measure);
  select_cmd->add_option("--in", select.in, "one sample file per policy");
  select_cmd->add_option("--plan", select.plans, "plan or plan-set files");
  select_cmd->add_option("--random", select.random, "add M random open-loop policies");
  select_cmd->add_option("--policy-seed", select.policy_seed, "seed for --random");
  select_cmd->add_option("--env", select.env, "environment config file");
  select_cmd->add_option("--budget", select.budget, "total rollouts, split evenly");
  select_cmd->add_option("--n", select.n, "rollouts per policy");
  select_cmd->add_option("--seed", select.seed, "first rollout seed")->capture_default_str();
  select_cmd->add_option("--threads", select.threads, "rollout threads");
  select_cmd->add_option("--field", select.field, "cost | constraint | auto");
  select_cmd->add_option("--upper-bound", select.upper_bound, "almost-sure upper bound J_ub");
  select_cmd->add_option("--correction", select.correction, "sidak | bonferroni | none")
      ->capture_default_str();
  select_cmd->add_flag("--unsafe-no-correction", select.unsafe_no_correction,
                       "allow --correction none");
  select_cmd->add_flag("--allow-defaulted", select.allow_defaulted,
                       "accept bounds that fell back to J_ub");
  select_cmd->callback([&] { action = [&] { return run_select(select); }; });

  ShiftConfidenceCmd shift;
  auto* shift_cmd = app.add_subcommand(
      "shift-confidence", "confidence that survives a distribution shift of size alpha");
  add_measure_flags(shift_cmd, shift.measure);
  shift_cmd->add_option("--n", shift.n, "sample count")->required();
  shift_cmd->add_option("--alpha", shift.alpha, "one-sided KS shift budget")->required();
  shift_cmd->add_option("--q-sim", shift.q_sim, "simulator failure probability (failprob)");
  shift_cmd->callback([&] { action = [&] { return run_shift_confidence(shift); }; });

  struct ExperimentEntry {
    const char* name;
    const char* help;
    pc::ExperimentFiles (*runner)(const pc::ExperimentConfig&);
  };
  const ExperimentEntry experiments[] = {
      {"validate", "coverage of repeated bound constructions", &pc::run_validate},
      {"sensitivity", "nominal bounds under shifted deployments", &pc::run_sensitivity},
      {"robust", "shift-robust bounds per (alpha, shift) cell", &pc::run_robust},
      {"curve", "acceptance curve of the chance-constraint test", &pc::run_curve},
      {"select-study", "coverage of the selected bound per correction",
       &pc::run_selection_study},
  };
  ExperimentCmd experiment;
  for (const auto& entry : experiments) {
    auto* cmd = app.add_subcommand(entry.name, entry.help);
    cmd->add_option("config", experiment.config, "experiment config file")->required();
    cmd->add_option("--out", experiment.out, "output directory");
    cmd->add_option("--threads", experiment.threads, "worker threads");
    cmd->add_option("--seed", experiment.seed, "override the config seed");
    cmd->add_flag("--svg", experiment.svg, "also render SVG plots");
    cmd->callback([&, entry] {
      action = [&, entry] { return run_experiment(entry.name, experiment, entry.runner); };
    });
  }

  SynthCmd synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate candidate policies");
  synth_cmd->add_option("--env", synth.env, "environment config file")->required();
  synth_cmd->add_option("--out", synth.out, "plan file to write")->required();
  synth_cmd->add_option("--trace", synth.trace, "CEM trace CSV (default <out>_trace.csv)");
  synth_cmd->add_option("--method", synth.method, "cem | random")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "seed")->capture_default_str();
  synth_cmd->add_option("--count", synth.count, "random: number of plans");
  synth_cmd->add_option("--threads", synth.threads, "evaluation threads");
  synth_cmd->add_option("--generations", synth.cem.generations)->capture_default_str();
  synth_cmd->add_option("--population", synth.cem.population)->capture_default_str();
  synth_cmd->add_option("--elites", synth.cem.elites)->capture_default_str();
  synth_cmd->add_option("--horizon", synth.horizon, "defaults to the environment horizon");
  synth_cmd->add_option("--init-mean", synth.cem.init_mean)->capture_default_str();
  synth_cmd->add_option("--init-std", synth.cem.init_std)->capture_default_str();
  synth_cmd->add_option("--evaluations", synth.cem.evaluations_per_candidate)
      ->capture_default_str();
  synth_cmd->add_option("--std-floor", synth.cem.std_floor)->capture_default_str();
  synth_cmd->callback([&] { action = [&] { return run_synth(synth); }; });

  RolloutCmd roll;
  auto* roll_cmd = app.add_subcommand("rollout", "simulate and persist rollouts as JSONL");
  roll_cmd->add_option("--env", roll.env, "environment config file")->required();
  roll_cmd->add_option("--plan", roll.plan, "plan file (default: zero plan)");
  roll_cmd->add_option("--out", roll.out, "JSONL file to write")->required();
  roll_cmd->add_option("--n", roll.n, "rollout count")->capture_default_str();
  roll_cmd->add_option("--seed", roll.seed, "first seed")->capture_default_str();
  roll_cmd->add_option("--threads", roll.threads, "rollout threads");
  roll_cmd->add_flag("--trajectories", roll.trajectories, "include states and controls");
  roll_cmd->callback([&] { action = [&] { return run_rollout(roll); }; });

  auto* envs_cmd = app.add_subcommand("envs", "list builtin environments with example configs");
  envs_cmd->callback([&] { action = [] { return run_envs(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const pc::ConfigError& e) {
    return report_error(e, kExitConfig);
  } catch (const pc::Error& e) {
    return report_error(e, kExitError);
  } catch (const std::exception& e) {
    return report_error(e, kExitError);
  }
}
