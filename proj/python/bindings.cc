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

// Python bindings. Structured inputs and outputs (environment configs,
// plans, reports) cross the boundary as JSON text; the pure-Python layer
// in policycert/__init__.py converts them to and from dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "policycert/bounds.h"
#include "policycert/cem.h"
#include "policycert/config.h"
#include "policycert/environments.h"
#include "policycert/error.h"
#include "policycert/experiments.h"
#include "policycert/report.h"
#include "policycert/rollout_io.h"
#include "policycert/shift.h"
#include "policycert/stats.h"
#include "policycert/verify.h"

namespace py = pybind11;
namespace pc = policycert;
using nlohmann::json;

namespace {

pc::SampleBatch batch_of(std::vector<double> values, std::optional<double> upper_bound) {
  return pc::SampleBatch(std::move(values), upper_bound);
}

pc::RiskSpec spec_of(const std::string& measure, double tau, double delta) {
  pc::RiskSpec spec{pc::parse_measure(measure), tau, delta};
  spec.validate();
  return spec;
}

std::string bound_json(const pc::BoundResult& b) { return pc::to_json(b).dump(); }

pc::RecordField field_of(const std::string& field) {
  if (field == "cost") return pc::RecordField::kCost;
  if (field == "constraint") return pc::RecordField::kConstraint;
  throw pc::Error(pc::ErrorCode::kInvalidArgument, "field must be 'cost' or 'constraint'");
}

pc::Policy plan_or_zero(const pc::Environment& env, const std::string& plan) {
  return plan.empty() ? env.zero_policy() : pc::plan_from_json(json::parse(plan));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distribution-free performance bounds for stochastic policies";

  static py::exception<pc::Error> error(m, "PolicyCertError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const pc::Error& e) {
      py::object err = error;
      py::object instance = err(e.what());
      instance.attr("code") = std::string(pc::error_code_name(e.code()));
      instance.attr("details") = pc::error_json(e).dump();
      PyErr_SetObject(err.ptr(), instance.ptr());
    }
  });

  m.attr("SCHEMA_VERSION") = pc::kSchemaVersion;

  m.def("binom_pmf", &pc::binom_pmf, py::arg("k"), py::arg("n"), py::arg("p"));
  m.def("binom_cdf", py::overload_cast<int, int, double>(&pc::binom_cdf), py::arg("k"),
        py::arg("n"), py::arg("p"));
  m.def("binom_cdf_inverse_p", &pc::binom_cdf_inverse_p, py::arg("k"), py::arg("n"),
        py::arg("target"));
  m.def("dkw_gap", &pc::dkw_gap, py::arg("delta"), py::arg("n"));
  m.def("var_order_index", &pc::var_order_index, py::arg("n"), py::arg("tau"), py::arg("delta"));
  m.def("var_min_samples", &pc::var_min_samples, py::arg("tau"), py::arg("delta"));

  m.def(
      "compute_bound",
      [](std::vector<double> values, const std::string& measure, double tau, double delta,
         std::optional<double> upper_bound) {
        return bound_json(pc::compute_bound(batch_of(std::move(values), upper_bound),
                                            spec_of(measure, tau, delta)));
      },
      py::arg("values"), py::arg("measure"), py::arg("tau"), py::arg("delta"),
      py::arg("upper_bound") = py::none());
  m.def(
      "failure_prob_bound",
      [](int failures, int n, double delta) {
        return bound_json(pc::failure_prob_bound(failures, n, delta));
      },
      py::arg("failures"), py::arg("n"), py::arg("delta"));
  m.def(
      "compute_robust_bound",
      [](std::vector<double> values, const std::string& measure, double tau, double delta,
         double alpha, std::optional<double> upper_bound) {
        return bound_json(pc::compute_robust_bound(batch_of(std::move(values), upper_bound),
                                                   spec_of(measure, tau, delta), alpha));
      },
      py::arg("values"), py::arg("measure"), py::arg("tau"), py::arg("delta"), py::arg("alpha"),
      py::arg("upper_bound") = py::none());
  m.def(
      "sensitivity",
      [](const std::string& measure, int n, double tau, double delta, double alpha,
         std::optional<double> q_sim) {
        switch (pc::parse_measure(measure)) {
          case pc::Measure::kVaR:
            return pc::to_json(pc::var_sensitivity(n, tau, delta, alpha)).dump();
          case pc::Measure::kExpectation:
          case pc::Measure::kCVaR:
            return pc::to_json(pc::cvar_sensitivity(n, delta, alpha)).dump();
          case pc::Measure::kFailureProbability:
            if (!q_sim) {
              throw pc::Error(pc::ErrorCode::kInvalidArgument, "failprob needs q_sim");
            }
            return pc::to_json(pc::failure_prob_sensitivity(n, *q_sim, delta, alpha)).dump();
        }
        return std::string("{}");
      },
      py::arg("measure"), py::arg("n"), py::arg("tau"), py::arg("delta"), py::arg("alpha"),
      py::arg("q_sim") = py::none());
  m.def(
      "one_sided_ks_distance",
      [](std::vector<double> a, std::vector<double> b) {
        return pc::one_sided_ks_distance(pc::SampleBatch(std::move(a)),
                                         pc::SampleBatch(std::move(b)));
      },
      py::arg("sim"), py::arg("true"));

  m.def(
      "constraint_test",
      [](std::vector<double> values, const std::string& measure, double tau, double delta,
         double cutoff, std::optional<double> upper_bound) {
        const pc::ConstraintSpec spec{spec_of(measure, tau, delta), cutoff};
        return pc::to_json(pc::constraint_test(batch_of(std::move(values), upper_bound), spec))
            .dump();
      },
      py::arg("values"), py::arg("measure"), py::arg("tau"), py::arg("delta"),
      py::arg("cutoff"), py::arg("upper_bound") = py::none());
  m.def(
      "chance_constraint_test",
      [](std::vector<double> g, double tau, double delta, const std::string& route) {
        return pc::to_json(pc::chance_constraint_test(pc::SampleBatch(std::move(g)), tau, delta,
                                                      pc::parse_chance_route(route)))
            .dump();
      },
      py::arg("g"), py::arg("tau"), py::arg("delta"), py::arg("route") = "failprob");
  m.def(
      "select_policy",
      [](std::vector<std::vector<double>> batches, const std::string& measure, double tau,
         double delta, const std::string& correction, std::optional<double> upper_bound,
         bool allow_defaulted) {
        std::vector<pc::SampleBatch> b;
        for (auto& values : batches) b.push_back(batch_of(std::move(values), upper_bound));
        return pc::to_json(pc::select_policy(b, spec_of(measure, tau, delta),
                                             {pc::parse_correction(correction), allow_defaulted}))
            .dump();
      },
      py::arg("batches"), py::arg("measure"), py::arg("tau"), py::arg("delta"),
      py::arg("correction") = "sidak", py::arg("upper_bound") = py::none(),
      py::arg("allow_defaulted") = false);
  m.def("inflate_delta",
        [](double delta, int m, const std::string& correction) {
          return pc::inflate_delta(delta, m, pc::parse_correction(correction));
        },
        py::arg("delta"), py::arg("m"), py::arg("correction"));

  m.def(
      "sample_values",
      [](const std::string& env_config, const std::string& plan, int n, std::uint64_t seed,
         const std::string& field, int threads) {
        const auto env = pc::make_environment(pc::parse_config_text(env_config));
        return pc::sample_values(*env, plan_or_zero(*env, plan), n, seed, field_of(field),
                                 threads);
      },
      py::arg("env_config"), py::arg("plan"), py::arg("n"), py::arg("seed"),
      py::arg("field") = "cost", py::arg("threads") = 1);
  m.def(
      "field_upper_bound",
      [](const std::string& env_config, const std::string& field) {
        const auto env = pc::make_environment(pc::parse_config_text(env_config));
        return pc::field_upper_bound(*env, field_of(field));
      },
      py::arg("env_config"), py::arg("field") = "cost");
  m.def(
      "rollouts_jsonl",
      [](const std::string& env_config, const std::string& plan, int n, std::uint64_t seed,
         bool trajectories) {
        const auto env = pc::make_environment(pc::parse_config_text(env_config));
        std::ostringstream out;
        pc::write_rollouts(out, pc::collect_rollouts(*env, plan_or_zero(*env, plan), n, seed),
                           {trajectories});
        return out.str();
      },
      py::arg("env_config"), py::arg("plan"), py::arg("n"), py::arg("seed"),
      py::arg("trajectories") = false);
  m.def("builtin_environments", [] {
    json list = json::array();
    for (const auto& info : pc::builtin_environments()) {
      list.push_back({{"kind", info.kind},
                      {"description", info.description},
                      {"example_config", info.example_config}});
    }
    return list.dump();
  });

  m.def(
      "cem_optimize",
      [](const std::string& env_config, int generations, int population, int elites,
         double init_mean, double init_std, int evaluations, double std_floor,
         std::uint64_t seed, int threads) {
        const auto env = pc::make_environment(pc::parse_config_text(env_config));
        pc::CemConfig c;
        c.generations = generations;
        c.population = population;
        c.elites = elites;
        c.horizon = env->horizon();
        c.init_mean = init_mean;
        c.init_std = init_std;
        c.evaluations_per_candidate = evaluations;
        c.std_floor = std_floor;
        c.threads = threads;
        const pc::CemResult r = pc::cem_optimize(*env, c, seed);
        json trace = json::array();
        for (const auto& g : r.trace) {
          trace.push_back({{"generation", g.generation},
                           {"best_cost", g.best_cost},
                           {"median_elite_cost", g.median_elite_cost},
                           {"mean_cost", g.mean_cost}});
        }
        return json{{"plan", pc::plan_to_json(r.plan)}, {"cost", r.plan_cost}, {"trace", trace}}
            .dump();
      },
      py::arg("env_config"), py::arg("generations") = 10, py::arg("population") = 100,
      py::arg("elites") = 10, py::arg("init_mean") = 0.0, py::arg("init_std") = 1.0,
      py::arg("evaluations") = 1, py::arg("std_floor") = 1e-3, py::arg("seed") = 0,
      py::arg("threads") = 1);
  m.def(
      "random_policies",
      [](const std::string& env_config, int count, std::uint64_t seed) {
        const auto env = pc::make_environment(pc::parse_config_text(env_config));
        return pc::plans_to_json(pc::random_policies(*env, count, seed)).dump();
      },
      py::arg("env_config"), py::arg("count"), py::arg("seed") = 0);

  m.def(
      "run_experiment",
      [](const std::string& name, const std::string& config_text, const std::string& base_dir) {
        const pc::ExperimentConfig config =
            pc::parse_experiment_config(pc::parse_config_text(config_text), base_dir);
        pc::ExperimentFiles files;
        {
          py::gil_scoped_release release;
          if (name == "validate") {
            files = pc::run_validate(config);
          } else if (name == "sensitivity") {
            files = pc::run_sensitivity(config);
          } else if (name == "robust") {
            files = pc::run_robust(config);
          } else if (name == "curve") {
            files = pc::run_curve(config);
          } else if (name == "select-study") {
            files = pc::run_selection_study(config);
          } else {
            throw pc::Error(pc::ErrorCode::kInvalidArgument,
                            "unknown experiment '" + name + "'");
          }
        }
        return files;
      },
      py::arg("name"), py::arg("config_text"), py::arg("base_dir") = "");
}
