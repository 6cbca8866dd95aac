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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "policycert/error.h"
#include "policycert/parallel.h"
#include "policycert/random.h"

namespace policycert {
namespace {

// Salts separating the candidate-sampling and evaluation seed spaces.
constexpr std::uint64_t kSampleSalt = 0x5EED'CE00'0000'0001ULL;
constexpr std::uint64_t kEvalSalt = 0x5EED'CE00'0000'0002ULL;
constexpr std::uint64_t kRandomPolicySalt = 0x5EED'CE00'0000'0003ULL;

using Plan = std::vector<Vector>;

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

void CemConfig::validate(const Environment& env) const {
  internal::require(generations >= 1, "CEM needs at least one generation");
  internal::require(population >= 1, "CEM population must be >= 1");
  internal::require(elites >= 1 && elites <= population,
                    "CEM elites must lie in [1, population]");
  internal::require(evaluations_per_candidate >= 1,
                    "CEM needs at least one evaluation per candidate");
  internal::require(std::isfinite(init_mean) && std::isfinite(init_std) && init_std >= 0.0,
                    "CEM initial mean/std must be finite, std >= 0");
  internal::require(std::isfinite(std_floor) && std_floor >= 0.0, "CEM std floor must be >= 0");
  if (horizon != env.horizon()) {
    internal::throw_invalid("CEM horizon " + std::to_string(horizon) +
                            " does not match environment horizon " +
                            std::to_string(env.horizon()));
  }
}

CemResult cem_optimize(const Environment& env, const CemConfig& config, std::uint64_t seed) {
  config.validate(env);
  const auto steps = static_cast<std::size_t>(config.horizon);
  const auto dims = static_cast<std::size_t>(env.control_dim());
  const ControlBounds bounds = env.control_bounds();

  Plan mean(steps, Vector(dims, config.init_mean));
  Plan stddev(steps, Vector(dims, config.init_std));
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t j = 0; j < dims; ++j) {
      mean[t][j] = std::clamp(mean[t][j], bounds.lo[j], bounds.hi[j]);
    }
  }

  CemResult result{Policy::open_loop(mean), 0.0, {}};
  const auto pop = static_cast<std::size_t>(config.population);
  std::vector<Plan> candidates(pop);
  std::vector<double> costs(pop);

  for (int g = 0; g < config.generations; ++g) {
    const std::uint64_t gen_key = hash_combine(seed, static_cast<std::uint64_t>(g));
    internal::parallel_for(config.population, config.threads, [&](int i) {
      RandomStream rng(hash_combine(gen_key, kSampleSalt), static_cast<std::uint64_t>(i));
      Plan plan(steps, Vector(dims));
      for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t j = 0; j < dims; ++j) {
          plan[t][j] = std::clamp(mean[t][j] + stddev[t][j] * rng.normal(), bounds.lo[j],
                                  bounds.hi[j]);
        }
      }
      const Policy policy = Policy::open_loop(plan);
      const std::uint64_t eval_base =
          hash_combine(hash_combine(gen_key, kEvalSalt), static_cast<std::uint64_t>(i));
      double total = 0.0;
      for (int e = 0; e < config.evaluations_per_candidate; ++e) {
        total += rollout(env, policy, eval_base + static_cast<std::uint64_t>(e)).total_cost;
      }
      candidates[static_cast<std::size_t>(i)] = std::move(plan);
      costs[static_cast<std::size_t>(i)] = total / config.evaluations_per_candidate;
    });

    std::vector<std::size_t> order(pop);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
    const auto n_elite = static_cast<std::size_t>(config.elites);

    std::vector<double> elite_costs(n_elite);
    for (std::size_t e = 0; e < n_elite; ++e) elite_costs[e] = costs[order[e]];
    result.trace.push_back(
        {g, costs[order.front()], median_of(elite_costs),
         std::accumulate(costs.begin(), costs.end(), 0.0) / static_cast<double>(pop)});
    result.plan = Policy::open_loop(candidates[order.front()]);
    result.plan_cost = costs[order.front()];

    for (std::size_t t = 0; t < steps; ++t) {
      for (std::size_t j = 0; j < dims; ++j) {
        double m = 0.0;
        for (std::size_t e = 0; e < n_elite; ++e) m += candidates[order[e]][t][j];
        m /= static_cast<double>(n_elite);
        double var = 0.0;
        for (std::size_t e = 0; e < n_elite; ++e) {
          const double d = candidates[order[e]][t][j] - m;
          var += d * d;
        }
        mean[t][j] = m;
        stddev[t][j] = std::max(std::sqrt(var / static_cast<double>(n_elite)), config.std_floor);
      }
    }
  }
  return result;
}

std::vector<Policy> random_policies(const Environment& env, int m, std::uint64_t seed) {
  internal::require(m >= 1, "need at least one random policy");
  const auto steps = static_cast<std::size_t>(env.horizon());
  const auto dims = static_cast<std::size_t>(env.control_dim());
  const ControlBounds bounds = env.control_bounds();
  std::vector<Policy> policies;
  policies.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    RandomStream rng(hash_combine(seed, kRandomPolicySalt), static_cast<std::uint64_t>(i));
    Plan plan(steps, Vector(dims));
    for (auto& u : plan) {
      for (std::size_t j = 0; j < dims; ++j) u[j] = rng.uniform(bounds.lo[j], bounds.hi[j]);
    }
    policies.push_back(Policy::open_loop(std::move(plan)));
  }
  return policies;
}

}  // namespace policycert
