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

// Candidate policies: cross-entropy-method open-loop planning and uniform
// random plans.

#ifndef POLICYCERT_CEM_H_
#define POLICYCERT_CEM_H_

#include <cstdint>
#include <vector>

#include "policycert/environment.h"

namespace policycert {

struct CemConfig {
  int generations = 10;
  int population = 100;
  int elites = 10;
  int horizon = 20;
  double init_mean = 0.0;
  double init_std = 1.0;
  int evaluations_per_candidate = 1;
  double std_floor = 1e-3;
  int threads = 1;

  // Throws InvalidArgument on a bad config or a horizon that differs from
  // the environment's.
  void validate(const Environment& env) const;
};

struct CemGeneration {
  int generation = 0;
  double best_cost = 0.0;
  double median_elite_cost = 0.0;
  double mean_cost = 0.0;
};

struct CemResult {
  Policy plan;
  double plan_cost = 0.0;  // evaluated cost of `plan` in its generation
  std::vector<CemGeneration> trace;
};

// Per generation: draw `population` plans from independent per-step
// Gaussians (clamped to the control bounds), score each by the mean total
// cost of `evaluations_per_candidate` rollouts, and refit mean and std to
// the `elites` cheapest. Returns the cheapest plan of the last generation.
CemResult cem_optimize(const Environment& env, const CemConfig& config,
                       std::uint64_t seed);

// m open-loop plans with every control drawn uniformly from the bounds.
std::vector<Policy> random_policies(const Environment& env, int m, std::uint64_t seed);

}  // namespace policycert

#endif  // POLICYCERT_CEM_H_
