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

// Continuous scalar distributions with closed-form risk measures, used as
// exact oracles for the bounds.

#ifndef POLICYCERT_DISTRIBUTIONS_H_
#define POLICYCERT_DISTRIBUTIONS_H_

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "policycert/random.h"

namespace policycert {

class ScalarDistribution {
 public:
  virtual ~ScalarDistribution() = default;

  virtual std::string_view type() const = 0;
  virtual double cdf(double x) const = 0;
  // inf{x : cdf(x) >= tau}, tau in (0, 1).
  virtual double quantile(double tau) const = 0;
  virtual double mean() const = 0;
  // (1 / (1 - tau)) * integral_tau^1 quantile(g) dg, tau in [0, 1).
  virtual double cvar(double tau) const = 0;
  virtual double support_max() const = 0;  // may be +inf
  virtual double sample(RandomStream& rng) const = 0;
};

class UniformDistribution final : public ScalarDistribution {
 public:
  UniformDistribution(double lo, double hi);

  std::string_view type() const override { return "uniform"; }
  double cdf(double x) const override;
  double quantile(double tau) const override;
  double mean() const override;
  double cvar(double tau) const override;
  double support_max() const override { return hi_; }
  double sample(RandomStream& rng) const override;

 private:
  double lo_;
  double hi_;
};

// Normal(mean, std) conditioned on [lo, hi]; either end may be infinite.
class TruncatedNormalDistribution final : public ScalarDistribution {
 public:
  TruncatedNormalDistribution(double mean, double stddev, double lo, double hi);

  std::string_view type() const override { return "truncated_normal"; }
  double cdf(double x) const override;
  double quantile(double tau) const override;
  double mean() const override;
  double cvar(double tau) const override;
  double support_max() const override { return hi_; }
  double sample(RandomStream& rng) const override;

 private:
  // Mean of the normal restricted to [a, hi] in standard units.
  double upper_tail_mean(double z_from) const;

  double mu_;
  double sigma_;
  double lo_;
  double hi_;
  double cdf_lo_;  // Phi((lo - mu) / sigma)
  double mass_;    // Phi(beta) - Phi(alpha)
};

// Finite mixture of uniform components.
class UniformMixtureDistribution final : public ScalarDistribution {
 public:
  struct Component {
    double weight;
    double lo;
    double hi;
  };

  explicit UniformMixtureDistribution(std::vector<Component> components);

  std::string_view type() const override { return "mixture"; }
  double cdf(double x) const override;
  double quantile(double tau) const override;
  double mean() const override;
  double cvar(double tau) const override;
  double support_max() const override;
  double sample(RandomStream& rng) const override;

 private:
  std::vector<Component> components_;
};

}  // namespace policycert

#endif  // POLICYCERT_DISTRIBUTIONS_H_
