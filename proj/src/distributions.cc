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

#include "policycert/distributions.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "policycert/error.h"

namespace policycert {
namespace {

// Uniform on the open interval (0, 1).
double open_uniform(RandomStream& rng) {
  return (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double std_normal_pdf(double z) {
  if (std::isinf(z)) return 0.0;
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

void require_tau(double tau) {
  internal::require(std::isfinite(tau) && tau > 0.0 && tau < 1.0,
                    "quantile level must lie in (0, 1)");
}

void require_cvar_tau(double tau) {
  internal::require(std::isfinite(tau) && tau >= 0.0 && tau < 1.0,
                    "CVaR level must lie in [0, 1)");
}

}  // namespace

UniformDistribution::UniformDistribution(double lo, double hi) : lo_(lo), hi_(hi) {
  internal::require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
                    "uniform distribution needs finite lo < hi");
}

double UniformDistribution::cdf(double x) const {
  return std::clamp((x - lo_) / (hi_ - lo_), 0.0, 1.0);
}

double UniformDistribution::quantile(double tau) const {
  require_tau(tau);
  return lo_ + tau * (hi_ - lo_);
}

double UniformDistribution::mean() const { return 0.5 * (lo_ + hi_); }

double UniformDistribution::cvar(double tau) const {
  require_cvar_tau(tau);
  return lo_ + 0.5 * (1.0 + tau) * (hi_ - lo_);
}

double UniformDistribution::sample(RandomStream& rng) const {
  return lo_ + (hi_ - lo_) * rng.uniform();
}

TruncatedNormalDistribution::TruncatedNormalDistribution(double mean, double stddev,
                                                         double lo, double hi)
    : mu_(mean), sigma_(stddev), lo_(lo), hi_(hi) {
  internal::require(std::isfinite(mean) && std::isfinite(stddev) && stddev > 0.0,
                    "truncated normal needs finite mean and positive std");
  internal::require(!std::isnan(lo) && !std::isnan(hi) && lo < hi,
                    "truncated normal needs lo < hi");
  cdf_lo_ = std_normal_cdf((lo_ - mu_) / sigma_);
  mass_ = std_normal_cdf((hi_ - mu_) / sigma_) - cdf_lo_;
  internal::require(mass_ > 1e-12, "truncation interval carries no probability mass");
}

double TruncatedNormalDistribution::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  return std::clamp((std_normal_cdf((x - mu_) / sigma_) - cdf_lo_) / mass_, 0.0, 1.0);
}

double TruncatedNormalDistribution::quantile(double tau) const {
  require_tau(tau);
  const double z = std_normal_quantile(cdf_lo_ + tau * mass_);
  return std::clamp(mu_ + sigma_ * z, lo_, hi_);
}

double TruncatedNormalDistribution::upper_tail_mean(double z_from) const {
  const double beta = (hi_ - mu_) / sigma_;
  const double tail_mass = std_normal_cdf(beta) - std_normal_cdf(z_from);
  return mu_ + sigma_ * (std_normal_pdf(z_from) - std_normal_pdf(beta)) / tail_mass;
}

double TruncatedNormalDistribution::mean() const {
  return upper_tail_mean((lo_ - mu_) / sigma_);
}

double TruncatedNormalDistribution::cvar(double tau) const {
  require_cvar_tau(tau);
  if (tau == 0.0) return mean();
  const double z_v = (quantile(tau) - mu_) / sigma_;
  const double beta = (hi_ - mu_) / sigma_;
  // The tail above VaR_tau carries exactly (1 - tau) of the truncated mass.
  return mu_ + sigma_ * (std_normal_pdf(z_v) - std_normal_pdf(beta)) /
                   ((1.0 - tau) * mass_);
}

double TruncatedNormalDistribution::sample(RandomStream& rng) const {
  const double z = std_normal_quantile(cdf_lo_ + open_uniform(rng) * mass_);
  return std::clamp(mu_ + sigma_ * z, lo_, hi_);
}

UniformMixtureDistribution::UniformMixtureDistribution(std::vector<Component> components)
    : components_(std::move(components)) {
  internal::require(!components_.empty(), "mixture needs at least one component");
  double total = 0.0;
  for (const auto& c : components_) {
    internal::require(std::isfinite(c.weight) && c.weight > 0.0,
                      "mixture weights must be positive");
    internal::require(std::isfinite(c.lo) && std::isfinite(c.hi) && c.lo < c.hi,
                      "mixture components need finite lo < hi");
    total += c.weight;
  }
  for (auto& c : components_) c.weight /= total;
}

double UniformMixtureDistribution::cdf(double x) const {
  double f = 0.0;
  for (const auto& c : components_) {
    f += c.weight * std::clamp((x - c.lo) / (c.hi - c.lo), 0.0, 1.0);
  }
  return std::min(f, 1.0);
}

double UniformMixtureDistribution::quantile(double tau) const {
  require_tau(tau);
  double lo = components_.front().lo;
  double hi = components_.front().hi;
  for (const auto& c : components_) {
    lo = std::min(lo, c.lo);
    hi = std::max(hi, c.hi);
  }
  // cdf(lo) = 0 < tau <= 1 = cdf(hi); keep that bracket.
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) >= tau) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double UniformMixtureDistribution::mean() const {
  double m = 0.0;
  for (const auto& c : components_) m += c.weight * 0.5 * (c.lo + c.hi);
  return m;
}

double UniformMixtureDistribution::cvar(double tau) const {
  require_cvar_tau(tau);
  if (tau == 0.0) return mean();
  const double v = quantile(tau);
  double tail = 0.0;
  for (const auto& c : components_) {
    const double from = std::clamp(v, c.lo, c.hi);
    tail += c.weight * (c.hi * c.hi - from * from) / (2.0 * (c.hi - c.lo));
  }
  return tail / (1.0 - tau);
}

double UniformMixtureDistribution::support_max() const {
  double hi = components_.front().hi;
  for (const auto& c : components_) hi = std::max(hi, c.hi);
  return hi;
}

double UniformMixtureDistribution::sample(RandomStream& rng) const {
  const double pick = rng.uniform();
  double acc = 0.0;
  const Component* chosen = &components_.back();
  for (const auto& c : components_) {
    acc += c.weight;
    if (pick < acc) {
      chosen = &c;
      break;
    }
  }
  return chosen->lo + (chosen->hi - chosen->lo) * rng.uniform();
}

}  // namespace policycert
