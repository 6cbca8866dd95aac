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

#include "policycert/environments.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "policycert/config.h"
#include "policycert/error.h"

namespace policycert {
namespace {

using nlohmann::json;

double clamp_to(double u, std::size_t j, const ControlBounds& bounds) {
  return std::clamp(u, bounds.lo[j], bounds.hi[j]);
}

Vector broadcast(const ConfigReader& r, std::string_view key, Vector fallback,
                 std::size_t size) {
  Vector v = r.numbers(key, std::move(fallback));
  if (v.size() == 1 && size > 1) v.assign(size, v.front());
  if (v.size() != size) {
    r.fail(key, "expected " + std::to_string(size) + " entries, got " +
                    std::to_string(v.size()));
  }
  return v;
}

std::optional<CostClip> read_clip(const ConfigReader& r, std::string_view key) {
  if (!r.has(key)) return std::nullopt;
  const Vector v = r.numbers(key);
  if (v.size() != 2 || !(v[0] <= v[1])) r.fail(key, "expected [lo, hi] with lo <= hi");
  return CostClip{v[0], v[1]};
}

bool read_constraint_mode(const ConfigReader& r) {
  const std::string mode = r.string("mode", "binary");
  if (mode == "binary") return true;
  if (mode == "margin") return false;
  r.fail("mode", "expected \"binary\" or \"margin\", got \"" + mode + "\"");
}

void require_non_negative(const ConfigReader& r, std::string_view key, double value) {
  if (value < 0.0) r.fail(key, "must be >= 0");
}

int read_horizon(const ConfigReader& r, int fallback) {
  const int horizon = r.integer("horizon", fallback);
  if (horizon < 1) r.fail("horizon", "must be >= 1");
  return horizon;
}

double quadratic(const Vector& weights, const Vector& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += weights[i] * x[i] * x[i];
  return s;
}

json clip_json(const std::optional<CostClip>& clip) {
  if (!clip) return nullptr;
  return json::array({clip->lo, clip->hi});
}

std::unique_ptr<Environment> make_linear_gaussian(const ConfigReader& r) {
  r.reject_unknown({"kind", "horizon", "A", "B", "x0", "reset_noise_scale",
                    "process_noise", "state_cost", "control_cost", "terminal_cost",
                    "control_bounds", "cost_clip", "dynamics_scale_range",
                    "constraint"});
  LinearGaussianEnv::Params p;
  p.horizon = read_horizon(r, p.horizon);
  if (r.has("A")) p.A = r.matrix("A");
  const std::size_t n = p.A.size();
  if (p.A.front().size() != n) r.fail("A", "must be square");
  if (r.has("B")) {
    p.B = r.matrix("B");
  } else {
    p.B.assign(n, Vector(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) p.B[i][i] = 1.0;
  }
  if (p.B.size() != n) r.fail("B", "must have one row per state");
  const std::size_t m = p.B.front().size();
  p.x0 = broadcast(r, "x0", {0.0}, n);
  p.reset_noise_scale = r.number("reset_noise_scale", p.reset_noise_scale);
  require_non_negative(r, "reset_noise_scale", p.reset_noise_scale);
  p.process_noise = r.number("process_noise", p.process_noise);
  require_non_negative(r, "process_noise", p.process_noise);
  p.state_cost = broadcast(r, "state_cost", {1.0}, n);
  p.control_cost = broadcast(r, "control_cost", {0.1}, m);
  p.terminal_cost = broadcast(r, "terminal_cost", {1.0}, n);
  p.bounds = {Vector(m, -1.0), Vector(m, 1.0)};
  if (auto b = r.optional_child("control_bounds")) {
    b->reject_unknown({"lo", "hi"});
    p.bounds.lo = broadcast(*b, "lo", {-1.0}, m);
    p.bounds.hi = broadcast(*b, "hi", {1.0}, m);
    for (std::size_t j = 0; j < m; ++j) {
      if (!(p.bounds.lo[j] <= p.bounds.hi[j])) b->fail("lo", "must not exceed hi");
    }
  }
  p.clip = read_clip(r, "cost_clip");
  if (r.has("dynamics_scale_range")) {
    const Vector v = r.numbers("dynamics_scale_range");
    if (v.size() != 2 || !(v[0] <= v[1])) {
      r.fail("dynamics_scale_range", "expected [lo, hi] with lo <= hi");
    }
    p.dynamics_scale_range = std::make_pair(v[0], v[1]);
  }
  if (auto c = r.optional_child("constraint")) {
    c->reject_unknown({"limit", "mode"});
    p.limit = c->number("limit", p.limit);
    p.binary_constraint = read_constraint_mode(*c);
  }
  return std::make_unique<LinearGaussianEnv>(std::move(p));
}

std::unique_ptr<Environment> make_cliff_walk(const ConfigReader& r) {
  r.reject_unknown({"kind", "horizon", "x0", "reset_noise_scale", "process_noise",
                    "goal", "cliff", "penalty", "control_cost", "max_step",
                    "cost_clip", "constraint"});
  CliffWalkEnv::Params p;
  p.horizon = read_horizon(r, p.horizon);
  p.x0 = r.number("x0", p.x0);
  p.reset_noise_scale = r.number("reset_noise_scale", p.reset_noise_scale);
  require_non_negative(r, "reset_noise_scale", p.reset_noise_scale);
  p.process_noise = r.number("process_noise", p.process_noise);
  require_non_negative(r, "process_noise", p.process_noise);
  p.goal = r.number("goal", p.goal);
  p.cliff = r.number("cliff", p.cliff);
  p.penalty = r.number("penalty", p.penalty);
  require_non_negative(r, "penalty", p.penalty);
  p.control_cost = r.number("control_cost", p.control_cost);
  require_non_negative(r, "control_cost", p.control_cost);
  p.max_step = r.number("max_step", p.max_step);
  if (!(p.max_step > 0.0)) r.fail("max_step", "must be > 0");
  if (auto clip = read_clip(r, "cost_clip")) p.clip = *clip;
  if (auto c = r.optional_child("constraint")) {
    c->reject_unknown({"mode"});
    p.binary_constraint = read_constraint_mode(*c);
  }
  return std::make_unique<CliffWalkEnv>(p);
}

std::unique_ptr<Environment> make_bernoulli_task(const ConfigReader& r) {
  r.reject_unknown({"kind", "horizon", "base_failure_prob", "slope", "offset"});
  BernoulliTaskEnv::Params p;
  p.horizon = read_horizon(r, p.horizon);
  p.base_failure_prob = r.number("base_failure_prob", p.base_failure_prob);
  if (p.base_failure_prob < 0.0 || p.base_failure_prob > 1.0) {
    r.fail("base_failure_prob", "must lie in [0, 1]");
  }
  p.slope = r.number("slope", p.slope);
  p.offset = r.number("offset", p.offset);
  return std::make_unique<BernoulliTaskEnv>(p);
}

std::unique_ptr<Environment> make_direct(const ConfigReader& r) {
  r.reject_unknown({"kind", "distribution", "offset", "constraint_threshold"});
  const ConfigReader d = r.child("distribution");
  std::shared_ptr<const ScalarDistribution> dist = make_distribution(d.node(), d.path());
  return std::make_unique<DirectDistributionEnv>(
      std::move(dist), d.node(), r.number("offset", 0.0),
      r.number("constraint_threshold", 0.0));
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearGaussianEnv

LinearGaussianEnv::LinearGaussianEnv(Params params) : p_(std::move(params)) {
  const std::size_t n = p_.x0.size();
  internal::require(p_.horizon >= 1, "horizon must be >= 1");
  internal::require(n >= 1 && p_.A.size() == n && p_.B.size() == n,
                    "A, B and x0 dimensions disagree");
  const std::size_t m = p_.B.front().size();
  internal::require(m >= 1, "control dimension must be >= 1");
  for (const auto& row : p_.A) internal::require(row.size() == n, "A must be square");
  for (const auto& row : p_.B) internal::require(row.size() == m, "B rows differ in length");
  internal::require(p_.state_cost.size() == n && p_.terminal_cost.size() == n,
                    "state cost weights need one entry per state");
  internal::require(p_.control_cost.size() == m,
                    "control cost weights need one entry per control");
  internal::require(p_.bounds.lo.size() == m && p_.bounds.hi.size() == m,
                    "control bounds need one entry per control");
}

Vector LinearGaussianEnv::sample_parameters(RandomStream& rng) const {
  if (!p_.dynamics_scale_range) return {1.0};
  return {rng.uniform(p_.dynamics_scale_range->first, p_.dynamics_scale_range->second)};
}

Vector LinearGaussianEnv::initial_state(const Vector& /*params*/,
                                        RandomStream& rng) const {
  Vector x = p_.x0;
  if (p_.reset_noise_scale > 0.0) {
    for (double& xi : x) xi += p_.reset_noise_scale * rng.normal();
  }
  return x;
}

Vector LinearGaussianEnv::transition(int /*t*/, const Vector& x, const Vector& u,
                                     const Vector& params, RandomStream& rng) const {
  const double s = params.empty() ? 1.0 : params.front();
  Vector next(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) v += p_.A[i][j] * x[j];
    v *= s;
    for (std::size_t j = 0; j < u.size(); ++j) v += p_.B[i][j] * clamp_to(u[j], j, p_.bounds);
    if (p_.process_noise > 0.0) v += p_.process_noise * rng.normal();
    next[i] = v;
  }
  return next;
}

double LinearGaussianEnv::stage_cost(int /*t*/, const Vector& x, const Vector& u,
                                     const Vector& /*params*/) const {
  Vector uc(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) uc[j] = clamp_to(u[j], j, p_.bounds);
  return quadratic(p_.state_cost, x) + quadratic(p_.control_cost, uc);
}

double LinearGaussianEnv::terminal_cost(const Vector& x, const Vector& /*params*/) const {
  return quadratic(p_.terminal_cost, x);
}

bool LinearGaussianEnv::has_terminal_cost() const {
  return std::any_of(p_.terminal_cost.begin(), p_.terminal_cost.end(),
                     [](double w) { return w != 0.0; });
}

double LinearGaussianEnv::constraint(std::span<const Vector> states,
                                     std::span<const Vector> /*controls*/,
                                     const Vector& /*params*/) const {
  double peak = 0.0;
  for (const auto& x : states) peak = std::max(peak, std::abs(x.front()));
  if (p_.binary_constraint) return peak > p_.limit ? 1.0 : 0.0;
  return peak - p_.limit;
}

std::optional<double> LinearGaussianEnv::constraint_upper_bound() const {
  if (p_.binary_constraint) return 1.0;
  return std::nullopt;
}

json LinearGaussianEnv::config() const {
  json c = {{"kind", "linear_gaussian"},
            {"horizon", p_.horizon},
            {"A", p_.A},
            {"B", p_.B},
            {"x0", p_.x0},
            {"reset_noise_scale", p_.reset_noise_scale},
            {"process_noise", p_.process_noise},
            {"state_cost", p_.state_cost},
            {"control_cost", p_.control_cost},
            {"terminal_cost", p_.terminal_cost},
            {"control_bounds", {{"lo", p_.bounds.lo}, {"hi", p_.bounds.hi}}},
            {"cost_clip", clip_json(p_.clip)},
            {"constraint",
             {{"limit", p_.limit}, {"mode", p_.binary_constraint ? "binary" : "margin"}}}};
  if (p_.dynamics_scale_range) {
    c["dynamics_scale_range"] = {p_.dynamics_scale_range->first,
                                 p_.dynamics_scale_range->second};
  }
  return c;
}

// ---------------------------------------------------------------------------
// CliffWalkEnv

CliffWalkEnv::CliffWalkEnv(Params params) : p_(params) {
  internal::require(p_.horizon >= 1, "horizon must be >= 1");
  internal::require(p_.max_step > 0.0, "max_step must be > 0");
}

double CliffWalkEnv::location_cost(double x) const {
  const double d = x - p_.goal;
  return d * d + (x > p_.cliff ? p_.penalty : 0.0);
}

Vector CliffWalkEnv::initial_state(const Vector& /*params*/, RandomStream& rng) const {
  double x = p_.x0;
  if (p_.reset_noise_scale > 0.0) x += p_.reset_noise_scale * rng.normal();
  return {x};
}

Vector CliffWalkEnv::transition(int /*t*/, const Vector& x, const Vector& u,
                                const Vector& /*params*/, RandomStream& rng) const {
  double next = x.front() + std::clamp(u.front(), -p_.max_step, p_.max_step);
  if (p_.process_noise > 0.0) next += p_.process_noise * rng.normal();
  return {next};
}

double CliffWalkEnv::stage_cost(int /*t*/, const Vector& x, const Vector& u,
                                const Vector& /*params*/) const {
  const double uc = std::clamp(u.front(), -p_.max_step, p_.max_step);
  return location_cost(x.front()) + p_.control_cost * uc * uc;
}

double CliffWalkEnv::terminal_cost(const Vector& x, const Vector& /*params*/) const {
  return location_cost(x.front());
}

double CliffWalkEnv::constraint(std::span<const Vector> states,
                                std::span<const Vector> /*controls*/,
                                const Vector& /*params*/) const {
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& x : states) peak = std::max(peak, x.front());
  if (p_.binary_constraint) return peak > p_.cliff ? 1.0 : 0.0;
  return peak - p_.cliff;
}

std::optional<double> CliffWalkEnv::constraint_upper_bound() const {
  if (p_.binary_constraint) return 1.0;
  return std::nullopt;
}

json CliffWalkEnv::config() const {
  return {{"kind", "cliff_walk"},
          {"horizon", p_.horizon},
          {"x0", p_.x0},
          {"reset_noise_scale", p_.reset_noise_scale},
          {"process_noise", p_.process_noise},
          {"goal", p_.goal},
          {"cliff", p_.cliff},
          {"penalty", p_.penalty},
          {"control_cost", p_.control_cost},
          {"max_step", p_.max_step},
          {"cost_clip", clip_json(p_.clip)},
          {"constraint", {{"mode", p_.binary_constraint ? "binary" : "margin"}}}};
}

// ---------------------------------------------------------------------------
// BernoulliTaskEnv

BernoulliTaskEnv::BernoulliTaskEnv(Params params) : p_(params) {
  internal::require(p_.horizon >= 1, "horizon must be >= 1");
  internal::require(std::isfinite(p_.base_failure_prob) && std::isfinite(p_.slope) &&
                        std::isfinite(p_.offset),
                    "Bernoulli task parameters must be finite");
}

double BernoulliTaskEnv::failure_probability_at(double position) const {
  return std::clamp(p_.base_failure_prob + p_.offset + p_.slope * position, 0.0, 1.0);
}

Vector BernoulliTaskEnv::initial_state(const Vector& /*params*/,
                                       RandomStream& /*rng*/) const {
  return {0.0, 0.0};
}

Vector BernoulliTaskEnv::transition(int t, const Vector& x, const Vector& u,
                                    const Vector& /*params*/, RandomStream& rng) const {
  const double position = x[0] + std::clamp(u.front(), -1.0, 1.0) / p_.horizon;
  double failed = x[1];
  if (t == p_.horizon - 1) failed = rng.uniform() < failure_probability_at(position) ? 1.0 : 0.0;
  return {position, failed};
}

double BernoulliTaskEnv::stage_cost(int /*t*/, const Vector& /*x*/, const Vector& /*u*/,
                                    const Vector& /*params*/) const {
  return 0.0;
}

double BernoulliTaskEnv::terminal_cost(const Vector& x, const Vector& /*params*/) const {
  return x[1];
}

double BernoulliTaskEnv::constraint(std::span<const Vector> states,
                                    std::span<const Vector> /*controls*/,
                                    const Vector& /*params*/) const {
  return states.back()[1];
}

double BernoulliTaskEnv::failure_probability(const Policy& policy) const {
  internal::require(policy.is_open_loop() && policy.horizon() == p_.horizon,
                    "failure probability needs an open-loop plan of the task horizon");
  // Same accumulation as the rollout, so the value matches bit for bit.
  double position = 0.0;
  for (const auto& u : policy.controls()) {
    position = position + std::clamp(u.front(), -1.0, 1.0) / p_.horizon;
  }
  return failure_probability_at(position);
}

Policy BernoulliTaskEnv::plan_for_failure_probability(double q) const {
  internal::require(std::isfinite(q) && q >= 0.0 && q <= 1.0,
                    "failure probability must lie in [0, 1]");
  internal::require(p_.slope != 0.0, "task with zero slope has a fixed failure probability");
  const double position = (q - p_.base_failure_prob - p_.offset) / p_.slope;
  internal::require(position >= -1.0 && position <= 1.0,
                    "failure probability is out of reach of the control bounds");
  return Policy::open_loop(
      std::vector<Vector>(static_cast<std::size_t>(p_.horizon), Vector{position}));
}

std::optional<double> BernoulliTaskEnv::analytic_measure(const RiskSpec& spec,
                                                         const Policy& policy) const {
  if (!policy.is_open_loop()) return std::nullopt;
  const double p = failure_probability(policy);
  switch (spec.measure) {
    case Measure::kVaR:
      return 1.0 - p < spec.tau ? 1.0 : 0.0;
    case Measure::kExpectation:
    case Measure::kFailureProbability:
      return p;
    case Measure::kCVaR:
      return std::min(1.0, p / (1.0 - spec.tau));
  }
  return std::nullopt;
}

json BernoulliTaskEnv::config() const {
  return {{"kind", "bernoulli_task"},
          {"horizon", p_.horizon},
          {"base_failure_prob", p_.base_failure_prob},
          {"slope", p_.slope},
          {"offset", p_.offset}};
}

// ---------------------------------------------------------------------------
// DirectDistributionEnv

DirectDistributionEnv::DirectDistributionEnv(
    std::shared_ptr<const ScalarDistribution> distribution, json distribution_config,
    double offset, double constraint_threshold)
    : distribution_(std::move(distribution)),
      distribution_config_(std::move(distribution_config)),
      offset_(offset),
      threshold_(constraint_threshold) {
  internal::require(distribution_ != nullptr, "direct environment needs a distribution");
  internal::require(std::isfinite(offset) && std::isfinite(constraint_threshold),
                    "offset and constraint threshold must be finite");
}

Vector DirectDistributionEnv::initial_state(const Vector& /*params*/,
                                            RandomStream& rng) const {
  return {distribution_->sample(rng)};
}

Vector DirectDistributionEnv::transition(int /*t*/, const Vector& x, const Vector& /*u*/,
                                         const Vector& /*params*/,
                                         RandomStream& /*rng*/) const {
  return x;
}

double DirectDistributionEnv::stage_cost(int /*t*/, const Vector& /*x*/,
                                         const Vector& /*u*/,
                                         const Vector& /*params*/) const {
  return 0.0;
}

double DirectDistributionEnv::terminal_cost(const Vector& x,
                                            const Vector& /*params*/) const {
  return x.front() + offset_;
}

double DirectDistributionEnv::constraint(std::span<const Vector> states,
                                         std::span<const Vector> /*controls*/,
                                         const Vector& /*params*/) const {
  return states.back().front() + offset_ - threshold_;
}

std::optional<double> DirectDistributionEnv::cost_upper_bound() const {
  const double hi = distribution_->support_max();
  if (!std::isfinite(hi)) return std::nullopt;
  return hi + offset_;
}

std::optional<double> DirectDistributionEnv::constraint_upper_bound() const {
  const auto hi = cost_upper_bound();
  if (!hi) return std::nullopt;
  return *hi - threshold_;
}

std::optional<double> DirectDistributionEnv::analytic_measure(
    const RiskSpec& spec, const Policy& /*policy*/) const {
  switch (spec.measure) {
    case Measure::kVaR:
      return distribution_->quantile(spec.tau) + offset_;
    case Measure::kExpectation:
      return distribution_->mean() + offset_;
    case Measure::kCVaR:
      return distribution_->cvar(spec.tau) + offset_;
    case Measure::kFailureProbability:
      return 1.0 - distribution_->cdf(threshold_ - offset_);
  }
  return std::nullopt;
}

json DirectDistributionEnv::config() const {
  return {{"kind", "direct"},
          {"distribution", distribution_config_},
          {"offset", offset_},
          {"constraint_threshold", threshold_}};
}

// ---------------------------------------------------------------------------
// Factories

std::unique_ptr<ScalarDistribution> make_distribution(const json& config,
                                                      const std::string& path) {
  const ConfigReader r(config, path);
  const std::string type = r.string("type");
  if (type == "uniform") {
    r.reject_unknown({"type", "lo", "hi"});
    const double lo = r.number("lo", 0.0);
    const double hi = r.number("hi", 1.0);
    if (!(lo < hi)) r.fail("hi", "must exceed lo");
    return std::make_unique<UniformDistribution>(lo, hi);
  }
  if (type == "truncated_normal") {
    r.reject_unknown({"type", "mean", "std", "lo", "hi"});
    const double inf = std::numeric_limits<double>::infinity();
    const double mean = r.number("mean", 0.0);
    const double sd = r.number("std", 1.0);
    if (!(sd > 0.0)) r.fail("std", "must be > 0");
    const double lo = r.number("lo", -inf);
    const double hi = r.number("hi", inf);
    if (!(lo < hi)) r.fail("hi", "must exceed lo");
    try {
      return std::make_unique<TruncatedNormalDistribution>(mean, sd, lo, hi);
    } catch (const Error& e) {
      r.fail("lo", e.what());
    }
  }
  if (type == "mixture") {
    r.reject_unknown({"type", "components"});
    if (!r.node().contains("components") || !r.node()["components"].is_array() ||
        r.node()["components"].empty()) {
      r.fail("components", "expected a non-empty list of {weight, lo, hi}");
    }
    std::vector<UniformMixtureDistribution::Component> components;
    const json& list = r.node()["components"];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const ConfigReader c(list[i], r.field("components") + "[" + std::to_string(i) + "]");
      c.reject_unknown({"weight", "lo", "hi"});
      const UniformMixtureDistribution::Component comp{c.number("weight"), c.number("lo"),
                                                       c.number("hi")};
      if (!(comp.weight > 0.0)) c.fail("weight", "must be > 0");
      if (!(comp.lo < comp.hi)) c.fail("hi", "must exceed lo");
      components.push_back(comp);
    }
    return std::make_unique<UniformMixtureDistribution>(std::move(components));
  }
  r.fail("type", "unknown distribution \"" + type +
                     "\" (expected uniform, truncated_normal or mixture)");
}

std::unique_ptr<Environment> make_environment(const json& config, const std::string& path) {
  if (config.is_object() && config.contains("schema_version")) {
    const ConfigReader top(config, path);
    if (top.integer("schema_version") != kSchemaVersion) {
      top.fail("schema_version", "unsupported schema version (expected 1)");
    }
    json stripped = config;
    stripped.erase("schema_version");
    return make_environment(stripped, path);
  }
  const ConfigReader r(config, path);
  const std::string kind = r.string("kind");
  if (kind == "linear_gaussian") return make_linear_gaussian(r);
  if (kind == "cliff_walk") return make_cliff_walk(r);
  if (kind == "bernoulli_task") return make_bernoulli_task(r);
  if (kind == "direct") return make_direct(r);
  throw Error(ErrorCode::kUnknownEnvironment,
              "unknown environment kind \"" + kind +
                  "\" (expected linear_gaussian, cliff_walk, bernoulli_task or direct)");
}

std::vector<EnvironmentInfo> builtin_environments() {
  return {
      {"linear_gaussian",
       "Controllable linear dynamics with Gaussian reset and process noise, "
       "diagonal quadratic costs and optional per-term cost clipping.",
       [] {
         LinearGaussianEnv::Params p;
         p.clip = CostClip{0.0, 4.0};
         return LinearGaussianEnv(p).config();
       }()},
      {"cliff_walk",
       "Scalar walk to a goal with a cost penalty past a cliff edge.",
       CliffWalkEnv(CliffWalkEnv::Params{}).config()},
      {"bernoulli_task",
       "Binary failure task whose failure probability is affine in the mean control.",
       BernoulliTaskEnv(BernoulliTaskEnv::Params{}).config()},
      {"direct",
       "Total cost drawn directly from a uniform, truncated normal or uniform "
       "mixture distribution.",
       {{"kind", "direct"},
        {"distribution", {{"type", "uniform"}, {"lo", 0.0}, {"hi", 1.0}}},
        {"offset", 0.0},
        {"constraint_threshold", 0.5}}},
  };
}

}  // namespace policycert
