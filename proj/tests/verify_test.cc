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


#include "policycert/verify.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "policycert/error.h"
#include "policycert/stats.h"
#include "test_support.h"

namespace policycert {
namespace {

SampleBatch binary_batch(int n, int failures) {
  std::vector<double> g(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < failures; ++i) g[static_cast<std::size_t>(i)] = 1.0;
  return SampleBatch(std::move(g));
}

TEST(ChanceConstraint, AcceptsAtMostOneFailureOfTen) {
  EXPECT_NEAR(binom_cdf(1, 10, 0.3), 0.14931, 5e-6);
  EXPECT_NEAR(binom_cdf(2, 10, 0.3), 0.38278, 5e-6);
  for (ChanceRoute route :
       {ChanceRoute::kViaFailureProbability, ChanceRoute::kViaVarOrderStatistic}) {
    for (int f = 0; f <= 10; ++f) {
      const TestOutcome t = chance_constraint_test(binary_batch(10, f), 0.7, 0.2, route);
      EXPECT_EQ(t.accepted, f <= 1) << chance_route_name(route) << " f=" << f;
      EXPECT_DOUBLE_EQ(t.guaranteed_false_accept_rate, 0.2);
    }
  }
  const TestOutcome var9 = chance_constraint_test(binary_batch(10, 1), 0.7, 0.2,
                                                  ChanceRoute::kViaVarOrderStatistic);
  EXPECT_EQ(*var9.bound->k_index, 9);
}

TEST(ChanceConstraint, RoutesAgreeExhaustively) {
  int checked = 0;
  for (int n = 1; n <= 25; ++n) {
    for (double tau : {0.05, 0.3, 0.5, 0.7, 0.85, 0.95}) {
      for (double delta : {0.01, 0.05, 0.1, 0.2, 0.4}) {
        for (int f = 0; f <= n; ++f) {
          const SampleBatch g = binary_batch(n, f);
          ASSERT_TRUE(chance_constraint_routes_agree(g, tau, delta))
              << "n=" << n << " tau=" << tau << " delta=" << delta << " f=" << f;
          // Direct rule: accept iff Pr[Bin(n, 1 - tau) <= f] <= delta, away
          // from exact ties where bisection rounding decides.
          const double tail = binom_cdf(f, n, 1.0 - tau);
          if (std::abs(tail - delta) > 1e-9) {
            const bool accepted =
                chance_constraint_test(g, tau, delta, ChanceRoute::kViaFailureProbability)
                    .accepted;
            EXPECT_EQ(accepted, tail <= delta);
          }
          ++checked;
        }
      }
    }
  }
  EXPECT_EQ(checked, 30 * 350);
}

TEST(ChanceConstraint, TrivialCases) {
  EXPECT_TRUE(chance_constraint_test(binary_batch(20, 0), 0.7, 0.2,
                                     ChanceRoute::kViaVarOrderStatistic).accepted);
  EXPECT_TRUE(chance_constraint_test(binary_batch(20, 0), 0.7, 0.2,
                                     ChanceRoute::kViaFailureProbability).accepted);
  EXPECT_FALSE(chance_constraint_test(binary_batch(20, 20), 0.7, 0.2,
                                      ChanceRoute::kViaVarOrderStatistic).accepted);
  EXPECT_FALSE(chance_constraint_test(binary_batch(20, 20), 0.7, 0.2,
                                      ChanceRoute::kViaFailureProbability).accepted);
  EXPECT_THROW(chance_constraint_routes_agree(SampleBatch({0.0, 0.5}), 0.7, 0.2), Error);
  EXPECT_EQ(parse_chance_route("via_var_order_statistic"), ChanceRoute::kViaVarOrderStatistic);
  EXPECT_THROW(parse_chance_route("both"), Error);
}

TEST(ConstraintTest, InfeasibleBoundRejectsWithReason) {
  const TestOutcome t =
      constraint_test(SampleBatch({0.1, 0.2, 0.3, 0.4}), {{Measure::kVaR, 0.7, 0.2}, 100.0});
  EXPECT_FALSE(t.accepted);
  EXPECT_FALSE(t.bound.has_value());
  EXPECT_FALSE(t.reason.empty());
  // A missing upper bound is a caller error, not a rejection.
  EXPECT_THROW(constraint_test(SampleBatch({0.1, 0.2}), {{Measure::kCVaR, 0.5, 0.2}, 1.0}),
               Error);
  EXPECT_THROW(
      constraint_test(SampleBatch({0.1}), {{Measure::kVaR, 0.5, 0.2}, std::nan("")}), Error);
}

TEST(ConstraintTest, AcceptanceIsAntitoneInCutoff) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const SampleBatch batch = testing::uniform_batch(rng, 60);
    for (Measure m : {Measure::kVaR, Measure::kCVaR, Measure::kExpectation}) {
      bool seen_accept = false;
      for (double c = 0.0; c <= 1.2; c += 0.01) {
        const bool a = constraint_test(batch, {{m, 0.6, 0.2}, c}).accepted;
        if (seen_accept) {
          EXPECT_TRUE(a);
        }
        seen_accept = seen_accept || a;
        const double bound = compute_bound(batch, {m, 0.6, 0.2}).value;
        EXPECT_EQ(a, bound <= c);
      }
      EXPECT_TRUE(seen_accept);
    }
  }
}

TEST(ConstraintTest, FailureCounts) {
  const ConstraintSpec spec{{Measure::kFailureProbability, 0.0, 0.2}, 0.3};
  EXPECT_TRUE(constraint_test(FailureCount{1, 10}, spec).accepted);
  EXPECT_FALSE(constraint_test(FailureCount{2, 10}, spec).accepted);
  EXPECT_THROW(constraint_test(FailureCount{1, 10}, {{Measure::kVaR, 0.7, 0.2}, 0.3}), Error);
}

TEST(InflateDelta, Examples) {
  for (Correction c : {Correction::kSidak, Correction::kBonferroni, Correction::kNone}) {
    EXPECT_EQ(inflate_delta(0.37, 1, c), 0.37);
  }
  EXPECT_NEAR(inflate_delta(0.2, 20, Correction::kSidak), 0.011095, 5e-7);
  EXPECT_NEAR(inflate_delta(0.2, 20, Correction::kSidak), 1.0 - std::pow(0.8, 0.05), 1e-15);
  EXPECT_DOUBLE_EQ(inflate_delta(0.2, 20, Correction::kBonferroni), 0.01);
  EXPECT_EQ(inflate_delta(0.2, 20, Correction::kNone), 0.2);
  EXPECT_THROW(inflate_delta(0.2, 0, Correction::kSidak), Error);
  EXPECT_THROW(inflate_delta(1.0, 3, Correction::kSidak), Error);
}

TEST(InflateDelta, SidakIdentityAndOrdering) {
  for (double delta : {1e-6, 0.01, 0.2, 0.5, 0.9}) {
    for (int m : {1, 2, 7, 20, 1000}) {
      const double s = inflate_delta(delta, m, Correction::kSidak);
      EXPECT_NEAR(std::pow(1.0 - s, m), 1.0 - delta, 1e-12);
      EXPECT_LE(s, delta);
      EXPECT_GE(s, inflate_delta(delta, m, Correction::kBonferroni));
    }
  }
}

TEST(SelectPolicy, PicksSmallestBoundWithLowestIndexTies) {
  std::vector<SampleBatch> batches;
  batches.emplace_back(std::vector<double>(40, 3.0));
  batches.emplace_back(std::vector<double>(40, 1.0));
  batches.emplace_back(std::vector<double>(40, 2.0));
  batches.emplace_back(std::vector<double>(40, 1.0));
  const SelectionReport r = select_policy(batches, {Measure::kVaR, 0.5, 0.2});
  EXPECT_EQ(r.chosen_index, 1);
  EXPECT_EQ(r.chosen_bound, 1.0);
  ASSERT_EQ(r.per_policy_bounds.size(), 4u);
  EXPECT_NEAR(r.inflated_delta, 1.0 - std::pow(0.8, 0.25), 1e-15);
  EXPECT_EQ(r.correction, Correction::kSidak);
}

TEST(SelectPolicy, SinglePolicyMatchesPlainBound) {
  std::mt19937_64 rng(22);
  const SampleBatch b = testing::uniform_batch(rng, 50);
  for (Measure m : {Measure::kVaR, Measure::kCVaR, Measure::kExpectation}) {
    const SelectionReport r = select_policy(std::vector<SampleBatch>{b}, {m, 0.7, 0.2});
    EXPECT_EQ(r.chosen_bound, compute_bound(b, {m, 0.7, 0.2}).value);
    EXPECT_EQ(r.inflated_delta, 0.2);
  }
}

TEST(SelectPolicy, UsesInflatedDeltaPerPolicy) {
  std::mt19937_64 rng(23);
  std::vector<SampleBatch> batches;
  for (int i = 0; i < 5; ++i) batches.push_back(testing::uniform_batch(rng, 200));
  const SelectionReport r =
      select_policy(batches, {Measure::kCVaR, 0.5, 0.2}, {Correction::kBonferroni, false});
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(r.per_policy_bounds[static_cast<std::size_t>(i)].value,
              cvar_bound(batches[static_cast<std::size_t>(i)], 0.5, 0.04).value);
  }
}

TEST(SelectPolicy, InfeasibleCandidateNamesThePolicy) {
  std::vector<SampleBatch> batches;
  batches.emplace_back(std::vector<double>(40, 1.0));
  batches.emplace_back(std::vector<double>(3, 0.0));
  try {
    select_policy(batches, {Measure::kVaR, 0.7, 0.2});
    FAIL();
  } catch (const SelectionError& e) {
    EXPECT_EQ(e.policy_index(), 1);
    EXPECT_EQ(e.cause(), ErrorCode::kInsufficientSamples);
  }
  // Defaulted CVaR bounds abort unless explicitly allowed.
  std::vector<SampleBatch> tiny;
  tiny.emplace_back(std::vector<double>(4, 0.5), 1.0);
  tiny.emplace_back(std::vector<double>(400, 0.5), 1.0);
  EXPECT_THROW(select_policy(tiny, {Measure::kCVaR, 0.7, 0.2}), SelectionError);
  const SelectionReport r =
      select_policy(tiny, {Measure::kCVaR, 0.7, 0.2}, {Correction::kSidak, true});
  EXPECT_TRUE(r.per_policy_bounds[0].defaulted);
  EXPECT_EQ(r.chosen_index, 1);
  EXPECT_THROW(select_policy(std::vector<SampleBatch>{}, {Measure::kVaR, 0.7, 0.2}), Error);
}

}  // namespace
}  // namespace policycert
