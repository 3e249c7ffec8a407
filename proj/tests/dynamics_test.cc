// Copyright 2026 The paygames Authors. All rights reserved.
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

#include "paygames/dynamics.h"

#include <cmath>

#include "gtest/gtest.h"
#include "paygames/errors.h"

namespace paygames {
namespace {

RunConfig PdConfig(std::int64_t horizon, std::uint64_t seed, double amount) {
  auto game = std::make_shared<FiniteGame>(BuildPd(PdFigure1{}));
  const double m = DefaultPaymentBound(*game);
  RunConfig c;
  c.game = game;
  c.policies = std::make_shared<PolicyProfile>(std::vector<PaymentPolicy>{
      amount > 0 ? MakePayOnActionPolicy(*game, 0, 1, 0, amount, m) : PaymentPolicy::Zero(game->space(), 0, m),
      PaymentPolicy::Zero(game->space(), 1, m)});
  c.learners.assign(2, LearnerConfig{});
  c.horizon = horizon;
  c.seed = seed;
  return c;
}

void ExpectSameStats(const RoundStats& a, const RoundStats& b) {
  EXPECT_EQ(a.rounds, b.rounds);
  EXPECT_EQ(a.profile_counts, b.profile_counts);
  EXPECT_EQ(a.action_counts, b.action_counts);
  EXPECT_EQ(a.agent_utility, b.agent_utility);
  EXPECT_EQ(a.payments, b.payments);
  EXPECT_EQ(a.regret, b.regret);
}

TEST(RunTest, Deterministic) {
  const RunConfig c = PdConfig(5000, 3, 1.0 / 3 + 0.05);
  const RunReport a = paygames::Run(c);
  const RunReport b = paygames::Run(c);
  ExpectSameStats(a.full, b.full);
  ExpectSameStats(a.window, b.window);
  RunConfig other = c;
  other.seed = 4;
  EXPECT_NE(paygames::Run(other).full.profile_counts, a.full.profile_counts);
}

TEST(RunTest, WindowAndCounts) {
  RunConfig c = PdConfig(1234, 1, 0.0);
  c.window_fraction = 0.25;
  c.record_trace = true;
  const RunReport r = paygames::Run(c);
  EXPECT_EQ(r.full.rounds, 1234);
  EXPECT_EQ(r.window.rounds, 309);  // ceil(0.25 * 1234)
  EXPECT_EQ(r.window.first_round, 1234 - 309 + 1);
  std::int64_t total = 0;
  for (const auto& [s, n] : r.full.profile_counts) total += n;
  EXPECT_EQ(total, 1234);
  ASSERT_EQ(r.trace.actions.size(), 2u * 1234);
  std::vector<std::int64_t> p1(2, 0);
  for (std::size_t t = 0; t < 1234; ++t) ++p1[r.trace.actions[2 * t]];
  EXPECT_EQ(p1, r.full.action_counts[0]);
}

TEST(RunTest, TransfersConserveWelfare) {
  const RunReport r = paygames::Run(PdConfig(20000, 2, 0.4));
  for (const RoundStats* st : {&r.full, &r.window}) {
    EXPECT_NEAR(st->agent_utility[0] + st->agent_utility[1], st->welfare, 1e-9);
    EXPECT_NEAR(st->agent_utility[1] - st->stage_utility[1], st->PaidBy(0) - st->PaidBy(1), 1e-9);
  }
}

TEST(RunTest, RegretIsSmall) {
  const RunReport r = paygames::Run(PdConfig(20000, 5, 0.4));
  for (int i = 0; i < 2; ++i) EXPECT_LT(r.full.normalized_regret[i], 0.03);
}

TEST(RunTest, ZeroPaymentsConvergeToDefection) {
  const RunReport r = paygames::Run(PdConfig(20000, 7, 0.0));
  EXPECT_GT(r.window.ProfileFrequency(3), 0.95);
}

TEST(RunTest, RejectsBadConfigs) {
  RunConfig c = PdConfig(100, 1, 0.0);
  c.learners.pop_back();
  EXPECT_THROW(paygames::Run(c), InputError);
  c = PdConfig(0, 1, 0.0);
  EXPECT_THROW(paygames::Run(c), InputError);
  c = PdConfig(100, 1, 0.0);
  c.window_fraction = 0.0;
  EXPECT_THROW(paygames::Run(c), InputError);
}

TEST(RunTest, LearnerStateIsMeanBased) {
  RunConfig c = PdConfig(3000, 9, 0.0);
  c.record_learner_state = true;
  const RunReport r = paygames::Run(c);
  ASSERT_EQ(r.learner_states.size(), 2u);
  for (const auto& trace : r.learner_states) {
    EXPECT_EQ(trace.sigma.size(), 3000u);
    EXPECT_TRUE(MeanBasedCheck(trace, 0.1, 3000).empty());
  }
}

TEST(RunTest, AuctionCdfAndWins) {
  auto game = std::make_shared<AuctionGame>(AuctionFormat::kFirstPrice, std::vector<double>{1.0, 0.5}, 20);
  RunConfig c;
  c.game = game;
  c.learners.assign(2, LearnerConfig{});
  c.horizon = 5000;
  const RunReport r = paygames::Run(c);
  ASSERT_TRUE(r.is_auction);
  EXPECT_EQ(r.bid_grid.size(), 21u);
  const auto cdf = EmpiricalCdf(r, 0);
  for (std::size_t a = 1; a < cdf.size(); ++a) EXPECT_GE(cdf[a], cdf[a - 1]);
  EXPECT_EQ(cdf.back(), 1.0);
  EXPECT_EQ(r.full.wins[0] + r.full.wins[1] + r.full.no_winner, r.full.rounds);
  EXPECT_THROW(EmpiricalCdf(paygames::Run(PdConfig(10, 1, 0.0)), 0), InputError);
}

TEST(DeviationTest, FamilyAndVerdicts) {
  const RunConfig c = PdConfig(20000, 1, 1.0 / 3 + 0.05);
  const auto& game = dynamic_cast<const FiniteGame&>(*c.game);
  const auto family = StandardDeviationFamily(game, *c.policies, 1, {0.1, 0.5, 100.0});
  // zero, cancellation, then 2 actions x the 2 amounts within the bound.
  ASSERT_EQ(family.size(), 6u);
  EXPECT_EQ(family[0].name, "zero");
  EXPECT_EQ(family[1].name, "cancellation");
  const DeviationTable t = DeviationCheck(c, 1, {family[1]}, 0.05);
  ASSERT_EQ(t.rows.size(), 1u);
  // Cancelling the 1/3 + eps payment sends play back to (D,D), a loss of eps.
  EXPECT_NEAR(t.rows[0].delta, -0.05, 0.01);
  EXPECT_FALSE(t.rows[0].profitable);
  EXPECT_TRUE(t.stable);
  const DeviationTable strict = DeviationCheck(c, 1, {family[1]}, -1.0);
  EXPECT_FALSE(strict.stable);
}

}  // namespace
}  // namespace paygames
