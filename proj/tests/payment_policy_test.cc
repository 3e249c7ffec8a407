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

#include "paygames/payment_policy.h"

#include <random>

#include "gtest/gtest.h"
#include "paygames/equilibrium.h"
#include "paygames/errors.h"

namespace paygames {
namespace {

TEST(PaymentPolicyTest, TableValidation) {
  const ProfileSpace sp({2, 2});
  std::vector<double> t(8, 0.0);
  t[1] = 1.0;  // owner 0 pays player 1 at (C,C)
  EXPECT_NO_THROW(PaymentPolicy::FromTable(sp, 0, t, 2.0));
  auto bad = t;
  bad[0] = 0.5;  // self payment
  EXPECT_THROW(PaymentPolicy::FromTable(sp, 0, bad, 2.0), InputError);
  bad = t;
  bad[3] = -0.1;
  EXPECT_THROW(PaymentPolicy::FromTable(sp, 0, bad, 2.0), InputError);
  bad = t;
  bad[5] = 2.5;
  EXPECT_THROW(PaymentPolicy::FromTable(sp, 0, bad, 2.0), ConfigError);
  EXPECT_THROW(PaymentPolicy::FromTable(sp, 0, std::vector<double>(6, 0.0), 2.0), InputError);
}

TEST(PaymentPolicyTest, TransfersConserveWelfare) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 2;
    const ProfileSpace sp(std::vector<int>(n, 3));
    std::vector<double> payoffs(sp.size() * n);
    for (double& p : payoffs) p = u(rng);
    const FiniteGame g(sp.action_counts(), payoffs);
    std::vector<PaymentPolicy> ps;
    for (int i = 0; i < n; ++i) {
      std::vector<double> t(sp.size() * n, 0.0);
      for (std::int64_t s = 0; s < sp.size(); ++s) {
        for (int j = 0; j < n; ++j) {
          if (j != i) t[s * n + j] = u(rng) / n;
        }
      }
      ps.push_back(PaymentPolicy::FromTable(sp, i, t, 1.0));
    }
    const PolicyProfile profile(ps);
    for (std::int64_t s = 0; s < sp.size(); ++s) {
      const Profile p = sp.Decode(s);
      const auto v = AugmentedUtilities(g, p, profile);
      double sum = 0.0;
      for (double x : v) sum += x;
      EXPECT_NEAR(sum, g.ProfileWelfare(s), 1e-12);
      // v_i - u_i = received - paid, straight from the tables.
      const auto mat = profile.PaymentMatrix(p);
      for (int i = 0; i < n; ++i) {
        double net = 0.0;
        for (int j = 0; j < n; ++j) net += mat[j * n + i] - mat[i * n + j];
        EXPECT_NEAR(v[i] - g.Payoff(s, i), net, 1e-12);
      }
    }
  }
}

TEST(PaymentPolicyTest, ProfileRequiresMatchingOwnersAndBounds) {
  const ProfileSpace sp({2, 2});
  EXPECT_THROW(PolicyProfile({PaymentPolicy::Zero(sp, 1, 1.0), PaymentPolicy::Zero(sp, 0, 1.0)}),
               InputError);
  EXPECT_THROW(PolicyProfile({PaymentPolicy::Zero(sp, 0, 1.0), PaymentPolicy::Zero(sp, 1, 2.0)}),
               InputError);
}

TEST(SecondPricePolicyTest, PaysOnlyOffTheTargetProfile) {
  const AuctionGame g(AuctionFormat::kSecondPrice, {1.0, 0.5, 0.4}, 10);
  const double m = DefaultPaymentBound(g);
  EXPECT_GT(m, 2 * 3 * 1.0);
  const PaymentPolicy p = MakeSecondPriceZeroRevenuePolicy(g, 0.1, m);
  auto pay = p.Payments(Profile{10, 0, 0});
  EXPECT_DOUBLE_EQ(pay[1], 0.05);
  EXPECT_DOUBLE_EQ(pay[2], 0.05);
  pay = p.Payments(Profile{10, 0, 3});
  EXPECT_DOUBLE_EQ(pay[1], 0.05);
  EXPECT_DOUBLE_EQ(pay[2], 0.0);
  pay = p.Payments(Profile{9, 0, 0});
  EXPECT_DOUBLE_EQ(pay[1], m / 2);
  EXPECT_DOUBLE_EQ(pay[2], m / 2);
  EXPECT_DOUBLE_EQ(p.MaxTotal(), m);
  // eps must lie in (0, (v1 - v2)/n), and M above 2 n v1.
  EXPECT_THROW(MakeSecondPriceZeroRevenuePolicy(g, 0.2, m), InputError);
  EXPECT_THROW(MakeSecondPriceZeroRevenuePolicy(g, 0.0, m), InputError);
  EXPECT_THROW(MakeSecondPriceZeroRevenuePolicy(g, 0.1, 6.0), InputError);
}

TEST(FirstPriceEtaPolicyTest, PaysAtTheFloorOnly) {
  const AuctionGame g(AuctionFormat::kFirstPrice, {1.0, 0.5}, 10);
  const PaymentPolicy p = MakeFirstPriceEtaPolicy(g, 0.25, 0);
  EXPECT_DOUBLE_EQ(p.bound(), 0.25);
  for (std::int64_t s = 0; s < g.space().size(); ++s) {
    const Profile b = g.space().Decode(s);
    EXPECT_DOUBLE_EQ(p.Payments(b)[1], b[1] == 0 ? 0.25 : 0.0);
  }
  EXPECT_THROW(MakeFirstPriceEtaPolicy(g, 0.5, 0), InputError);
  EXPECT_THROW(MakeFirstPriceEtaPolicy(g, 0.25, 0, 0.1), ConfigError);
  const AuctionGame g3(AuctionFormat::kFirstPrice, {1.0, 0.5, 0.4}, 10);
  EXPECT_THROW(MakeFirstPriceEtaPolicy(g3, 0.1, g3.value_action(2)), InputError);
  EXPECT_NO_THROW(MakeFirstPriceEtaPolicy(g3, 0.05, g3.value_action(2)));
}

TEST(PaymentPolicyTest, RuleAndCompiledTableAgree) {
  const AuctionGame g(AuctionFormat::kSecondPrice, {1.0, 0.5}, 6);
  const PaymentPolicy rule = MakeSecondPriceZeroRevenuePolicy(g, 0.1, DefaultPaymentBound(g));
  const PaymentPolicy table = rule.ToTable();
  EXPECT_TRUE(std::holds_alternative<rules::Table>(table.rule()));
  for (std::int64_t s = 0; s < g.space().size(); ++s) {
    const Profile b = g.space().Decode(s);
    EXPECT_EQ(rule.Payments(b), table.Payments(b));
  }
  EXPECT_DOUBLE_EQ(rule.MaxTo(1), table.MaxTo(1));
}

TEST(CancellationPolicyTest, NetTransfersVanish) {
  const FiniteGame pd = BuildPd(PdFigure1{});
  const double m = DefaultPaymentBound(pd);
  const PaymentPolicy p1 = MakePayOnActionPolicy(pd, 0, 1, 0, 0.4, m);
  const PaymentPolicy p2 = MakeCancellationPolicy(p1, 1);
  const PolicyProfile prof({p1, p2});
  std::vector<double> net(2), scratch(2);
  for (std::int64_t s = 0; s < 4; ++s) {
    prof.NetTransfers(pd.space().Decode(s), net, scratch);
    EXPECT_DOUBLE_EQ(net[0], 0.0);
    EXPECT_DOUBLE_EQ(net[1], 0.0);
  }
  EXPECT_TRUE(MakeCancellationPolicy(PaymentPolicy::Zero(pd.space(), 0, m), 1).IsZero());
  // Paying back the full bound is still within the canceller's bound.
  EXPECT_NO_THROW(MakeCancellationPolicy(MakePayOnActionPolicy(pd, 0, 1, 0, m, m), 1));
}

TEST(BlockingPolicyTest, Entries) {
  const FiniteGame pd = BuildPd(PdFigure1{});
  const double m = DefaultPaymentBound(pd);
  const PaymentPolicy p = MakeBlockingPolicy(pd, 0, 1, 0, 0.4, 0, m);
  EXPECT_DOUBLE_EQ(p.Payments(Profile{1, 0})[1], 0.4);
  EXPECT_DOUBLE_EQ(p.Payments(Profile{1, 1})[1], 0.0);
  EXPECT_DOUBLE_EQ(p.Payments(Profile{0, 0})[1], m);
  EXPECT_DOUBLE_EQ(p.Payments(Profile{0, 1})[1], m);
}

// Every player's target action is strictly dominant in the augmented game.
void ExpectTargetDominant(const FiniteGame& g, const PolicyProfile& prof, std::int64_t y) {
  const ProfileSpace& sp = g.space();
  const Profile target = sp.Decode(y);
  for (int i = 0; i < g.num_players(); ++i) {
    for (std::int64_t s = 0; s < sp.size(); ++s) {
      if (sp.ActionOf(s, i) != target[i]) continue;
      const double on = AugmentedUtilities(g, sp.Decode(s), prof)[i];
      for (int a = 0; a < sp.action_count(i); ++a) {
        if (a == target[i]) continue;
        const double off = AugmentedUtilities(g, sp.Decode(sp.WithAction(s, i, a)), prof)[i];
        EXPECT_GT(on, off) << "player " << i << " profile " << s << " action " << a;
      }
    }
  }
}

TEST(DominanceForcingPolicyTest, TargetBecomesDominantAndCostMatches) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> u(-2, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 2;
    std::vector<int> counts(n);
    for (int& c : counts) c = 2 + (trial / 2 + &c - counts.data()) % 2;
    const ProfileSpace sp(counts);
    std::vector<double> payoffs(sp.size() * n);
    for (double& p : payoffs) p = u(rng);
    const FiniteGame g(counts, payoffs);
    const double bound = 1e3;
    const double delta_norm = 1e-3;
    const double delta = delta_norm * g.normalization().scale;
    for (std::int64_t y = 0; y < sp.size(); ++y) {
      const int owner = static_cast<int>(y % n);
      const PaymentPolicy p = analysis::DominanceForcingPolicy(g, owner, y, bound, delta_norm);
      std::vector<PaymentPolicy> ps;
      for (int i = 0; i < n; ++i) ps.push_back(i == owner ? p : PaymentPolicy::Zero(sp, i, bound));
      const PolicyProfile prof(ps);
      ExpectTargetDominant(g, prof, y);
      // On-path outlay is the manipulation cost plus at most delta per recipient.
      double paid = 0.0;
      for (double x : p.Payments(sp.Decode(y))) paid += x;
      const double cost = analysis::ManipulationCost(g, owner, y);
      EXPECT_GE(paid, cost - 1e-12);
      EXPECT_LE(paid, cost + (n - 1) * delta + 1e-12);
    }
  }
}

}  // namespace
}  // namespace paygames
