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

#include "paygames/game.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "paygames/errors.h"

namespace paygames {
namespace {

TEST(ProfileSpaceTest, IndexDecodeRoundTrip) {
  const ProfileSpace space({2, 3, 4});
  EXPECT_EQ(space.size(), 24);
  for (std::int64_t s = 0; s < space.size(); ++s) {
    const Profile p = space.Decode(s);
    EXPECT_EQ(space.Index(p), s);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(space.ActionOf(s, i), p[i]);
  }
  // Player 0 is the most significant digit.
  EXPECT_EQ(space.Index(Profile{1, 0, 0}), 12);
  EXPECT_EQ(space.Index(Profile{0, 0, 1}), 1);
  EXPECT_EQ(space.WithAction(space.Index(Profile{1, 2, 3}), 1, 0), space.Index(Profile{1, 0, 3}));
}

TEST(ProfileSpaceTest, ValidateRejectsBadProfiles) {
  const ProfileSpace space({2, 2});
  EXPECT_THROW(space.Validate(Profile{0}), InputError);
  EXPECT_THROW(space.Validate(Profile{0, 2}), InputError);
  EXPECT_THROW(space.Validate(Profile{-1, 0}), InputError);
  EXPECT_NO_THROW(space.Validate(Profile{1, 1}));
  EXPECT_THROW(ProfileSpace({2, 0}), InputError);
}

// Independent winner/price computation for one bid profile.
struct Expected {
  int winner;
  double price;
};
Expected Oracle(const AuctionGame& g, const Profile& bids) {
  const int top = *std::max_element(bids.begin(), bids.end());
  const int winner = static_cast<int>(std::find(bids.begin(), bids.end(), top) - bids.begin());
  int second = 0;
  for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
    if (i != winner) second = std::max(second, bids[i]);
  }
  const int price = g.format() == AuctionFormat::kFirstPrice ? top : second;
  return {winner, g.Bid(price)};
}

TEST(AuctionGameTest, ExhaustiveWinnerAndPrice) {
  for (AuctionFormat format : {AuctionFormat::kFirstPrice, AuctionFormat::kSecondPrice}) {
    const AuctionGame g(format, {1.0, 0.5, 0.25}, 4);
    std::vector<double> u(3);
    for (std::int64_t s = 0; s < g.space().size(); ++s) {
      const Profile bids = g.space().Decode(s);
      const Expected e = Oracle(g, bids);
      const Outcome out = g.Resolve(bids);
      ASSERT_TRUE(out.winner.has_value());
      EXPECT_EQ(*out.winner, e.winner);
      EXPECT_DOUBLE_EQ(out.price, e.price);
      EXPECT_DOUBLE_EQ(g.Revenue(bids), e.price);
      g.Utilities(bids, u);
      for (int i = 0; i < 3; ++i) {
        const double want = i == e.winner ? g.value(i) - e.price : 0.0;
        EXPECT_DOUBLE_EQ(u[i], want);
        EXPECT_DOUBLE_EQ(out.utilities[i], want);
      }
    }
  }
}

TEST(AuctionGameTest, TiesGoToLowestIndex) {
  const AuctionGame g(AuctionFormat::kSecondPrice, {1.0, 0.5}, 10);
  const Outcome out = g.Resolve(Profile{3, 3});
  EXPECT_EQ(*out.winner, 0);
  EXPECT_DOUBLE_EQ(out.price, 0.3);
}

TEST(AuctionGameTest, ValuesSnapToGrid) {
  const AuctionGame g(AuctionFormat::kFirstPrice, {1.0, 0.333, 0.25}, 100);
  EXPECT_EQ(g.value_action(1), 33);
  EXPECT_DOUBLE_EQ(g.value(1), 0.33);
  EXPECT_DOUBLE_EQ(g.input_values()[1], 0.333);
  EXPECT_EQ(g.value_action(0), 100);
  EXPECT_EQ(g.ActionForBid(0.4), 40);
  EXPECT_EQ(g.MinUtility(0), -1.0);
  EXPECT_EQ(g.MaxUtility(2), 1.0);
}

TEST(AuctionGameTest, RejectsBadConfigs) {
  EXPECT_THROW(AuctionGame(AuctionFormat::kFirstPrice, {0.5, 1.0}, 10), InputError);
  EXPECT_THROW(AuctionGame(AuctionFormat::kFirstPrice, {1.5, 1.0}, 10), InputError);
  EXPECT_THROW(AuctionGame(AuctionFormat::kFirstPrice, {1.0, 0.5}, 1), InputError);
  EXPECT_THROW(AuctionGame(AuctionFormat::kFirstPrice, {1.0}, 10), InputError);
}

TEST(AuctionGameTest, FiniteViewMatches) {
  const AuctionGame g(AuctionFormat::kFirstPrice, {1.0, 0.6}, 5);
  const FiniteGame f = g.ToFiniteGame();
  std::vector<double> u(2);
  for (std::int64_t s = 0; s < g.space().size(); ++s) {
    g.Utilities(g.space().Decode(s), u);
    EXPECT_EQ(f.Payoff(s, 0), u[0]);
    EXPECT_EQ(f.Payoff(s, 1), u[1]);
  }
}

TEST(FiniteGameTest, PrisonersDilemmaEntries) {
  const FiniteGame pd = BuildPd(PdFigure1{});
  const ProfileSpace& sp = pd.space();
  EXPECT_DOUBLE_EQ(pd.Payoff(sp.Index(Profile{0, 0}), 0), 2.0 / 3);
  EXPECT_DOUBLE_EQ(pd.Payoff(sp.Index(Profile{1, 0}), 0), 2.0);
  EXPECT_DOUBLE_EQ(pd.Payoff(sp.Index(Profile{0, 1}), 1), 1.0);
  EXPECT_DOUBLE_EQ(pd.Payoff(sp.Index(Profile{1, 1}), 1), 1.0 / 3);
  EXPECT_EQ(pd.ActionLabel(0, 1), "D");
  EXPECT_DOUBLE_EQ(pd.ProfileWelfare(sp.Index(Profile{1, 0})), 2.0);
  EXPECT_THROW(BuildPd(PdSymmetric{2.0, 2.0}), InputError);
  EXPECT_THROW(BuildPd(PdAsymmetric{3.0, 2.0, 3.0, 0.5}), InputError);
}

TEST(FiniteGameTest, NormalizationMapsToUnitInterval) {
  const FiniteGame g({2, 2}, {-2, 1, 0, 3, 4, -1, 1, 1});
  for (std::int64_t s = 0; s < 4; ++s) {
    for (int i = 0; i < 2; ++i) {
      const double z = g.NormalizedPayoff(s, i);
      EXPECT_GE(z, 0.0);
      EXPECT_LE(z, 1.0);
      EXPECT_NEAR(g.normalization().offset + g.normalization().scale * z, g.Payoff(s, i), 1e-12);
    }
  }
  EXPECT_THROW(FiniteGame({2, 2}, {1, 2, 3}), InputError);
}

TEST(JointDistributionTest, ValidationAndConstructors) {
  const ProfileSpace sp({2, 2});
  EXPECT_THROW(JointDistribution(sp, {0.5, 0.5, 0.5, -0.5}), InputError);
  EXPECT_THROW(JointDistribution(sp, {0.5, 0.5}), InputError);
  EXPECT_THROW(JointDistribution(sp, {0.5, 0.5, 0.5, 0.5}), InputError);
  const auto x = JointDistribution::FromCounts(sp, {1, 0, 0, 3});
  EXPECT_DOUBLE_EQ(x.weight(3), 0.75);
  EXPECT_EQ(x.Support(), (std::vector<std::int64_t>{0, 3}));
  const auto m = JointDistribution::Mix(0.5, JointDistribution::PointMass(sp, Profile{0, 0}),
                                        JointDistribution::PointMass(sp, Profile{1, 1}));
  EXPECT_DOUBLE_EQ(m.weight(0), 0.5);
  EXPECT_DOUBLE_EQ(m.weight(3), 0.5);
}

TEST(JointDistributionTest, ExpectationsOnPd) {
  const FiniteGame pd = BuildPd(PdFigure1{});
  const auto u = JointDistribution::Uniform(pd.space());
  // Row player: C averages (2/3 + 0)/2, D averages (2 + 1/3)/2.
  EXPECT_NEAR(ExpectedUtility(pd, 0, u), (2.0 / 3 + 0 + 2 + 1.0 / 3) / 4, 1e-15);
  EXPECT_NEAR(BestResponseUtility(pd, 0, u), 7.0 / 6, 1e-15);
  EXPECT_NEAR(Welfare(pd, u), (4.0 / 3 + 1 + 2 + 2.0 / 3) / 4, 1e-15);
  const auto dc = JointDistribution::PointMass(pd.space(), Profile{1, 0});
  EXPECT_NEAR(BestResponseUtility(pd, 1, dc), 1.0 / 3, 1e-15);
}

}  // namespace
}  // namespace paygames
