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

#include "paygames/io.h"

#include <sstream>

#include "gtest/gtest.h"
#include "paygames/errors.h"

namespace paygames::io {
namespace {

void ExpectSamePolicy(const StageGame& game, const PaymentPolicy& a, const PaymentPolicy& b) {
  ASSERT_EQ(a.owner(), b.owner());
  for (std::int64_t s = 0; s < game.space().size(); ++s) {
    const Profile p = game.space().Decode(s);
    EXPECT_EQ(a.Payments(p), b.Payments(p)) << s;
  }
}

TEST(GameJsonTest, PdVariants) {
  const FiniteGame fig = FiniteGameFromJson(Json::parse(R"({"type":"pd","variant":"figure1"})"));
  EXPECT_DOUBLE_EQ(fig.Payoff(2, 0), 2.0);
  const FiniteGame sym = FiniteGameFromJson(Json::parse(R"({"type":"pd","variant":"symmetric","x":3,"y":2})"));
  EXPECT_DOUBLE_EQ(sym.Payoff(0, 1), 2.0);
  EXPECT_THROW(FiniteGameFromJson(Json::parse(R"({"type":"pd","variant":"other"})")), InputError);
  EXPECT_THROW(FiniteGameFromJson(Json::parse(R"({"type":"pd","variant":"symmetric","x":1,"y":2})")),
               InputError);
}

TEST(GameJsonTest, FiniteRoundTrip) {
  const Json j = Json::parse(
      R"({"type":"finite","action_counts":[2,3],"payoffs":[[1,0],[2,1],[0,0],[3,3],[1,2],[0,1]],
          "action_names":[["U","D"],["L","M","R"]]})");
  const FiniteGame g = FiniteGameFromJson(j);
  EXPECT_EQ(g.ActionLabel(1, 2), "R");
  EXPECT_DOUBLE_EQ(g.Payoff(g.space().Index(Profile{1, 0}), 0), 3.0);
  const FiniteGame back = FiniteGameFromJson(GameToJson(g));
  EXPECT_EQ(back.original_payoffs(), g.original_payoffs());
  EXPECT_EQ(back.action_names(), g.action_names());
  EXPECT_THROW(FiniteGameFromJson(Json::parse(R"({"type":"finite","action_counts":[2,2],"payoffs":[[1,0]]})")),
               InputError);
}

TEST(GameJsonTest, AuctionRoundTrip) {
  const Json j = Json::parse(R"({"type":"auction","format":"first","values":[1.0,0.5]})");
  const auto g = GameFromJson(j);
  const auto* a = dynamic_cast<const AuctionGame*>(g.get());
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->grid_k(), 100);
  EXPECT_EQ(a->format(), AuctionFormat::kFirstPrice);
  const auto back = GameFromJson(GameToJson(*a));
  const auto* b = dynamic_cast<const AuctionGame*>(back.get());
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->input_values(), a->input_values());
  EXPECT_THROW(GameFromJson(Json::parse(R"({"type":"auction","format":"third","values":[1,0.5]})")),
               InputError);
  EXPECT_THROW(GameFromJson(Json::parse(R"({"type":"chess"})")), InputError);
}

TEST(PolicyJsonTest, AuctionRulesRoundTrip) {
  const AuctionGame game(AuctionFormat::kFirstPrice, {1.0, 0.5}, 10);
  const double bound = DefaultBound(game);
  const PaymentPolicy eta =
      PolicyFromJson(game, Json::parse(R"({"type":"rule","name":"first_price_eta","params":{"eta":"optimal"}})"), 0,
                     bound);
  ExpectSamePolicy(game, eta, MakeFirstPriceEtaPolicy(game, 0.25, 0, bound));
  ExpectSamePolicy(game, eta, PolicyFromJson(game, PolicyToJson(game, eta), 0, bound));
  EXPECT_THROW(PolicyFromJson(game, Json::parse(R"({"type":"rule","name":"first_price_eta","params":{"eta":"big"}})"),
                              0, bound),
               InputError);
  EXPECT_THROW(PolicyFromJson(game, Json::parse(R"({"type":"rule","name":"blocking"})"), 0, bound), InputError);

  const AuctionGame second(AuctionFormat::kSecondPrice, {1.0, 0.5}, 10);
  const PaymentPolicy zero_revenue = PolicyFromJson(
      second, Json::parse(R"({"type":"rule","name":"second_price_thm1","params":{"eps":0.2}})"), 0, bound);
  ExpectSamePolicy(second, zero_revenue, MakeSecondPriceZeroRevenuePolicy(second, 0.2, bound));
  ExpectSamePolicy(second, zero_revenue, PolicyFromJson(second, PolicyToJson(second, zero_revenue), 0, bound));
}

TEST(PolicyJsonTest, FiniteRulesAndTables) {
  const FiniteGame pd = BuildPd(PdFigure1{});
  const double bound = DefaultBound(pd);
  const PaymentPolicy pay = PolicyFromJson(
      pd, Json::parse(R"({"type":"rule","name":"pay_on_action","params":{"recipient":1,"action":"C","amount":0.4}})"),
      0, bound);
  ExpectSamePolicy(pd, pay, MakePayOnActionPolicy(pd, 0, 1, 0, 0.4, bound));
  // Rules serialize as their payment table.
  ExpectSamePolicy(pd, pay, PolicyFromJson(pd, PolicyToJson(pd, pay), 0, bound));
  const PaymentPolicy table = PolicyFromJson(
      pd, Json::parse(R"({"type":"table","entries":[{"profile":["D","C"],"payments":[0,0.5]}]})"), 0, bound);
  EXPECT_EQ(table.Payments(Profile{1, 0}), (std::vector<double>{0.0, 0.5}));
  EXPECT_EQ(table.Payments(Profile{0, 0}), (std::vector<double>{0.0, 0.0}));
  EXPECT_THROW(
      PolicyFromJson(pd, Json::parse(R"({"type":"table","entries":[{"profile":["X","C"],"payments":[0,1]}]})"), 0,
                     bound),
      InputError);
  EXPECT_THROW(PolicyFromJson(pd, Json::parse(R"({"type":"rule","name":"second_price_thm1"})"), 0, bound),
               InputError);
}

TEST(PolicyJsonTest, ProfileResolvesCancellation) {
  const FiniteGame pd = BuildPd(PdFigure1{});
  const double bound = DefaultBound(pd);
  const Json j = Json::parse(R"([
      {"type":"rule","name":"pay_on_action","params":{"recipient":1,"action":"C","amount":0.4}},
      {"type":"rule","name":"cancellation","params":{"of":0}}])");
  const PolicyProfile profile = PolicyProfileFromJson(pd, j, bound);
  ASSERT_EQ(profile.policies().size(), 2u);
  for (std::int64_t s = 0; s < 4; ++s) {
    const Profile p = pd.space().Decode(s);
    const auto a = profile.policies()[0].Payments(p);
    const auto b = profile.policies()[1].Payments(p);
    EXPECT_DOUBLE_EQ(a[1], b[0]);
  }
  const PolicyProfile partial = PolicyProfileFromJson(pd, Json::array(), bound);
  EXPECT_EQ(partial.policies().size(), 2u);
  EXPECT_THROW(PolicyProfileFromJson(pd, Json::parse(R"([{}, {}, {}])"), bound), InputError);
}

TEST(LearnerJsonTest, RoundTrip) {
  for (Algorithm algo : {Algorithm::kHedge, Algorithm::kLinearMw, Algorithm::kFtpl, Algorithm::kExp3}) {
    LearnerConfig c;
    c.algo = algo;
    c.rate = 0.05;
    c.schedule = RateSchedule::kAnytime;
    c.seed = 77;
    const LearnerConfig back = LearnerFromJson(LearnerToJson(c));
    EXPECT_EQ(back.algo, c.algo);
    EXPECT_EQ(back.rate, c.rate);
    EXPECT_EQ(back.schedule, c.schedule);
    EXPECT_EQ(back.seed, c.seed);
  }
  const LearnerConfig d = LearnerFromJson(Json::parse(R"({"algo":"hedge","rate":"auto"})"));
  EXPECT_FALSE(d.rate.has_value());
  EXPECT_THROW(LearnerFromJson(Json::parse(R"({"algo":"hedge","rate":"fast"})")), InputError);
  EXPECT_THROW(LearnerFromJson(Json::parse(R"({"algo":"hedge","schedule":"daily"})")), InputError);
}

TEST(ReportJsonTest, TraceCsvAndSummary) {
  RunConfig c;
  auto game = std::make_shared<FiniteGame>(BuildPd(PdFigure1{}));
  c.game = game;
  c.learners.assign(2, LearnerConfig{});
  c.horizon = 50;
  c.record_trace = true;
  const RunReport r = paygames::Run(c);
  std::ostringstream csv;
  WriteTraceCsv(csv, r);
  const std::string s = csv.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 51);
  const Json j = ReportToJson(*game, r);
  EXPECT_TRUE(j.contains("full"));
  EXPECT_TRUE(j.contains("window"));
}

TEST(ReportJsonTest, LoadMissingFile) {
  EXPECT_THROW(LoadJsonFile("/nonexistent/spec.json"), InputError);
}

}  // namespace
}  // namespace paygames::io
