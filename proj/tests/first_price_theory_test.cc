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

#include "paygames/first_price_theory.h"

#include <cmath>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "paygames/errors.h"

namespace paygames::theory {
namespace {

// The equilibrium CDFs written out directly from the indifference conditions:
// agent 2 is indifferent between the floor (payment eta) and any interior x,
// agent 1 earns v1 - v2 + eta everywhere on the support.
double F1Direct(double v2, double v3, double eta, double x) {
  if (x < v3) return 0.0;
  return std::min(1.0, eta / (v2 - x));
}
double G2Direct(double v1, double v2, double v3, double eta, double x) {
  if (x < v3) return 0.0;
  return x >= v2 - eta ? 1.0 : (v1 - v2 + eta) / (v1 - x);
}

TEST(ClosedFormTest, CdfsMatchIndifferenceConditions) {
  for (const FirstPriceClosedForm cf : {FirstPriceClosedForm{1.0, 0.5, 0.0, 0.25},
                                        FirstPriceClosedForm{1.0, 0.5, 0.4, 0.05},
                                        FirstPriceClosedForm{0.8, 0.6, 0.1, 0.2}}) {
    for (int i = 0; i <= 200; ++i) {
      const double x = cf.v3 + (cf.SupportTop() - cf.v3) * i / 200.0;
      EXPECT_NEAR(F1Cdf(cf, x), F1Direct(cf.v2, cf.v3, cf.eta, x), 1e-14);
      EXPECT_NEAR(G2Cdf(cf, x), G2Direct(cf.v1, cf.v2, cf.v3, cf.eta, x), 1e-14);
    }
    EXPECT_DOUBLE_EQ(F1Cdf(cf, cf.SupportTop()), 1.0);
    EXPECT_DOUBLE_EQ(G2Cdf(cf, cf.SupportTop() + 0.01), 1.0);
    EXPECT_EQ(F1Cdf(cf, cf.v3 - 1e-3), 0.0);
    EXPECT_NEAR(F1Atom(cf), cf.eta / (cf.v2 - cf.v3), 1e-15);
    EXPECT_NEAR(G2Atom(cf), (cf.v1 - cf.v2 + cf.eta) / (cf.v1 - cf.v3), 1e-15);
  }
}

TEST(ClosedFormTest, ValidateRejectsBadParameters) {
  EXPECT_THROW(Validate({0.4, 0.5, 0.0, 0.1}), InputError);
  EXPECT_THROW(Validate({1.0, 0.5, 0.0, 0.5}), InputError);
  EXPECT_THROW(Validate({1.0, 0.5, 0.0, 0.0}), InputError);
  EXPECT_THROW(Validate({1.0, 0.5, 0.5, 0.1}), InputError);
  EXPECT_NO_THROW(Validate({1.0, 1.0, 0.0, 0.3}));
}

TEST(ClosedFormTest, UtilitiesAgainstQuadrature) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double v1 = 0.2 + u(rng);
    const double v2 = v1 * (0.05 + 0.95 * u(rng));
    const double v3 = v2 * 0.8 * u(rng);
    const double eta = (v2 - v3) * (0.02 + 0.96 * u(rng));
    const FirstPriceClosedForm cf{v1, v2, v3, eta};
    const auto closed = Utilities(cf);
    const auto quad = QuadratureUtilities(cf);
    EXPECT_NEAR(closed.u1, quad.u1, 1e-9);
    EXPECT_NEAR(closed.u2, quad.u2, 1e-9);
    EXPECT_NEAR(closed.u2, eta, 1e-12);  // indifferent to bidding the floor
  }
}

TEST(ClosedFormTest, OptimalEtaIsAStationaryPoint) {
  for (auto [v1, v2, v3] : {std::tuple{1.0, 0.5, 0.0}, std::tuple{1.0, 0.5, 0.4}, std::tuple{2.0, 1.2, 0.3}}) {
    const OptimalEta opt = OptimalEtaFor(v1, v2, v3);
    EXPECT_NEAR(opt.eta, (v2 - v3) / 2, 1e-15);
    const double h = 1e-6;
    const double up = Utilities({v1, v2, v3, opt.eta + h}).u1;
    const double down = Utilities({v1, v2, v3, opt.eta - h}).u1;
    EXPECT_NEAR((up - down) / (2 * h), 0.0, 1e-6);
    EXPECT_GT(opt.u1, up);
    EXPECT_GT(opt.u1, down);
  }
  EXPECT_NEAR(OptimalEtaFor(1.0, 0.5).u1, 1.0 - 0.5 + 0.25 / 4, 1e-15);
}

TEST(WinFrequencyTest, MatchesSamplingAndQuadrature) {
  const double v1 = 1.0, v2 = 0.6;
  const FirstPriceClosedForm cf{v1, v2, 0.0, v2 / 2};
  // Inverse-CDF sampling of both bids; agent 2 wins only with a strictly
  // higher bid.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto sample_f1 = [&](double q) { return q <= F1Atom(cf) ? 0.0 : v2 - cf.eta / q; };
  auto sample_g2 = [&](double q) {
    return q <= G2Atom(cf) ? 0.0 : v1 - (v1 - v2 + cf.eta) / q;
  };
  const int n = 2000000;
  int wins = 0;
  for (int i = 0; i < n; ++i) wins += sample_g2(u(rng)) > sample_f1(u(rng));
  const double mc = static_cast<double>(wins) / n;
  EXPECT_NEAR(WinFrequency(v1, v2), mc, 2e-3);
  EXPECT_NEAR(WinFrequency(v1, v2), QuadratureWinFrequency(cf), 1e-10);
}

TEST(WinFrequencyTest, SeriesBranchIsContinuous) {
  for (double h : {0.001, 0.005, 0.0199, 0.0201, 0.03}) {
    const double v2 = 1.0 - h;
    EXPECT_NEAR(WinFrequency(1.0, v2), QuadratureWinFrequency({1.0, v2, 0.0, v2 / 2}), 1e-9) << h;
  }
  EXPECT_EQ(WinFrequency(1.0, 1.0), 0.375);
  double prev = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double w = WinFrequency(1.0, k / 1000.0);
    EXPECT_GE(w, prev);
    prev = w;
  }
  EXPECT_THROW(WinFrequency(0.5, 1.0), InputError);
}

TEST(WelfareLossTest, PeakAgainstGridSearch) {
  double best = 0.0, arg = 0.0;
  for (int k = 1; k < 100000; ++k) {
    const double r = k / 100000.0;
    if (WelfareLoss(r) > best) {
      best = WelfareLoss(r);
      arg = r;
    }
  }
  const WelfareLossPeak peak = WelfareLossCurve();
  EXPECT_NEAR(peak.ratio, arg, 2e-5);
  EXPECT_NEAR(peak.loss, best, 1e-9);
  EXPECT_GE(peak.loss, best);
}

TEST(RevenueTest, BoundIsSupportTop) {
  EXPECT_DOUBLE_EQ(RevenueBound({1.0, 0.5, 0.0, 0.25}), 0.25);
  EXPECT_DOUBLE_EQ(RevenueBound({1.0, 0.5, 0.4, 0.05}), 0.45);
}

TEST(CsvTest, HeadersAndRowCounts) {
  std::ostringstream a, b, c, d;
  WriteCdfCsv(a, {1.0, 0.5, 0.0, 0.25}, 11);
  WriteWinFrequencyCsv(b, std::vector<double>{0.0, 0.5, 1.0});
  WriteWelfareLossCsv(c);
  WriteUtilitiesCsv(d, 1.0, 0.5, 0.0, 4);
  auto lines = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n'); };
  EXPECT_EQ(a.str().substr(0, 7), "x,F1,G2");
  EXPECT_EQ(lines(a.str()), 12);
  EXPECT_EQ(b.str().substr(0, 29), "ratio,win_freq,welfare_loss\n0");
  EXPECT_EQ(c.str().substr(0, 22), "argmax_ratio,max_loss\n");
  EXPECT_EQ(lines(d.str()), 4);
}

}  // namespace
}  // namespace paygames::theory
