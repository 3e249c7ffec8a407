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

#ifndef PAYGAMES_FIRST_PRICE_THEORY_H_
#define PAYGAMES_FIRST_PRICE_THEORY_H_

#include <ostream>
#include <span>

namespace paygames::theory {

// First-price auction where agent 1 pays eta to agent 2 whenever agent 2 bids
// the floor v3 (0 with two bidders). Equilibrium bids live on [v3, v2 - eta].
struct FirstPriceClosedForm {
  double v1 = 1.0;
  double v2 = 0.5;
  double v3 = 0.0;
  double eta = 0.25;

  double SupportTop() const { return v2 - eta; }
};

// Throws InputError unless v1 >= v2 > v3 >= 0 and 0 < eta < v2 - v3.
void Validate(const FirstPriceClosedForm& cf);

// Agent 1's and agent 2's bid CDFs, 0 below v3 and 1 from the support top on.
double F1Cdf(const FirstPriceClosedForm& cf, double x);
double G2Cdf(const FirstPriceClosedForm& cf, double x);
// Point masses at the floor.
double F1Atom(const FirstPriceClosedForm& cf);
double G2Atom(const FirstPriceClosedForm& cf);

struct ExpectedUtilities {
  double u1 = 0.0;
  double u2 = 0.0;
};
ExpectedUtilities Utilities(const FirstPriceClosedForm& cf);

struct OptimalEta {
  double eta = 0.0;
  double u1 = 0.0;
};
OptimalEta OptimalEtaFor(double v1, double v2, double v3 = 0.0);

// Pr[agent 2 wins] at eta = v2/2, two bidders. v1 == v2 gives the limit 3/8.
double WinFrequency(double v1, double v2);

// Fraction of welfare lost to agent 2 winning, (v1 - v2) W / v1, as a
// function of r = v2/v1.
double WelfareLoss(double ratio);

struct WelfareLossPeak {
  double ratio = 0.0;
  double loss = 0.0;
};
WelfareLossPeak WelfareLossCurve();

// Top of the bid support v2 - eta; throws InvariantError if it is not below
// the no-payment revenue v2.
double RevenueBound(const FirstPriceClosedForm& cf);

// Independent oracles: adaptive Gauss-Kronrod integration of the densities
// implied by F1 and G2, with the floor atoms added analytically.
ExpectedUtilities QuadratureUtilities(const FirstPriceClosedForm& cf);
double QuadratureWinFrequency(const FirstPriceClosedForm& cf);

// CSV emitters; each writes a header line first.
void WriteCdfCsv(std::ostream& out, const FirstPriceClosedForm& cf, int points);
void WriteWinFrequencyCsv(std::ostream& out, std::span<const double> ratios);
void WriteWelfareLossCsv(std::ostream& out);
void WriteUtilitiesCsv(std::ostream& out, double v1, double v2, double v3, int points);

}  // namespace paygames::theory

#endif  // PAYGAMES_FIRST_PRICE_THEORY_H_
