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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "paygames/errors.h"

namespace paygames::theory {
namespace {

// Below this distance from r = 1 the closed form cancels badly and the
// Taylor expansion in h = 1 - r is used instead.
constexpr double kSeriesCutoff = 0.02;

double Integrate(auto f, double a, double b) {
  if (!(b > a)) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-12, &error);
}

}  // namespace

void Validate(const FirstPriceClosedForm& cf) {
  if (!(cf.v1 >= cf.v2 && cf.v2 > cf.v3 && cf.v3 >= 0.0)) {
    throw InputError("need v1 >= v2 > v3 >= 0");
  }
  if (!(cf.eta > 0.0 && cf.eta < cf.v2 - cf.v3)) {
    throw InputError("need 0 < eta < v2 - v3");
  }
}

double F1Cdf(const FirstPriceClosedForm& cf, double x) {
  Validate(cf);
  if (x < cf.v3) return 0.0;
  if (x >= cf.SupportTop()) return 1.0;
  return cf.eta / (cf.v2 - x);
}

double G2Cdf(const FirstPriceClosedForm& cf, double x) {
  Validate(cf);
  if (x < cf.v3) return 0.0;
  if (x >= cf.SupportTop()) return 1.0;
  return (cf.v1 - cf.v2 + cf.eta) / (cf.v1 - x);
}

double F1Atom(const FirstPriceClosedForm& cf) { return F1Cdf(cf, cf.v3); }
double G2Atom(const FirstPriceClosedForm& cf) { return G2Cdf(cf, cf.v3); }

ExpectedUtilities Utilities(const FirstPriceClosedForm& cf) {
  Validate(cf);
  ExpectedUtilities out;
  out.u1 = cf.v1 - cf.v2 + cf.eta * (cf.v2 - cf.v3 - cf.eta) / (cf.v1 - cf.v3);
  out.u2 = cf.eta;
  return out;
}

OptimalEta OptimalEtaFor(double v1, double v2, double v3) {
  OptimalEta out;
  out.eta = (v2 - v3) / 2.0;
  out.u1 = Utilities({v1, v2, v3, out.eta}).u1;
  return out;
}

double WinFrequency(double v1, double v2) {
  if (!(v1 >= v2 && v2 > 0.0)) throw InputError("need v1 >= v2 > 0");
  const double h = 1.0 - v2 / v1;
  if (h < kSeriesCutoff) {
    // Expansion of the closed form about r = 1; the tail is O(h^10).
    static constexpr double kCoef[] = {3.0 / 8,   -5.0 / 12,  1.0 / 16,   -1.0 / 30,
                                       1.0 / 48,  -1.0 / 70,  1.0 / 96,   -1.0 / 126,
                                       1.0 / 160, -1.0 / 198};
    double acc = 0.0;
    for (int k = 9; k >= 0; --k) acc = acc * h + kCoef[k];
    return acc;
  }
  const double d = v1 - v2;
  const double s = 2.0 * v1 - v2;
  return v2 * s / (4.0 * d * d) * (std::log(s / v1) - v2 * d / (v1 * s));
}

double WelfareLoss(double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw InputError("ratio must lie in (0, 1]");
  return (1.0 - ratio) * WinFrequency(1.0, ratio);
}

WelfareLossPeak WelfareLossCurve() {
  auto negative = [](double r) { return -WelfareLoss(r); };
  const auto [r, value] = boost::math::tools::brent_find_minima(negative, 1e-6, 1.0 - 1e-6,
                                                                std::numeric_limits<double>::digits / 2);
  return {r, -value};
}

double RevenueBound(const FirstPriceClosedForm& cf) {
  Validate(cf);
  const double top = cf.SupportTop();
  if (!(top < cf.v2)) throw InvariantError("revenue bound is not below the no-payment revenue");
  return top;
}

ExpectedUtilities QuadratureUtilities(const FirstPriceClosedForm& cf) {
  Validate(cf);
  const double lo = cf.v3;
  const double top = cf.SupportTop();
  const double c1 = cf.eta;                       // F1(x) (v2 - x)
  const double c2 = cf.v1 - cf.v2 + cf.eta;       // G2(x) (v1 - x)
  auto f1 = [&](double x) { return c1 / ((cf.v2 - x) * (cf.v2 - x)); };
  auto g2 = [&](double x) { return c2 / ((cf.v1 - x) * (cf.v1 - x)); };
  auto big_f1 = [&](double x) { return c1 / (cf.v2 - x); };
  auto big_g2 = [&](double x) { return c2 / (cf.v1 - x); };
  const double atom1 = big_f1(lo);
  const double atom2 = big_g2(lo);

  ExpectedUtilities out;
  // Agent 1 wins ties, including the tie at the floor.
  out.u1 = atom1 * atom2 * (cf.v1 - lo) +
           Integrate([&](double x) { return f1(x) * big_g2(x) * (cf.v1 - x); }, lo, top) -
           cf.eta * atom2;
  // Agent 2 bidding the floor never wins and collects eta.
  out.u2 = atom2 * cf.eta +
           Integrate([&](double x) { return g2(x) * big_f1(x) * (cf.v2 - x); }, lo, top);
  return out;
}

double QuadratureWinFrequency(const FirstPriceClosedForm& cf) {
  Validate(cf);
  const double c1 = cf.eta;
  const double c2 = cf.v1 - cf.v2 + cf.eta;
  // Agent 2 wins only with an interior bid strictly above agent 1's.
  return Integrate(
      [&](double x) { return c2 / ((cf.v1 - x) * (cf.v1 - x)) * c1 / (cf.v2 - x); }, cf.v3,
      cf.SupportTop());
}

void WriteCdfCsv(std::ostream& out, const FirstPriceClosedForm& cf, int points) {
  Validate(cf);
  if (points < 2) throw InputError("need at least two points");
  out << "x,F1,G2\n" << std::setprecision(17);
  for (int p = 0; p < points; ++p) {
    const double x = cf.v3 + (cf.SupportTop() - cf.v3) * p / (points - 1);
    out << x << ',' << F1Cdf(cf, x) << ',' << G2Cdf(cf, x) << '\n';
  }
}

void WriteWinFrequencyCsv(std::ostream& out, std::span<const double> ratios) {
  out << "ratio,win_freq,welfare_loss\n" << std::setprecision(17);
  for (double r : ratios) {
    if (r == 0.0) {
      out << r << ",0,0\n";
      continue;
    }
    out << r << ',' << WinFrequency(1.0, r) << ',' << WelfareLoss(r) << '\n';
  }
}

void WriteWelfareLossCsv(std::ostream& out) {
  const WelfareLossPeak peak = WelfareLossCurve();
  out << "argmax_ratio,max_loss\n" << std::setprecision(17) << peak.ratio << ',' << peak.loss
      << '\n';
}

void WriteUtilitiesCsv(std::ostream& out, double v1, double v2, double v3, int points) {
  if (points < 2) throw InputError("need at least two points");
  out << "eta,u1,u2\n" << std::setprecision(17);
  for (int p = 1; p < points; ++p) {
    const double eta = (v2 - v3) * p / points;
    const ExpectedUtilities u = Utilities({v1, v2, v3, eta});
    out << eta << ',' << u.u1 << ',' << u.u2 << '\n';
  }
}

}  // namespace paygames::theory
