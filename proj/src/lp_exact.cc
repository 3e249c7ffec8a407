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

#include "paygames/lp_exact.h"

#include <algorithm>
#include <cmath>

namespace paygames::lp {

mpq_class Rationalize(double value, long max_denominator) {
  if (!std::isfinite(value)) throw InputError("cannot rationalize a non-finite value");
  // Continued-fraction convergents p/q until q exceeds the cap.
  const double tolerance = 1e-12 * std::max(1.0, std::abs(value));
  double rest = value;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(rest);
    if (std::abs(a) > 1e15) break;
    const long ai = static_cast<long>(a);
    if (q1 > 0 && ai > max_denominator / q1) break;
    const long p2 = ai * p1 + p0;
    const long q2 = ai * q1 + q0;
    if (q2 > max_denominator) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - value) <= tolerance) {
      mpq_class out(p1, q1);
      out.canonicalize();
      return out;
    }
    const double frac = rest - a;
    if (frac == 0.0) break;
    rest = 1.0 / frac;
  }
  return mpq_class(value);
}

}  // namespace paygames::lp
