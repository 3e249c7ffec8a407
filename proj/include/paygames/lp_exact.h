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

#ifndef PAYGAMES_LP_EXACT_H_
#define PAYGAMES_LP_EXACT_H_

#include <gmpxx.h>

#include "paygames/lp.h"

namespace paygames::lp {

template <>
struct ScalarTraits<mpq_class> {
  static constexpr bool kExact = true;
  static bool Positive(const mpq_class& x) { return sgn(x) > 0; }
  static bool Negative(const mpq_class& x) { return sgn(x) < 0; }
  static bool PivotUsable(const mpq_class& x) { return sgn(x) > 0; }
};

// Recovers small-denominator rationals such as 2/3
// from doubles; anything else is taken at its exact binary value.
mpq_class Rationalize(double value, long max_denominator = 1000000);

}  // namespace paygames::lp

#endif  // PAYGAMES_LP_EXACT_H_
