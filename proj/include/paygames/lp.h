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

#ifndef PAYGAMES_LP_H_
#define PAYGAMES_LP_H_

// Dense two-phase tableau simplex, templated on the scalar so the same code
// runs in floating point and in exact rationals.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "paygames/errors.h"

namespace paygames::lp {

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static bool Positive(double x) { return x > 1e-11; }
  static bool Negative(double x) { return x < -1e-11; }
  static bool PivotUsable(double x) { return x > 1e-10; }
};

// max c^T x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
template <class Scalar>
struct LinearProgram {
  int num_vars = 0;
  std::vector<std::vector<Scalar>> a_ub;
  std::vector<Scalar> b_ub;
  std::vector<std::vector<Scalar>> a_eq;
  std::vector<Scalar> b_eq;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

template <class Scalar>
struct Solution {
  Status status = Status::kInfeasible;
  Scalar value{};
  std::vector<Scalar> x;
};

// Runs phase 1 once; every objective is then optimized from a copy of the
// feasible tableau.
template <class Scalar>
class FeasibleRegion {
 public:
  explicit FeasibleRegion(const LinearProgram<Scalar>& lp);

  bool feasible() const { return feasible_; }
  int num_vars() const { return n_; }
  Solution<Scalar> Maximize(std::span<const Scalar> c) const;
  Solution<Scalar> Minimize(std::span<const Scalar> c) const;

 private:
  using Traits = ScalarTraits<Scalar>;

  struct Tableau {
    int rows = 0;
    int cols = 0;  // excluding the rhs column
    std::vector<Scalar> cell;  // (rows + 1) x (cols + 1); row `rows` is the objective
    std::vector<int> basis;
    Scalar& at(int r, int c) { return cell[static_cast<std::size_t>(r) * (cols + 1) + c]; }
    const Scalar& at(int r, int c) const {
      return cell[static_cast<std::size_t>(r) * (cols + 1) + c];
    }
    Scalar& rhs(int r) { return at(r, cols); }
    const Scalar& rhs(int r) const { return at(r, cols); }
  };

  static void Pivot(Tableau& t, int row, int col);
  // Returns false if unbounded. Columns >= `allowed_cols` never enter.
  static bool Optimize(Tableau& t, int allowed_cols);
  static void SetObjective(Tableau& t, std::span<const Scalar> c);

  int n_ = 0;
  int structural_cols_ = 0;  // variables + slacks
  bool feasible_ = false;
  Tableau base_;
};

template <class Scalar>
FeasibleRegion<Scalar>::FeasibleRegion(const LinearProgram<Scalar>& lp) : n_(lp.num_vars) {
  const int m_ub = static_cast<int>(lp.a_ub.size());
  const int m_eq = static_cast<int>(lp.a_eq.size());
  if (static_cast<int>(lp.b_ub.size()) != m_ub || static_cast<int>(lp.b_eq.size()) != m_eq) {
    throw InputError("LP right-hand side has the wrong length");
  }
  const int m = m_ub + m_eq;
  // A <= row with negative rhs is negated into a >= row, which needs an
  // artificial; so does every equality.
  std::vector<bool> needs_artificial(m, false);
  int artificials = 0;
  for (int r = 0; r < m; ++r) {
    const Scalar& b = r < m_ub ? lp.b_ub[r] : lp.b_eq[r - m_ub];
    needs_artificial[r] = r >= m_ub || b < Scalar(0);
    if (needs_artificial[r]) ++artificials;
  }
  structural_cols_ = n_ + m_ub;
  Tableau& t = base_;
  t.rows = m;
  t.cols = structural_cols_ + artificials;
  t.cell.assign(static_cast<std::size_t>(m + 1) * (t.cols + 1), Scalar(0));
  t.basis.assign(m, -1);
  int next_artificial = structural_cols_;
  for (int r = 0; r < m; ++r) {
    const std::vector<Scalar>& row = r < m_ub ? lp.a_ub[r] : lp.a_eq[r - m_ub];
    if (static_cast<int>(row.size()) != n_) throw InputError("LP row has the wrong length");
    const Scalar& b = r < m_ub ? lp.b_ub[r] : lp.b_eq[r - m_ub];
    const bool flip = b < Scalar(0);
    for (int j = 0; j < n_; ++j) t.at(r, j) = flip ? Scalar(-row[j]) : row[j];
    t.rhs(r) = flip ? Scalar(-b) : b;
    if (r < m_ub) t.at(r, n_ + r) = flip ? Scalar(-1) : Scalar(1);
    if (needs_artificial[r]) {
      t.at(r, next_artificial) = Scalar(1);
      t.basis[r] = next_artificial++;
    } else {
      t.basis[r] = n_ + r;
    }
  }

  if (artificials > 0) {
    // Phase 1: maximize -sum(artificials).
    std::vector<Scalar> c(t.cols, Scalar(0));
    for (int j = structural_cols_; j < t.cols; ++j) c[j] = Scalar(-1);
    SetObjective(t, c);
    Optimize(t, t.cols);
    if (Traits::Negative(t.rhs(t.rows))) {
      feasible_ = false;
      return;
    }
    // Drive remaining (zero-valued) artificials out of the basis; rows where
    // that is impossible are redundant and dropped.
    for (int r = 0; r < t.rows; ++r) {
      if (t.basis[r] < structural_cols_) continue;
      int col = -1;
      for (int j = 0; j < structural_cols_; ++j) {
        if (Traits::Positive(t.at(r, j)) || Traits::Negative(t.at(r, j))) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        Pivot(t, r, col);
        continue;
      }
      // Redundant row: swap with the last constraint row and shrink.
      const int last = t.rows - 1;
      for (int j = 0; j <= t.cols; ++j) std::swap(t.at(r, j), t.at(last, j));
      for (int j = 0; j <= t.cols; ++j) std::swap(t.at(last, j), t.at(t.rows, j));
      std::swap(t.basis[r], t.basis[last]);
      t.basis.pop_back();
      t.cell.resize(static_cast<std::size_t>(t.rows) * (t.cols + 1));
      --t.rows;
      --r;
    }
  }
  feasible_ = true;
}

template <class Scalar>
void FeasibleRegion<Scalar>::Pivot(Tableau& t, int row, int col) {
  const int width = t.cols + 1;
  const Scalar inv = Scalar(1) / t.at(row, col);
  for (int j = 0; j < width; ++j) t.at(row, j) *= inv;
  t.at(row, col) = Scalar(1);
  for (int r = 0; r <= t.rows; ++r) {
    if (r == row) continue;
    const Scalar factor = t.at(r, col);
    if (factor == Scalar(0)) continue;
    for (int j = 0; j < width; ++j) {
      if (t.at(row, j) != Scalar(0)) t.at(r, j) -= factor * t.at(row, j);
    }
    t.at(r, col) = Scalar(0);
  }
  t.basis[row] = col;
}

template <class Scalar>
void FeasibleRegion<Scalar>::SetObjective(Tableau& t, std::span<const Scalar> c) {
  // Objective row holds reduced costs z_j - c_j and the current value.
  for (int j = 0; j <= t.cols; ++j) t.at(t.rows, j) = Scalar(0);
  for (int j = 0; j < static_cast<int>(c.size()); ++j) t.at(t.rows, j) = Scalar(-c[j]);
  for (int r = 0; r < t.rows; ++r) {
    const int b = t.basis[r];
    if (b >= static_cast<int>(c.size()) || c[b] == Scalar(0)) continue;
    const Scalar cb = c[b];
    for (int j = 0; j <= t.cols; ++j) {
      if (t.at(r, j) != Scalar(0)) t.at(t.rows, j) += cb * t.at(r, j);
    }
  }
}

template <class Scalar>
bool FeasibleRegion<Scalar>::Optimize(Tableau& t, int allowed_cols) {
  const std::int64_t limit = 50LL * (t.rows + t.cols) + 1000;
  int degenerate_run = 0;
  for (std::int64_t iter = 0; iter < limit; ++iter) {
    // Dantzig's rule, switching to Bland's after a run of degenerate pivots
    // (always Bland in exact arithmetic, where ties are genuine).
    const bool bland = Traits::kExact || degenerate_run > 20;
    int col = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (!Traits::Negative(t.at(t.rows, j))) continue;
      if (col < 0 || (!bland && t.at(t.rows, j) < t.at(t.rows, col))) col = j;
      if (bland) break;
    }
    if (col < 0) return true;
    int row = -1;
    Scalar best{};
    for (int r = 0; r < t.rows; ++r) {
      if (!Traits::PivotUsable(t.at(r, col))) continue;
      const Scalar ratio = t.rhs(r) / t.at(r, col);
      if (row < 0 || ratio < best || (ratio == best && t.basis[r] < t.basis[row])) {
        row = r;
        best = ratio;
      }
    }
    if (row < 0) return false;
    if (Traits::Positive(best)) {
      degenerate_run = 0;
    } else {
      ++degenerate_run;
    }
    Pivot(t, row, col);
  }
  throw InvariantError("simplex iteration limit reached");
}

template <class Scalar>
Solution<Scalar> FeasibleRegion<Scalar>::Maximize(std::span<const Scalar> c) const {
  if (static_cast<int>(c.size()) != n_) throw InputError("objective has the wrong length");
  Solution<Scalar> out;
  if (!feasible_) {
    out.status = Status::kInfeasible;
    return out;
  }
  Tableau t = base_;
  SetObjective(t, c);
  if (!Optimize(t, structural_cols_)) {
    out.status = Status::kUnbounded;
    return out;
  }
  out.status = Status::kOptimal;
  out.x.assign(n_, Scalar(0));
  for (int r = 0; r < t.rows; ++r) {
    if (t.basis[r] < n_) out.x[t.basis[r]] = t.rhs(r);
  }
  // Recompute the value from x rather than trusting the objective row.
  out.value = Scalar(0);
  for (int j = 0; j < n_; ++j) out.value += c[j] * out.x[j];
  return out;
}

template <class Scalar>
Solution<Scalar> FeasibleRegion<Scalar>::Minimize(std::span<const Scalar> c) const {
  std::vector<Scalar> negated(c.begin(), c.end());
  for (Scalar& v : negated) v = -v;
  Solution<Scalar> out = Maximize(negated);
  out.value = -out.value;
  return out;
}

}  // namespace paygames::lp

#endif  // PAYGAMES_LP_H_
