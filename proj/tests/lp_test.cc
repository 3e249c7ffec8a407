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

#include "paygames/lp.h"

#include <vector>

#include "gtest/gtest.h"
#include "paygames/lp_exact.h"

namespace paygames::lp {
namespace {

template <class S>
LinearProgram<S> TwoByTwo() {
  // x + 2y <= 4, 3x + y <= 6, x, y >= 0.
  LinearProgram<S> lp;
  lp.num_vars = 2;
  lp.a_ub = {{S(1), S(2)}, {S(3), S(1)}};
  lp.b_ub = {S(4), S(6)};
  return lp;
}

TEST(LpTest, SmallProgramDouble) {
  const FeasibleRegion<double> region(TwoByTwo<double>());
  ASSERT_TRUE(region.feasible());
  const std::vector<double> c = {1.0, 1.0};
  const auto max = region.Maximize(c);
  ASSERT_EQ(max.status, Status::kOptimal);
  EXPECT_NEAR(max.value, 2.8, 1e-12);
  EXPECT_NEAR(max.x[0], 1.6, 1e-12);
  EXPECT_NEAR(max.x[1], 1.2, 1e-12);
  const auto min = region.Minimize(c);
  ASSERT_EQ(min.status, Status::kOptimal);
  EXPECT_NEAR(min.value, 0.0, 1e-12);
}

TEST(LpTest, SmallProgramExact) {
  const FeasibleRegion<mpq_class> region(TwoByTwo<mpq_class>());
  const std::vector<mpq_class> c = {1, 1};
  const auto max = region.Maximize(c);
  ASSERT_EQ(max.status, Status::kOptimal);
  EXPECT_EQ(max.value, mpq_class(14, 5));
  EXPECT_EQ(max.x[0], mpq_class(8, 5));
  EXPECT_EQ(max.x[1], mpq_class(6, 5));
}

TEST(LpTest, EqualitiesAndNegativeRhs) {
  // x + y = 1, -x <= -0.25 (x >= 0.25); minimize y - x.
  LinearProgram<mpq_class> lp;
  lp.num_vars = 2;
  lp.a_eq = {{1, 1}};
  lp.b_eq = {1};
  lp.a_ub = {{-1, 0}};
  lp.b_ub = {mpq_class(-1, 4)};
  const FeasibleRegion<mpq_class> region(lp);
  ASSERT_TRUE(region.feasible());
  const std::vector<mpq_class> c = {-1, 1};
  EXPECT_EQ(region.Minimize(c).value, -1);
  EXPECT_EQ(region.Maximize(c).value, mpq_class(1, 2));
}

TEST(LpTest, InfeasibleAndUnbounded) {
  LinearProgram<double> infeasible;
  infeasible.num_vars = 1;
  infeasible.a_ub = {{1.0}};
  infeasible.b_ub = {-1.0};
  EXPECT_FALSE(FeasibleRegion<double>(infeasible).feasible());

  LinearProgram<double> open;
  open.num_vars = 2;
  open.a_ub = {{1.0, -1.0}};
  open.b_ub = {1.0};
  const FeasibleRegion<double> region(open);
  ASSERT_TRUE(region.feasible());
  const std::vector<double> c = {1.0, 0.0};
  EXPECT_EQ(region.Maximize(c).status, Status::kUnbounded);
  EXPECT_EQ(region.Minimize(c).status, Status::kOptimal);
}

TEST(LpTest, RejectsMalformedPrograms) {
  LinearProgram<double> lp;
  lp.num_vars = 2;
  lp.a_ub = {{1.0}};
  lp.b_ub = {1.0};
  EXPECT_THROW(FeasibleRegion<double>{lp}, InputError);
  lp.a_ub = {{1.0, 1.0}};
  lp.b_ub = {};
  EXPECT_THROW(FeasibleRegion<double>{lp}, InputError);
}

TEST(LpTest, DegenerateProgramTerminates) {
  // A classic cycling-prone instance; Bland's rule must terminate.
  LinearProgram<mpq_class> lp;
  lp.num_vars = 4;
  lp.a_ub = {{mpq_class(1, 4), -8, -1, 9}, {mpq_class(1, 2), -12, mpq_class(-1, 2), 3}, {0, 0, 1, 0}};
  lp.b_ub = {0, 0, 1};
  const FeasibleRegion<mpq_class> region(lp);
  const std::vector<mpq_class> c = {mpq_class(3, 4), -20, mpq_class(1, 2), -6};
  const auto sol = region.Maximize(c);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_EQ(sol.value, mpq_class(5, 4));
}

TEST(RationalizeTest, RecoversSimpleFractions) {
  EXPECT_EQ(Rationalize(0.1), mpq_class(1, 10));
  EXPECT_EQ(Rationalize(1.0 / 3), mpq_class(1, 3));
  EXPECT_EQ(Rationalize(-2.0 / 3), mpq_class(-2, 3));
  EXPECT_EQ(Rationalize(5.0), mpq_class(5));
  EXPECT_EQ(Rationalize(0.0), mpq_class(0));
  EXPECT_THROW(Rationalize(std::nan("")), InputError);
}

}  // namespace
}  // namespace paygames::lp
