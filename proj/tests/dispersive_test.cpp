// Copyright 2026 The kcbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kcbs/dispersive.h"

#include <gtest/gtest.h>

#include "kcbs/qutrit.h"

namespace kcbs {
namespace {

TEST(DispersiveShifts, ZeroCouplingGivesZeros) {
  const DispersiveShiftSet s = dispersive_shifts(0, 7000, 5000, 4700, 4400);
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(s.chi[j], 0);
    EXPECT_EQ(s.shifts[j], 0);
  }
}

TEST(DispersiveShifts, ShiftsFollowChiDifferences) {
  const DispersiveShiftSet s = dispersive_shifts(60, 7000, 5000, 4700, 4400);
  EXPECT_DOUBLE_EQ(s.chi[0], 3600.0 / -2000);
  EXPECT_DOUBLE_EQ(s.chi[1], 2 * 3600.0 / -2300);
  EXPECT_DOUBLE_EQ(s.chi[2], 3 * 3600.0 / -2600);
  EXPECT_EQ(s.shifts[0], -s.chi[0]);
  EXPECT_EQ(s.shifts[1], -s.chi[1] + s.chi[0]);
  EXPECT_EQ(s.shifts[2], -s.chi[2] + s.chi[1]);
}

TEST(DispersiveShifts, HarmonicLadderHasEqualExcitedShifts) {
  const DispersiveShiftSet s = dispersive_shifts(50, 6000, 5000, 5000, 5000);
  EXPECT_NEAR(s.shifts[1], s.shifts[2], 1e-12);
}

TEST(DispersiveShifts, DetuningEqualToAnharmonicityIsDegenerate) {
  // Cavity above nu_01 by the anharmonicity alpha: s_1 = s_2 = 0 while s_0 != 0.
  const double alpha = 300;
  const double nu01 = 5000;
  const DispersiveShiftSet exact =
      dispersive_shifts(40, nu01 + alpha, nu01, nu01 - alpha, nu01 - 2 * alpha);
  EXPECT_NEAR(exact.shifts[1], 0, 1e-12);
  EXPECT_NEAR(exact.shifts[2], 0, 1e-12);
  EXPECT_TRUE(exact.near_degenerate());

  const DispersiveShiftSet close =
      dispersive_shifts(40, nu01 + alpha + 10, nu01, nu01 - alpha, nu01 - 2 * alpha);
  EXPECT_TRUE(close.near_degenerate());

  const DispersiveShiftSet far =
      dispersive_shifts(40, nu01 + 3 * alpha, nu01, nu01 - alpha, nu01 - 2 * alpha);
  EXPECT_FALSE(far.near_degenerate());
}

TEST(DispersiveShifts, ResonanceIsADomainError) {
  EXPECT_THROW(dispersive_shifts(40, 5000, 5000, 4700, 4400), DomainError);
}

}  // namespace
}  // namespace kcbs
