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

#ifndef KCBS_DISPERSIVE_H_
#define KCBS_DISPERSIVE_H_

#include <array>

namespace kcbs {

/// Dispersive shifts of a transmon ladder coupled to a cavity. All
/// frequencies in MHz.
struct DispersiveShiftSet {
  double coupling = 0;
  double cavity = 0;
  std::array<double, 3> transitions{};  // nu_01, nu_12, nu_23
  std::array<double, 3> chi{};          // chi_j = (j+1) g^2 / (nu_{j,j+1} - nu_c)
  std::array<double, 3> shifts{};       // s_j = -chi_j + chi_{j-1}, chi_{-1} = 0

  /// |s_1 - s_2| / |s_0 - s_1|: how close the two excited-state responses are
  /// compared with the ground/excited separation. Infinity when s_0 = s_1.
  double degeneracy_ratio() const;
  bool near_degenerate(double threshold = 0.1) const { return degeneracy_ratio() < threshold; }
};

/// Smallest |nu_{j,j+1} - nu_c| accepted, in MHz.
inline constexpr double kMinDetuningMHz = 1e-6;

/// Throws DomainError when a detuning is below kMinDetuningMHz.
DispersiveShiftSet dispersive_shifts(double coupling, double cavity, double nu01, double nu12,
                                     double nu23);

}  // namespace kcbs

#endif  // KCBS_DISPERSIVE_H_
