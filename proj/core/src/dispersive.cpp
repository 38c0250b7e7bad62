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

#include <cmath>
#include <limits>
#include <string>

#include "kcbs/qutrit.h"

namespace kcbs {

double DispersiveShiftSet::degeneracy_ratio() const {
  const double separation = std::abs(shifts[0] - shifts[1]);
  if (separation == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(shifts[1] - shifts[2]) / separation;
}

DispersiveShiftSet dispersive_shifts(double coupling, double cavity, double nu01, double nu12,
                                     double nu23) {
  DispersiveShiftSet set;
  set.coupling = coupling;
  set.cavity = cavity;
  set.transitions = {nu01, nu12, nu23};
  const double g2 = coupling * coupling;
  for (int j = 0; j < 3; ++j) {
    const double detuning = set.transitions[j] - cavity;
    if (!(std::abs(detuning) >= kMinDetuningMHz)) {
      throw DomainError("transition " + std::to_string(j) + std::to_string(j + 1) +
                        " is resonant with the cavity; dispersive shifts undefined");
    }
    set.chi[j] = (j + 1) * g2 / detuning;
  }
  double previous = 0.0;
  for (int j = 0; j < 3; ++j) {
    set.shifts[j] = -set.chi[j] + previous;
    previous = set.chi[j];
  }
  return set;
}

}  // namespace kcbs
