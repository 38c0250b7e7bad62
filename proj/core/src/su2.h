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

#ifndef KCBS_SRC_SU2_H_
#define KCBS_SRC_SU2_H_

#include <cmath>

#include "kcbs/qutrit.h"

namespace kcbs::detail {

// SU(2) block [[conj(x), conj(y)], [-y, x]] / |(x, y)|, which sends (x, y)
// to (|(x, y)|, 0). Identity for the zero vector.
inline Eigen::Matrix2cd zeroing_block(Complex x, Complex y) {
  const double r = std::hypot(std::abs(x), std::abs(y));
  Eigen::Matrix2cd s;
  if (r == 0.0) {
    s.setIdentity();
    return s;
  }
  s << std::conj(x) / r, std::conj(y) / r, -y / r, x / r;
  return s;
}

inline Matrix3 embed(const Eigen::Matrix2cd& block, int lower) {
  Matrix3 m = Matrix3::Identity();
  m.block<2, 2>(lower, lower) = block;
  return m;
}

}  // namespace kcbs::detail

#endif  // KCBS_SRC_SU2_H_
