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

#include <cmath>
#include <numbers>

#include "kcbs/frame.h"
#include "su2.h"

namespace kcbs {

namespace {

// Entries below this are treated as already eliminated.
constexpr double kEliminated = 1e-14;

Eigen::Matrix2cd su2_block(const TwoLevelRotation& r) {
  const double c = std::cos(r.angle / 2.0);
  const double s = std::sin(r.angle / 2.0);
  const auto& [nx, ny, nz] = r.axis;
  Eigen::Matrix2cd m;
  m << Complex(c, -s * nz), Complex(-s * ny, -s * nx),  //
      Complex(s * ny, -s * nx), Complex(c, s * nz);
  return m;
}

// Nearest element of SU(2) in the form [[a, b], [-conj(b), conj(a)]] and
// its axis-angle parameters.
TwoLevelRotation to_rotation(const Eigen::Matrix2cd& w, int lower) {
  Complex a = 0.5 * (w(0, 0) + std::conj(w(1, 1)));
  Complex b = 0.5 * (w(0, 1) - std::conj(w(1, 0)));
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  a /= norm;
  b /= norm;

  TwoLevelRotation r;
  r.lower_level = lower;
  const double sx = -b.imag();
  const double sy = -b.real();
  const double sz = -a.imag();
  const double s = std::sqrt(sx * sx + sy * sy + sz * sz);
  r.angle = 2.0 * std::atan2(s, a.real());
  if (s > 0.0) {
    r.axis = {sx / s, sy / s, sz / s};
  } else {
    r.axis = {0.0, 0.0, 1.0};
  }
  return r;
}

bool is_identity(const TwoLevelRotation& r) {
  return std::abs(std::sin(r.angle / 2.0)) <= kEliminated && std::cos(r.angle / 2.0) > 0.0;
}

}  // namespace

Matrix3 TwoLevelRotation::matrix() const {
  Matrix3 m = Matrix3::Identity();
  m.block<2, 2>(lower_level, lower_level) = su2_block(*this);
  return m;
}

Matrix3 compose(const std::vector<TwoLevelRotation>& rotations) {
  Matrix3 m = Matrix3::Identity();
  for (const auto& r : rotations) {
    m = m * r.matrix();
  }
  return m;
}

std::vector<TwoLevelRotation> decompose_two_level(const Matrix3& u) {
  const double defect = unitarity_defect(u);
  if (!(defect <= kPipelineTolerance)) {
    throw DomainError("decompose_two_level: input is not unitary (defect " +
                      std::to_string(defect) + ")");
  }

  // Remove the global phase so the remainder lies in SU(3).
  const Complex det = u.determinant();
  Matrix3 m = std::polar(1.0, -std::arg(det) / 3.0) * u;

  std::vector<TwoLevelRotation> factors;

  // Clear (2,0) with a {1,2} rotation, then (1,0) with a {0,1} rotation.
  // Each left multiplication G m is undone by prepending G^dagger.
  if (std::abs(m(2, 0)) > kEliminated) {
    const Eigen::Matrix2cd g = detail::zeroing_block(m(1, 0), m(2, 0));
    m.block<2, 3>(1, 0) = (g * m.block<2, 3>(1, 0)).eval();
    factors.push_back(to_rotation(g.adjoint(), 1));
  }
  const Eigen::Matrix2cd g = detail::zeroing_block(m(0, 0), m(1, 0));
  m.block<2, 3>(0, 0) = (g * m.block<2, 3>(0, 0)).eval();
  factors.push_back(to_rotation(g.adjoint(), 0));

  // What is left is diag(1, W) with W in SU(2).
  factors.push_back(to_rotation(m.block<2, 2>(1, 1), 1));

  std::vector<TwoLevelRotation> rotations;
  for (const auto& r : factors) {
    if (!is_identity(r)) rotations.push_back(r);
  }
  return rotations;
}

}  // namespace kcbs
