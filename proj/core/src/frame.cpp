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

#include "kcbs/frame.h"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "su2.h"

namespace kcbs {

std::string_view to_string(SignConvention sign) {
  switch (sign) {
    case SignConvention::kComplementPositive:
      return "complement_positive";
    case SignConvention::kProjectorPositive:
      return "projector_positive";
  }
  return "complement_positive";
}

SignConvention parse_sign_convention(std::string_view text) {
  if (text == "complement_positive") return SignConvention::kComplementPositive;
  if (text == "projector_positive") return SignConvention::kProjectorPositive;
  throw DomainError("unknown sign convention '" + std::string(text) +
                    "' (expected complement_positive or projector_positive)");
}

KcbsFrame KcbsFrame::from_vectors(const std::array<Complex3Vector, 5>& vectors,
                                  SignConvention sign) {
  for (int i = 0; i < 5; ++i) {
    const double norm_defect = std::abs(vectors[i].norm() - 1.0);
    if (norm_defect > kAlgebraicTolerance) {
      throw DomainError("frame vector l_" + std::to_string(i + 1) + " is not normalised");
    }
    const Complex overlap = vectors[i].dot(vectors[(i + 1) % 5]);
    if (std::abs(overlap) > kAlgebraicTolerance) {
      throw DomainError("frame vectors l_" + std::to_string(i + 1) + " and l_" +
                        std::to_string((i + 1) % 5 + 1) + " are not orthogonal");
    }
  }
  return KcbsFrame(vectors, sign);
}

const Complex3Vector& KcbsFrame::vector(int index) const {
  if (index < 1 || index > 5) {
    throw std::out_of_range("observable index must be in 1..5, got " + std::to_string(index));
  }
  return vectors_[static_cast<std::size_t>(index - 1)];
}

std::string KcbsFrame::to_text() const {
  std::ostringstream out;
  out << std::setprecision(17);
  for (int i = 0; i < 5; ++i) {
    out << "l" << (i + 1) << " =";
    for (int c = 0; c < 3; ++c) {
      out << " (" << vectors_[i](c).real() << ", " << vectors_[i](c).imag() << ")";
    }
    out << '\n';
  }
  return out.str();
}

KcbsFrame build_kcbs_frame(SignConvention sign) {
  const double c5 = std::cos(std::numbers::pi / 5.0);
  const double cos2 = c5 / (1.0 + c5);
  const double cos_t = std::sqrt(cos2);
  const double sin_t = std::sqrt(1.0 - cos2);
  std::array<Complex3Vector, 5> vectors;
  for (int k = 0; k < 5; ++k) {
    const double phi = 4.0 * std::numbers::pi * k / 5.0;
    vectors[k] << cos_t, sin_t * std::cos(phi), sin_t * std::sin(phi);
  }
  return KcbsFrame::from_vectors(vectors, sign);
}

ProjectorPair observable(const KcbsFrame& frame, int index) {
  const Complex3Vector& l = frame.vector(index);
  ProjectorPair pair;
  pair.projector = l * l.adjoint();
  pair.complement = Matrix3::Identity() - pair.projector;
  pair.projector_outcome = outcome_label(true, frame.sign());
  pair.complement_outcome = outcome_label(false, frame.sign());
  return pair;
}

IdealPairStatistics ideal_pair_statistics(const KcbsFrame& frame, const DensityMatrix& state,
                                          int first, int second) {
  const ProjectorPair a = observable(frame, first);
  const ProjectorPair b = observable(frame, second);
  const std::array<std::pair<const Matrix3*, int>, 2> first_branches{
      {{&a.projector, a.projector_outcome}, {&a.complement, a.complement_outcome}}};
  const std::array<std::pair<const Matrix3*, int>, 2> second_branches{
      {{&b.projector, b.projector_outcome}, {&b.complement, b.complement_outcome}}};

  IdealPairStatistics stats;
  stats.first = first;
  stats.second = second;
  for (const auto& [p1, out1] : first_branches) {
    const Matrix3 post = (*p1) * state.matrix() * (*p1);
    for (const auto& [p2, out2] : second_branches) {
      const double prob = ((*p2) * post).trace().real();
      stats.correlator += out1 * out2 * prob;
      stats.first_mean += out1 * prob;
      stats.second_mean += out2 * prob;
      if (out1 != out2) stats.win_probability += prob;
    }
  }
  return stats;
}

IdealReport ideal_statistics(const KcbsFrame& frame, const DensityMatrix& state) {
  IdealReport report;
  for (int i = 1; i <= 5; ++i) {
    report.contexts[i - 1] = ideal_pair_statistics(frame, state, i, i % 5 + 1);
    report.correlator_sum += report.contexts[i - 1].correlator;
    report.win_probability += report.contexts[i - 1].win_probability / 5.0;
  }
  return report;
}


Unitary3 readout_rotation(const Complex3Vector& target) {
  if (std::abs(target.norm() - 1.0) > kAlgebraicTolerance) {
    throw DomainError("readout rotation target must be a unit vector");
  }
  const Matrix3 g12 = detail::embed(detail::zeroing_block(target(1), target(2)), 1);
  const Complex3Vector w = g12 * target;
  const Matrix3 g01 = detail::embed(detail::zeroing_block(w(0), w(1)), 0);
  return Unitary3::unchecked(g01 * g12);
}

Unitary3 unitary_to_readout_basis(const KcbsFrame& frame, int index) {
  return readout_rotation(frame.vector(index));
}

}  // namespace kcbs
