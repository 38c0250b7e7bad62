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

#ifndef KCBS_FRAME_H_
#define KCBS_FRAME_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "kcbs/qutrit.h"

namespace kcbs {

/// Which projector of A_i = {P_i, I - P_i} is reported as outcome +1.
///
/// kComplementPositive labels the "not l_i" result +1, so single
/// expectations on the ground state come out positive (2/sqrt(5) - 1 flipped).
/// Correlators <A_i A_j> are identical under both conventions.
enum class SignConvention {
  kComplementPositive,
  kProjectorPositive,
};

std::string_view to_string(SignConvention sign);
/// Parses "complement_positive" or "projector_positive"; throws DomainError.
SignConvention parse_sign_convention(std::string_view text);

/// Recorded outcome for a measurement that landed in the projector branch
/// (state found along |l_i>) or in the complement branch.
constexpr int outcome_label(bool projector_branch, SignConvention sign) {
  const bool positive = projector_branch == (sign == SignConvention::kProjectorPositive);
  return positive ? +1 : -1;
}

/// The five pentagram vectors |l_1> .. |l_5>, with |l_i> orthogonal to
/// |l_{i+1}| (indices mod 5).
class KcbsFrame {
 public:
  /// Validates adjacency orthogonality and normalisation; throws DomainError.
  static KcbsFrame from_vectors(const std::array<Complex3Vector, 5>& vectors,
                                SignConvention sign = SignConvention::kComplementPositive);

  /// 1-based access; throws std::out_of_range.
  const Complex3Vector& vector(int index) const;
  const std::array<Complex3Vector, 5>& vectors() const { return vectors_; }
  SignConvention sign() const { return sign_; }
  KcbsFrame with_sign(SignConvention sign) const { return KcbsFrame(vectors_, sign); }

  /// Components printed with 17 significant digits, one vector per line.
  std::string to_text() const;

 private:
  KcbsFrame(const std::array<Complex3Vector, 5>& vectors, SignConvention sign)
      : vectors_(vectors), sign_(sign) {}

  std::array<Complex3Vector, 5> vectors_;
  SignConvention sign_;
};

/// The symmetric pentagram around |0>:
///   l_k = (cos t, sin t cos(4 pi k / 5), sin t sin(4 pi k / 5)),  k = 0..4
/// with cos^2 t = cos(pi/5) / (1 + cos(pi/5)) = 1/sqrt(5).
KcbsFrame build_kcbs_frame(SignConvention sign = SignConvention::kComplementPositive);

/// The projector pair of A_i and the outcome label attached to each.
struct ProjectorPair {
  Matrix3 projector;   // |l_i><l_i|
  Matrix3 complement;  // I - |l_i><l_i|
  int projector_outcome;
  int complement_outcome;

  /// Outcome-weighted sum: projector_outcome * P + complement_outcome * (I - P).
  Matrix3 observable() const {
    return static_cast<double>(projector_outcome) * projector +
           static_cast<double>(complement_outcome) * complement;
  }
};

ProjectorPair observable(const KcbsFrame& frame, int index);

/// Ideal statistics of one ordered pair measured sequentially (Lueders rule).
struct IdealPairStatistics {
  int first = 0;
  int second = 0;
  double correlator = 0;   // <A_first A_second>
  double first_mean = 0;   // <A_first> in slot 1
  double second_mean = 0;  // <A_second> in slot 2
  double win_probability = 0;  // Pr(a_first != a_second)
};

IdealPairStatistics ideal_pair_statistics(const KcbsFrame& frame, const DensityMatrix& state,
                                          int first, int second);

struct IdealReport {
  std::array<IdealPairStatistics, 5> contexts;  // (1,2), (2,3), (3,4), (4,5), (5,1)
  double correlator_sum = 0;
  double win_probability = 0;  // averaged uniformly over the five contexts
};

IdealReport ideal_statistics(const KcbsFrame& frame, const DensityMatrix& state);

/// A unitary V with V|target> = |0>, built from an SU(2) rotation in the
/// {1,2} subspace followed by one in the {0,1} subspace. target must be a
/// unit vector.
Unitary3 readout_rotation(const Complex3Vector& target);

/// V_i with V_i |l_i> = |0>.
Unitary3 unitary_to_readout_basis(const KcbsFrame& frame, int index);

/// R_n(phi) = exp(-i phi n.sigma / 2) acting on levels {lower, lower + 1}.
struct TwoLevelRotation {
  int lower_level = 0;  // 0 -> {0,1}, 1 -> {1,2}
  std::array<double, 3> axis{0, 0, 1};
  double angle = 0;

  Matrix3 matrix() const;
};

/// Writes U, up to global phase, as a product R_0 R_1 ... of at most three
/// two-level rotations. The last element acts first in time. Identity
/// factors are omitted. Throws DomainError when U is not unitary within 1e-10.
std::vector<TwoLevelRotation> decompose_two_level(const Matrix3& u);

/// Product of the rotations in list order.
Matrix3 compose(const std::vector<TwoLevelRotation>& rotations);

}  // namespace kcbs

#endif  // KCBS_FRAME_H_
