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

#ifndef KCBS_CHANNELS_H_
#define KCBS_CHANNELS_H_

#include <optional>

#include "kcbs/frame.h"
#include "kcbs/qutrit.h"
#include "kcbs/rng.h"

namespace kcbs {

/// Relaxation, dephasing, readout and thermal parameters of the qutrit.
/// Times may be +infinity to switch a process off.
struct NoiseModel {
  double t1_1_us = 17.4;      // 1 -> 0
  double t1_2to1_us = 18.1;   // 2 -> 1
  double t1_2to0_us = 9.5;    // 2 -> 0
  double t2s_01_us = 6.6;
  double t2s_12_us = 4.6;
  double readout_ns = 350;
  double ringdown_ns = 475;
  double init_delay_ns = 565;
  double contrast_eps_up = 0.02;    // ground reported as excited
  double contrast_eps_down = 0.02;  // excited reported as ground
  double thermal_p1 = 0;
  double thermal_p2 = 0;

  /// No relaxation, dephasing, misassignment or thermal population.
  static NoiseModel ideal();
  /// Measured device constants with thermal populations fitted to a 10%
  /// initialisation rejection rate.
  static NoiseModel calibrated();

  /// Throws DomainError on non-positive times, probabilities outside [0,1]
  /// or thermal_p1 + thermal_p2 >= 1.
  void validate() const;

  /// Probability that the initialisation readout of the thermal state does
  /// not report ground.
  double init_rejection_probability() const;

  /// Returns a copy whose thermal populations reproduce target_rejection,
  /// split with a Boltzmann ratio p2 / p1 = p1 / p0. Throws DomainError when
  /// the target is unreachable with the configured contrast.
  NoiseModel with_thermal_fit(double target_rejection) const;

  bool operator==(const NoiseModel&) const = default;
};

enum class Branch { kGround, kExcited };

struct MeasurementOutcome {
  Branch raw = Branch::kGround;
  int recorded = +1;
};

struct LudersResult {
  Branch branch;
  DensityMatrix state;
};

/// Binary ground-state measurement {|0><0|, I - |0><0|} with Lueders update.
/// The excited branch keeps the 1-2 coherence block.
LudersResult luders_measure_ground(const DensityMatrix& rho, Rng& rng);

/// Both branches of the ground-state measurement without sampling.
struct GroundSplit {
  double p_ground = 0;
  DensityMatrix ground_state = DensityMatrix::basis(0);
  /// Empty when the excited branch has zero probability.
  std::optional<DensityMatrix> excited_state;
};

GroundSplit deterministic_measure_ground(const DensityMatrix& rho);

/// Unnormalised branch blocks P0 m P0 and Q m Q, for branch-enumerating
/// pipelines.
Matrix3 ground_block(const Matrix3& m);
Matrix3 excited_block(const Matrix3& m);

DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary3& u);

/// Relaxation (1->0, 2->1, 2->0) plus pure dephasing over a fixed interval,
/// solved in closed form. Linear, so it also acts on unnormalised blocks.
class DecoherenceChannel {
 public:
  DecoherenceChannel(const NoiseModel& model, double duration_ns);

  Matrix3 apply(const Matrix3& m) const;
  DensityMatrix apply(const DensityMatrix& rho) const {
    return DensityMatrix::unchecked(apply(rho.matrix()));
  }
  bool is_identity() const { return identity_; }

 private:
  bool identity_ = true;
  double keep1_ = 1;         // surviving fraction of population 1
  double keep2_ = 1;         // surviving fraction of population 2
  double feed_2to1_ = 0;     // fraction of initial population 2 found in 1
  double coherence01_ = 1;
  double coherence02_ = 1;
  double coherence12_ = 1;
};

/// Throws std::invalid_argument for negative duration.
DensityMatrix decohere(const DensityMatrix& rho, double duration_ns, const NoiseModel& model);

/// Pure-dephasing rates (1/us) on the 0-1 and 1-2 coherences after the
/// relaxation contribution is removed, floored at zero.
struct DephasingRates {
  double gamma01 = 0;
  double gamma12 = 0;
};
DephasingRates pure_dephasing_rates(const NoiseModel& model);

/// diag(1 - p1 - p2, p1, p2). Throws DomainError on invalid populations.
DensityMatrix thermal_state(double p1, double p2);

/// Whether the readout reports ground, after classical misassignment.
bool reported_ground(Branch raw, const NoiseModel& model, Rng& rng);

/// Recorded +-1 for a raw branch measured in the rotated frame: the ground
/// branch of the rotated readout is the projector branch of A_i.
MeasurementOutcome misassign(Branch raw, const NoiseModel& model, SignConvention sign, Rng& rng);

}  // namespace kcbs

#endif  // KCBS_CHANNELS_H_
