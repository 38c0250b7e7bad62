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

#include "kcbs/channels.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kcbs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1/us for a time constant in us; an infinite constant switches the process off.
double rate(double time_us) { return std::isinf(time_us) ? 0.0 : 1.0 / time_us; }

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(name) + " must be a probability in [0, 1]");
  }
}

void require_time(double t, const char* name) {
  if (!(t > 0.0)) throw DomainError(std::string(name) + " must be > 0");
}

void require_duration(double t, const char* name) {
  if (!(t >= 0.0) || std::isinf(t)) throw DomainError(std::string(name) + " must be >= 0");
}

}  // namespace

NoiseModel NoiseModel::ideal() {
  NoiseModel m;
  m.t1_1_us = m.t1_2to1_us = m.t1_2to0_us = kInf;
  m.t2s_01_us = m.t2s_12_us = kInf;
  m.contrast_eps_up = m.contrast_eps_down = 0.0;
  m.thermal_p1 = m.thermal_p2 = 0.0;
  return m;
}

NoiseModel NoiseModel::calibrated() { return NoiseModel{}.with_thermal_fit(0.10); }

void NoiseModel::validate() const {
  require_time(t1_1_us, "t1_1_us");
  require_time(t1_2to1_us, "t1_2to1_us");
  require_time(t1_2to0_us, "t1_2to0_us");
  require_time(t2s_01_us, "t2s_01_us");
  require_time(t2s_12_us, "t2s_12_us");
  require_duration(readout_ns, "readout_ns");
  require_duration(ringdown_ns, "ringdown_ns");
  require_duration(init_delay_ns, "init_delay_ns");
  require_probability(contrast_eps_up, "contrast_eps_up");
  require_probability(contrast_eps_down, "contrast_eps_down");
  require_probability(thermal_p1, "thermal_p1");
  require_probability(thermal_p2, "thermal_p2");
  if (!(thermal_p1 + thermal_p2 < 1.0)) {
    throw DomainError("thermal_p1 + thermal_p2 must be < 1");
  }
}

double NoiseModel::init_rejection_probability() const {
  const double excited = thermal_p1 + thermal_p2;
  return (1.0 - excited) * contrast_eps_up + excited * (1.0 - contrast_eps_down);
}

NoiseModel NoiseModel::with_thermal_fit(double target_rejection) const {
  const double span = 1.0 - contrast_eps_up - contrast_eps_down;
  const double excited = (target_rejection - contrast_eps_up) / span;
  if (!(span > 0.0) || !(excited >= 0.0 && excited < 1.0)) {
    throw DomainError("initialisation rejection " + std::to_string(target_rejection) +
                      " is unreachable with the configured readout contrast");
  }
  // p1 = q p0, p2 = q^2 p0  =>  (1 - excited)(q^2 + q) = excited.
  const double k = excited / (1.0 - excited);
  const double q = 0.5 * (std::sqrt(1.0 + 4.0 * k) - 1.0);
  const double p0 = 1.0 / (1.0 + q + q * q);
  NoiseModel fitted = *this;
  fitted.thermal_p1 = q * p0;
  fitted.thermal_p2 = q * q * p0;
  return fitted;
}

LudersResult luders_measure_ground(const DensityMatrix& rho, Rng& rng) {
  const double p0 = std::clamp(rho(0, 0).real(), 0.0, 1.0);
  if (rng.uniform() < p0) {
    return {Branch::kGround, DensityMatrix::basis(0)};
  }
  return {Branch::kExcited, DensityMatrix::unchecked(excited_block(rho.matrix()) / (1.0 - p0))};
}

GroundSplit deterministic_measure_ground(const DensityMatrix& rho) {
  GroundSplit split;
  split.p_ground = std::clamp(rho(0, 0).real(), 0.0, 1.0);
  const double p_excited = 1.0 - split.p_ground;
  if (p_excited > 0.0) {
    split.excited_state = DensityMatrix::unchecked(excited_block(rho.matrix()) / p_excited);
  }
  return split;
}

Matrix3 ground_block(const Matrix3& m) {
  Matrix3 out = Matrix3::Zero();
  out(0, 0) = m(0, 0);
  return out;
}

Matrix3 excited_block(const Matrix3& m) {
  Matrix3 out = m;
  out.row(0).setZero();
  out.col(0).setZero();
  return out;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary3& u) {
  return DensityMatrix::unchecked(u.matrix() * rho.matrix() * u.matrix().adjoint());
}

DephasingRates pure_dephasing_rates(const NoiseModel& model) {
  const double decay1 = rate(model.t1_1_us);
  const double decay2 = rate(model.t1_2to1_us) + rate(model.t1_2to0_us);
  return {std::max(0.0, rate(model.t2s_01_us) - decay1 / 2.0),
          std::max(0.0, rate(model.t2s_12_us) - (decay1 + decay2) / 2.0)};
}

DecoherenceChannel::DecoherenceChannel(const NoiseModel& model, double duration_ns) {
  if (!(duration_ns >= 0.0)) {
    throw std::invalid_argument("decoherence duration must be >= 0 ns");
  }
  const double t = duration_ns * 1e-3;  // us
  const double g10 = rate(model.t1_1_us);
  const double g21 = rate(model.t1_2to1_us);
  const double g2 = g21 + rate(model.t1_2to0_us);
  const DephasingRates dephasing = pure_dephasing_rates(model);

  keep1_ = std::exp(-g10 * t);
  keep2_ = std::exp(-g2 * t);
  // Population reaching 1 from 2 and still there at t:
  //   g21 (e^{-g10 t} - e^{-g2 t}) / (g2 - g10).
  const double delta = g2 - g10;
  const double window = delta == 0.0 ? t : -std::expm1(-delta * t) / delta;
  feed_2to1_ = g21 * keep1_ * window;

  coherence01_ = std::exp(-(g10 / 2.0 + dephasing.gamma01) * t);
  coherence12_ = std::exp(-((g10 + g2) / 2.0 + dephasing.gamma12) * t);
  coherence02_ = std::exp(-(g2 / 2.0 + dephasing.gamma01 + dephasing.gamma12) * t);

  identity_ = keep1_ == 1.0 && keep2_ == 1.0 && feed_2to1_ == 0.0 && coherence01_ == 1.0 &&
              coherence02_ == 1.0 && coherence12_ == 1.0;
}

Matrix3 DecoherenceChannel::apply(const Matrix3& m) const {
  if (identity_) return m;
  Matrix3 out;
  const Complex p1 = m(1, 1);
  const Complex p2 = m(2, 2);
  out(1, 1) = keep1_ * p1 + feed_2to1_ * p2;
  out(2, 2) = keep2_ * p2;
  out(0, 0) = m(0, 0) + (1.0 - keep1_) * p1 + (1.0 - keep2_ - feed_2to1_) * p2;
  out(0, 1) = coherence01_ * m(0, 1);
  out(1, 0) = coherence01_ * m(1, 0);
  out(0, 2) = coherence02_ * m(0, 2);
  out(2, 0) = coherence02_ * m(2, 0);
  out(1, 2) = coherence12_ * m(1, 2);
  out(2, 1) = coherence12_ * m(2, 1);
  return out;
}

DensityMatrix decohere(const DensityMatrix& rho, double duration_ns, const NoiseModel& model) {
  return DecoherenceChannel(model, duration_ns).apply(rho);
}

DensityMatrix thermal_state(double p1, double p2) {
  if (!(p1 >= 0.0 && p2 >= 0.0 && p1 + p2 < 1.0)) {
    throw DomainError("thermal populations need p1, p2 >= 0 and p1 + p2 < 1");
  }
  Matrix3 m = Matrix3::Zero();
  m(0, 0) = 1.0 - p1 - p2;
  m(1, 1) = p1;
  m(2, 2) = p2;
  return DensityMatrix::unchecked(m);
}

bool reported_ground(Branch raw, const NoiseModel& model, Rng& rng) {
  if (raw == Branch::kGround) return !rng.bernoulli(model.contrast_eps_up);
  return rng.bernoulli(model.contrast_eps_down);
}

MeasurementOutcome misassign(Branch raw, const NoiseModel& model, SignConvention sign, Rng& rng) {
  const bool ground = reported_ground(raw, model, rng);
  return {raw, outcome_label(ground, sign)};
}

}  // namespace kcbs
