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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lindblad_rk4.h"
#include "test_util.h"

namespace kcbs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

oracle::LindbladRates rates_of(const NoiseModel& m) {
  oracle::LindbladRates r;
  r.g10 = 1 / m.t1_1_us;
  r.g21 = 1 / m.t1_2to1_us;
  r.g20 = 1 / m.t1_2to0_us;
  const double gamma2 = r.g21 + r.g20;
  // A diagonal jump operator sqrt(g) D damps rho_jk at g (d_j - d_k)^2 / 2.
  r.dephase_a = 2 * std::max(0.0, 1 / m.t2s_01_us - r.g10 / 2);
  r.dephase_b = 2 * std::max(0.0, 1 / m.t2s_12_us - (r.g10 + gamma2) / 2);
  return r;
}

TEST(NoiseModel, Defaults) {
  const NoiseModel m;
  EXPECT_EQ(m.t1_1_us, 17.4);
  EXPECT_EQ(m.t1_2to1_us, 18.1);
  EXPECT_EQ(m.t1_2to0_us, 9.5);
  EXPECT_EQ(m.t2s_01_us, 6.6);
  EXPECT_EQ(m.t2s_12_us, 4.6);
  EXPECT_EQ(m.readout_ns, 350);
  EXPECT_EQ(m.ringdown_ns, 475);
  EXPECT_EQ(m.init_delay_ns, 565);
  EXPECT_EQ(1 - m.contrast_eps_up - m.contrast_eps_down, 0.96);
  EXPECT_NO_THROW(m.validate());
}

TEST(NoiseModel, ValidationRejectsBadValues) {
  NoiseModel m;
  m.t1_1_us = 0;
  EXPECT_THROW(m.validate(), DomainError);
  m = NoiseModel{};
  m.contrast_eps_up = 1.5;
  EXPECT_THROW(m.validate(), DomainError);
  m = NoiseModel{};
  m.thermal_p1 = 0.6;
  m.thermal_p2 = 0.5;
  EXPECT_THROW(m.validate(), DomainError);
  m = NoiseModel{};
  m.readout_ns = -1;
  EXPECT_THROW(m.validate(), DomainError);
  EXPECT_NO_THROW(NoiseModel::ideal().validate());
}

TEST(NoiseModel, ThermalFitReproducesRejectionRate) {
  const NoiseModel m = NoiseModel::calibrated();
  EXPECT_NEAR(m.init_rejection_probability(), 0.10, 1e-12);
  // (0.10 - 0.02) / 0.96 excited population, split with p2/p1 = p1/p0.
  EXPECT_NEAR(m.thermal_p1 + m.thermal_p2, 0.08 / 0.96, 1e-12);
  const double p0 = 1 - m.thermal_p1 - m.thermal_p2;
  EXPECT_NEAR(m.thermal_p2 / m.thermal_p1, m.thermal_p1 / p0, 1e-12);
  EXPECT_THROW(NoiseModel{}.with_thermal_fit(0.01), DomainError);
  EXPECT_NEAR(NoiseModel{}.with_thermal_fit(0.02).thermal_p1, 0, 1e-15);
}

TEST(PureDephasing, RemovesRelaxationContribution) {
  const NoiseModel m;
  const DephasingRates r = pure_dephasing_rates(m);
  const double g1 = 1 / 17.4;
  const double g2 = 1 / 18.1 + 1 / 9.5;
  EXPECT_NEAR(r.gamma01, 1 / 6.6 - g1 / 2, 1e-15);
  EXPECT_NEAR(r.gamma12, 1 / 4.6 - (g1 + g2) / 2, 1e-15);

  NoiseModel slow = m;
  slow.t2s_01_us = 100;  // T2* beyond 2 T1: no pure dephasing left
  EXPECT_EQ(pure_dephasing_rates(slow).gamma01, 0);
}

TEST(Decoherence, MatchesMasterEquationIntegration) {
  std::mt19937_64 gen(17);
  const NoiseModel m;
  for (double dt_ns : {350.0, 825.0, 915.0, 5000.0}) {
    const DensityMatrix rho = testing::random_density_matrix(gen);
    const Matrix3 expected = oracle::evolve(rho.matrix(), rates_of(m), dt_ns / 1000);
    const Matrix3 actual = decohere(rho, dt_ns, m).matrix();
    EXPECT_LT(max_abs_diff(actual, expected), 1e-10) << dt_ns << " ns";
  }
}

TEST(Decoherence, IdealModelIsIdentity) {
  std::mt19937_64 gen(19);
  const DensityMatrix rho = testing::random_density_matrix(gen);
  const DecoherenceChannel channel(NoiseModel::ideal(), 1e6);
  EXPECT_TRUE(channel.is_identity());
  EXPECT_EQ(max_abs_diff(channel.apply(rho).matrix(), rho.matrix()), 0);
}

TEST(Decoherence, InfiniteTimesSwitchProcessesOff) {
  NoiseModel m = NoiseModel::ideal();
  m.t1_1_us = 10;
  const DensityMatrix rho = decohere(DensityMatrix::basis(2), 5000, m);
  EXPECT_DOUBLE_EQ(rho.population(2), 1.0);
  const DensityMatrix one = decohere(DensityMatrix::basis(1), 10000, m);
  EXPECT_NEAR(one.population(1), std::exp(-1.0), 1e-15);
}

TEST(Decoherence, IsCompletelyPositiveAndTracePreserving) {
  const NoiseModel m;
  const DecoherenceChannel channel(m, 825);
  // Choi matrix sum_jk |j><k| (x) Phi(|j><k|) must be PSD with partial trace I.
  Eigen::Matrix<Complex, 9, 9> choi = Eigen::Matrix<Complex, 9, 9>::Zero();
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      Matrix3 e = Matrix3::Zero();
      e(j, k) = 1;
      const Matrix3 image = channel.apply(e);
      EXPECT_NEAR(std::abs(image.trace() - e.trace()), 0, 1e-15);
      choi.block<3, 3>(3 * j, 3 * k) = image;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, 9, 9>> solver(choi);
  EXPECT_GE(solver.eigenvalues().minCoeff(), -1e-12);

  std::mt19937_64 gen(23);
  for (int s = 0; s < 1000; ++s) {
    const DensityMatrix rho = s % 2 ? testing::random_density_matrix(gen)
                                    : DensityMatrix::pure(testing::random_unit_vector(gen));
    const Matrix3 out = decohere(rho, 1 + s * 10.0, m).matrix();
    EXPECT_FALSE(density_matrix_violation(out).has_value()) << "state " << s;
  }
}

TEST(Decoherence, SemigroupProperty) {
  std::mt19937_64 gen(29);
  const NoiseModel m;
  const DensityMatrix rho = testing::random_density_matrix(gen);
  const DensityMatrix split = decohere(decohere(rho, 350, m), 475, m);
  EXPECT_LT(max_abs_diff(split.matrix(), decohere(rho, 825, m).matrix()), 1e-14);
}

TEST(Decoherence, RejectsNegativeDuration) {
  EXPECT_THROW(decohere(DensityMatrix::basis(0), -1, NoiseModel{}), std::invalid_argument);
}

TEST(GroundMeasurement, DeterministicSplit) {
  Matrix3 m = Matrix3::Zero();
  m(0, 0) = 0.3;
  m(1, 1) = 0.5;
  m(2, 2) = 0.2;
  m(0, 1) = m(1, 0) = 0.1;
  m(1, 2) = Complex(0.05, 0.02);
  m(2, 1) = std::conj(m(1, 2));
  const GroundSplit split = deterministic_measure_ground(DensityMatrix::from_matrix(m));
  EXPECT_NEAR(split.p_ground, 0.3, 1e-15);
  ASSERT_TRUE(split.excited_state.has_value());
  EXPECT_NEAR(split.excited_state->population(1), 0.5 / 0.7, 1e-15);
  EXPECT_NEAR(std::abs((*split.excited_state)(1, 2) - m(1, 2) / 0.7), 0, 1e-15);
  EXPECT_EQ((*split.excited_state)(0, 1), Complex(0));
  EXPECT_FALSE(deterministic_measure_ground(DensityMatrix::basis(0)).excited_state.has_value());
}

TEST(GroundMeasurement, SampledFrequencies) {
  Rng rng = Rng::for_trial(99, 0, 0);
  const DensityMatrix rho = DensityMatrix::pure(Complex3Vector(std::sqrt(0.3), std::sqrt(0.7), 0));
  const int n = 100000;
  int ground = 0;
  for (int s = 0; s < n; ++s) {
    const LudersResult r = luders_measure_ground(rho, rng);
    if (r.branch == Branch::kGround) {
      ++ground;
      EXPECT_DOUBLE_EQ(r.state.population(0), 1.0);
    } else {
      EXPECT_NEAR(r.state.population(1), 1.0, 1e-15);
    }
  }
  EXPECT_NEAR(ground / double(n), 0.3, 3 * std::sqrt(0.21 / n));
}

TEST(Misassignment, FlipRates) {
  NoiseModel m;
  m.contrast_eps_up = 0.05;
  m.contrast_eps_down = 0.10;
  Rng rng = Rng::for_trial(5, 0, 0);
  const int n = 100000;
  int ground_as_excited = 0;
  int excited_as_ground = 0;
  for (int s = 0; s < n; ++s) {
    ground_as_excited += !reported_ground(Branch::kGround, m, rng);
    excited_as_ground += reported_ground(Branch::kExcited, m, rng);
  }
  EXPECT_NEAR(ground_as_excited / double(n), 0.05, 3 * std::sqrt(0.05 * 0.95 / n));
  EXPECT_NEAR(excited_as_ground / double(n), 0.10, 3 * std::sqrt(0.10 * 0.90 / n));

  const NoiseModel ideal = NoiseModel::ideal();
  for (int s = 0; s < 100; ++s) {
    const MeasurementOutcome g =
        misassign(Branch::kGround, ideal, SignConvention::kComplementPositive, rng);
    EXPECT_EQ(g.recorded, -1);  // ground of the rotated readout is the projector branch
    const MeasurementOutcome e =
        misassign(Branch::kExcited, ideal, SignConvention::kProjectorPositive, rng);
    EXPECT_EQ(e.recorded, -1);
  }
}

TEST(ThermalState, Diagonal) {
  const DensityMatrix rho = thermal_state(0.05, 0.01);
  EXPECT_DOUBLE_EQ(rho.population(0), 0.94);
  EXPECT_THROW(thermal_state(0.7, 0.4), DomainError);
}

TEST(ApplyUnitary, ConjugatesState) {
  std::mt19937_64 gen(31);
  const Matrix3 u = testing::random_unitary(gen);
  const DensityMatrix rho = testing::random_density_matrix(gen);
  const DensityMatrix out = apply_unitary(rho, Unitary3::from_matrix(u));
  EXPECT_LT(max_abs_diff(out.matrix(), u * rho.matrix() * u.adjoint()), 1e-14);
}

}  // namespace
}  // namespace kcbs
