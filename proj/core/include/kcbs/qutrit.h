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

#ifndef KCBS_QUTRIT_H_
#define KCBS_QUTRIT_H_

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kcbs {

using Complex = std::complex<double>;
using Complex3Vector = Eigen::Vector3cd;
using Matrix3 = Eigen::Matrix3cd;

/// Tolerance for exact algebraic identities on 3x3 problems.
inline constexpr double kAlgebraicTolerance = 1e-12;
/// Tolerance for results of composed numerical pipelines.
inline constexpr double kPipelineTolerance = 1e-10;
/// Smallest eigenvalue accepted for a positive semidefinite state.
inline constexpr double kPsdSlack = 1e-10;

/// Raised when a numerical precondition is violated (non-unitary input,
/// invalid probabilities, resonant dispersive denominators, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for unreadable or malformed input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Computational basis state |level> for level in {0, 1, 2}.
Complex3Vector basis_vector(int level);

/// Largest elementwise modulus of a - b.
double max_abs_diff(const Matrix3& a, const Matrix3& b);

/// True when a = e^{i phi} b for some phi, elementwise within tol.
bool equal_up_to_global_phase(const Matrix3& a, const Matrix3& b, double tol);

/// Eigenvalues of the Hermitian part of m, ascending.
Eigen::Vector3d hermitian_eigenvalues(const Matrix3& m);

/// Describes why m is not a density matrix, or nullopt when it is one.
std::optional<std::string> density_matrix_violation(const Matrix3& m);

/// A 3x3 Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  /// Validates m against the density-matrix invariants; throws DomainError.
  static DensityMatrix from_matrix(const Matrix3& m);
  /// Wraps m without validation. For channel outputs that preserve the
  /// invariants by construction.
  static DensityMatrix unchecked(const Matrix3& m) { return DensityMatrix(m); }

  /// |psi><psi| / <psi|psi>. Throws DomainError for zero or non-finite psi.
  static DensityMatrix pure(const Complex3Vector& psi);
  static DensityMatrix basis(int level);
  static DensityMatrix maximally_mixed();

  const Matrix3& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }
  double population(int level) const { return m_(level, level).real(); }
  double trace() const { return m_.trace().real(); }
  /// Tr(op * rho), real part.
  double expectation(const Matrix3& op) const { return (op * m_).trace().real(); }

 private:
  explicit DensityMatrix(const Matrix3& m) : m_(m) {}
  Matrix3 m_;
};

/// A 3x3 unitary operator.
class Unitary3 {
 public:
  /// Validates U^dagger U = I within tol; throws DomainError.
  static Unitary3 from_matrix(const Matrix3& m, double tol = kAlgebraicTolerance);
  static Unitary3 unchecked(const Matrix3& m) { return Unitary3(m); }
  static Unitary3 identity() { return Unitary3(Matrix3::Identity()); }

  const Matrix3& matrix() const { return m_; }
  Unitary3 adjoint() const { return Unitary3(m_.adjoint()); }
  Unitary3 operator*(const Unitary3& rhs) const { return Unitary3(m_ * rhs.m_); }
  Complex3Vector operator*(const Complex3Vector& v) const { return m_ * v; }

 private:
  explicit Unitary3(const Matrix3& m) : m_(m) {}
  Matrix3 m_;
};

/// Deviation of m^dagger m from the identity, elementwise maximum.
double unitarity_defect(const Matrix3& m);

}  // namespace kcbs

#endif  // KCBS_QUTRIT_H_
