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

#include "kcbs/qutrit.h"

#include <cmath>
#include <sstream>

namespace kcbs {

Complex3Vector basis_vector(int level) {
  if (level < 0 || level > 2) {
    throw std::out_of_range("qutrit level must be 0, 1 or 2");
  }
  Complex3Vector v = Complex3Vector::Zero();
  v(level) = 1.0;
  return v;
}

double max_abs_diff(const Matrix3& a, const Matrix3& b) { return (a - b).cwiseAbs().maxCoeff(); }

bool equal_up_to_global_phase(const Matrix3& a, const Matrix3& b, double tol) {
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  b.cwiseAbs().maxCoeff(&row, &col);
  const Complex pivot = b(row, col);
  if (std::abs(pivot) == 0.0) {
    return a.cwiseAbs().maxCoeff() <= tol;
  }
  const Complex ratio = a(row, col) / pivot;
  if (std::abs(ratio) == 0.0) {
    return false;
  }
  const Complex phase = ratio / std::abs(ratio);
  return max_abs_diff(a, phase * b) <= tol;
}

Eigen::Vector3d hermitian_eigenvalues(const Matrix3& m) {
  const Matrix3 h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

std::optional<std::string> density_matrix_violation(const Matrix3& m) {
  if (!m.allFinite()) {
    return "non-finite entries";
  }
  const double hermitian_defect = max_abs_diff(m, m.adjoint());
  if (hermitian_defect > kAlgebraicTolerance) {
    std::ostringstream msg;
    msg << "not Hermitian (defect " << hermitian_defect << ")";
    return msg.str();
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0)) > kAlgebraicTolerance) {
    std::ostringstream msg;
    msg << "trace " << tr.real() << " != 1";
    return msg.str();
  }
  const double smallest = hermitian_eigenvalues(m)(0);
  if (smallest < -kPsdSlack) {
    std::ostringstream msg;
    msg << "negative eigenvalue " << smallest;
    return msg.str();
  }
  return std::nullopt;
}

DensityMatrix DensityMatrix::from_matrix(const Matrix3& m) {
  if (auto why = density_matrix_violation(m)) {
    throw DomainError("invalid density matrix: " + *why);
  }
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(const Complex3Vector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("pure state needs a finite non-zero vector");
  }
  const Complex3Vector unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::basis(int level) { return pure(basis_vector(level)); }

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(Matrix3::Identity() / 3.0); }

double unitarity_defect(const Matrix3& m) {
  return max_abs_diff(m.adjoint() * m, Matrix3::Identity());
}

Unitary3 Unitary3::from_matrix(const Matrix3& m, double tol) {
  const double defect = unitarity_defect(m);
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << "matrix is not unitary (defect " << defect << ")";
    throw DomainError(msg.str());
  }
  return Unitary3(m);
}

}  // namespace kcbs
