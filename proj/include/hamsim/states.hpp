// Copyright 2026 The hamsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

#include "hamsim/dense.hpp"
#include "hamsim/errors.hpp"

namespace hamsim {

inline constexpr double kHermTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigClipTol = 1e-9;

/**
 * Density matrix with validated invariants: Hermitian to 1e-10, unit trace to
 * 1e-10, minimum eigenvalue >= -1e-9. Round-off negatives within the clip
 * tolerance are zeroed and the state renormalized; anything worse is a hard
 * error.
 */
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
      throw DimensionError("DensityMatrix: not square");
    if ((rho_.rows() & (rho_.rows() - 1)) != 0)
      throw DimensionError("DensityMatrix: dimension is not a power of two");
    if (!is_hermitian(rho_, kHermTol))
      throw ValidationError("DensityMatrix: not Hermitian");
    rho_ = 0.5 * (rho_ + rho_.adjoint().eval());
    const double tr = rho_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol)
      throw ValidationError("DensityMatrix: trace deviates from 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kEigClipTol)
      throw ValidationError("DensityMatrix: negative eigenvalue beyond tolerance");
    if (min_eig < 0.0) {
      Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
      clipped /= clipped.sum();
      rho_ = es.eigenvectors() * clipped.asDiagonal() *
             es.eigenvectors().adjoint();
    } else {
      rho_ /= tr;
    }
  }

  const Matrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  int n_qubits() const { return std::countr_zero(static_cast<std::uint64_t>(dim())); }

  static DensityMatrix pure(const Vector& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) throw ValidationError("DensityMatrix::pure: zero vector");
    Vector v = psi / norm;
    return DensityMatrix(v * v.adjoint());
  }

  static DensityMatrix basis_state(int n_qubits, std::uint64_t index) {
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    if (static_cast<Eigen::Index>(index) >= dim)
      throw DimensionError("basis_state: index out of range");
    Vector psi = Vector::Zero(dim);
    psi(static_cast<Eigen::Index>(index)) = 1.0;
    return pure(psi);
  }

  static DensityMatrix zero_state(int n_qubits) { return basis_state(n_qubits, 0); }

  static DensityMatrix plus_state(int n_qubits) {
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    Vector psi = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    return pure(psi);
  }

  static DensityMatrix maximally_mixed(int n_qubits) {
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    return DensityMatrix(Matrix::Identity(dim, dim) /
                         static_cast<double>(dim));
  }

 private:
  Matrix rho_;
};

/** Trace distance 0.5 * ||rho - sigma||_1. */
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionError("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix() - sigma.matrix(),
                                           Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/**
 * Tr[O rho] for a Hermitian observable with ||O||_inf <= 1. Rescaling a
 * larger observable is the caller's job.
 */
inline double expectation(const Matrix& obs, const DensityMatrix& rho) {
  if (obs.rows() != rho.dim() || obs.cols() != rho.dim())
    throw DimensionError("expectation: dimension mismatch");
  if (!is_hermitian(obs, kHermTol))
    throw ValidationError("expectation: observable is not Hermitian");
  if (operator_norm(obs) > 1.0 + 1e-10)
    throw ValidationError("expectation: observable norm exceeds 1");
  return (obs * rho.matrix()).trace().real();
}

}  // namespace hamsim
