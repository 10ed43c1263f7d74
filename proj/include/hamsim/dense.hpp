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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <vector>

#include "hamsim/errors.hpp"
#include "hamsim/hamiltonian.hpp"
#include "hamsim/pauli.hpp"

namespace hamsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/** Dense operators above this qubit count are rejected everywhere. */
inline constexpr int kMaxDenseQubits = 10;

inline void check_dense_capacity(int n_qubits, const char* where) {
  if (n_qubits > kMaxDenseQubits)
    throw CapacityError(std::string(where) + ": dense path limited to " +
                        std::to_string(kMaxDenseQubits) + " qubits");
}

/**
 * Dense matrix of a Pauli string. Qubit i is bit i of the basis index
 * (qubit 0 least significant), so a string acts as kron(W_{n-1},...,W_0).
 * Built directly as a signed permutation.
 */
inline Matrix pauli_dense(const PauliString& p) {
  check_dense_capacity(p.n_qubits, "pauli_dense");
  const Eigen::Index dim = Eigen::Index(1) << p.n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  const int y_count = std::popcount(p.x_mask & p.z_mask);
  static constexpr Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  // P = i^{y_count} X^x Z^z columnwise: P|c> = i^{y} (-1)^{|z&c|} |c^x>
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto c = static_cast<std::uint64_t>(col);
    const Eigen::Index row = static_cast<Eigen::Index>(c ^ p.x_mask);
    const int zsign = std::popcount(p.z_mask & c) & 1;
    Complex v = i_pow[y_count % 4];
    if (zsign) v = -v;
    m(row, col) = v;
  }
  return m;
}

inline Matrix dense(const Hamiltonian& h) {
  check_dense_capacity(h.n_qubits(), "dense");
  const Eigen::Index dim = Eigen::Index(1) << h.n_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.coefficient * pauli_dense(t.pauli);
  return m;
}

/** exp(-i theta P) = cos(theta) I - i sin(theta) P for a Pauli string P. */
inline Matrix pauli_rotation(double theta, const PauliString& p) {
  Matrix m = -Complex(0, 1) * std::sin(theta) * pauli_dense(p);
  m.diagonal().array() += std::cos(theta);
  return m;
}

/** Operator norm (largest singular value). */
inline double operator_norm(const Matrix& a) {
  if (a.rows() == 0) return 0.0;
  // Hermitian and anti-Hermitian inputs are the common case; use the exact
  // eigenvalue route there, SVD otherwise.
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double herm = (a - a.adjoint()).cwiseAbs().maxCoeff();
  const double anti = (a + a.adjoint()).cwiseAbs().maxCoeff();
  const double tol = 1e-13 * scale;
  if (herm <= tol || anti <= tol) {
    const Matrix h = (herm <= tol) ? a : Matrix(Complex(0, 1) * a);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-10) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/** exp(-i H t) by self-adjoint eigendecomposition. */
inline Matrix hermitian_evolution(const Matrix& hmat, double t) {
  if (!is_hermitian(hmat, 1e-9 * std::max(1.0, hmat.cwiseAbs().maxCoeff())))
    throw ValidationError("hermitian_evolution: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hmat);
  const auto& evals = es.eigenvalues();
  Vector phases(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    phases(i) = std::exp(Complex(0, -evals(i) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/** Embed a Pauli string on `support` qubits into an n-qubit register. */
inline PauliString embed_pauli(const PauliString& local,
                               const std::vector<int>& support, int n_qubits) {
  if (static_cast<int>(support.size()) != local.n_qubits)
    throw DimensionError("embed_pauli: support size mismatch");
  PauliString out = PauliString::identity(n_qubits);
  for (int i = 0; i < local.n_qubits; ++i) {
    const int q = support[static_cast<std::size_t>(i)];
    if (q < 0 || q >= n_qubits) throw DimensionError("embed_pauli: qubit out of range");
    if ((local.x_mask >> i) & 1) out.x_mask |= 1ULL << q;
    if ((local.z_mask >> i) & 1) out.z_mask |= 1ULL << q;
  }
  return out;
}

}  // namespace hamsim
