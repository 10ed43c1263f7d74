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
#include <cstddef>
#include <vector>

#include "hamsim/dense.hpp"
#include "hamsim/errors.hpp"
#include "hamsim/hamiltonian.hpp"

namespace hamsim {

/**
 * Exact operator norm of the nested commutator
 * [H_{l_k}, ..., [H_{l_2}, H_{l_1}]...] via the symplectic shortcut: each
 * nonvanishing Pauli commutator contributes a factor 2 and a single Pauli
 * product, so the norm is 2^(depth) * prod |lambda|, or 0 if any inner
 * commutator vanishes.
 */
inline double nested_commutator_norm(const std::vector<std::size_t>& indices,
                                     const Hamiltonian& h) {
  if (indices.empty())
    throw ValidationError("nested_commutator_norm: empty index chain");
  for (auto i : indices)
    if (i >= h.size())
      throw ValidationError("nested_commutator_norm: index out of range");
  PauliString current = h.term(indices[0]).pauli;
  double magnitude = std::abs(h.term(indices[0]).coefficient);
  for (std::size_t j = 1; j < indices.size(); ++j) {
    const auto& t = h.term(indices[j]);
    if (commutes(t.pauli, current)) return 0.0;
    current = pauli_mul(t.pauli, current).pauli;
    magnitude *= 2.0 * std::abs(t.coefficient);
  }
  return magnitude;
}

inline constexpr double kAlphaCommTupleGuard = 1e8;

/**
 * alpha_comm = sum over all (k+1)-tuples of nested commutator norms,
 * enumerated exactly with commuting-pair pruning (a vanished inner
 * commutator kills the whole subtree).
 */
inline double alpha_comm(const Hamiltonian& h, int k) {
  if (k != 1 && (k < 2 || k % 2 != 0))
    throw ValidationError("alpha_comm: order must be 1 or even");
  const double tuples = std::pow(static_cast<double>(h.size()), k + 1);
  if (tuples > kAlphaCommTupleGuard)
    throw CapacityError("alpha_comm: L^(k+1) exceeds enumeration guard");
  const std::size_t L = h.size();
  double total = 0.0;
  // depth-first over (l_1, ..., l_{k+1}); state = (pauli, |coeff| product)
  struct Frame {
    PauliString p;
    double mag;
  };
  std::vector<Frame> stack;
  stack.reserve(static_cast<std::size_t>(k) + 1);
  auto recurse = [&](auto&& self, const PauliString& p, double mag,
                     int depth) -> void {
    if (depth == k) {
      total += mag;
      return;
    }
    for (std::size_t l = 0; l < L; ++l) {
      const auto& t = h.term(l);
      if (commutes(t.pauli, p)) continue;
      self(self, pauli_mul(t.pauli, p).pauli,
           mag * 2.0 * std::abs(t.coefficient), depth + 1);
    }
  };
  for (std::size_t l1 = 0; l1 < L; ++l1)
    recurse(recurse, h.term(l1).pauli, std::abs(h.term(l1).coefficient), 0);
  return total;
}

enum class NormMode { exact, triangle };

/**
 * First-order Trotter prefactor
 * c1 = 0.5 * sum_l ||[sum_{m>l} H_m, H_l]||.
 * Exact mode densifies each inner commutator (<= 10 qubits); triangle mode
 * returns the sum-of-norms upper bound 0.5 * sum_l sum_{m>l} 2|l_m l_l|
 * over anticommuting pairs.
 */
inline double c1_prefactor(const Hamiltonian& h, NormMode mode = NormMode::exact) {
  const std::size_t L = h.size();
  if (mode == NormMode::triangle) {
    double total = 0.0;
    for (std::size_t l = 0; l < L; ++l)
      for (std::size_t m = l + 1; m < L; ++m) {
        if (commutes(h.term(m).pauli, h.term(l).pauli)) continue;
        total += 2.0 * std::abs(h.term(m).coefficient * h.term(l).coefficient);
      }
    return 0.5 * total;
  }
  check_dense_capacity(h.n_qubits(), "c1_prefactor(exact)");
  const Eigen::Index dim = Eigen::Index(1) << h.n_qubits();
  double total = 0.0;
  for (std::size_t l = 0; l + 1 < L; ++l) {
    Matrix tail = Matrix::Zero(dim, dim);
    for (std::size_t m = l + 1; m < L; ++m)
      tail += h.term(m).coefficient * pauli_dense(h.term(m).pauli);
    const Matrix hl = h.term(l).coefficient * pauli_dense(h.term(l).pauli);
    total += operator_norm(tail * hl - hl * tail);
  }
  return 0.5 * total;
}

}  // namespace hamsim
