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
#include <optional>
#include <vector>

#include "hamsim/channels.hpp"
#include "hamsim/commutators.hpp"
#include "hamsim/dense.hpp"
#include "hamsim/states.hpp"

namespace hamsim {

/** One elementary rotation of a product formula: exp(-i H_term * fraction * delta). */
struct Stage {
  std::size_t term;
  double fraction;
};

/** Stage count per microstep: 1 for k=1, else 2 * 5^(k/2 - 1). */
inline int upsilon(int k) {
  if (k == 1) return 1;
  if (k < 2 || k % 2 != 0)
    throw ValidationError("upsilon: order must be 1 or even");
  int u = 2;
  for (int p = 2; p <= k / 2; ++p) u *= 5;
  return u;
}

/** Suzuki recursion coefficient u_p = 1 / (4 - 4^{1/(2p-1)}). */
inline double suzuki_u(int p) {
  return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * p - 1.0)));
}

/**
 * Order-k Suzuki-Trotter microstep as a flat stage list of length
 * Upsilon_k * L. Layer j of a microstep is the slice [jL, (j+1)L); the k=2
 * sequence is palindromic, and orders k >= 4 follow the recursion
 * S_k = S_{k-2}(u_p d)^2 S_{k-2}((1-4u_p) d) S_{k-2}(u_p d)^2.
 */
struct ProductFormula {
  int order = 1;
  int stage_count = 1;  // Upsilon_k
  std::size_t n_terms = 0;
  std::vector<Stage> stages;

  /** Circuit layers for N microsteps. */
  long layers(long n_steps) const { return static_cast<long>(stage_count) * n_steps; }
  /** Elementary gate count d * L for N microsteps. */
  long gate_count(long n_steps) const {
    return layers(n_steps) * static_cast<long>(n_terms);
  }
};

inline ProductFormula build_formula(const Hamiltonian& h, int k) {
  if (k != 1 && (k < 2 || k % 2 != 0))
    throw ValidationError("build_formula: order must be 1 or even");
  const std::size_t L = h.size();
  ProductFormula f;
  f.order = k;
  f.stage_count = upsilon(k);
  f.n_terms = L;
  if (k == 1) {
    for (std::size_t l = 0; l < L; ++l) f.stages.push_back({l, 1.0});
    return f;
  }
  std::vector<Stage> seq;
  for (std::size_t l = 0; l < L; ++l) seq.push_back({l, 0.5});
  for (std::size_t l = L; l-- > 0;) seq.push_back({l, 0.5});
  for (int ord = 4; ord <= k; ord += 2) {
    const double up = suzuki_u(ord / 2);
    std::vector<Stage> next;
    next.reserve(seq.size() * 5);
    for (double factor : {up, up, 1.0 - 4.0 * up, up, up})
      for (const auto& s : seq) next.push_back({s.term, s.fraction * factor});
    seq = std::move(next);
  }
  f.stages = std::move(seq);
  return f;
}

/** Dense unitary of one microstep S_k(delta), product taken in stage order. */
inline Matrix microstep_unitary(const ProductFormula& f, const Hamiltonian& h,
                                double delta) {
  check_dense_capacity(h.n_qubits(), "microstep_unitary");
  const Eigen::Index dim = Eigen::Index(1) << h.n_qubits();
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& s : f.stages) {
    const auto& t = h.term(s.term);
    u = pauli_rotation(t.coefficient * s.fraction * delta, t.pauli) * u;
  }
  return u;
}

/** Qubits a Pauli string acts on, ascending. */
inline std::vector<int> pauli_support(const PauliString& p) {
  std::vector<int> qs;
  const std::uint64_t m = p.x_mask | p.z_mask;
  for (int i = 0; i < p.n_qubits; ++i)
    if ((m >> i) & 1) qs.push_back(i);
  if (qs.empty()) qs.push_back(0);  // identity rotation: park noise on qubit 0
  return qs;
}

/**
 * Run the order-k Trotter channel for time t with N microsteps. Without
 * noise this is the ideal product formula; with noise, the configured
 * stochastic Pauli channel is applied after every one of the d*L elementary
 * rotations via exact channel composition (no sampling).
 */
inline DensityMatrix run_trotter(const Hamiltonian& h, double t, long n_steps,
                                 int k, const std::optional<NoiseModel>& noise,
                                 const DensityMatrix& rho0) {
  if (n_steps < 1) throw ValidationError("run_trotter: N must be >= 1");
  check_dense_capacity(h.n_qubits(), "run_trotter");
  if (rho0.n_qubits() != h.n_qubits())
    throw DimensionError("run_trotter: state width mismatch");
  const ProductFormula f = build_formula(h, k);
  const double delta = t / static_cast<double>(n_steps);
  const int n = h.n_qubits();

  // Precompute per-stage rotation matrices and noise channels once.
  std::vector<Matrix> rotations;
  std::vector<StochasticPauliChannel> channels;
  rotations.reserve(f.stages.size());
  for (const auto& s : f.stages) {
    const auto& term = h.term(s.term);
    rotations.push_back(
        pauli_rotation(term.coefficient * s.fraction * delta, term.pauli));
    if (noise)
      channels.push_back(noise->rotation_channel(pauli_support(term.pauli)));
  }

  Matrix rho = rho0.matrix();
  for (long step = 0; step < n_steps; ++step) {
    for (std::size_t g = 0; g < rotations.size(); ++g) {
      rho = rotations[g] * rho * rotations[g].adjoint();
      if (noise) rho = channels[g].apply_raw(rho, n);
    }
  }
  return DensityMatrix(std::move(rho));
}

/**
 * |Tr[O U_t(rho)] - Tr[O V(rho)]| from exact dense simulation of the
 * (possibly noisy) depth-N order-k Trotter channel.
 */
inline double trotter_bias(const Hamiltonian& h, double t, long n_steps, int k,
                           const Matrix& obs, const DensityMatrix& rho0,
                           const std::optional<NoiseModel>& noise = std::nullopt) {
  const Matrix u = exact_evolution(h, t);
  const DensityMatrix ideal(u * rho0.matrix() * u.adjoint());
  const DensityMatrix evolved = run_trotter(h, t, n_steps, k, noise, rho0);
  return std::abs(expectation(obs, ideal) - expectation(obs, evolved));
}

/**
 * Algorithmic error prefactor alpha_k. The first order uses the proven
 * commutator form alpha_1 = c1 t^2; even orders expose
 * alpha_k = C_cal * Upsilon_k^k * alpha_comm * t^{k+1} with C_cal
 * defaulting to 1 (conservative).
 */
inline double trotter_alpha(const Hamiltonian& h, int k, double t,
                            double calibration = 1.0) {
  if (k == 1) {
    const NormMode mode =
        h.n_qubits() <= kMaxDenseQubits ? NormMode::exact : NormMode::triangle;
    return c1_prefactor(h, mode) * t * t;
  }
  const double ups = static_cast<double>(upsilon(k));
  return calibration * std::pow(ups, k) * alpha_comm(h, k) *
         std::pow(std::abs(t), k + 1);
}

/**
 * Fit C_cal from measured noiseless biases on a d-grid so that
 * bias <= C_cal * Upsilon^k * alpha_comm * t^{k+1} / d^k holds with equality
 * at the worst grid point.
 */
inline double calibrate_trotter_alpha(const Hamiltonian& h, int k, double t,
                                      const std::vector<long>& step_grid,
                                      const Matrix& obs,
                                      const DensityMatrix& rho0) {
  const double base = trotter_alpha(h, k, t, 1.0);
  const ProductFormula f = build_formula(h, k);
  double worst = 0.0;
  for (long n_steps : step_grid) {
    const double bias = trotter_bias(h, t, n_steps, k, obs, rho0);
    const double d = static_cast<double>(f.layers(n_steps));
    worst = std::max(worst, bias * std::pow(d, k) / base);
  }
  return worst;
}

}  // namespace hamsim
