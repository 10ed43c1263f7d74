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

#include <string>
#include <vector>

#include "hamsim/mitigation.hpp"
#include "hamsim/trotter.hpp"

namespace hamsim {

/** H = X (x) I + Z (x) Z with unit couplings; the 2-qubit reference system. */
inline Hamiltonian pauli2() { return parse_hamiltonian("1.0 XI\n1.0 ZZ\n"); }

/** 3-qubit open Heisenberg chain, six two-local terms with unit couplings. */
inline Hamiltonian heis3() {
  return parse_hamiltonian(
      "1.0 XXI\n1.0 YYI\n1.0 ZZI\n"
      "1.0 IXX\n1.0 IYY\n1.0 IZZ\n");
}

/** 1-qubit H = X + Z, the smallest noncommuting reference. */
inline Hamiltonian xz1() { return parse_hamiltonian("1.0 X\n1.0 Z\n"); }

inline Hamiltonian builtin_hamiltonian(const std::string& name) {
  if (name == "pauli2") return pauli2();
  if (name == "heis3") return heis3();
  if (name == "xz1") return xz1();
  throw ConfigError("unknown builtin hamiltonian '" + name + "'");
}

/** Pauli rotation gate wrapped as a NoisyGate. */
inline NoisyGate make_rotation_gate(int n_qubits, const std::string& label,
                                    double angle, const NoiseModel& noise) {
  const PauliString p = PauliString::from_label(label);
  if (p.n_qubits != n_qubits)
    throw DimensionError("make_rotation_gate: label width mismatch");
  const auto support = pauli_support(p);
  return NoisyGate{pauli_rotation(angle, p), support,
                   noise.rotation_channel(support), false};
}

/**
 * Reference 4-gate single-qubit circuit: rotations about X, Z, X, Z with
 * fixed angles, depolarizing noise after every gate.
 */
inline NoisyCircuit circ4_1q(double noise_rate = 0.05) {
  NoiseModel nm(noise_rate, noise_rate, NoiseFamily::depolarizing, 1);
  NoisyCircuit c{1, {}};
  c.gates.push_back(make_rotation_gate(1, "X", 0.3, nm));
  c.gates.push_back(make_rotation_gate(1, "Z", 0.7, nm));
  c.gates.push_back(make_rotation_gate(1, "X", 0.5, nm));
  c.gates.push_back(make_rotation_gate(1, "Z", 0.2, nm));
  return c;
}

/**
 * Reference 4-gate two-qubit circuit mixing one- and two-local rotations;
 * depolarizing noise on each gate's full support (1q or 2q).
 */
inline NoisyCircuit circ4_2q(double noise_rate = 0.05) {
  NoiseModel nm(noise_rate, noise_rate, NoiseFamily::depolarizing, 2);
  NoisyCircuit c{2, {}};
  c.gates.push_back(make_rotation_gate(2, "XI", 0.3, nm));
  c.gates.push_back(make_rotation_gate(2, "ZZ", 0.4, nm));
  c.gates.push_back(make_rotation_gate(2, "IY", 0.5, nm));
  c.gates.push_back(make_rotation_gate(2, "ZX", 0.7, nm));
  return c;
}

/**
 * 10-gate single-qubit reference: five first-order Trotter steps of
 * H = X + Z at t = 0.5 (delta = 0.1), used by the model-mismatch checks.
 */
inline NoisyCircuit rot10_1q(double noise_rate = 0.05) {
  NoiseModel nm(noise_rate, noise_rate, NoiseFamily::depolarizing, 1);
  NoisyCircuit c{1, {}};
  for (int step = 0; step < 5; ++step) {
    c.gates.push_back(make_rotation_gate(1, "X", 0.1, nm));
    c.gates.push_back(make_rotation_gate(1, "Z", 0.1, nm));
  }
  return c;
}

inline NoisyCircuit builtin_circuit(const std::string& name) {
  if (name == "circ4_1q") return circ4_1q();
  if (name == "circ4_2q") return circ4_2q();
  if (name == "rot10_1q") return rot10_1q();
  throw ConfigError("unknown builtin circuit '" + name + "'");
}

/** The order-k Trotter circuit for (h, t, N) as an explicit noisy gate list. */
inline NoisyCircuit trotter_circuit(const Hamiltonian& h, double t, long n_steps,
                                    int k, const NoiseModel& noise) {
  const ProductFormula f = build_formula(h, k);
  const double delta = t / static_cast<double>(n_steps);
  NoisyCircuit c{h.n_qubits(), {}};
  for (long step = 0; step < n_steps; ++step)
    for (const auto& s : f.stages) {
      const auto& term = h.term(s.term);
      const auto support = pauli_support(term.pauli);
      c.gates.push_back(
          NoisyGate{pauli_rotation(term.coefficient * s.fraction * delta, term.pauli),
                    support, noise.rotation_channel(support), false});
    }
  return c;
}

/** True-inverse PEC models, one per gate. */
inline std::vector<QuasiProbDecomposition> true_models(const NoisyCircuit& c) {
  std::vector<QuasiProbDecomposition> out;
  out.reserve(c.gates.size());
  for (const auto& g : c.gates) out.push_back(invert_pauli_channel(g.noise));
  return out;
}

/**
 * Residual characterization error: Choi-state trace distance between
 * (estimated inverse o true noise) and the identity on the channel support.
 */
inline double residual_distance(const StochasticPauliChannel& true_noise,
                                const StochasticPauliChannel& estimated) {
  const int w = true_noise.support_size();
  std::vector<int> local(static_cast<std::size_t>(w));
  for (int i = 0; i < w; ++i) local[static_cast<std::size_t>(i)] = i;
  const Channel nt = Channel::from_pauli_channel(true_noise.relocated(local), w);
  const Channel inv = invert_pauli_channel(estimated.relocated(local)).to_channel(w);
  return choi_trace_distance(inv.after(nt), Channel::identity(Eigen::Index(1) << w));
}

/**
 * Mis-characterized depolarizing rate: smallest p_est > p_true whose inverse
 * leaves a residual of exactly `target` (Choi distance), found by bisection.
 */
inline double calibrated_mismatch_rate(double p_true, double target,
                                       int width = 1) {
  std::vector<int> support(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) support[static_cast<std::size_t>(i)] = i;
  const auto true_chan = StochasticPauliChannel::depolarizing(support, p_true);
  auto resid = [&](double p_est) {
    return residual_distance(
        true_chan, StochasticPauliChannel::depolarizing(support, p_est));
  };
  double lo = p_true, hi = p_true + 0.01;
  while (resid(hi) < target) hi += 0.01;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (resid(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/** Swap every gate's PEC model for the inverse of a perturbed-rate channel. */
inline std::vector<QuasiProbDecomposition> mismatched_models(
    const NoisyCircuit& c, double p_est) {
  std::vector<QuasiProbDecomposition> out;
  out.reserve(c.gates.size());
  for (const auto& g : c.gates)
    out.push_back(invert_pauli_channel(
        StochasticPauliChannel::depolarizing(g.noise.support(), p_est)));
  return out;
}

}  // namespace hamsim
