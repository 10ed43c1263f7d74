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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "hamsim/channels.hpp"
#include "hamsim/mitigation.hpp"
#include "hamsim/parallel.hpp"
#include "hamsim/rng.hpp"
#include "hamsim/states.hpp"
#include "hamsim/trotter.hpp"

namespace hamsim {

struct RlcuConfig {
  int repetitions = 1;     // r
  double lambda = 0.0;     // beta * t / r
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;

  RlcuConfig(const Hamiltonian& h, double t, int r, std::uint64_t shots_,
             std::uint64_t seed_)
      : repetitions(r), shots(shots_), seed(seed_) {
    if (r < 1) throw ValidationError("RlcuConfig: r must be >= 1");
    if (shots_ < 1) throw ValidationError("RlcuConfig: shots must be >= 1");
    lambda = h.scaled_time(t) / static_cast<double>(r);
    if (lambda < 0.0) throw ValidationError("RlcuConfig: negative lambda");
  }
};

/** Rotation angle theta_k = arctan(lambda / (k+1)). */
inline double rlcu_theta(double lambda, int k) {
  return std::atan(lambda / (k + 1.0));
}

/** Thinning weight a_k = sqrt(1 + (lambda/(k+1))^2), strictly decreasing in k. */
inline double rlcu_weight(double lambda, int k) {
  const double x = lambda / (k + 1.0);
  return std::sqrt(1.0 + x * x);
}

/**
 * 1-norm of the LCU coefficients:
 * sum over even k of (lambda^k / k!) * a_k, summed until the next term drops
 * below tol * partial_sum. Monotone increasing in lambda.
 */
inline double lcu_one_norm(double lambda, double tol = 1e-15) {
  if (lambda < 0.0) throw ValidationError("lcu_one_norm: lambda must be >= 0");
  double sum = 0.0;
  double base = 1.0;  // lambda^k / k!
  for (int k = 0;; k += 2) {
    const double term = base * rlcu_weight(lambda, k);
    sum += term;
    if (k > 0 && term < tol * sum) break;
    base *= lambda * lambda / ((k + 1.0) * (k + 2.0));
    if (k > 600) throw CapacityError("lcu_one_norm: series did not converge");
  }
  return sum;
}

/** Segment overhead Gamma_S = ||alpha||_1^2 and total Gamma_RLCU = Gamma_S^r. */
inline double gamma_rlcu(double lambda, int r) {
  return std::pow(lcu_one_norm(lambda), 2 * r);
}

/**
 * Draw the Taylor order k ~ p(k, lambda) by sampling Poisson(lambda),
 * rejecting odd draws, then thinning with acceptance a_k / a_0.
 */
inline int sample_taylor_order(double lambda, Rng& rng) {
  if (lambda < 0.0) throw ValidationError("sample_taylor_order: lambda >= 0");
  if (lambda == 0.0) return 0;
  const double a0 = rlcu_weight(lambda, 0);
  for (;;) {
    const int k = rng.poisson(lambda);
    if (k % 2 != 0) continue;
    if (rng.uniform() < rlcu_weight(lambda, k) / a0) return k;
  }
}

/** Exact normalized p(k, lambda) over even orders up to k_max (test oracle aid). */
inline std::vector<double> rlcu_order_pmf(double lambda, int k_max) {
  std::vector<double> w;
  double base = 1.0, total = 0.0;
  for (int k = 0; k <= k_max; k += 2) {
    w.push_back(base * rlcu_weight(lambda, k));
    total += w.back();
    base *= lambda * lambda / ((k + 1.0) * (k + 2.0));
  }
  for (auto& v : w) v /= total;
  return w;
}

/** MGF of the even-Poisson reference law: cosh(lambda e^t) / cosh(lambda). */
inline double even_poisson_mgf(double lambda, double t) {
  return std::cosh(lambda * std::exp(t)) / std::cosh(lambda);
}

struct KMomentBounds {
  double mean_bound = 0.0;      // lambda tanh(lambda)
  double var_bound = 0.0;       // lambda^2 + lambda tanh(lambda)
  double exact_mean_ref = 0.0;  // E_q[k] under the even-Poisson law
  double exact_var_ref = 0.0;   // Var_q(k)
};

/** Clifford-count moment bounds (and exact even-Poisson reference moments). */
inline KMomentBounds k_moment_bounds(double lambda) {
  if (lambda < 0.0) throw ValidationError("k_moment_bounds: lambda >= 0");
  KMomentBounds out;
  const double th = std::tanh(lambda);
  out.mean_bound = lambda * th;
  out.var_bound = lambda * lambda + lambda * th;
  out.exact_mean_ref = lambda * th;
  const double second = lambda * lambda + lambda * th;  // E_q[k^2]
  out.exact_var_ref = second - out.exact_mean_ref * out.exact_mean_ref;
  return out;
}

/**
 * One sampled LCU segment: U = P_{l_1} ... P_{l_k} exp(-i theta_k P_m) with
 * global sign (-1)^{k/2} from the even Taylor terms. Signs of negative
 * Hamiltonian coefficients are absorbed here as well: each sampled Pauli
 * contributes sgn(lambda_l) to `sign`, and the rotation angle carries
 * sgn(lambda_m).
 */
struct SegmentSample {
  int taylor_order = 0;
  std::vector<std::size_t> pauli_indices;
  std::size_t rotation_index = 0;
  double rotation_angle = 0.0;
  int sign = 1;
};

inline SegmentSample sample_segment(const Hamiltonian& h,
                                    const std::vector<double>& probs,
                                    double lambda, Rng& rng) {
  SegmentSample s;
  s.taylor_order = sample_taylor_order(lambda, rng);
  s.sign = (s.taylor_order / 2) % 2 == 0 ? 1 : -1;
  s.pauli_indices.resize(static_cast<std::size_t>(s.taylor_order));
  for (auto& idx : s.pauli_indices) {
    idx = rng.discrete(probs);
    if (h.term(idx).coefficient < 0.0) s.sign = -s.sign;
  }
  s.rotation_index = rng.discrete(probs);
  const double sgn_m = h.term(s.rotation_index).coefficient < 0.0 ? -1.0 : 1.0;
  s.rotation_angle = sgn_m * rlcu_theta(lambda, s.taylor_order);
  return s;
}

/** One elementary gate of a segment branch. */
struct SegmentGate {
  PauliString pauli;
  bool is_rotation = false;
  double angle = 0.0;  // rotations only
};

/**
 * Gate list realizing a sampled segment: k Pauli gates (Clifford) followed
 * by one Pauli rotation (non-Clifford). The global sign rides on the sample.
 */
inline std::vector<SegmentGate> build_segment_unitary(const SegmentSample& s,
                                                      const Hamiltonian& h) {
  std::vector<SegmentGate> gates;
  gates.reserve(s.pauli_indices.size() + 1);
  if (s.rotation_index >= h.size())
    throw ValidationError("build_segment_unitary: rotation index out of range");
  gates.push_back({h.term(s.rotation_index).pauli, true, s.rotation_angle});
  for (auto idx : s.pauli_indices) {
    if (idx >= h.size())
      throw ValidationError("build_segment_unitary: pauli index out of range");
    gates.push_back({h.term(idx).pauli, false, 0.0});
  }
  return gates;
}

/** Dense branch unitary (system register only), including the global sign. */
inline Matrix segment_dense(const SegmentSample& s, const Hamiltonian& h) {
  Matrix u = pauli_rotation(s.rotation_angle, h.term(s.rotation_index).pauli);
  for (auto idx : s.pauli_indices) u = pauli_dense(h.term(idx).pauli) * u;
  return static_cast<double>(s.sign) * u;
}

struct RlcuEstimate {
  double mean = 0.0;
  double variance = 0.0;   // variance of the reweighted estimator
  double std_error = 0.0;  // sqrt(variance)
  double gamma = 1.0;      // Gamma_RLCU = ||alpha||_1^{2r}
  std::uint64_t shots = 0;
  double halfwidth = 0.0;  // 4-standard-error window used by the suites
};

struct RlcuOptions {
  bool measurement_bit = false;  // Bernoulli X(x)O outcome instead of exact value
  bool pec = false;              // invert per-gate noise by quasiprobability
  int workers = 1;
};

namespace detail {

/** Apply `g` (system-dim) controlled on the ancilla (most significant qubit). */
inline void apply_controlled(Matrix& rho, const Matrix& g, bool control_on_one) {
  const Eigen::Index d = g.rows();
  if (control_on_one) {
    rho.block(d, 0, d, d) = g * rho.block(d, 0, d, d);
    rho.block(0, d, d, d) = rho.block(0, d, d, d) * g.adjoint();
    rho.block(d, d, d, d) = g * rho.block(d, d, d, d) * g.adjoint();
  } else {
    rho.block(0, 0, d, d) = g * rho.block(0, 0, d, d) * g.adjoint();
    rho.block(0, d, d, d) = g * rho.block(0, d, d, d);
    rho.block(d, 0, d, d) = rho.block(d, 0, d, d) * g.adjoint();
  }
}

}  // namespace detail

/**
 * Randomized-LCU estimator for Tr[O e^{-iHt} rho e^{iHt}]. Each shot samples
 * two segment realizations per round, runs the single-ancilla circuit of
 * controlled branch unitaries on |+><+| (x) rho, and records the exact
 * expectation of X (x) O (or a Bernoulli outcome in measurement-bit mode),
 * sign-corrected; the mean is reweighted by Gamma_RLCU. Under noise, one
 * stochastic Pauli channel follows each elementary controlled gate on the
 * joint ancilla+system support.
 */
inline RlcuEstimate run_rlcu_estimate(const Hamiltonian& h, double t, int r,
                                      const Matrix& obs, const DensityMatrix& rho0,
                                      const std::optional<NoiseModel>& noise,
                                      std::uint64_t shots, std::uint64_t seed,
                                      const RlcuOptions& opts = {}) {
  check_dense_capacity(h.n_qubits() + 1, "run_rlcu_estimate");
  if (rho0.n_qubits() != h.n_qubits())
    throw DimensionError("run_rlcu_estimate: state width mismatch");
  if (obs.rows() != rho0.dim())
    throw DimensionError("run_rlcu_estimate: observable width mismatch");
  if (!is_hermitian(obs, kHermTol) || operator_norm(obs) > 1.0 + 1e-10)
    throw ValidationError("run_rlcu_estimate: need Hermitian O with norm <= 1");
  const RlcuConfig cfg(h, t, r, shots, seed);
  const double lambda = cfg.lambda;
  const auto probs = h.probabilities();
  const int n = h.n_qubits();
  const Eigen::Index sys_dim = Eigen::Index(1) << n;
  const Eigen::Index joint_dim = 2 * sys_dim;
  const int ancilla = n;

  const double gamma_total = gamma_rlcu(lambda, r);

  // Per-term caches: system-register Pauli matrices, joint-register noise
  // channels, and PEC inverse decompositions with pre-embedded corrections.
  std::vector<Matrix> term_pauli;
  term_pauli.reserve(h.size());
  for (const auto& t : h.terms()) term_pauli.push_back(pauli_dense(t.pauli));

  auto gate_support = [&](const PauliString& p) {
    std::vector<int> qs;
    if (noise && noise->ancilla_noisy()) qs.push_back(ancilla);
    for (int q : pauli_support(p)) qs.push_back(q);
    return qs;
  };

  struct GateNoise {
    CachedChannel channel;
    const QuasiProbDecomposition* inverse = nullptr;
    std::vector<Matrix> corrections;  // dense, aligned with inverse entries
  };
  std::optional<QuasiProbDecomposition> rot_inverse[3], cliff_inverse[3];
  std::vector<GateNoise> rot_noise, cliff_noise;
  if (noise) {
    if (opts.pec) {
      for (int w : {1, 2}) {
        std::vector<int> probe(static_cast<std::size_t>(w));
        for (int q = 0; q < w; ++q) probe[static_cast<std::size_t>(q)] = q;
        rot_inverse[w] = invert_pauli_channel(noise->rotation_channel(probe));
        cliff_inverse[w] = invert_pauli_channel(noise->clifford_channel(probe));
      }
    }
    for (std::size_t l = 0; l < h.size(); ++l) {
      const auto support = gate_support(h.term(l).pauli);
      for (bool rotation : {true, false}) {
        const auto chan = rotation ? noise->rotation_channel(support)
                                   : noise->clifford_channel(support);
        GateNoise gn{CachedChannel(chan, n + 1), nullptr, {}};
        if (opts.pec) {
          const int w = chan.support_size();
          gn.inverse = rotation ? &*rot_inverse[w] : &*cliff_inverse[w];
          for (const auto& e : gn.inverse->entries())
            gn.corrections.push_back(pauli_dense(
                embed_pauli(e.correction, chan.support(), n + 1)));
        }
        (rotation ? rot_noise : cliff_noise).push_back(std::move(gn));
      }
    }
  }

  // Joint initial state |+><+| (x) rho0.
  Matrix rho_init = Matrix::Zero(joint_dim, joint_dim);
  rho_init.block(0, 0, sys_dim, sys_dim) = 0.5 * rho0.matrix();
  rho_init.block(0, sys_dim, sys_dim, sys_dim) = 0.5 * rho0.matrix();
  rho_init.block(sys_dim, 0, sys_dim, sys_dim) = 0.5 * rho0.matrix();
  rho_init.block(sys_dim, sys_dim, sys_dim, sys_dim) = 0.5 * rho0.matrix();

  auto apply_gate_noise = [&](Matrix& rho, const GateNoise& gn, Rng& rng,
                              double& weight, int& sign) {
    rho = gn.channel.apply(rho);
    if (gn.inverse != nullptr) {
      const auto& entries = gn.inverse->entries();
      const double u = rng.uniform() * gn.inverse->gamma();
      double acc = 0.0;
      std::size_t pick = entries.size() - 1;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        acc += std::abs(entries[i].weight);
        if (u < acc) {
          pick = i;
          break;
        }
      }
      weight *= gn.inverse->gamma();
      if (entries[pick].weight < 0.0) sign = -sign;
      if (!entries[pick].correction.is_identity()) {
        const Matrix& pm = gn.corrections[pick];
        rho = pm * rho * pm.adjoint();
      }
    }
  };

  auto shot_fn = [&](std::uint64_t, Rng& rng) -> double {
    Matrix rho = rho_init;
    double weight = 1.0;
    int sign = 1;
    Matrix rotation(sys_dim, sys_dim);
    for (int round = 0; round < r; ++round) {
      for (int branch = 0; branch < 2; ++branch) {
        const bool on_one = branch == 0;  // V1 acts on |1>, V2 on |0>
        const SegmentSample s = sample_segment(h, probs, lambda, rng);
        sign *= s.sign;
        // rotation gate first, then the k sampled Pauli gates
        rotation = -Complex(0, 1) * std::sin(s.rotation_angle) *
                   term_pauli[s.rotation_index];
        rotation.diagonal().array() += std::cos(s.rotation_angle);
        detail::apply_controlled(rho, rotation, on_one);
        if (noise)
          apply_gate_noise(rho, rot_noise[s.rotation_index], rng, weight, sign);
        for (auto idx : s.pauli_indices) {
          detail::apply_controlled(rho, term_pauli[idx], on_one);
          if (noise) apply_gate_noise(rho, cliff_noise[idx], rng, weight, sign);
        }
      }
    }
    // Tr[(X_anc (x) O) rho] = 2 Re Tr[O rho_01]
    const Complex t01 = (obs * rho.block(0, sys_dim, sys_dim, sys_dim)).trace();
    double value = 2.0 * t01.real();
    if (opts.measurement_bit) {
      // Valid for +-1-spectrum observables scaled by |c| <= 1.
      const double scale = operator_norm(obs);
      const double corr = scale > 0.0 ? value / scale : 0.0;
      const double p_plus = 0.5 * (1.0 + std::clamp(corr, -1.0, 1.0));
      value = (rng.uniform() < p_plus ? scale : -scale);
    }
    return weight * static_cast<double>(sign) * value;
  };

  const ShotStats stats = run_shots(shots, seed, opts.workers, shot_fn);
  RlcuEstimate est;
  est.gamma = gamma_total;
  est.shots = shots;
  est.mean = gamma_total * stats.mean;
  est.variance = gamma_total * gamma_total * stats.variance /
                 static_cast<double>(shots);
  est.std_error = std::sqrt(est.variance);
  est.halfwidth = 4.0 * est.std_error;
  return est;
}

/**
 * Noisy-bias bound Gamma_RLCU * 2 (gamma r + gamma_c (beta t)^2 / r) for the
 * RLCU estimator under per-gate noise.
 */
inline double rlcu_bias_bound(const Hamiltonian& h, double t, int r,
                              const NoiseModel& noise) {
  const double tt = h.scaled_time(t);
  const double lambda = tt / r;
  return gamma_rlcu(lambda, r) * 2.0 *
         (noise.gamma() * r + noise.gamma_c() * tt * tt / r);
}

/**
 * Truncated signed LCU sum  sum_mu alpha_mu s_mu U_mu  over all multi-indices
 * with k <= k_max, assembled from explicit SegmentSample unitaries. Converges
 * to exp(-i H t / r) at the factorial rate.
 */
inline Matrix segment_series_sum(const Hamiltonian& h, double lambda, int k_max) {
  check_dense_capacity(h.n_qubits(), "segment_series_sum");
  const Eigen::Index dim = Eigen::Index(1) << h.n_qubits();
  const auto probs = h.probabilities();
  const std::size_t L = h.size();
  Matrix total = Matrix::Zero(dim, dim);
  double base = 1.0;  // lambda^k / k!
  for (int k = 0; k <= k_max; k += 2) {
    const double coeff = base * rlcu_weight(lambda, k);
    // enumerate all (l_1..l_k, m)
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    for (;;) {
      double pprod = 1.0;
      for (auto l : idx) pprod *= probs[l];
      for (std::size_t m = 0; m < L; ++m) {
        SegmentSample s;
        s.taylor_order = k;
        s.pauli_indices = idx;
        s.rotation_index = m;
        s.sign = (k / 2) % 2 == 0 ? 1 : -1;
        for (auto l : idx)
          if (h.term(l).coefficient < 0.0) s.sign = -s.sign;
        const double sgn_m = h.term(m).coefficient < 0.0 ? -1.0 : 1.0;
        s.rotation_angle = sgn_m * rlcu_theta(lambda, k);
        total += coeff * pprod * probs[m] * segment_dense(s, h);
      }
      // odometer over idx
      std::size_t pos = 0;
      for (; pos < idx.size(); ++pos) {
        if (++idx[pos] < L) break;
        idx[pos] = 0;
      }
      if (pos == idx.size()) break;
      if (idx.empty()) break;
    }
    base *= lambda * lambda / ((k + 1.0) * (k + 2.0));
  }
  return total;
}

}  // namespace hamsim
