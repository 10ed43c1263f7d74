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
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hamsim/channels.hpp"
#include "hamsim/parallel.hpp"
#include "hamsim/rng.hpp"
#include "hamsim/states.hpp"

namespace hamsim {

/**
 * Signed-weight decomposition of an inverse Pauli channel over Pauli
 * corrections on the channel's support: N^{-1} = sum_i q_i P_i (.) P_i.
 */
class QuasiProbDecomposition {
 public:
  struct Entry {
    double weight;           // q_i, signed
    PauliString correction;  // local width = |support|
  };

  QuasiProbDecomposition(std::vector<int> support, std::vector<Entry> entries)
      : support_(std::move(support)), entries_(std::move(entries)) {
    gamma_ = 0.0;
    for (const auto& e : entries_) gamma_ += std::abs(e.weight);
    if (gamma_ < 1.0 - 1e-12)
      throw ValidationError("QuasiProbDecomposition: gamma below 1");
    cumulative_.reserve(entries_.size());
    double acc = 0.0;
    for (const auto& e : entries_) {
      acc += std::abs(e.weight) / gamma_;
      cumulative_.push_back(acc);
    }
  }

  const std::vector<int>& support() const { return support_; }
  const std::vector<Entry>& entries() const { return entries_; }
  double gamma() const { return gamma_; }

  struct Draw {
    bool negative;
    PauliString correction;
  };

  /** Sample a correction with probability |q_i| / gamma. */
  Draw sample(Rng& rng) const {
    const double u = rng.uniform();
    std::size_t pick = entries_.size() - 1;
    for (std::size_t i = 0; i < cumulative_.size(); ++i)
      if (u < cumulative_[i]) {
        pick = i;
        break;
      }
    return {entries_[pick].weight < 0.0, entries_[pick].correction};
  }

  /** The decomposition as a (generally non-CP) linear map on the register. */
  Channel to_channel(int n_qubits) const {
    check_dense_capacity(n_qubits, "QuasiProbDecomposition::to_channel");
    const Eigen::Index d = Eigen::Index(1) << n_qubits;
    Matrix s = Matrix::Zero(d * d, d * d);
    for (const auto& e : entries_) {
      const Matrix pm = pauli_dense(embed_pauli(e.correction, support_, n_qubits));
      s += e.weight * Eigen::kroneckerProduct(pm.conjugate(), pm);
    }
    return Channel(d, std::move(s));
  }

 private:
  std::vector<int> support_;
  std::vector<Entry> entries_;
  std::vector<double> cumulative_;
  double gamma_ = 1.0;
};

namespace detail {

/** Symplectic pairing parity between Paulis indexed by (x,z) masks. */
inline int pauli_pairing(std::uint64_t ix, std::uint64_t iz, std::uint64_t jx,
                         std::uint64_t jz) {
  return (std::popcount(ix & jz) + std::popcount(iz & jx)) & 1;
}

}  // namespace detail

/**
 * Quasiprobability inverse of a stochastic Pauli channel. The channel acts
 * diagonally in the Pauli basis with transfer eigenvalues
 * eta_j = sum_i p_i (-1)^{<i,j>}; the inverse weights are the inverse Walsh
 * transform of 1/eta_j over the support.
 */
inline QuasiProbDecomposition invert_pauli_channel(const StochasticPauliChannel& n) {
  const int m = n.support_size();
  const std::uint64_t side = 1ULL << m;
  const double cells = static_cast<double>(side * side);
  std::vector<double> eta(static_cast<std::size_t>(side * side), 0.0);
  for (std::uint64_t jx = 0; jx < side; ++jx)
    for (std::uint64_t jz = 0; jz < side; ++jz) {
      double v = 0.0;
      for (const auto& [p, w] : n.probs())
        v += detail::pauli_pairing(p.x_mask, p.z_mask, jx, jz) ? -w : w;
      eta[jx * side + jz] = v;
    }
  for (double e : eta)
    if (std::abs(e) < 1e-12)
      throw NonInvertibleError(
          "invert_pauli_channel: vanishing Pauli-transfer eigenvalue");
  std::vector<QuasiProbDecomposition::Entry> entries;
  entries.reserve(static_cast<std::size_t>(side * side));
  for (std::uint64_t ix = 0; ix < side; ++ix)
    for (std::uint64_t iz = 0; iz < side; ++iz) {
      double q = 0.0;
      for (std::uint64_t jx = 0; jx < side; ++jx)
        for (std::uint64_t jz = 0; jz < side; ++jz) {
          const double inv = 1.0 / eta[jx * side + jz];
          q += detail::pauli_pairing(ix, iz, jx, jz) ? -inv : inv;
        }
      q /= cells;
      if (q != 0.0) entries.push_back({q, PauliString(m, ix, iz)});
    }
  return QuasiProbDecomposition(n.support(), std::move(entries));
}

/** One noisy elementary gate of a concrete circuit. */
struct NoisyGate {
  Matrix unitary;            // register-dim dense
  std::vector<int> support;  // qubits the gate acts on
  StochasticPauliChannel noise;
  bool clifford = false;
};

struct NoisyCircuit {
  int n_qubits = 1;
  std::vector<NoisyGate> gates;
};

/** Ideal expectation of the circuit (noise skipped). */
inline double circuit_ideal_expectation(const NoisyCircuit& c, const Matrix& obs,
                                        const DensityMatrix& rho0) {
  Matrix rho = rho0.matrix();
  for (const auto& g : c.gates) rho = g.unitary * rho * g.unitary.adjoint();
  return expectation(obs, DensityMatrix(std::move(rho)));
}

/** Unmitigated noisy expectation via exact channel application. */
inline double circuit_noisy_expectation(const NoisyCircuit& c, const Matrix& obs,
                                        const DensityMatrix& rho0) {
  Matrix rho = rho0.matrix();
  for (const auto& g : c.gates) {
    rho = g.unitary * rho * g.unitary.adjoint();
    rho = g.noise.apply_raw(rho, c.n_qubits);
  }
  return expectation(obs, DensityMatrix(std::move(rho)));
}

struct MitigatedEstimate {
  double mean = 0.0;
  double variance = 0.0;   // estimator variance
  double std_error = 0.0;
  double gamma = 1.0;      // total reweighting overhead
  std::uint64_t shots = 0;
  enum class Mode { none, pec, sni } mode = Mode::none;
};

/**
 * Sampled PEC: each shot draws one correction per gate with probability
 * |q_i|/Gamma_k, tracks the product of signs, evaluates the exact expectation
 * of the corrected noisy circuit, and averages; the mean carries the factor
 * Gamma = prod Gamma_k.
 */
inline MitigatedEstimate pec_estimate(const NoisyCircuit& circuit,
                                      const std::vector<QuasiProbDecomposition>& models,
                                      const Matrix& obs, const DensityMatrix& rho0,
                                      std::uint64_t shots, std::uint64_t seed,
                                      int workers = 1) {
  if (models.size() != circuit.gates.size())
    throw ValidationError("pec_estimate: one model per noisy gate required");
  double gamma = 1.0;
  for (const auto& m : models) gamma *= m.gamma();
  std::vector<Matrix> corrections_cache;  // dense Paulis per (gate, entry)
  std::vector<std::size_t> offsets;
  offsets.reserve(models.size());
  for (std::size_t gi = 0; gi < models.size(); ++gi) {
    offsets.push_back(corrections_cache.size());
    for (const auto& e : models[gi].entries())
      corrections_cache.push_back(pauli_dense(
          embed_pauli(e.correction, models[gi].support(), circuit.n_qubits)));
  }

  std::vector<CachedChannel> cached;
  cached.reserve(circuit.gates.size());
  for (const auto& g : circuit.gates)
    cached.emplace_back(g.noise, circuit.n_qubits);

  auto shot_fn = [&](std::uint64_t, Rng& rng) -> double {
    Matrix rho = rho0.matrix();
    int sign = 1;
    for (std::size_t gi = 0; gi < circuit.gates.size(); ++gi) {
      const auto& g = circuit.gates[gi];
      rho = g.unitary * rho * g.unitary.adjoint();
      rho = cached[gi].apply(rho);
      // inline sample to reuse the cached dense correction
      const auto& entries = models[gi].entries();
      const double u = rng.uniform() * models[gi].gamma();
      double acc = 0.0;
      std::size_t pick = entries.size() - 1;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        acc += std::abs(entries[i].weight);
        if (u < acc) {
          pick = i;
          break;
        }
      }
      if (entries[pick].weight < 0.0) sign = -sign;
      if (!entries[pick].correction.is_identity()) {
        const Matrix& pm = corrections_cache[offsets[gi] + pick];
        rho = pm * rho * pm.adjoint();
      }
    }
    return static_cast<double>(sign) * (obs * rho).trace().real();
  };

  const ShotStats stats = run_shots(shots, seed, workers, shot_fn);
  MitigatedEstimate est;
  est.mode = MitigatedEstimate::Mode::pec;
  est.gamma = gamma;
  est.shots = shots;
  est.mean = gamma * stats.mean;
  est.variance = gamma * gamma * stats.variance / static_cast<double>(shots);
  est.std_error = std::sqrt(est.variance);
  return est;
}

inline constexpr std::uint64_t kMaxCorrectionPaths = 1ULL << 20;  // 4^10

/**
 * Exact signed sum over all correction paths
 * sum_{i_1..i_N} (prod_k q_{i_k}) Tr[O prod_k B_{i_k} N_k U_k (rho)].
 * Equals the ideal expectation to numerical precision when the models are
 * the true channel inverses.
 */
inline double pec_exhaustive(const NoisyCircuit& circuit,
                             const std::vector<QuasiProbDecomposition>& models,
                             const Matrix& obs, const DensityMatrix& rho0) {
  if (models.size() != circuit.gates.size())
    throw ValidationError("pec_exhaustive: one model per noisy gate required");
  double paths = 1.0;
  for (const auto& m : models) paths *= static_cast<double>(m.entries().size());
  if (paths > static_cast<double>(kMaxCorrectionPaths))
    throw CapacityError("pec_exhaustive: correction-path count exceeds guard");

  const std::size_t depth = circuit.gates.size();
  std::vector<Matrix> stack(depth + 1);
  std::vector<std::vector<Matrix>> corr(depth);
  for (std::size_t gi = 0; gi < depth; ++gi)
    for (const auto& e : models[gi].entries())
      corr[gi].push_back(pauli_dense(
          embed_pauli(e.correction, models[gi].support(), circuit.n_qubits)));

  stack[0] = rho0.matrix();
  double total = 0.0;
  auto recurse = [&](auto&& self, std::size_t level, double weight) -> void {
    if (level == depth) {
      total += weight * (obs * stack[level]).trace().real();
      return;
    }
    const auto& g = circuit.gates[level];
    const Matrix propagated =
        g.noise.apply_raw(g.unitary * stack[level] * g.unitary.adjoint(),
                          circuit.n_qubits);
    const auto& entries = models[level].entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].correction.is_identity())
        stack[level + 1] = propagated;
      else
        stack[level + 1] = corr[level][i] * propagated * corr[level][i].adjoint();
      self(self, level + 1, weight * entries[i].weight);
    }
  };
  recurse(recurse, 0, 1.0);
  return total;
}

// ---------------------------------------------------------------------------
// Space-time noise inversion
// ---------------------------------------------------------------------------

/** Series weight q_l = (-1)^l p^l / (1-p)^{l+1} of the SNI inverse. */
inline double sni_series_weight(double p, int l) {
  const double mag = std::pow(p, l) / std::pow(1.0 - p, l + 1);
  return (l % 2 == 0) ? mag : -mag;
}

struct SniPlan {
  std::vector<std::pair<std::size_t, std::size_t>> segments;  // [begin, end)
  std::vector<double> q_st;                                   // per segment
  std::vector<double> gamma_seg;                              // 1/(1-2 q_st)

  double gamma() const {
    double g = 1.0;
    for (double v : gamma_seg) g *= v;
    return g;
  }
};

/**
 * Partition the circuit into s contiguous segments and compute each
 * segment's space-time error probability q_ST = 1 - prod (1 - gamma_gate).
 * Infeasible when any q_ST >= 1/2; the error names the smallest workable s.
 */
inline SniPlan sni_plan(const NoisyCircuit& circuit, int s) {
  if (s < 1) throw ValidationError("sni_plan: s must be >= 1");
  const std::size_t n_gates = circuit.gates.size();
  if (static_cast<std::size_t>(s) > n_gates && n_gates > 0)
    throw ValidationError("sni_plan: more segments than gates");
  auto build = [&](int segs) {
    SniPlan plan;
    for (int j = 0; j < segs; ++j) {
      const std::size_t b = n_gates * static_cast<std::size_t>(j) / segs;
      const std::size_t e = n_gates * static_cast<std::size_t>(j + 1) / segs;
      double p_none = 1.0;
      for (std::size_t gi = b; gi < e; ++gi)
        p_none *= 1.0 - circuit.gates[gi].noise.gamma();
      plan.segments.push_back({b, e});
      plan.q_st.push_back(1.0 - p_none);
      plan.gamma_seg.push_back(1.0 / (1.0 - 2.0 * (1.0 - p_none)));
    }
    return plan;
  };
  SniPlan plan = build(s);
  for (double q : plan.q_st)
    if (q >= 0.5) {
      int s_min = s + 1;
      for (; static_cast<std::size_t>(s_min) <= n_gates; ++s_min) {
        SniPlan probe = build(s_min);
        bool ok = true;
        for (double qq : probe.q_st) ok = ok && qq < 0.5;
        if (ok) break;
      }
      throw ValidationError(
          "sni_plan: segment error probability >= 1/2; smallest feasible s is " +
          std::to_string(s_min));
    }
  return plan;
}

namespace detail {

/** Draw one error pattern conditioned on at least one non-identity draw. */
template <typename ChannelAt>
std::vector<std::pair<std::size_t, PauliString>> sample_conditional_pattern(
    std::size_t begin, std::size_t end, double q_seg, ChannelAt&& channel_at,
    Rng& rng) {
  std::vector<std::pair<std::size_t, PauliString>> pattern;
  if (q_seg >= 1e-3) {
    // rejection against the all-identity outcome
    for (;;) {
      pattern.clear();
      for (std::size_t gi = begin; gi < end; ++gi) {
        const auto& chan = channel_at(gi);
        const double u = rng.uniform();
        double acc = 0.0;
        for (const auto& [p, w] : chan.probs()) {
          acc += w;
          if (u < acc) {
            if (!p.is_identity()) pattern.push_back({gi, p});
            break;
          }
        }
      }
      if (!pattern.empty()) return pattern;
    }
  }
  // tiny q_seg: exact conditional sampling via the first-error position
  double u = rng.uniform() * q_seg;
  double prefix_none = 1.0;
  std::size_t first = begin;
  for (std::size_t gi = begin; gi < end; ++gi) {
    const double g = channel_at(gi).gamma();
    const double w = prefix_none * g;  // P(first error at gi)
    if (u < w || gi + 1 == end) {
      first = gi;
      break;
    }
    u -= w;
    prefix_none *= 1.0 - g;
  }
  // error at `first` conditioned non-identity, later gates unconditioned
  {
    const auto& chan = channel_at(first);
    const double g = chan.gamma();
    double v = rng.uniform() * g;
    for (const auto& [p, w] : chan.probs()) {
      if (p.is_identity()) continue;
      if (v < w) {
        pattern.push_back({first, p});
        break;
      }
      v -= w;
    }
    if (pattern.empty()) {
      for (const auto& [p, w] : chan.probs())
        if (!p.is_identity() && w > 0.0) {
          pattern.push_back({first, p});
          break;
        }
    }
  }
  for (std::size_t gi = first + 1; gi < end; ++gi) {
    const auto& chan = channel_at(gi);
    const double u2 = rng.uniform();
    double acc = 0.0;
    for (const auto& [p, w] : chan.probs()) {
      acc += w;
      if (u2 < acc) {
        if (!p.is_identity()) pattern.push_back({gi, p});
        break;
      }
    }
  }
  return pattern;
}

}  // namespace detail

/**
 * SNI estimator: per segment and shot, draw the series order l with
 * probability (1-2q) q^l / (1-q)^{l+1}, carry sign (-1)^l, and stack l
 * independently sampled conditional error patterns on top of the naturally
 * noisy segment; the mean carries prod_seg 1/(1-2 q_ST).
 */
inline MitigatedEstimate sni_estimate(const SniPlan& plan, const NoisyCircuit& circuit,
                                      const Matrix& obs, const DensityMatrix& rho0,
                                      std::uint64_t shots, std::uint64_t seed,
                                      int workers = 1) {
  const double gamma = plan.gamma();
  const int n = circuit.n_qubits;
  // dense Paulis for inserted errors get built per draw; cache by (gate, pauli)
  auto channel_at = [&](std::size_t gi) -> const StochasticPauliChannel& {
    return circuit.gates[gi].noise;
  };

  auto shot_fn = [&](std::uint64_t, Rng& rng) -> double {
    int sign = 1;
    std::vector<std::vector<PauliString>> inserted(circuit.gates.size());
    for (std::size_t si = 0; si < plan.segments.size(); ++si) {
      const auto [b, e] = plan.segments[si];
      const double q = plan.q_st[si];
      if (q <= 0.0) continue;
      // l ~ (1-2q) (q/(1-q))^l / (1-q)
      const double ratio = q / (1.0 - q);
      double u = rng.uniform();
      double w = (1.0 - 2.0 * q) / (1.0 - q);
      int l = 0;
      while (u >= w && l < 10000) {
        u -= w;
        w *= ratio;
        ++l;
      }
      if (l % 2 != 0) sign = -sign;
      for (int rep = 0; rep < l; ++rep) {
        const auto pattern =
            detail::sample_conditional_pattern(b, e, q, channel_at, rng);
        for (const auto& [gi, p] : pattern) inserted[gi].push_back(p);
      }
    }
    Matrix rho = rho0.matrix();
    for (std::size_t gi = 0; gi < circuit.gates.size(); ++gi) {
      const auto& g = circuit.gates[gi];
      rho = g.unitary * rho * g.unitary.adjoint();
      rho = g.noise.apply_raw(rho, n);
      for (const auto& p : inserted[gi]) {
        const Matrix pm = pauli_dense(embed_pauli(p, g.noise.support(), n));
        rho = pm * rho * pm.adjoint();
      }
    }
    return static_cast<double>(sign) * (obs * rho).trace().real();
  };

  const ShotStats stats = run_shots(shots, seed, workers, shot_fn);
  MitigatedEstimate est;
  est.mode = MitigatedEstimate::Mode::sni;
  est.gamma = gamma;
  est.shots = shots;
  est.mean = gamma * stats.mean;
  est.variance = gamma * gamma * stats.variance / static_cast<double>(shots);
  est.std_error = std::sqrt(est.variance);
  return est;
}

struct SniOverhead {
  double exact = 1.0;  // (1 - 2 q_ST)^{-2s}
  double lower = 1.0;  // exp(4 q d)
  double upper = 1.0;  // exp(4 q d / (1 - 2 q d / s))
};

/** Segmented SNI sampling-overhead sandwich for per-layer error q, depth d. */
inline SniOverhead sni_overhead(double q, double d, double s) {
  if (q < 0.0 || q >= 1.0) throw ValidationError("sni_overhead: bad q");
  if (d <= 0.0 || s <= 0.0) throw ValidationError("sni_overhead: d, s must be positive");
  if (s <= 2.0 * q * d)
    throw ValidationError("sni_overhead: infeasible segmentation (s <= 2qd)");
  SniOverhead out;
  const double q_st = 1.0 - std::pow(1.0 - q, d / s);
  out.exact = std::pow(1.0 - 2.0 * q_st, -2.0 * s);
  out.lower = std::exp(4.0 * q * d);
  out.upper = std::exp(4.0 * q * d / (1.0 - 2.0 * q * d / s));
  return out;
}

}  // namespace hamsim
