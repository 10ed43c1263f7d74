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
#include <optional>
#include <utility>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "hamsim/dense.hpp"
#include "hamsim/errors.hpp"
#include "hamsim/states.hpp"

namespace hamsim {

inline constexpr double kProbSumTol = 1e-12;

/**
 * Stochastic Pauli channel on a bounded qubit support:
 * rho -> sum_i p_i P_i rho P_i. Probabilities are stored over local Pauli
 * strings of width |support|; `support` lists the register qubits the channel
 * acts on (sorted, distinct).
 */
class StochasticPauliChannel {
 public:
  StochasticPauliChannel(std::vector<int> support,
                         std::vector<std::pair<PauliString, double>> probs,
                         int max_support = 2)
      : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.empty())
      throw ValidationError("StochasticPauliChannel: empty support");
    if (static_cast<int>(support_.size()) > max_support)
      throw ValidationError("StochasticPauliChannel: support weight above limit");
    std::vector<int> sorted = support_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("StochasticPauliChannel: duplicate support qubit");
    double sum = 0.0;
    for (const auto& [p, w] : probs_) {
      if (p.n_qubits != static_cast<int>(support_.size()))
        throw DimensionError("StochasticPauliChannel: local Pauli width mismatch");
      if (w < 0.0) throw ValidationError("StochasticPauliChannel: negative probability");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kProbSumTol)
      throw ValidationError("StochasticPauliChannel: probabilities do not sum to 1");
  }

  const std::vector<int>& support() const { return support_; }
  int support_size() const { return static_cast<int>(support_.size()); }
  const std::vector<std::pair<PauliString, double>>& probs() const { return probs_; }

  double identity_probability() const {
    double p0 = 0.0;
    for (const auto& [p, w] : probs_)
      if (p.is_identity()) p0 += w;
    return p0;
  }

  /** Per-gate error rate gamma = 1 - p0 = D(N, I) for Pauli channels. */
  double gamma() const { return 1.0 - identity_probability(); }

  /** Probability of the exact local Pauli `p` (0 if absent). */
  double probability_of(const PauliString& p) const {
    double w = 0.0;
    for (const auto& [q, v] : probs_)
      if (q == p) w += v;
    return w;
  }

  /** Channel with the same error distribution relocated to new qubits. */
  StochasticPauliChannel relocated(std::vector<int> new_support) const {
    if (new_support.size() != support_.size())
      throw DimensionError("relocated: support size mismatch");
    return StochasticPauliChannel(std::move(new_support), probs_,
                                  static_cast<int>(support_.size()));
  }

  /** Identity channel on one qubit. */
  static StochasticPauliChannel identity(std::vector<int> support) {
    const int w = static_cast<int>(support.size());
    return StochasticPauliChannel(
        std::move(support), {{PauliString::identity(w), 1.0}}, w);
  }

  /** Depolarizing channel with total error probability p spread uniformly. */
  static StochasticPauliChannel depolarizing(std::vector<int> support, double p) {
    const int w = static_cast<int>(support.size());
    if (p < 0.0 || p >= 1.0)
      throw ValidationError("depolarizing: rate out of range");
    const std::uint64_t count = (1ULL << (2 * w)) - 1;  // non-identity paulis
    std::vector<std::pair<PauliString, double>> probs;
    probs.reserve(count + 1);
    probs.push_back({PauliString::identity(w), 1.0 - p});
    for (std::uint64_t x = 0; x < (1ULL << w); ++x)
      for (std::uint64_t z = 0; z < (1ULL << w); ++z) {
        if (x == 0 && z == 0) continue;
        probs.push_back({PauliString(w, x, z), p / static_cast<double>(count)});
      }
    return StochasticPauliChannel(std::move(support), std::move(probs), w);
  }

  /** Single-Pauli error channel: label with probability p, identity otherwise. */
  static StochasticPauliChannel single_pauli(std::vector<int> support,
                                             const std::string& label, double p) {
    PauliString e = PauliString::from_label(label);
    if (e.is_identity()) throw ValidationError("single_pauli: error must be non-identity");
    return StochasticPauliChannel(
        std::move(support),
        {{PauliString::identity(e.n_qubits), 1.0 - p}, {e, p}}, e.n_qubits);
  }

  /** Apply to an n-qubit register state by conjugating embedded Paulis. */
  DensityMatrix apply(const DensityMatrix& rho) const {
    Matrix out = apply_raw(rho.matrix(), rho.n_qubits());
    return DensityMatrix(std::move(out));
  }

  /** Same, on a raw matrix (no revalidation; hot path for simulators). */
  Matrix apply_raw(const Matrix& rho, int n_qubits) const {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& [p, w] : probs_) {
      if (w == 0.0) continue;
      if (p.is_identity()) {
        out += w * rho;
        continue;
      }
      const Matrix pm = pauli_dense(embed_pauli(p, support_, n_qubits));
      out.noalias() += w * (pm * rho * pm.adjoint());
    }
    return out;
  }

 private:
  std::vector<int> support_;
  std::vector<std::pair<PauliString, double>> probs_;
};

/** gamma = D(N, I): exactly 1 - p0 for stochastic Pauli channels. */
inline double pauli_channel_distance(const StochasticPauliChannel& n) {
  return n.gamma();
}

/**
 * Stochastic Pauli channel with its error Paulis pre-embedded and densified
 * for a fixed register width. Immutable after construction; shared read-only
 * across shot workers.
 */
class CachedChannel {
 public:
  CachedChannel(const StochasticPauliChannel& chan, int n_qubits)
      : chan_(chan), n_qubits_(n_qubits) {
    for (const auto& [p, w] : chan.probs()) {
      if (w == 0.0) continue;
      if (p.is_identity()) {
        identity_weight_ += w;
        continue;
      }
      weights_.push_back(w);
      paulis_.push_back(pauli_dense(embed_pauli(p, chan.support(), n_qubits)));
    }
  }

  const StochasticPauliChannel& channel() const { return chan_; }

  Matrix apply(const Matrix& rho) const {
    Matrix out = identity_weight_ * rho;
    for (std::size_t i = 0; i < paulis_.size(); ++i)
      out.noalias() += weights_[i] * (paulis_[i] * rho * paulis_[i].adjoint());
    return out;
  }

 private:
  StochasticPauliChannel chan_;
  int n_qubits_;
  double identity_weight_ = 0.0;
  std::vector<double> weights_;
  std::vector<Matrix> paulis_;
};

/**
 * CPTP (or more general linear) map in superoperator form, column-major vec
 * convention: vec(A rho B) = (B^T (x) A) vec(rho).
 */
class Channel {
 public:
  Channel(Eigen::Index dim, Matrix superop)
      : dim_(dim), superop_(std::move(superop)) {
    if (superop_.rows() != dim_ * dim_ || superop_.cols() != dim_ * dim_)
      throw DimensionError("Channel: superoperator shape mismatch");
  }

  Eigen::Index dim() const { return dim_; }
  const Matrix& superop() const { return superop_; }

  static Channel identity(Eigen::Index dim) {
    return Channel(dim, Matrix::Identity(dim * dim, dim * dim));
  }

  static Channel from_unitary(const Matrix& u) {
    if (u.rows() != u.cols()) throw DimensionError("from_unitary: not square");
    return Channel(u.rows(), Matrix(Eigen::kroneckerProduct(u.conjugate(), u)));
  }

  static Channel from_kraus(const std::vector<Matrix>& ops) {
    if (ops.empty()) throw ValidationError("from_kraus: no operators");
    const Eigen::Index d = ops.front().rows();
    Matrix s = Matrix::Zero(d * d, d * d);
    for (const auto& k : ops) {
      if (k.rows() != d || k.cols() != d)
        throw DimensionError("from_kraus: inconsistent dimensions");
      s += Eigen::kroneckerProduct(k.conjugate(), k);
    }
    return Channel(d, std::move(s));
  }

  static Channel from_pauli_channel(const StochasticPauliChannel& n, int n_qubits) {
    check_dense_capacity(n_qubits, "from_pauli_channel");
    const Eigen::Index d = Eigen::Index(1) << n_qubits;
    Matrix s = Matrix::Zero(d * d, d * d);
    for (const auto& [p, w] : n.probs()) {
      if (w == 0.0) continue;
      const Matrix pm = pauli_dense(embed_pauli(p, n.support(), n_qubits));
      s += w * Eigen::kroneckerProduct(pm.conjugate(), pm);
    }
    return Channel(d, std::move(s));
  }

  /** Composition: (*this) after `first`. */
  Channel after(const Channel& first) const {
    if (dim_ != first.dim_) throw DimensionError("Channel::after: dimension mismatch");
    return Channel(dim_, superop_ * first.superop_);
  }

  DensityMatrix apply(const DensityMatrix& rho) const {
    return DensityMatrix(apply_raw(rho.matrix()));
  }

  Matrix apply_raw(const Matrix& rho) const {
    if (rho.rows() != dim_) throw DimensionError("Channel::apply: dimension mismatch");
    Vector v = Eigen::Map<const Vector>(rho.data(), dim_ * dim_);
    Vector w = superop_ * v;
    return Eigen::Map<const Matrix>(w.data(), dim_, dim_);
  }

  /** Normalized Choi state J(Phi) = (Phi (x) id)(|Omega><Omega|). */
  Matrix choi() const {
    Matrix j = Matrix::Zero(dim_ * dim_, dim_ * dim_);
    Matrix eij = Matrix::Zero(dim_, dim_);
    for (Eigen::Index i = 0; i < dim_; ++i)
      for (Eigen::Index jdx = 0; jdx < dim_; ++jdx) {
        eij.setZero();
        eij(i, jdx) = 1.0;
        const Matrix block = apply_raw(eij);
        // system factor first (most significant), reference second
        for (Eigen::Index a = 0; a < dim_; ++a)
          for (Eigen::Index b = 0; b < dim_; ++b)
            j(a * dim_ + i, b * dim_ + jdx) += block(a, b);
      }
    return j / static_cast<double>(dim_);
  }

  /** Trace preservation check over a full operator basis. */
  bool is_trace_preserving(double tol = 1e-10) const {
    Matrix eij = Matrix::Zero(dim_, dim_);
    for (Eigen::Index i = 0; i < dim_; ++i)
      for (Eigen::Index j = 0; j < dim_; ++j) {
        eij.setZero();
        eij(i, j) = 1.0;
        const Complex tr = apply_raw(eij).trace();
        const Complex want = (i == j) ? Complex(1, 0) : Complex(0, 0);
        if (std::abs(tr - want) > tol) return false;
      }
    return true;
  }

 private:
  Eigen::Index dim_;
  Matrix superop_;
};

/**
 * Choi-state trace distance 0.5 ||J(a) - J(b)||_1. Exact diamond distance
 * for stochastic Pauli channels (Bell-diagonal Choi states); a lower bound
 * in general.
 */
inline double choi_trace_distance(const Channel& a, const Channel& b) {
  if (a.dim() != b.dim())
    throw DimensionError("choi_trace_distance: dimension mismatch");
  if (a.dim() > (Eigen::Index(1) << 5))
    throw CapacityError("choi_trace_distance: limited to 5 system qubits");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.choi() - b.choi(),
                                           Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/** Apply a general channel with CPTP integrity re-checks on the output. */
inline DensityMatrix apply_channel(const Channel& c, const DensityMatrix& rho) {
  Matrix out = c.apply_raw(rho.matrix());
  const double tr = out.trace().real();
  if (std::abs(tr - 1.0) > 1e-8 ||
      (out - out.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw ValidationError("apply_channel: output violates CPTP integrity");
  return DensityMatrix(std::move(out));
}

/** U_t = exp(-i H t); unitary carrier of the target evolution. */
inline Matrix exact_evolution(const Hamiltonian& h, double t) {
  check_dense_capacity(h.n_qubits(), "exact_evolution");
  return hermitian_evolution(dense(h), t);
}

enum class NoiseFamily { depolarizing, single_pauli_x, single_pauli_z };

/**
 * Per-gate noise placement: one stochastic Pauli channel after every
 * elementary gate. Channels are instantiated on the first min(width, |S|)
 * qubits of each gate's support S (the ancilla leads for controlled gates
 * when ancilla noise is on). State preparation and measurement stay
 * noiseless; gamma' = c_pec * gamma is the per-gate PEC overhead rate, with
 * c_pec defaulting to the configured family's own inversion overhead.
 */
class NoiseModel {
 public:
  NoiseModel(double gamma, double gamma_c,
             NoiseFamily family = NoiseFamily::depolarizing, int width = 1,
             bool ancilla_noisy = true,
             std::optional<double> c_pec = std::nullopt)
      : gamma_(gamma),
        gamma_c_(gamma_c),
        family_(family),
        width_(width),
        ancilla_noisy_(ancilla_noisy) {
    if (gamma < 0.0 || gamma >= 0.5 || gamma_c < 0.0 || gamma_c >= 0.5)
      throw ValidationError("NoiseModel: rates must lie in [0, 0.5)");
    if (width < 1 || width > 2) throw ValidationError("NoiseModel: width must be 1 or 2");
    c_pec_ = c_pec.value_or(default_c_pec());
  }

  double gamma() const { return gamma_; }
  double gamma_c() const { return gamma_c_; }
  double c_pec() const { return c_pec_; }
  double gamma_prime() const { return c_pec_ * gamma_; }
  bool ancilla_noisy() const { return ancilla_noisy_; }
  NoiseFamily family() const { return family_; }
  int width() const { return width_; }

  /** Channel after a non-Clifford (rotation) gate with the given support. */
  StochasticPauliChannel rotation_channel(const std::vector<int>& support) const {
    return make_channel(gamma_, support);
  }

  /** Channel after a Clifford gate with the given support. */
  StochasticPauliChannel clifford_channel(const std::vector<int>& support) const {
    return make_channel(gamma_c_, support);
  }

  StochasticPauliChannel make_channel(double rate,
                                      const std::vector<int>& support) const {
    if (support.empty()) throw ValidationError("NoiseModel: empty gate support");
    std::vector<int> target(support.begin(),
                            support.begin() + std::min<std::size_t>(
                                support.size(), static_cast<std::size_t>(width_)));
    switch (family_) {
      case NoiseFamily::depolarizing:
        return StochasticPauliChannel::depolarizing(target, rate);
      case NoiseFamily::single_pauli_x:
        return StochasticPauliChannel::single_pauli(
            {target.front()}, "X", rate);
      case NoiseFamily::single_pauli_z:
        return StochasticPauliChannel::single_pauli(
            {target.front()}, "Z", rate);
    }
    throw ValidationError("NoiseModel: unknown family");
  }

 private:
  // Solved so that 1 + gamma' equals the actual quasiprobability overhead of
  // inverting this model's rotation channel (closed forms per family; the
  // mitigation tests cross-check them against invert_pauli_channel).
  double default_c_pec() const {
    const double g = gamma_;
    switch (family_) {
      case NoiseFamily::depolarizing:
        if (width_ == 1) {
          if (g == 0.0) return 2.0;
          return (2.0 * g / (1.0 - 4.0 * g / 3.0)) / g;
        } else {
          if (g == 0.0) return 15.0 / 8.0;
          const double eta = 1.0 - 16.0 * g / 15.0;
          return ((15.0 - 7.0 * eta) / (8.0 * eta) - 1.0) / g;
        }
      case NoiseFamily::single_pauli_x:
      case NoiseFamily::single_pauli_z:
        if (g == 0.0) return 2.0;
        return (1.0 / (1.0 - 2.0 * g) - 1.0) / g;
    }
    return 2.0;
  }

  double gamma_, gamma_c_;
  NoiseFamily family_;
  int width_;
  bool ancilla_noisy_;
  double c_pec_ = 2.0;
};

}  // namespace hamsim
