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
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hamsim/errors.hpp"
#include "hamsim/pauli.hpp"

namespace hamsim {

struct HamiltonianTerm {
  double coefficient = 0.0;
  PauliString pauli;
};

/**
 * Pauli-sum Hamiltonian. Term order is preserved verbatim: it defines the
 * product order of Trotter formulas, so no re-sorting ever happens.
 */
class Hamiltonian {
 public:
  Hamiltonian(int n_qubits, std::vector<HamiltonianTerm> terms)
      : n_qubits_(n_qubits), terms_(std::move(terms)) {
    if (n_qubits_ < 1) throw ValidationError("Hamiltonian: n_qubits < 1");
    if (terms_.empty()) throw ValidationError("Hamiltonian: needs at least one term");
    for (const auto& t : terms_) {
      if (t.pauli.n_qubits != n_qubits_)
        throw DimensionError("Hamiltonian: term width mismatch");
      if (!std::isfinite(t.coefficient) || t.coefficient == 0.0)
        throw ValidationError("Hamiltonian: coefficients must be finite and nonzero");
    }
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  const HamiltonianTerm& term(std::size_t i) const { return terms_.at(i); }

  /** beta = sum of |coefficients|. */
  double beta() const {
    double b = 0.0;
    for (const auto& t : terms_) b += std::abs(t.coefficient);
    return b;
  }

  /** Normalized sampling probabilities p_l = |lambda_l| / beta. */
  std::vector<double> probabilities() const {
    const double b = beta();
    std::vector<double> p;
    p.reserve(terms_.size());
    for (const auto& t : terms_) p.push_back(std::abs(t.coefficient) / b);
    return p;
  }

  double scaled_time(double t) const { return beta() * t; }

 private:
  int n_qubits_;
  std::vector<HamiltonianTerm> terms_;
};

/** (beta, probabilities); errors out on an all-zero coefficient list. */
inline std::pair<double, std::vector<double>> normalize(const Hamiltonian& h) {
  const double b = h.beta();
  if (b <= 0.0) throw ValidationError("normalize: all coefficients are zero");
  return {b, h.probabilities()};
}

/**
 * Text format, one term per line: `<coefficient> <pauli-label>`. Labels are
 * case-insensitive strings over {I,X,Y,Z}; `#` starts a comment.
 */
inline Hamiltonian parse_hamiltonian(std::istream& in) {
  std::vector<HamiltonianTerm> terms;
  int n = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double coeff;
    std::string label;
    if (!(ls >> coeff)) {
      std::string stray;
      if (ls.clear(), ls >> stray)
        throw ConfigError("hamiltonian line " + std::to_string(lineno) +
                          ": expected '<coefficient> <label>'");
      continue;  // blank or comment-only line
    }
    if (!(ls >> label))
      throw ConfigError("hamiltonian line " + std::to_string(lineno) +
                        ": missing pauli label");
    std::string extra;
    if (ls >> extra)
      throw ConfigError("hamiltonian line " + std::to_string(lineno) +
                        ": trailing content '" + extra + "'");
    PauliString p = PauliString::from_label(label);
    if (n < 0) n = p.n_qubits;
    if (p.n_qubits != n)
      throw ConfigError("hamiltonian line " + std::to_string(lineno) +
                        ": label width differs from previous terms");
    terms.push_back({coeff, p});
  }
  if (terms.empty()) throw ConfigError("hamiltonian file holds no terms");
  return Hamiltonian(n, std::move(terms));
}

inline Hamiltonian parse_hamiltonian(const std::string& text) {
  std::istringstream in(text);
  return parse_hamiltonian(in);
}

}  // namespace hamsim
