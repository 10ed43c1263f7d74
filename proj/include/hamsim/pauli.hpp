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

#include <bit>
#include <cctype>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include "hamsim/errors.hpp"

namespace hamsim {

/**
 * Phase-free n-qubit Pauli string in the symplectic (X-mask, Z-mask)
 * convention. Bit i of each mask refers to qubit i; a set X bit and Z bit on
 * the same qubit denote Y. Phases produced by multiplication are tracked
 * separately as a power of i, which keeps the masks hashable and products
 * O(n/word).
 */
struct PauliString {
  int n_qubits = 1;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  PauliString() = default;
  PauliString(int n, std::uint64_t x, std::uint64_t z)
      : n_qubits(n), x_mask(x), z_mask(z) {
    if (n < 1 || n > 64) throw ValidationError("PauliString: n_qubits out of range");
    const std::uint64_t allowed = width_mask(n);
    if ((x & ~allowed) != 0 || (z & ~allowed) != 0)
      throw ValidationError("PauliString: mask wider than n_qubits");
  }

  static std::uint64_t width_mask(int n) {
    return n >= 64 ? ~0ULL : ((1ULL << n) - 1);
  }

  static PauliString identity(int n) { return PauliString(n, 0, 0); }

  /** Parse a label over {I,X,Y,Z}; character i addresses qubit i. */
  static PauliString from_label(const std::string& label) {
    if (label.empty() || label.size() > 64)
      throw ValidationError("PauliString: empty or oversized label");
    PauliString p(static_cast<int>(label.size()), 0, 0);
    for (std::size_t i = 0; i < label.size(); ++i) {
      switch (std::toupper(static_cast<unsigned char>(label[i]))) {
        case 'I': break;
        case 'X': p.x_mask |= 1ULL << i; break;
        case 'Y': p.x_mask |= 1ULL << i; p.z_mask |= 1ULL << i; break;
        case 'Z': p.z_mask |= 1ULL << i; break;
        default:
          throw ValidationError(std::string("PauliString: bad label character '") +
                                label[i] + "'");
      }
    }
    return p;
  }

  std::string label() const {
    std::string out(static_cast<std::size_t>(n_qubits), 'I');
    for (int i = 0; i < n_qubits; ++i) {
      const bool x = (x_mask >> i) & 1, z = (z_mask >> i) & 1;
      out[static_cast<std::size_t>(i)] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return out;
  }

  bool is_identity() const { return x_mask == 0 && z_mask == 0; }
  int weight() const { return std::popcount(x_mask | z_mask); }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_qubits == b.n_qubits && a.x_mask == b.x_mask && a.z_mask == b.z_mask;
  }
  friend bool operator<(const PauliString& a, const PauliString& b) {
    if (a.n_qubits != b.n_qubits) return a.n_qubits < b.n_qubits;
    if (a.x_mask != b.x_mask) return a.x_mask < b.x_mask;
    return a.z_mask < b.z_mask;
  }
};

/** Product of two Pauli strings: (i^phase_exp) * pauli equals the operator product. */
struct PauliProduct {
  int phase_exp = 0;  // power of i, mod 4
  PauliString pauli;

  std::complex<double> phase() const {
    static constexpr std::complex<double> table[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((phase_exp % 4) + 4) % 4];
  }
};

inline void check_same_width(const PauliString& a, const PauliString& b,
                             const char* where) {
  if (a.n_qubits != b.n_qubits)
    throw DimensionError(std::string(where) + ": mismatched n_qubits");
}

/**
 * Multiply two Pauli strings. Writing P = i^{|x&z|} X^x Z^z, the product
 * phase exponent is g(a)+g(b)-g(ab)+2|a.z & b.x| (mod 4) with
 * g(p) = |p.x & p.z|.
 */
inline PauliProduct pauli_mul(const PauliString& a, const PauliString& b) {
  check_same_width(a, b, "pauli_mul");
  const auto g = [](const PauliString& p) {
    return std::popcount(p.x_mask & p.z_mask);
  };
  PauliString prod(a.n_qubits, a.x_mask ^ b.x_mask, a.z_mask ^ b.z_mask);
  int e = g(a) + g(b) - g(prod) + 2 * std::popcount(a.z_mask & b.x_mask);
  return PauliProduct{((e % 4) + 4) % 4, prod};
}

/** True iff the symplectic form |a.x & b.z| + |a.z & b.x| is even. */
inline bool commutes(const PauliString& a, const PauliString& b) {
  check_same_width(a, b, "commutes");
  const int overlap =
      std::popcount(a.x_mask & b.z_mask) + std::popcount(a.z_mask & b.x_mask);
  return (overlap & 1) == 0;
}

}  // namespace hamsim
