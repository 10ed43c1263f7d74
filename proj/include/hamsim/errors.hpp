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

#include <stdexcept>
#include <string>

namespace hamsim {

/** Base class for all hamsim errors. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Mismatched qubit counts or matrix dimensions. */
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/** Requested computation exceeds a hard size guard. */
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& msg) : Error(msg) {}
};

/** Input violates a domain invariant (zero Hamiltonian, bad probabilities, ...). */
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/** Channel cannot be inverted (vanishing Pauli-transfer eigenvalue). */
class NonInvertibleError : public Error {
 public:
  explicit NonInvertibleError(const std::string& msg) : Error(msg) {}
};

/** Experiment/scenario configuration problems (parse errors, bad fields). */
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace hamsim
