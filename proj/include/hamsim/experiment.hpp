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

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "hamsim/scenarios.hpp"

namespace hamsim {

/**
 * Flat key-value experiment description with [sections]. Keys live in a
 * single namespace of `section.key` names; unknown fields are rejected by
 * name. Defaults: shots = 1e5, seed = 0, initial state |0...0>.
 */
struct ExperimentSpec {
  std::string name = "experiment";
  std::string hamiltonian = "builtin:pauli2";
  double time = 1.0;

  std::string algorithm = "trotter";  // trotter | rlcu
  int order = 1;                      // trotter order k
  int repetitions = 1;                // rlcu r

  double gamma = 0.0;
  double gamma_c = 0.0;
  std::string noise_family = "depolarizing";
  int noise_width = 1;
  bool ancilla_noisy = true;

  std::string mitigation = "none";  // none | pec | sni
  int segments = 1;
  double delta_gamma = 0.0;  // model perturbation for mismatch studies

  std::string observable = "ZI";
  double observable_coeff = 1.0;
  std::string initial_state = "zero";  // zero | plus
  std::uint64_t shots = 100000;
  std::uint64_t seed = 0;
  std::string sweep_axis = "none";  // none | d | N | r | eps | gamma | t | s

  Hamiltonian load_hamiltonian() const {
    if (hamiltonian.rfind("builtin:", 0) == 0)
      return builtin_hamiltonian(hamiltonian.substr(8));
    std::ifstream in(hamiltonian);
    if (!in) throw ConfigError("cannot open hamiltonian file '" + hamiltonian + "'");
    return parse_hamiltonian(in);
  }

  std::optional<NoiseModel> noise_model() const {
    if (gamma == 0.0 && gamma_c == 0.0) return std::nullopt;
    NoiseFamily fam = NoiseFamily::depolarizing;
    if (noise_family == "depolarizing")
      fam = NoiseFamily::depolarizing;
    else if (noise_family == "pauli_x")
      fam = NoiseFamily::single_pauli_x;
    else if (noise_family == "pauli_z")
      fam = NoiseFamily::single_pauli_z;
    else
      throw ConfigError("unknown noise family '" + noise_family + "'");
    return NoiseModel(gamma, gamma_c, fam, noise_width, ancilla_noisy);
  }

  Matrix load_observable(int n_qubits) const {
    const PauliString p = PauliString::from_label(observable);
    if (p.n_qubits != n_qubits)
      throw ConfigError("observable width differs from hamiltonian");
    if (std::abs(observable_coeff) > 1.0)
      throw ConfigError("observable coefficient must satisfy |c| <= 1");
    return observable_coeff * pauli_dense(p);
  }

  DensityMatrix load_initial_state(int n_qubits) const {
    if (initial_state == "zero") return DensityMatrix::zero_state(n_qubits);
    if (initial_state == "plus") return DensityMatrix::plus_state(n_qubits);
    throw ConfigError("unknown initial state '" + initial_state + "'");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("field '" + key + "': expected a boolean, got '" + v + "'");
}

template <typename T>
T parse_number(const std::string& v, const std::string& key) {
  std::istringstream ss(v);
  T out;
  ss >> out;
  if (ss.fail() || !(ss >> std::ws).eof())
    throw ConfigError("field '" + key + "': cannot parse '" + v + "'");
  return out;
}

}  // namespace detail

inline ExperimentSpec load_spec(std::istream& in) {
  ExperimentSpec spec;
  std::string section, line;
  int lineno = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (!section.empty()) key = section + "." + key;
    if (!seen.insert(key).second)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate field '" + key + "'");

    if (key == "name") spec.name = value;
    else if (key == "hamiltonian") spec.hamiltonian = value;
    else if (key == "time") spec.time = detail::parse_number<double>(value, key);
    else if (key == "algorithm.type") spec.algorithm = value;
    else if (key == "algorithm.order")
      spec.order = detail::parse_number<int>(value, key);
    else if (key == "algorithm.r")
      spec.repetitions = detail::parse_number<int>(value, key);
    else if (key == "noise.gamma")
      spec.gamma = detail::parse_number<double>(value, key);
    else if (key == "noise.gamma_c")
      spec.gamma_c = detail::parse_number<double>(value, key);
    else if (key == "noise.family") spec.noise_family = value;
    else if (key == "noise.width")
      spec.noise_width = detail::parse_number<int>(value, key);
    else if (key == "noise.ancilla_noisy")
      spec.ancilla_noisy = detail::parse_bool(value, key);
    else if (key == "mitigation.mode") spec.mitigation = value;
    else if (key == "mitigation.segments")
      spec.segments = detail::parse_number<int>(value, key);
    else if (key == "mitigation.delta_gamma")
      spec.delta_gamma = detail::parse_number<double>(value, key);
    else if (key == "run.observable") spec.observable = value;
    else if (key == "run.observable_coeff")
      spec.observable_coeff = detail::parse_number<double>(value, key);
    else if (key == "run.initial_state") spec.initial_state = value;
    else if (key == "run.shots")
      spec.shots = detail::parse_number<std::uint64_t>(value, key);
    else if (key == "run.seed")
      spec.seed = detail::parse_number<std::uint64_t>(value, key);
    else if (key == "run.sweep") spec.sweep_axis = value;
    else
      throw ConfigError("line " + std::to_string(lineno) + ": unknown field '" + key + "'");
  }

  // semantic validation
  if (spec.algorithm != "trotter" && spec.algorithm != "rlcu")
    throw ConfigError("algorithm.type must be 'trotter' or 'rlcu'");
  if (spec.algorithm == "trotter" && spec.order != 1 &&
      (spec.order < 2 || spec.order % 2 != 0))
    throw ConfigError("algorithm.order must be 1 or even");
  if (spec.repetitions < 1) throw ConfigError("algorithm.r must be >= 1");
  if (spec.mitigation != "none" && spec.mitigation != "pec" && spec.mitigation != "sni")
    throw ConfigError("mitigation.mode must be none, pec, or sni");
  if (spec.mitigation == "sni" && spec.noise_family != "depolarizing" &&
      spec.noise_family != "pauli_x" && spec.noise_family != "pauli_z")
    throw ConfigError("sni requires stochastic Pauli noise");
  if (spec.segments < 1) throw ConfigError("mitigation.segments must be >= 1");
  if (spec.shots < 1) throw ConfigError("run.shots must be >= 1");
  const std::set<std::string> axes{"none", "d", "N", "r", "eps", "gamma", "t", "s"};
  if (!axes.count(spec.sweep_axis))
    throw ConfigError("run.sweep must be one of none,d,N,r,eps,gamma,t,s");
  return spec;
}

inline ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file '" + path + "'");
  return load_spec(in);
}

}  // namespace hamsim
