// Copyright 2026 The QFE Authors
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

// Parameterized trial states alpha * U(beta) |0...0> and their parameter
// derivatives.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfe/common.hpp"
#include "qfe/qsim.hpp"

namespace qfe {

enum class Entangler { ChainCX, ChainCZ, None };

std::string to_string(Entangler e);
Entangler entangler_from_string(const std::string& name);

/// Layered ansatz: `layers` rounds of one rotation per qubit, with an
/// entangler chain (control q, target q+1) between consecutive rounds.
/// Rotation parameter k (0-based) acts on qubit k % n in round k / n.
struct AnsatzSpec {
  int num_qubits = 1;
  int layers = 1;
  Entangler entangler = Entangler::ChainCX;
  /// Per-parameter rotation kind (RX, RY or RZ); empty means all RY.
  std::vector<GateKind> axes;

  static AnsatzSpec ry_layers(int num_qubits, int layers,
                              Entangler entangler = Entangler::ChainCX);

  int num_parameters() const noexcept { return num_qubits * layers; }
  GateKind axis(int k) const;
  int qubit_of(int k) const noexcept { return k % num_qubits; }
  void validate() const;

  /// U(beta) on num_qubits qubits. When insert_after >= 0 the rotation's
  /// Pauli generator is inserted right after that rotation.
  Circuit build(const Vec& beta, int insert_after = -1, std::string label = {}) const;
};

/// theta = (alpha, beta_1 .. beta_M).
struct AnsatzState {
  AnsatzSpec spec;
  Vec theta;

  AnsatzState() = default;
  AnsatzState(AnsatzSpec spec, Vec theta);

  double alpha() const { return theta[0]; }
  Vec beta() const { return theta.tail(theta.size() - 1); }
  int num_parameters() const noexcept { return spec.num_parameters(); }
  /// Throws std::invalid_argument on a size mismatch or alpha <= 0.
  void validate() const;
};

/// alpha U(beta)|0>, unnormalized.
QuantumState evaluate(const AnsatzState& state);

/// Classical factor p_k with d|psi>/d theta_k = p_k |u_k>:
/// 1 for k = 0, alpha * (-i/2) for k >= 1.
cplx derivative_prefactor(const AnsatzState& state, int k);

/// Circuit preparing |u_k> (k = 0: U(beta); k >= 1: U with the generator of
/// rotation k inserted).
Circuit derivative_circuit(const AnsatzState& state, int k, std::string label = {});

/// d|psi>/d theta_k = p_k |u_k>.
QuantumState derivative_state(const AnsatzState& state, int k);

/// All M+1 derivative states as columns.
CMat derivative_states(const AnsatzState& state);

/// Raised when fit_initial misses its tolerance.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, double best_infidelity, Vec best_beta);
  double best_infidelity() const noexcept { return best_infidelity_; }
  const Vec& best_beta() const noexcept { return best_beta_; }

 private:
  double best_infidelity_;
  Vec best_beta_;
};

struct FitOptions {
  double tolerance = 1e-10;
  int restarts = 50;
  int max_iterations = 500;
  std::uint64_t seed = 0;
};

struct FitResult {
  AnsatzState state;
  double infidelity = 1.0;
  int restarts_used = 0;
};

/// Finds beta with 1 - |<U(beta)0|target>|^2 <= tolerance by Levenberg-Marquardt
/// least squares on U(beta)|0> - target, first from beta = 0 and then from
/// seeded uniform random starts in [-pi, pi]. alpha is set to `alpha`.
FitResult fit_initial(const AnsatzSpec& spec, const QuantumState& target, double alpha = 1.0,
                      const FitOptions& options = {});

}  // namespace qfe
