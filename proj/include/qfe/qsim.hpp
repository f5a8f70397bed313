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

// Noise-free statevector simulation: states, gates, circuits, and a
// thread-safe circuit-execution counter.

#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfe/common.hpp"
#include "qfe/pauli_string.hpp"

namespace qfe {

/// Raised when a gate or Pauli string references a qubit outside the register.
class QubitIndexError : public std::out_of_range {
 public:
  QubitIndexError(int qubit, int num_qubits, const std::string& context);
  int qubit() const noexcept { return qubit_; }
  int num_qubits() const noexcept { return num_qubits_; }

 private:
  int qubit_;
  int num_qubits_;
};

/// Amplitude vector of length 2^num_qubits. Qubit 0 is the least significant
/// bit of the amplitude index. The state is not required to be normalized.
class QuantumState {
 public:
  /// |0...0>
  explicit QuantumState(int num_qubits);
  QuantumState(int num_qubits, CVec amplitudes);

  static QuantumState basis(int num_qubits, std::uint64_t index);
  /// Infers the qubit count from the length, which must be a power of two >= 2.
  static QuantumState from_amplitudes(CVec amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

  const CVec& amplitudes() const noexcept { return amplitudes_; }
  CVec& amplitudes() noexcept { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = 1e-12) const;

 private:
  int num_qubits_;
  CVec amplitudes_;
};

/// |high> (x) |low>: low occupies qubits [0, low.n), high the qubits above.
QuantumState tensor_product(const QuantumState& high, const QuantumState& low);

enum class GateKind { X, Y, Z, H, RX, RY, RZ, Phase };

/// A single-qubit gate with an optional list of (positive) controls.
/// Phase(phi) = diag(1, e^{i phi}); RX/RY/RZ(theta) = exp(-i theta P / 2).
struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  double angle = 0.0;
  std::vector<int> controls;

  static Gate x(int target, std::vector<int> controls = {});
  static Gate y(int target, std::vector<int> controls = {});
  static Gate z(int target, std::vector<int> controls = {});
  static Gate h(int target, std::vector<int> controls = {});
  static Gate rx(int target, double theta, std::vector<int> controls = {});
  static Gate ry(int target, double theta, std::vector<int> controls = {});
  static Gate rz(int target, double theta, std::vector<int> controls = {});
  static Gate phase(int target, double phi, std::vector<int> controls = {});

  bool has_angle() const noexcept;
  /// Row-major 2x2 matrix of the target action.
  std::array<cplx, 4> matrix() const;
  /// Throws QubitIndexError / std::invalid_argument for bad indices.
  void validate(int num_qubits) const;
};

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  std::string label;

  Circuit() = default;
  explicit Circuit(int num_qubits, std::string label = {});

  /// Validates and appends.
  Circuit& add(Gate gate);

  /// Appends `other` with its qubit q relabelled to qubit_map[q] (identity
  /// when empty) and every gate additionally controlled by extra_controls.
  Circuit& append(const Circuit& other, std::span<const int> qubit_map = {},
                  std::span<const int> extra_controls = {});

  std::size_t size() const noexcept { return gates.size(); }
};

/// In-place gate application by stride arithmetic over the amplitude array.
void apply_gate(QuantumState& state, const Gate& gate);
void apply_circuit(QuantumState& state, const Circuit& circuit);
/// sigma|psi>; the string length must equal the qubit count.
void apply_pauli_string(QuantumState& state, const PauliString& pauli);
/// sigma applied to the low qubits of a raw amplitude vector.
CVec apply_pauli_string(const CVec& amplitudes, const PauliString& pauli);

/// <a|b>, conjugating a.
cplx inner_product(const QuantumState& a, const QuantumState& b);

/// <Z_qubit> = P(qubit = 0) - P(qubit = 1), unnormalized states allowed.
double expectation_z(const QuantumState& state, int qubit);

/// Tallies circuit executions; record() may be called concurrently.
class ExecutionCounter {
 public:
  ExecutionCounter() = default;
  ExecutionCounter(const ExecutionCounter&) = delete;
  ExecutionCounter& operator=(const ExecutionCounter&) = delete;

  void record(const std::string& label);
  std::uint64_t total() const noexcept { return total_.load(); }
  std::uint64_t count(const std::string& label) const;
  std::map<std::string, std::uint64_t> tallies() const;
  /// {"label": count, ...}
  std::string to_json() const;
  void reset();

 private:
  std::atomic<std::uint64_t> total_{0};
  mutable std::mutex mutex_;
  std::map<std::string, std::uint64_t> by_label_;
};

/// Runs the circuit on `input` and records one execution under its label.
QuantumState run_counted(const Circuit& circuit, QuantumState input,
                         ExecutionCounter& counter);

}  // namespace qfe
