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

// Parallel Pauli operations: the V block that applies a positive-weighted
// Pauli sum through 2n control ancillas, coefficient-state preparation and
// generic amplitude encoding.

#pragma once

#include <span>
#include <vector>

#include "qfe/ansatz.hpp"
#include "qfe/common.hpp"
#include "qfe/pauli.hpp"
#include "qfe/qsim.hpp"

namespace qfe {

/// Wiring of V^{(x)n}. For target j the ancilla pair is
/// (z_controls[j], x_controls[j]); in the standard layout these sit at
/// ancilla-register bits 2j and 2j+1, so the ancilla basis index equals the
/// Pauli index of the applied string.
struct VBlockLayout {
  std::vector<int> targets;
  std::vector<int> z_controls;
  std::vector<int> x_controls;

  /// Targets 0..n-1, ancilla pair j at (offset + 2j, offset + 2j + 1).
  static VBlockLayout standard(int n, int ancilla_offset);

  int num_targets() const noexcept { return static_cast<int>(targets.size()); }
  /// Throws on mismatched sizes, negative or overlapping indices.
  void validate() const;
  int max_qubit() const;
};

/// Per target: CX(x-control -> target), CZ(z-control -> target),
/// PHASE(-pi/2) on the x-control controlled by the z-control. Every gate also
/// carries extra_controls. num_qubits defaults to max_qubit() + 1.
Circuit v_block_circuit(const VBlockLayout& layout, int num_qubits = 0,
                        std::span<const int> extra_controls = {});

/// sum_i sqrt(c_i) |i>. c must be non-negative, sum to 1 within 1e-10 and
/// have power-of-two length >= 2.
QuantumState prepare_coefficient_state(const Vec& c);

/// Circuit mapping |0...0> to `target` (norm 1 within 1e-10) by a binary
/// tree of uniformly controlled RY rotations followed by uniformly controlled
/// RZ rotations for the phases; multiplexors use Gray-code CNOT ladders.
Circuit amplitude_encode(const CVec& target, std::string label = {});

/// sum_i c_i sigma_i |u> for a split part, computed by simulating V^{(x)n}
/// on |psi_c> (x) |u> and projecting the ancillas back onto |psi_c>.
CVec apply_part_via_vblock(const HamiltonianPart& part, const CVec& u, int num_qubits);

enum class EvalMode { Exact, Circuit };

/// Signed contribution of one split part to C_k:
/// Re( conj(p_k) * alpha * phase_l * g_l * sum_i c_i <u_k|sigma_i|u> ).
/// Circuit mode runs one modified Hadamard test on 3n+1 qubits (system,
/// 2n coefficient ancillas, test ancilla) and records it under `label`.
/// An empty part returns 0 without running anything.
double parallel_C_term(const AnsatzState& state, const HamiltonianPart& part, int k,
                       EvalMode mode, ExecutionCounter* counter = nullptr,
                       const std::string& label = "vqs.C.parallel");

}  // namespace qfe
