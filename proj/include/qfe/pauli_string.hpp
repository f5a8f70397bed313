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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qfe/common.hpp"

namespace qfe {

/// Single-qubit Pauli letter. The numeric value is the base-4 digit used by
/// PauliString::index(); the order I, Z, X, Y matches the ancilla-pair
/// branches |00>, |01>, |10>, |11> of the V block (x-control bit high).
enum class Pauli : std::uint8_t { I = 0, Z = 1, X = 2, Y = 3 };

char to_char(Pauli p) noexcept;

/// n-fold tensor product of Pauli matrices.
///
/// Letters are stored per qubit (qubit 0 is the least significant bit of a
/// basis index). The text form is written most-significant qubit first, so
/// "ZI" acts with Z on qubit 1. The index is sum_j digit(qubit j) * 4^j.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int num_qubits);

  static PauliString from_string(std::string_view letters);
  static PauliString from_index(std::uint64_t index, int num_qubits);

  int num_qubits() const noexcept { return static_cast<int>(letters_.size()); }
  Pauli at(int qubit) const { return letters_.at(static_cast<std::size_t>(qubit)); }
  void set(int qubit, Pauli p) { letters_.at(static_cast<std::size_t>(qubit)) = p; }

  std::uint64_t index() const noexcept;
  std::string to_string() const;

  /// Bits flipped by the string (X and Y letters).
  std::uint64_t flip_mask() const noexcept;
  /// Bits whose value contributes a -1 sign (Z and Y letters).
  std::uint64_t sign_mask() const noexcept;
  int y_count() const noexcept;

  /// sigma |r> = amplitude_factor(r) |r ^ flip_mask()>.
  cplx amplitude_factor(std::uint64_t basis_index) const noexcept;

  /// Dense 2^n x 2^n matrix, assembled by explicit Kronecker products.
  CMat matrix() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> letters_;
};

}  // namespace qfe
