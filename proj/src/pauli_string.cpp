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

#include "qfe/pauli_string.hpp"

#include <bit>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qfe {

char to_char(Pauli p) noexcept {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::Z: return 'Z';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
  }
  return '?';
}

PauliString::PauliString(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 31) {
    throw std::invalid_argument("PauliString: qubit count must be in [1, 31], got " +
                                std::to_string(num_qubits));
  }
  letters_.assign(static_cast<std::size_t>(num_qubits), Pauli::I);
}

PauliString PauliString::from_string(std::string_view letters) {
  PauliString out(static_cast<int>(letters.size()));
  const int n = out.num_qubits();
  for (int pos = 0; pos < n; ++pos) {
    Pauli p;
    switch (letters[static_cast<std::size_t>(pos)]) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default:
        throw std::invalid_argument("PauliString: invalid letter '" +
                                    std::string(1, letters[static_cast<std::size_t>(pos)]) +
                                    "' in \"" + std::string(letters) + "\"");
    }
    out.set(n - 1 - pos, p);
  }
  return out;
}

PauliString PauliString::from_index(std::uint64_t index, int num_qubits) {
  PauliString out(num_qubits);
  if (num_qubits < 32 && index >= (std::uint64_t{1} << (2 * num_qubits))) {
    throw std::out_of_range("PauliString: index " + std::to_string(index) +
                            " out of range for " + std::to_string(num_qubits) + " qubits");
  }
  for (int q = 0; q < num_qubits; ++q) {
    out.set(q, static_cast<Pauli>((index >> (2 * q)) & 3u));
  }
  return out;
}

std::uint64_t PauliString::index() const noexcept {
  std::uint64_t idx = 0;
  for (int q = num_qubits() - 1; q >= 0; --q) {
    idx = (idx << 2) | static_cast<std::uint64_t>(letters_[static_cast<std::size_t>(q)]);
  }
  return idx;
}

std::string PauliString::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (int q = num_qubits() - 1; q >= 0; --q) s.push_back(to_char(at(q)));
  return s;
}

std::uint64_t PauliString::flip_mask() const noexcept {
  std::uint64_t mask = 0;
  for (int q = 0; q < num_qubits(); ++q) {
    const Pauli p = letters_[static_cast<std::size_t>(q)];
    if (p == Pauli::X || p == Pauli::Y) mask |= std::uint64_t{1} << q;
  }
  return mask;
}

std::uint64_t PauliString::sign_mask() const noexcept {
  std::uint64_t mask = 0;
  for (int q = 0; q < num_qubits(); ++q) {
    const Pauli p = letters_[static_cast<std::size_t>(q)];
    if (p == Pauli::Z || p == Pauli::Y) mask |= std::uint64_t{1} << q;
  }
  return mask;
}

int PauliString::y_count() const noexcept {
  int count = 0;
  for (Pauli p : letters_) count += (p == Pauli::Y);
  return count;
}

cplx PauliString::amplitude_factor(std::uint64_t basis_index) const noexcept {
  // Y|b> = i (-1)^b |b^1>, Z|b> = (-1)^b |b>
  const int quarter_turns = y_count() + 2 * (std::popcount(basis_index & sign_mask()) & 1);
  switch (quarter_turns % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

CMat PauliString::matrix() const {
  auto single = [](Pauli p) {
    Eigen::Matrix2cd m;
    switch (p) {
      case Pauli::I: m << 1, 0, 0, 1; break;
      case Pauli::X: m << 0, 1, 1, 0; break;
      case Pauli::Y: m << 0, -kI, kI, 0; break;
      case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
  };
  CMat out = CMat::Identity(1, 1);
  for (int q = num_qubits() - 1; q >= 0; --q) {
    CMat next = Eigen::kroneckerProduct(out, single(at(q))).eval();
    out = std::move(next);
  }
  return out;
}

}  // namespace qfe
