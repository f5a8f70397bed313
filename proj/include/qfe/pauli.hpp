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

// Pauli decomposition of dense matrices and the four-way split into
// positive-weighted Pauli sums.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "qfe/common.hpp"
#include "qfe/pauli_string.hpp"

namespace qfe {

inline constexpr double kPauliDropTolerance = 1e-14;

struct PauliTerm {
  PauliString pauli;
  cplx coefficient;
};

/// A = sum_i gamma_i sigma_i with zero terms omitted, ordered by Pauli index.
struct PauliDecomposition {
  int num_qubits = 0;
  std::vector<PauliTerm> terms;

  std::size_t size() const noexcept { return terms.size(); }
  /// Coefficient of the given string (0 when absent).
  cplx coefficient(const PauliString& pauli) const;
};

struct WeightedPauli {
  PauliString pauli;
  double weight;
};

/// Sign class of a split part: the part enters the matrix with phase
/// +1, -1, +i, -i respectively.
enum class PartClass { RealPositive = 0, RealNegative = 1, ImagPositive = 2, ImagNegative = 3 };

inline constexpr std::array<PartClass, 4> kAllPartClasses = {
    PartClass::RealPositive, PartClass::RealNegative, PartClass::ImagPositive,
    PartClass::ImagNegative};

std::string to_string(PartClass cls);
cplx part_phase(PartClass cls) noexcept;

/// scale * sum_i weight_i sigma_i with weight_i > 0 and sum_i weight_i = 1.
struct HamiltonianPart {
  PartClass cls = PartClass::RealPositive;
  double scale = 0.0;
  std::vector<WeightedPauli> terms;

  bool empty() const noexcept { return terms.empty(); }
  /// Dense length-4^n vector of weights indexed by Pauli index.
  Vec weight_vector(int num_qubits) const;
};

struct SplitHamiltonian {
  int num_qubits = 0;
  std::array<HamiltonianPart, 4> parts;

  const HamiltonianPart& part(PartClass cls) const {
    return parts[static_cast<std::size_t>(cls)];
  }
  std::size_t non_empty_parts() const noexcept;
};

/// gamma_i = Tr(sigma_i A) / 2^n, dropping |gamma_i| < drop_tolerance.
/// Throws std::invalid_argument unless A is square with power-of-two size.
PauliDecomposition decompose(const CMat& matrix, double drop_tolerance = kPauliDropTolerance);
PauliDecomposition decompose(const Mat& matrix, double drop_tolerance = kPauliDropTolerance);

SplitHamiltonian split(const PauliDecomposition& decomposition);

CMat to_matrix(const PauliDecomposition& decomposition);
/// g1 H1 - g2 H2 + i g3 H3 - i g4 H4
CMat to_matrix(const SplitHamiltonian& split_hamiltonian);
/// sum_i weight_i sigma_i (the unscaled, unsigned part operator).
CMat to_matrix(const HamiltonianPart& part, int num_qubits);

}  // namespace qfe
