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

#include "qfe/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace qfe {

namespace {

// Adds coefficient * sigma into `out` using the one-non-zero-per-column
// structure: sigma |s> = f(s) |s ^ flip>.
void accumulate(CMat& out, const PauliString& pauli, cplx coefficient) {
  const std::uint64_t flip = pauli.flip_mask();
  for (Eigen::Index s = 0; s < out.cols(); ++s) {
    const auto us = static_cast<std::uint64_t>(s);
    out(static_cast<Eigen::Index>(us ^ flip), s) += coefficient * pauli.amplitude_factor(us);
  }
}

void add_to_part(HamiltonianPart& part, const PauliString& pauli, double magnitude) {
  part.terms.push_back({pauli, magnitude});
  part.scale += magnitude;
}

}  // namespace

cplx PauliDecomposition::coefficient(const PauliString& pauli) const {
  for (const auto& t : terms) {
    if (t.pauli == pauli) return t.coefficient;
  }
  return {0.0, 0.0};
}

std::string to_string(PartClass cls) {
  switch (cls) {
    case PartClass::RealPositive: return "real+";
    case PartClass::RealNegative: return "real-";
    case PartClass::ImagPositive: return "imag+";
    case PartClass::ImagNegative: return "imag-";
  }
  return "?";
}

cplx part_phase(PartClass cls) noexcept {
  switch (cls) {
    case PartClass::RealPositive: return {1.0, 0.0};
    case PartClass::RealNegative: return {-1.0, 0.0};
    case PartClass::ImagPositive: return {0.0, 1.0};
    case PartClass::ImagNegative: return {0.0, -1.0};
  }
  return {0.0, 0.0};
}

Vec HamiltonianPart::weight_vector(int num_qubits) const {
  Vec w = Vec::Zero(Eigen::Index{1} << (2 * num_qubits));
  for (const auto& t : terms) w[static_cast<Eigen::Index>(t.pauli.index())] = t.weight;
  return w;
}

std::size_t SplitHamiltonian::non_empty_parts() const noexcept {
  std::size_t count = 0;
  for (const auto& p : parts) count += p.empty() ? 0 : 1;
  return count;
}

PauliDecomposition decompose(const CMat& matrix, double drop_tolerance) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("decompose: matrix is " + std::to_string(matrix.rows()) + "x" +
                                std::to_string(matrix.cols()) + ", expected square");
  }
  const auto dim = static_cast<std::uint64_t>(matrix.rows());
  if (dim < 2 || !is_power_of_two(dim)) {
    throw std::invalid_argument("decompose: size " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  const int n = log2_exact(dim);
  PauliDecomposition out;
  out.num_qubits = n;
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const PauliString pauli = PauliString::from_index(idx, n);
    const std::uint64_t flip = pauli.flip_mask();
    // Tr(sigma A) = sum_s <s^flip|sigma|s> A(s, s^flip)
    cplx trace{0.0, 0.0};
    for (std::uint64_t s = 0; s < dim; ++s) {
      trace += pauli.amplitude_factor(s) *
               matrix(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s ^ flip));
    }
    const cplx gamma = trace / static_cast<double>(dim);
    if (std::abs(gamma) >= drop_tolerance) out.terms.push_back({pauli, gamma});
  }
  return out;
}

PauliDecomposition decompose(const Mat& matrix, double drop_tolerance) {
  return decompose(CMat(matrix.cast<cplx>()), drop_tolerance);
}

SplitHamiltonian split(const PauliDecomposition& decomposition) {
  SplitHamiltonian out;
  out.num_qubits = decomposition.num_qubits;
  for (PartClass cls : kAllPartClasses) out.parts[static_cast<std::size_t>(cls)].cls = cls;
  auto part = [&](PartClass cls) -> HamiltonianPart& {
    return out.parts[static_cast<std::size_t>(cls)];
  };
  for (const auto& term : decomposition.terms) {
    const double re = term.coefficient.real();
    const double im = term.coefficient.imag();
    if (re > 0.0) add_to_part(part(PartClass::RealPositive), term.pauli, re);
    if (re < 0.0) add_to_part(part(PartClass::RealNegative), term.pauli, -re);
    if (im > 0.0) add_to_part(part(PartClass::ImagPositive), term.pauli, im);
    if (im < 0.0) add_to_part(part(PartClass::ImagNegative), term.pauli, -im);
  }
  for (auto& p : out.parts) {
    for (auto& t : p.terms) t.weight /= p.scale;
  }
  return out;
}

CMat to_matrix(const PauliDecomposition& decomposition) {
  const Eigen::Index dim = Eigen::Index{1} << decomposition.num_qubits;
  CMat out = CMat::Zero(dim, dim);
  for (const auto& t : decomposition.terms) accumulate(out, t.pauli, t.coefficient);
  return out;
}

CMat to_matrix(const HamiltonianPart& part, int num_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  CMat out = CMat::Zero(dim, dim);
  for (const auto& t : part.terms) accumulate(out, t.pauli, t.weight);
  return out;
}

CMat to_matrix(const SplitHamiltonian& split_hamiltonian) {
  const Eigen::Index dim = Eigen::Index{1} << split_hamiltonian.num_qubits;
  CMat out = CMat::Zero(dim, dim);
  for (const auto& p : split_hamiltonian.parts) {
    if (p.empty()) continue;
    out += (part_phase(p.cls) * p.scale) * to_matrix(p, split_hamiltonian.num_qubits);
  }
  return out;
}

}  // namespace qfe
