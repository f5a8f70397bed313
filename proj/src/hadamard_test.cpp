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

#include "qfe/hadamard_test.hpp"

#include <array>
#include <stdexcept>

namespace qfe {

Circuit hadamard_test_circuit(const Circuit& prefix, const Circuit& bra, const Circuit& ket,
                              OverlapPart part, std::string label) {
  const int work = std::max({prefix.num_qubits, bra.num_qubits, ket.num_qubits});
  if (work < 1) throw std::invalid_argument("hadamard_test_circuit: empty work register");
  const int test = work;
  Circuit c(work + 1, std::move(label));
  const std::array<int, 1> control{test};
  if (!prefix.gates.empty()) c.append(prefix);
  c.add(Gate::h(test));
  c.add(Gate::x(test));
  c.append(bra, {}, control);
  c.add(Gate::x(test));
  c.append(ket, {}, control);
  if (part == OverlapPart::Imag) c.add(Gate::phase(test, -kPi / 2.0));
  c.add(Gate::h(test));
  return c;
}

double run_hadamard_test(const Circuit& test, ExecutionCounter& counter) {
  const QuantumState out = run_counted(test, QuantumState(test.num_qubits), counter);
  return expectation_z(out, test.num_qubits - 1);
}

double weighted_real_overlap(cplx z, const Circuit& prefix, const Circuit& bra,
                             const Circuit& ket, const std::string& label,
                             ExecutionCounter& counter) {
  double value = 0.0;
  if (z.real() != 0.0) {
    value += z.real() *
             run_hadamard_test(hadamard_test_circuit(prefix, bra, ket, OverlapPart::Real, label),
                               counter);
  }
  if (z.imag() != 0.0) {
    value -= z.imag() *
             run_hadamard_test(hadamard_test_circuit(prefix, bra, ket, OverlapPart::Imag, label),
                               counter);
  }
  return value;
}

}  // namespace qfe
