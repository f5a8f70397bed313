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

#include "qfe/qsim.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace qfe {

namespace {

constexpr int kMaxQubits = 30;

void check_qubit_count(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("QuantumState: qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(num_qubits));
  }
}

}  // namespace

QubitIndexError::QubitIndexError(int qubit, int num_qubits, const std::string& context)
    : std::out_of_range(context + ": qubit " + std::to_string(qubit) +
                        " out of range for a " + std::to_string(num_qubits) +
                        "-qubit register"),
      qubit_(qubit),
      num_qubits_(num_qubits) {}

QuantumState::QuantumState(int num_qubits) : num_qubits_(num_qubits) {
  check_qubit_count(num_qubits);
  amplitudes_ = CVec::Zero(Eigen::Index{1} << num_qubits);
  amplitudes_[0] = 1.0;
}

QuantumState::QuantumState(int num_qubits, CVec amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(num_qubits);
  if (amplitudes_.size() != (Eigen::Index{1} << num_qubits)) {
    throw std::invalid_argument("QuantumState: expected " +
                                std::to_string(std::uint64_t{1} << num_qubits) +
                                " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
}

QuantumState QuantumState::basis(int num_qubits, std::uint64_t index) {
  QuantumState s(num_qubits);
  if (index >= s.dim()) {
    throw std::out_of_range("QuantumState::basis: index " + std::to_string(index) +
                            " >= " + std::to_string(s.dim()));
  }
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

QuantumState QuantumState::from_amplitudes(CVec amplitudes) {
  const auto len = static_cast<std::uint64_t>(amplitudes.size());
  if (len < 2 || !is_power_of_two(len)) {
    throw std::invalid_argument("QuantumState: amplitude count " + std::to_string(len) +
                                " is not a power of two >= 2");
  }
  return QuantumState(log2_exact(len), std::move(amplitudes));
}

bool QuantumState::is_normalized(double tol) const {
  return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol;
}

QuantumState tensor_product(const QuantumState& high, const QuantumState& low) {
  const Eigen::Index dl = static_cast<Eigen::Index>(low.dim());
  CVec out(static_cast<Eigen::Index>(high.dim()) * dl);
  for (Eigen::Index h = 0; h < static_cast<Eigen::Index>(high.dim()); ++h) {
    out.segment(h * dl, dl) = high.amplitudes()[h] * low.amplitudes();
  }
  return QuantumState(high.num_qubits() + low.num_qubits(), std::move(out));
}

Gate Gate::x(int t, std::vector<int> c) { return {GateKind::X, t, 0.0, std::move(c)}; }
Gate Gate::y(int t, std::vector<int> c) { return {GateKind::Y, t, 0.0, std::move(c)}; }
Gate Gate::z(int t, std::vector<int> c) { return {GateKind::Z, t, 0.0, std::move(c)}; }
Gate Gate::h(int t, std::vector<int> c) { return {GateKind::H, t, 0.0, std::move(c)}; }
Gate Gate::rx(int t, double a, std::vector<int> c) { return {GateKind::RX, t, a, std::move(c)}; }
Gate Gate::ry(int t, double a, std::vector<int> c) { return {GateKind::RY, t, a, std::move(c)}; }
Gate Gate::rz(int t, double a, std::vector<int> c) { return {GateKind::RZ, t, a, std::move(c)}; }
Gate Gate::phase(int t, double a, std::vector<int> c) {
  return {GateKind::Phase, t, a, std::move(c)};
}

bool Gate::has_angle() const noexcept {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
         kind == GateKind::Phase;
}

std::array<cplx, 4> Gate::matrix() const {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  switch (kind) {
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -kI, kI, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return {r, r, r, -r};
    }
    case GateKind::RX: return {c, cplx(0, -s), cplx(0, -s), c};
    case GateKind::RY: return {c, -s, s, c};
    case GateKind::RZ: return {std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0)};
    case GateKind::Phase: return {1.0, 0.0, 0.0, unit_phase(angle)};
  }
  throw std::logic_error("Gate::matrix: unknown kind");
}

void Gate::validate(int num_qubits) const {
  if (target < 0 || target >= num_qubits) throw QubitIndexError(target, num_qubits, "gate target");
  for (std::size_t i = 0; i < controls.size(); ++i) {
    const int c = controls[i];
    if (c < 0 || c >= num_qubits) throw QubitIndexError(c, num_qubits, "gate control");
    if (c == target) {
      throw std::invalid_argument("gate: control qubit " + std::to_string(c) +
                                  " equals the target");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (controls[j] == c) {
        throw std::invalid_argument("gate: duplicate control qubit " + std::to_string(c));
      }
    }
  }
}

Circuit::Circuit(int n, std::string l) : num_qubits(n), label(std::move(l)) {
  if (n < 1) throw std::invalid_argument("Circuit: qubit count must be >= 1");
}

Circuit& Circuit::add(Gate gate) {
  gate.validate(num_qubits);
  gates.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other, std::span<const int> qubit_map,
                         std::span<const int> extra_controls) {
  if (!qubit_map.empty() && static_cast<int>(qubit_map.size()) != other.num_qubits) {
    throw std::invalid_argument("Circuit::append: qubit map has " +
                                std::to_string(qubit_map.size()) + " entries for a " +
                                std::to_string(other.num_qubits) + "-qubit circuit");
  }
  if (qubit_map.empty() && other.num_qubits > num_qubits) {
    throw std::invalid_argument("Circuit::append: circuit is wider than the register");
  }
  auto map = [&](int q) { return qubit_map.empty() ? q : qubit_map[static_cast<std::size_t>(q)]; };
  for (const Gate& g : other.gates) {
    Gate mapped = g;
    mapped.target = map(g.target);
    for (int& c : mapped.controls) c = map(c);
    mapped.controls.insert(mapped.controls.end(), extra_controls.begin(), extra_controls.end());
    add(std::move(mapped));
  }
  return *this;
}

void apply_gate(QuantumState& state, const Gate& gate) {
  gate.validate(state.num_qubits());
  const auto m = gate.matrix();
  std::uint64_t control_mask = 0;
  for (int c : gate.controls) control_mask |= std::uint64_t{1} << c;
  const std::uint64_t target_bit = std::uint64_t{1} << gate.target;
  const std::uint64_t low_mask = target_bit - 1;
  const std::uint64_t half = state.dim() / 2;
  cplx* a = state.amplitudes().data();
  for (std::uint64_t k = 0; k < half; ++k) {
    // insert a zero at the target bit position
    const std::uint64_t i0 = ((k & ~low_mask) << 1) | (k & low_mask);
    if ((i0 & control_mask) != control_mask) continue;
    const std::uint64_t i1 = i0 | target_bit;
    const cplx a0 = a[i0];
    const cplx a1 = a[i1];
    a[i0] = m[0] * a0 + m[1] * a1;
    a[i1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_circuit(QuantumState& state, const Circuit& circuit) {
  if (circuit.num_qubits != state.num_qubits()) {
    throw std::invalid_argument("apply_circuit: circuit has " +
                                std::to_string(circuit.num_qubits) + " qubits, state has " +
                                std::to_string(state.num_qubits()));
  }
  for (const Gate& g : circuit.gates) apply_gate(state, g);
}

CVec apply_pauli_string(const CVec& amplitudes, const PauliString& pauli) {
  const std::uint64_t flip = pauli.flip_mask();
  CVec out(amplitudes.size());
  for (Eigen::Index r = 0; r < amplitudes.size(); ++r) {
    const auto ur = static_cast<std::uint64_t>(r);
    out[static_cast<Eigen::Index>(ur ^ flip)] = pauli.amplitude_factor(ur) * amplitudes[r];
  }
  return out;
}

void apply_pauli_string(QuantumState& state, const PauliString& pauli) {
  if (pauli.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("apply_pauli_string: string \"" + pauli.to_string() +
                                "\" has length " + std::to_string(pauli.num_qubits()) +
                                ", state has " + std::to_string(state.num_qubits()) +
                                " qubits");
  }
  state.amplitudes() = apply_pauli_string(state.amplitudes(), pauli);
}

cplx inner_product(const QuantumState& a, const QuantumState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner_product: qubit counts differ (" +
                                std::to_string(a.num_qubits()) + " vs " +
                                std::to_string(b.num_qubits()) + ")");
  }
  return a.amplitudes().dot(b.amplitudes());
}

double expectation_z(const QuantumState& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw QubitIndexError(qubit, state.num_qubits(), "expectation_z");
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  double value = 0.0;
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state[i]);
    value += (i & bit) ? -p : p;
  }
  return value;
}

void ExecutionCounter::record(const std::string& label) {
  {
    std::lock_guard lock(mutex_);
    ++by_label_[label];
  }
  ++total_;
}

std::uint64_t ExecutionCounter::count(const std::string& label) const {
  std::lock_guard lock(mutex_);
  const auto it = by_label_.find(label);
  return it == by_label_.end() ? 0 : it->second;
}

std::map<std::string, std::uint64_t> ExecutionCounter::tallies() const {
  std::lock_guard lock(mutex_);
  return by_label_;
}

std::string ExecutionCounter::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [label, n] : tallies()) j[label] = n;
  return j.dump();
}

void ExecutionCounter::reset() {
  std::lock_guard lock(mutex_);
  by_label_.clear();
  total_ = 0;
}

QuantumState run_counted(const Circuit& circuit, QuantumState input,
                         ExecutionCounter& counter) {
  apply_circuit(input, circuit);
  counter.record(circuit.label);
  return input;
}

}  // namespace qfe
