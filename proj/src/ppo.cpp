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

#include "qfe/ppo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qfe/hadamard_test.hpp"

namespace qfe {

VBlockLayout VBlockLayout::standard(int n, int ancilla_offset) {
  if (n < 1) throw std::invalid_argument("VBlockLayout: n must be >= 1");
  VBlockLayout layout;
  for (int j = 0; j < n; ++j) {
    layout.targets.push_back(j);
    layout.z_controls.push_back(ancilla_offset + 2 * j);
    layout.x_controls.push_back(ancilla_offset + 2 * j + 1);
  }
  layout.validate();
  return layout;
}

void VBlockLayout::validate() const {
  if (targets.empty()) throw std::invalid_argument("VBlockLayout: no targets");
  if (z_controls.size() != targets.size() || x_controls.size() != targets.size()) {
    throw std::invalid_argument("VBlockLayout: need one ancilla pair per target");
  }
  std::set<int> seen;
  auto claim = [&](int q) {
    if (q < 0) throw std::invalid_argument("VBlockLayout: negative qubit index " + std::to_string(q));
    if (!seen.insert(q).second) {
      throw std::invalid_argument("VBlockLayout: qubit " + std::to_string(q) + " used twice");
    }
  };
  for (std::size_t j = 0; j < targets.size(); ++j) {
    claim(targets[j]);
    claim(z_controls[j]);
    claim(x_controls[j]);
  }
}

int VBlockLayout::max_qubit() const {
  int m = 0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    m = std::max({m, targets[j], z_controls[j], x_controls[j]});
  }
  return m;
}

Circuit v_block_circuit(const VBlockLayout& layout, int num_qubits,
                        std::span<const int> extra_controls) {
  layout.validate();
  if (num_qubits == 0) num_qubits = layout.max_qubit() + 1;
  Circuit c(num_qubits, "v_block");
  auto with_extra = [&](std::vector<int> controls) {
    controls.insert(controls.end(), extra_controls.begin(), extra_controls.end());
    return controls;
  };
  for (int j = 0; j < layout.num_targets(); ++j) {
    const auto js = static_cast<std::size_t>(j);
    const int t = layout.targets[js];
    const int zc = layout.z_controls[js];
    const int xc = layout.x_controls[js];
    c.add(Gate::x(t, with_extra({xc})));
    c.add(Gate::z(t, with_extra({zc})));
    c.add(Gate::phase(xc, -kPi / 2.0, with_extra({zc})));
  }
  return c;
}

QuantumState prepare_coefficient_state(const Vec& c) {
  const auto len = static_cast<std::uint64_t>(c.size());
  if (len < 2 || !is_power_of_two(len)) {
    throw std::invalid_argument("prepare_coefficient_state: length " + std::to_string(len) +
                                " is not a power of two >= 2");
  }
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (!(c[i] >= 0.0)) {
      throw std::invalid_argument("prepare_coefficient_state: entry " + std::to_string(i) +
                                  " is negative (" + std::to_string(c[i]) + ")");
    }
  }
  const double sum = c.sum();
  if (std::abs(sum - 1.0) > 1e-10) {
    throw std::invalid_argument("prepare_coefficient_state: weights sum to " +
                                std::to_string(sum) + ", expected 1");
  }
  return QuantumState::from_amplitudes(c.cwiseSqrt().cast<cplx>());
}

namespace {

// Uniformly controlled rotation: applies R(angles[j]) to `target` when the
// control register (bit b of j <-> controls[b]) holds j.
void add_multiplexor(Circuit& c, GateKind kind, int target, const std::vector<int>& controls,
                     const std::vector<double>& angles) {
  if (std::all_of(angles.begin(), angles.end(), [](double a) { return std::abs(a) < 1e-15; })) {
    return;
  }
  const std::size_t count = angles.size();
  if (controls.empty()) {
    c.add(Gate{kind, target, angles[0], {}});
    return;
  }
  const double scale = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t gray = i ^ (i >> 1);
    double phi = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      phi += (std::popcount(j & gray) & 1) ? -angles[j] : angles[j];
    }
    c.add(Gate{kind, target, phi * scale, {}});
    const std::size_t next = (i + 1) % count;
    const std::size_t changed = gray ^ (next ^ (next >> 1));
    c.add(Gate::x(target, {controls[static_cast<std::size_t>(std::countr_zero(changed))]}));
  }
}

}  // namespace

Circuit amplitude_encode(const CVec& target, std::string label) {
  const auto len = static_cast<std::uint64_t>(target.size());
  if (len < 2 || !is_power_of_two(len)) {
    throw std::invalid_argument("amplitude_encode: length " + std::to_string(len) +
                                " is not a power of two >= 2");
  }
  const double norm = target.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("amplitude_encode: target norm is " + std::to_string(norm) +
                                ", expected 1");
  }
  const int m = log2_exact(len);
  Circuit c(m, std::move(label));

  // Magnitudes: qubit q is rotated conditioned on the already-set qubits above it.
  const Vec prob = target.cwiseAbs2();
  for (int q = m - 1; q >= 0; --q) {
    std::vector<int> controls;
    for (int b = q + 1; b < m; ++b) controls.push_back(b);
    const std::size_t prefixes = std::size_t{1} << controls.size();
    const std::size_t block = std::size_t{1} << q;
    std::vector<double> angles(prefixes);
    for (std::size_t p = 0; p < prefixes; ++p) {
      const std::size_t base = p << (q + 1);
      double p0 = 0.0, p1 = 0.0;
      for (std::size_t r = 0; r < block; ++r) {
        p0 += prob[static_cast<Eigen::Index>(base + r)];
        p1 += prob[static_cast<Eigen::Index>(base + block + r)];
      }
      angles[p] = 2.0 * std::atan2(std::sqrt(p1), std::sqrt(p0));
    }
    add_multiplexor(c, GateKind::RY, q, controls, angles);
  }

  // Phases: peel one qubit at a time, leaving pairwise means for the next.
  std::vector<double> phase(len);
  for (std::size_t r = 0; r < len; ++r) {
    const cplx a = target[static_cast<Eigen::Index>(r)];
    phase[r] = std::abs(a) > 0.0 ? std::arg(a) : 0.0;
  }
  for (int q = 0; q < m; ++q) {
    std::vector<int> controls;
    for (int b = q + 1; b < m; ++b) controls.push_back(b);
    std::vector<double> angles(phase.size() / 2);
    std::vector<double> means(phase.size() / 2);
    for (std::size_t p = 0; p < angles.size(); ++p) {
      angles[p] = phase[2 * p + 1] - phase[2 * p];
      means[p] = 0.5 * (phase[2 * p + 1] + phase[2 * p]);
    }
    add_multiplexor(c, GateKind::RZ, q, controls, angles);
    phase = std::move(means);
  }
  // Remaining global phase, as PHASE(g) X PHASE(g) X.
  const double global = phase[0];
  if (std::abs(global) > 1e-15) {
    c.add(Gate::phase(0, global));
    c.add(Gate::x(0));
    c.add(Gate::phase(0, global));
    c.add(Gate::x(0));
  }
  return c;
}

CVec apply_part_via_vblock(const HamiltonianPart& part, const CVec& u, int num_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  if (u.size() != dim) {
    throw std::invalid_argument("apply_part_via_vblock: vector length " +
                                std::to_string(u.size()) + " does not match " +
                                std::to_string(num_qubits) + " qubits");
  }
  if (part.empty()) return CVec::Zero(dim);
  const QuantumState coeff = prepare_coefficient_state(part.weight_vector(num_qubits));
  QuantumState joint = tensor_product(coeff, QuantumState(num_qubits, u));
  apply_circuit(joint, v_block_circuit(VBlockLayout::standard(num_qubits, num_qubits)));
  // <psi_c| (x) I on the ancilla register
  CVec out = CVec::Zero(dim);
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(coeff.dim()); ++a) {
    out += std::conj(coeff.amplitudes()[a]) * joint.amplitudes().segment(a * dim, dim);
  }
  return out;
}

double parallel_C_term(const AnsatzState& state, const HamiltonianPart& part, int k,
                       EvalMode mode, ExecutionCounter* counter, const std::string& label) {
  if (part.empty()) return 0.0;
  const int n = state.spec.num_qubits;
  const cplx z = std::conj(derivative_prefactor(state, k)) * state.alpha() *
                 part_phase(part.cls) * part.scale;
  if (mode == EvalMode::Exact) {
    QuantumState u(n);
    apply_circuit(u, state.spec.build(state.beta()));
    QuantumState uk(n);
    apply_circuit(uk, derivative_circuit(state, k));
    const CVec hu = apply_part_via_vblock(part, u.amplitudes(), n);
    return (z * uk.amplitudes().dot(hu)).real();
  }
  if (counter == nullptr) {
    throw std::invalid_argument("parallel_C_term: circuit mode needs an execution counter");
  }
  // Work register: system 0..n-1, coefficient ancillas n..3n-1.
  const int work = 3 * n;
  const CVec sqrt_c = part.weight_vector(n).cwiseSqrt().cast<cplx>();
  std::vector<int> ancillas(static_cast<std::size_t>(2 * n));
  std::iota(ancillas.begin(), ancillas.end(), n);
  Circuit prefix(work);
  prefix.append(amplitude_encode(sqrt_c), ancillas);
  Circuit bra(work);
  bra.append(derivative_circuit(state, k));
  Circuit ket(work);
  ket.append(state.spec.build(state.beta()));
  ket.append(v_block_circuit(VBlockLayout::standard(n, n), work));
  return weighted_real_overlap(z, prefix, bra, ket, label, *counter);
}

}  // namespace qfe
