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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qfe/hadamard_test.hpp"
#include "qfe/ppo.hpp"
#include "qfe/problems.hpp"
#include "qfe/vqs.hpp"

namespace qfe {
namespace {

CVec random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  CVec v(1 << n);
  for (auto& a : v) a = cplx(d(rng), d(rng));
  return v / v.norm();
}

Circuit random_circuit(int n, std::mt19937_64& rng, int depth = 12) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_int_distribution<int> q(0, n - 1);
  Circuit c(n);
  for (int i = 0; i < depth; ++i) {
    const int t = q(rng);
    c.add(Gate::ry(t, angle(rng)));
    c.add(Gate::rz((t + 1) % n, angle(rng)));
    if (n > 1) c.add(Gate::x((t + 1) % n, {t}));
  }
  return c;
}

CVec run(const Circuit& c) {
  QuantumState s(c.num_qubits);
  apply_circuit(s, c);
  return s.amplitudes();
}

// Branch a of the ancilla register on system state |q>, n targets.
CVec vblock_branch(int n, std::uint64_t ancilla, const CVec& system) {
  CVec joint = CVec::Zero(Eigen::Index{1} << (3 * n));
  joint.segment(static_cast<Eigen::Index>(ancilla) << n, 1 << n) = system;
  QuantumState s(3 * n, joint);
  apply_circuit(s, v_block_circuit(VBlockLayout::standard(n, n)));
  return s.amplitudes();
}

TEST(VBlockTest, SingleTargetExamples) {
  CVec zero(2), one(2);
  zero << 1, 0;
  one << 0, 1;
  // ancilla |00>: identity
  CVec out = vblock_branch(1, 0b00, one);
  EXPECT_EQ(out[0b001], cplx(1, 0));
  // ancilla |01> (z set): Z
  out = vblock_branch(1, 0b01, one);
  EXPECT_EQ(out[(0b01 << 1) | 1], cplx(-1, 0));
  // ancilla |11> (x and z set): Y|0> = i|1>
  out = vblock_branch(1, 0b11, zero);
  EXPECT_NEAR(std::abs(out[(0b11 << 1) | 1] - kI), 0.0, 1e-15);
  EXPECT_NEAR(out.norm(), 1.0, 1e-15);
}

TEST(VBlockTest, ExhaustiveBranchesMatchPauliStrings) {
  std::mt19937_64 rng(12);
  for (int n = 1; n <= 2; ++n) {
    const std::uint64_t branches = std::uint64_t{1} << (2 * n);
    for (std::uint64_t a = 0; a < branches; ++a) {
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        CVec basis = CVec::Zero(1 << n);
        basis[static_cast<Eigen::Index>(b)] = 1.0;
        const CVec out = vblock_branch(n, a, basis);
        CVec expected = CVec::Zero(out.size());
        expected.segment(static_cast<Eigen::Index>(a) << n, 1 << n) =
            PauliString::from_index(a, n).matrix() * basis;
        EXPECT_LT((out - expected).cwiseAbs().maxCoeff(), 1e-14) << "n=" << n << " a=" << a;
      }
      const CVec v = random_state(n, rng);
      CVec expected = CVec::Zero(Eigen::Index{1} << (3 * n));
      expected.segment(static_cast<Eigen::Index>(a) << n, 1 << n) =
          PauliString::from_index(a, n).matrix() * v;
      EXPECT_LT((vblock_branch(n, a, v) - expected).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(VBlockTest, LayoutValidation) {
  VBlockLayout bad = VBlockLayout::standard(2, 2);
  bad.x_controls[1] = bad.targets[0];
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  VBlockLayout uneven = VBlockLayout::standard(2, 2);
  uneven.z_controls.pop_back();
  EXPECT_THROW(uneven.validate(), std::invalid_argument);
  EXPECT_EQ(VBlockLayout::standard(3, 3).max_qubit(), 8);
}

TEST(CoefficientStateTest, Examples) {
  Vec c(4);
  c << 1, 0, 0, 0;
  EXPECT_EQ(prepare_coefficient_state(c)[0], cplx(1, 0));
  c << 0.5, 0.5, 0, 0;
  const QuantumState s = prepare_coefficient_state(c);
  EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[1].real(), 1 / std::sqrt(2.0), 1e-15);
  c << 0.5, 0.6, -0.1, 0;
  EXPECT_THROW(prepare_coefficient_state(c), std::invalid_argument);
  c << 0.5, 0.6, 0, 0;
  EXPECT_THROW(prepare_coefficient_state(c), std::invalid_argument);
}

TEST(CoefficientStateTest, DenseOdePartThroughEncoder) {
  const SplitHamiltonian s = split(decompose(build_dense_ode().hamiltonian));
  const Vec c = s.part(PartClass::RealPositive).weight_vector(2);
  const CVec target = c.cwiseSqrt().cast<cplx>();
  EXPECT_LT((prepare_coefficient_state(c).amplitudes() - target).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((run(amplitude_encode(target)) - target).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AmplitudeEncodeTest, TrivialTargets) {
  CVec e0(2);
  e0 << 1, 0;
  EXPECT_EQ(amplitude_encode(e0).size(), 0u);
  CVec plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const Circuit c = amplitude_encode(plus);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.gates[0].kind, GateKind::RY);
  EXPECT_NEAR(c.gates[0].angle, kPi / 2, 1e-15);
}

TEST(AmplitudeEncodeTest, RandomComplexTargetsExact) {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const CVec target = random_state(n, rng);
      const CVec out = run(amplitude_encode(target));
      // phase-exact, which implies fidelity 1
      EXPECT_LT((out - target).norm(), 1e-12) << "n=" << n;
      EXPECT_GE(std::norm(out.dot(target)), 1 - 1e-10);
    }
  }
}

TEST(AmplitudeEncodeTest, SparseTargets) {
  CVec t = CVec::Zero(8);
  t[5] = cplx(0, -1);
  EXPECT_LT((run(amplitude_encode(t)) - t).norm(), 1e-13);
  t.setZero();
  t[2] = 0.6;
  t[7] = cplx(0, 0.8);
  EXPECT_LT((run(amplitude_encode(t)) - t).norm(), 1e-13);
}

TEST(AmplitudeEncodeTest, RejectsBadInput) {
  EXPECT_THROW(amplitude_encode(CVec::Ones(3) / std::sqrt(3.0)), std::invalid_argument);
  EXPECT_THROW(amplitude_encode(CVec::Ones(4)), std::invalid_argument);
}

TEST(HadamardTest, RealAndImaginaryOverlaps) {
  std::mt19937_64 rng(14);
  for (int n = 1; n <= 3; ++n) {
    const Circuit bra = random_circuit(n, rng);
    const Circuit ket = random_circuit(n, rng);
    const cplx oracle = run(bra).dot(run(ket));
    ExecutionCounter counter;
    const double re = run_hadamard_test(
        hadamard_test_circuit(Circuit(n), bra, ket, OverlapPart::Real, "t"), counter);
    const double im = run_hadamard_test(
        hadamard_test_circuit(Circuit(n), bra, ket, OverlapPart::Imag, "t"), counter);
    EXPECT_NEAR(re, oracle.real(), 1e-13);
    EXPECT_NEAR(im, oracle.imag(), 1e-13);
    EXPECT_EQ(counter.count("t"), 2u);
  }
}

TEST(HadamardTest, WeightedOverlapCircuitCounts) {
  std::mt19937_64 rng(15);
  const Circuit bra = random_circuit(2, rng);
  const Circuit ket = random_circuit(2, rng);
  const cplx w = run(bra).dot(run(ket));
  for (const cplx z : {cplx(0.3, 0), cplx(0, -0.7), cplx(0.2, 0.5), cplx(0, 0)}) {
    ExecutionCounter counter;
    const double v = weighted_real_overlap(z, Circuit(2), bra, ket, "w", counter);
    EXPECT_NEAR(v, (z * w).real(), 1e-13);
    const std::uint64_t expected = (z.real() != 0) + (z.imag() != 0);
    EXPECT_EQ(counter.total(), expected);
  }
}

TEST(ParallelTermTest, SingleZPart) {
  Mat z(2, 2);
  z << 1, 0, 0, -1;
  const SplitHamiltonian s = split(decompose(z));
  Vec theta(2);
  theta << 1.0, 0.0;
  const AnsatzState st(AnsatzSpec::ry_layers(1, 1), theta);
  const auto& part = s.part(PartClass::RealPositive);
  EXPECT_NEAR(parallel_C_term(st, part, 0, EvalMode::Exact), 1.0, 1e-15);
  ExecutionCounter counter;
  EXPECT_NEAR(parallel_C_term(st, part, 0, EvalMode::Circuit, &counter), 1.0, 1e-13);
  EXPECT_EQ(counter.total(), 1u);
  EXPECT_THROW(parallel_C_term(st, part, 0, EvalMode::Circuit), std::invalid_argument);
}

TEST(ParallelTermTest, PartsSumToDenseC) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const Mat h = build_dense_ode().hamiltonian;
  const SplitHamiltonian s = split(decompose(h));
  Vec theta(5);
  theta << 1.3, angle(rng), angle(rng), angle(rng), angle(rng);
  const AnsatzState st(AnsatzSpec::ry_layers(2, 2), theta);
  const CVec psi = evaluate(st).amplitudes();
  const CMat dpsi = derivative_states(st);
  ExecutionCounter counter;
  for (int k = 0; k <= 4; ++k) {
    const double oracle = dpsi.col(k).dot(h.cast<cplx>() * psi).real();
    double exact = 0.0;
    double circuit = 0.0;
    for (const auto& part : s.parts) {
      exact += parallel_C_term(st, part, k, EvalMode::Exact);
      circuit += parallel_C_term(st, part, k, EvalMode::Circuit, &counter);
    }
    EXPECT_NEAR(exact, oracle, 1e-10) << "k=" << k;
    EXPECT_NEAR(circuit, oracle, 1e-10) << "k=" << k;
  }
  EXPECT_EQ(counter.total(), 4u * 5u);
}

TEST(ParallelTermTest, OneHotPartMatchesSinglePauliTest) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  PauliDecomposition d;
  d.num_qubits = 2;
  d.terms = {{PauliString::from_string("XY"), {0.4, 0}}};
  const SplitHamiltonian s = split(d);
  Vec theta(5);
  theta << 0.9, angle(rng), angle(rng), angle(rng), angle(rng);
  const AnsatzState st(AnsatzSpec::ry_layers(2, 2), theta);
  const CVec psi = evaluate(st).amplitudes();
  const CMat xy = PauliString::from_string("XY").matrix();
  for (int k = 0; k <= 4; ++k) {
    const double single = 0.4 * derivative_states(st).col(k).dot(xy * psi).real();
    EXPECT_NEAR(parallel_C_term(st, s.part(PartClass::RealPositive), k, EvalMode::Exact), single,
                1e-14);
  }
}

TEST(ParallelTermTest, VblockProjectionAppliesPart) {
  std::mt19937_64 rng(18);
  const Mat h = build_dense_ode().hamiltonian;
  const SplitHamiltonian s = split(decompose(h));
  const CVec u = random_state(2, rng);
  for (const auto& part : s.parts) {
    // <psi_c| V |psi_c>|u> = sum_i c_i sigma_i |u>
    const CVec expected = to_matrix(part, 2) * u;
    EXPECT_LT((apply_part_via_vblock(part, u, 2) - expected).norm(), 1e-14);
  }
}

}  // namespace
}  // namespace qfe
