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

#include "qfe/ansatz.hpp"
#include "qfe/spectral.hpp"

namespace qfe {
namespace {

Vec random_theta(int M, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  Vec t(M + 1);
  t[0] = 0.5 + std::abs(angle(rng));
  for (int k = 1; k <= M; ++k) t[k] = angle(rng);
  return t;
}

// Oracle for n = 2, L = 2: explicit 4x4 products of RY and CX.
CVec two_qubit_oracle(const Vec& beta) {
  auto ry = [](double a) {
    Mat m(2, 2);
    m << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
    return m;
  };
  auto layer = [&](double q0, double q1) {
    // qubit 1 is the high (left) factor
    Mat out(4, 4);
    const Mat a = ry(q1);
    const Mat b = ry(q0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out(i, j) = a(i / 2, j / 2) * b(i % 2, j % 2);
    return out;
  };
  Mat cx = Mat::Zero(4, 4);  // control qubit 0, target qubit 1
  cx(0, 0) = 1;
  cx(3, 1) = 1;
  cx(2, 2) = 1;
  cx(1, 3) = 1;
  Vec zero = Vec::Zero(4);
  zero[0] = 1;
  return (layer(beta[2], beta[3]) * cx * layer(beta[0], beta[1]) * zero).cast<cplx>();
}

TEST(AnsatzTest, ZeroRotationGivesZeroState) {
  const AnsatzState s(AnsatzSpec::ry_layers(1, 1), Vec::Map(std::vector<double>{1, 0}.data(), 2));
  const QuantumState psi = evaluate(s);
  EXPECT_EQ(psi[0], cplx(1, 0));
  EXPECT_EQ(psi[1], cplx(0, 0));
}

TEST(AnsatzTest, AlphaScalesFlippedState) {
  Vec theta(2);
  theta << 2.0, kPi;
  const QuantumState psi = evaluate(AnsatzState(AnsatzSpec::ry_layers(1, 1), theta));
  EXPECT_NEAR(std::abs(psi[1]), 2.0, 1e-15);
  EXPECT_NEAR(std::abs(psi[0]), 0.0, 1e-15);
}

TEST(AnsatzTest, TwoQubitZeroParameters) {
  Vec theta = Vec::Zero(5);
  theta[0] = 1.0;
  const QuantumState psi = evaluate(AnsatzState(AnsatzSpec::ry_layers(2, 2), theta));
  EXPECT_EQ(psi[0], cplx(1, 0));
  EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
}

TEST(AnsatzTest, BuildMatchesExplicitMatrixProduct) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 10; ++rep) {
    const Vec theta = random_theta(4, rng);
    const AnsatzState s(AnsatzSpec::ry_layers(2, 2), theta);
    const CVec expected = theta[0] * two_qubit_oracle(theta.tail(4));
    EXPECT_LT((evaluate(s).amplitudes() - expected).norm(), 1e-14);
  }
}

TEST(AnsatzTest, ParameterCountsAndLayout) {
  const AnsatzSpec spec = AnsatzSpec::ry_layers(3, 4);
  EXPECT_EQ(spec.num_parameters(), 12);
  EXPECT_EQ(spec.qubit_of(7), 1);
  EXPECT_EQ(spec.axis(11), GateKind::RY);
  // 12 rotations plus 3 chains of 2 CX
  EXPECT_EQ(spec.build(Vec::Zero(12)).size(), 18u);
  EXPECT_EQ(to_string(Entangler::ChainCX), "chain-cx");
  EXPECT_EQ(entangler_from_string("chain-cz"), Entangler::ChainCZ);
  EXPECT_THROW(entangler_from_string("ring"), std::invalid_argument);
}

TEST(AnsatzTest, InvalidStatesThrow) {
  Vec theta = Vec::Zero(3);
  EXPECT_THROW(AnsatzState(AnsatzSpec::ry_layers(2, 1), theta), std::invalid_argument);
  theta[0] = 1.0;
  EXPECT_THROW(AnsatzState(AnsatzSpec::ry_layers(2, 2), theta), std::invalid_argument);
  EXPECT_THROW(AnsatzSpec::ry_layers(2, 0).validate(), std::invalid_argument);
  const AnsatzState ok(AnsatzSpec::ry_layers(2, 1), theta);
  EXPECT_THROW(derivative_state(ok, 3), std::out_of_range);
}

TEST(DerivativeTest, AlphaDerivativeIsNormalizedBase) {
  std::mt19937_64 rng(4);
  const AnsatzState s(AnsatzSpec::ry_layers(2, 2), random_theta(4, rng));
  EXPECT_NEAR(derivative_state(s, 0).norm(), 1.0, 1e-14);
}

TEST(DerivativeTest, SingleQubitOverlaps) {
  Vec theta(2);
  theta << 1.0, 0.0;
  const AnsatzState s(AnsatzSpec::ry_layers(1, 1), theta);
  const QuantumState d0 = derivative_state(s, 0);
  const QuantumState d1 = derivative_state(s, 1);
  EXPECT_NEAR(std::abs(inner_product(d0, d1)), 0.0, 1e-15);
  EXPECT_NEAR(inner_product(d1, d1).real(), 0.25, 1e-15);
  EXPECT_EQ(derivative_prefactor(s, 1), cplx(0, -0.5));
}

TEST(DerivativeTest, MatchesCentralDifferences) {
  std::mt19937_64 rng(6);
  const double h = 1e-5;
  for (const auto& [n, L] : {std::pair{1, 2}, {2, 2}, {3, 4}}) {
    const AnsatzSpec spec = AnsatzSpec::ry_layers(n, L);
    const Vec theta = random_theta(spec.num_parameters(), rng);
    const CMat analytic = derivative_states(AnsatzState(spec, theta));
    for (int k = 0; k <= spec.num_parameters(); ++k) {
      Vec plus = theta;
      Vec minus = theta;
      plus[k] += h;
      minus[k] -= h;
      const CVec fd = (evaluate(AnsatzState(spec, plus)).amplitudes() -
                       evaluate(AnsatzState(spec, minus)).amplitudes()) /
                      (2 * h);
      EXPECT_LT((analytic.col(k) - fd).cwiseAbs().maxCoeff(), 1e-8) << "n=" << n << " k=" << k;
    }
  }
}

TEST(DerivativeTest, CzEntanglerAlsoDifferentiates) {
  std::mt19937_64 rng(8);
  const AnsatzSpec spec = AnsatzSpec::ry_layers(2, 3, Entangler::ChainCZ);
  const Vec theta = random_theta(6, rng);
  const double h = 1e-5;
  for (int k = 1; k <= 6; ++k) {
    Vec plus = theta;
    Vec minus = theta;
    plus[k] += h;
    minus[k] -= h;
    const CVec fd = (evaluate(AnsatzState(spec, plus)).amplitudes() -
                     evaluate(AnsatzState(spec, minus)).amplitudes()) /
                    (2 * h);
    EXPECT_LT((derivative_state(AnsatzState(spec, theta), k).amplitudes() - fd).norm(), 1e-8);
  }
}

TEST(FitTest, ZeroTargetAcceptedImmediately) {
  const FitResult r = fit_initial(AnsatzSpec::ry_layers(2, 2), QuantumState(2));
  EXPECT_EQ(r.restarts_used, 0);
  EXPECT_EQ(r.infidelity, 0.0);
  EXPECT_EQ(r.state.beta().norm(), 0.0);
}

TEST(FitTest, PlusStateGivesQuarterTurn) {
  CVec plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const FitResult r = fit_initial(AnsatzSpec::ry_layers(1, 1), QuantumState(1, plus), 1.5);
  EXPECT_LT(r.infidelity, 1e-10);
  EXPECT_NEAR(r.state.beta()[0], kPi / 2, 1e-5);
  EXPECT_EQ(r.state.alpha(), 1.5);
}

TEST(FitTest, SineProfileOnInteriorChebyshevPoints) {
  const CollocationGrid grid = build_grid(9);
  CVec target(8);
  for (int j = 0; j < 8; ++j) target[j] = std::sin(kPi * grid.x[j + 1]);
  target /= target.norm();
  const FitResult r = fit_initial(AnsatzSpec::ry_layers(3, 4), QuantumState(3, target));
  EXPECT_LT(r.infidelity, 1e-6);
  EXPECT_LT((evaluate(r.state).amplitudes() - target).norm(), 1e-4);
}

TEST(FitTest, RandomRealTwoQubitStates) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> d;
  for (int rep = 0; rep < 5; ++rep) {
    CVec target(4);
    for (auto& a : target) a = d(rng);
    target /= target.norm();
    FitOptions opts;
    opts.seed = static_cast<std::uint64_t>(rep);
    const FitResult r = fit_initial(AnsatzSpec::ry_layers(2, 2), QuantumState(2, target), 1.0, opts);
    EXPECT_LT(r.infidelity, 1e-10);
    EXPECT_GT(evaluate(r.state).amplitudes().dot(target).real(), 0.0);
  }
}

TEST(FitTest, UnreachableTargetRaisesFitError) {
  // A single RY layer without entanglement cannot reach a Bell state.
  CVec bell = CVec::Zero(4);
  bell[0] = bell[3] = 1 / std::sqrt(2.0);
  FitOptions opts;
  opts.restarts = 3;
  try {
    fit_initial(AnsatzSpec::ry_layers(2, 1, Entangler::None), QuantumState(2, bell), 1.0, opts);
    FAIL() << "expected FitError";
  } catch (const FitError& e) {
    EXPECT_GT(e.best_infidelity(), 0.1);
    EXPECT_EQ(e.best_beta().size(), 2);
  }
}

TEST(FitTest, RejectsBadInput) {
  EXPECT_THROW(fit_initial(AnsatzSpec::ry_layers(2, 2), QuantumState(3)), std::invalid_argument);
  EXPECT_THROW(fit_initial(AnsatzSpec::ry_layers(1, 1), QuantumState(1, CVec::Ones(2))),
               std::invalid_argument);
  EXPECT_THROW(fit_initial(AnsatzSpec::ry_layers(1, 1), QuantumState(1), 0.0),
               std::invalid_argument);
}

}  // namespace
}  // namespace qfe
