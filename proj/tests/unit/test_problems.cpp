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

#include <gtest/gtest.h>
#include <json.hpp>

#include "qfe/problems.hpp"
#include "qfe/spectral.hpp"

namespace qfe {
namespace {

// Oracle: classical RK4 with a fixed step.
Vec rk4(const Mat& h, Vec u, double t, int steps) {
  const double dt = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Vec k1 = h * u;
    const Vec k2 = h * (u + 0.5 * dt * k1);
    const Vec k3 = h * (u + 0.5 * dt * k2);
    const Vec k4 = h * (u + dt * k3);
    u += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return u;
}

TEST(DenseOdeTest, Matrix) {
  const ProblemInstance p = build_dense_ode();
  EXPECT_EQ(p.hamiltonian(0, 0), -0.1);
  EXPECT_EQ(p.hamiltonian(3, 3), -1.6);
  EXPECT_NEAR(p.hamiltonian.trace(), -2.0, 1e-15);
  EXPECT_EQ(p.num_qubits(), 2);
  EXPECT_EQ((classical_integrate(p.hamiltonian, p.initial, 0.0) - p.initial).norm(), 0.0);
  EXPECT_NO_THROW(p.validate());
}

TEST(DenseOdeTest, ExponentialAgreesWithRk4) {
  const ProblemInstance p = build_dense_ode();
  const Vec a = classical_integrate(p.hamiltonian, p.initial, 1.0);
  const Vec b = rk4(p.hamiltonian, p.initial, 1.0, 2000);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(StochasticOdeTest, References) {
  EXPECT_NEAR(stochastic_ode_mean(0.5), std::exp(-0.775), 1e-15);
  EXPECT_NEAR(stochastic_ode_mean(0.5), 0.4607, 1e-4);
  EXPECT_EQ(stochastic_ode_variance(0.0), 0.0);
  EXPECT_NEAR(stochastic_ode_variance(0.5), std::exp(-1.55) * (std::exp(0.25) - 1), 1e-15);
  EXPECT_NEAR(stochastic_ode_variance(0.5), 0.0603, 1e-4);
}

TEST(StochasticOdeTest, GalerkinSystemReproducesMean) {
  const ProblemInstance p = build_stochastic_ode(4);
  EXPECT_EQ(p.readout, Readout::PceMoments);
  for (double t = 0.0; t <= 1.0; t += 0.1) {
    const Vec mu = classical_integrate(p.hamiltonian, p.initial, t);
    EXPECT_NEAR(mu[0], stochastic_ode_mean(t), 2e-2);
  }
  EXPECT_THROW(build_stochastic_ode(1), std::invalid_argument);
}

TEST(StochasticOdeTest, GalerkinVarianceConverges) {
  double prev = 1e300;
  for (int N : {2, 4, 8}) {
    const ProblemInstance p = build_stochastic_ode(N);
    const Vec mu = classical_integrate(p.hamiltonian, p.initial, 1.0);
    const double var = mu.tail(N - 1).squaredNorm();
    const double err = std::abs(var - stochastic_ode_variance(1.0));
    EXPECT_LT(err, prev);
    prev = err;
  }
}

TEST(HeatTest, Setup) {
  const ProblemInstance p = build_heat();
  EXPECT_EQ(p.hamiltonian.rows(), 8);
  EXPECT_EQ(p.num_qubits(), 3);
  EXPECT_EQ(p.initial[0], std::sin(kPi * p.grid[0]));
  EXPECT_NEAR(p.grid[0], std::cos(kPi / 9), 1e-15);
  EXPECT_NEAR(heat_reference(0.5, 1.0), std::exp(-0.3 * kPi * kPi), 1e-15);
  EXPECT_NEAR(std::exp(-0.3 * kPi * kPi), 0.0518, 1e-4);
}

TEST(HeatTest, InitialConditionDecaysAtFullWaveRate) {
  // sin(pi x) is odd, so only the odd modes of H are excited; the slowest of
  // those decays at alpha pi^2.
  const ProblemInstance p = build_heat();
  Eigen::EigenSolver<Mat> es(p.hamiltonian);
  double slowest_odd = -1e300;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Eigen::VectorXcd v = es.eigenvectors().col(i);
    if ((v + v.reverse()).norm() < 1e-8 * v.norm()) {
      slowest_odd = std::max(slowest_odd, es.eigenvalues()[i].real());
    }
  }
  EXPECT_NEAR(slowest_odd, -2.961, 0.02 * 2.961);
  // Rayleigh quotient of the initial vector agrees as well
  const double rq = p.initial.dot(p.hamiltonian * p.initial) / p.initial.squaredNorm();
  EXPECT_NEAR(rq, -2.961, 0.02 * 2.961);
}

TEST(HeatTest, CollocationMatchesAnalytic) {
  const ProblemInstance p = build_heat();
  for (double t = 0.0; t <= 1.0; t += 0.1) {
    const Vec u = classical_integrate(p.hamiltonian, p.initial, t);
    for (Eigen::Index j = 0; j < 8; ++j) EXPECT_NEAR(u[j], heat_reference(p.grid[j], t), 1e-4);
  }
}

TEST(StochasticHeatTest, ConstantFieldReducesToHeat) {
  const CollocationGrid g = build_grid(9);
  const Mat h = heat_hamiltonian_for_field(g, Vec::Constant(10, 0.3));
  EXPECT_LT((h - build_heat().hamiltonian).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(heat_hamiltonian_for_field(g, Vec::Ones(8)), std::invalid_argument);
}

TEST(StochasticHeatTest, DeterministicLimit) {
  StochasticHeatOptions opt;
  opt.terms = 0;
  const StochasticHeatSet set = build_stochastic_heat(opt);
  ASSERT_EQ(set.instances.size(), 1u);
  EXPECT_NEAR(set.weights[0], 1.0, 1e-15);
  const ProblemInstance& p = set.instances[0];
  std::vector<Vec> sols = {classical_integrate(p.hamiltonian, p.initial, 0.3)};
  EXPECT_EQ(recombine(sols, set.weights).variance.norm(), 0.0);
  // field is the mean profile
  const CollocationGrid g = build_grid(9);
  const Vec mu = g.x.unaryExpr([](double x) { return stochastic_heat_mean_field(x); });
  EXPECT_LT((p.hamiltonian - heat_hamiltonian_for_field(g, mu)).norm(), 1e-12);
}

TEST(StochasticHeatTest, DefaultSet) {
  const StochasticHeatSet set = build_stochastic_heat();
  EXPECT_EQ(set.energy_rule_terms, 6);
  EXPECT_EQ(set.terms, 3);
  EXPECT_EQ(set.instances.size(), 27u);
  EXPECT_NEAR(set.weights.sum(), 1.0, 1e-14);
  std::vector<Vec> init;
  for (const auto& p : set.instances) init.push_back(p.initial);
  const FieldMoments m0 = recombine(init, set.weights);
  for (Eigen::Index j = 0; j < 8; ++j) {
    EXPECT_NEAR(m0.mean[j], std::sin(kPi * set.instances[0].grid[j]), 1e-14);
    EXPECT_NEAR(m0.variance[j], 0.0, 1e-14);
  }
  // every instance is a forward (decaying) problem
  for (const auto& p : set.instances) {
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Mat>(p.hamiltonian).eigenvalues();
    for (const auto& e : ev) EXPECT_LT(e.real(), 0.0);
  }
}

TEST(RecombineTest, WeightedMoments) {
  std::vector<Vec> sols = {Vec::Constant(2, 1.0), Vec::Constant(2, 3.0)};
  Vec w(2);
  w << 0.25, 0.75;
  const FieldMoments m = recombine(sols, w);
  EXPECT_NEAR(m.mean[0], 2.5, 1e-15);
  EXPECT_NEAR(m.variance[1], 0.25 * 1 + 0.75 * 9 - 6.25, 1e-14);
  EXPECT_THROW(recombine(sols, Vec::Ones(3)), std::invalid_argument);
}

TEST(ClassicalIntegrateTest, Examples) {
  Mat rot(2, 2);
  rot << 0, 1, -1, 0;
  const Vec r = classical_integrate(rot, Vec::Unit(2, 0), kPi / 2);
  EXPECT_NEAR(r[0], 0.0, 1e-9);
  EXPECT_NEAR(r[1], -1.0, 1e-9);
  const Vec d = classical_integrate(-0.5 * Mat::Identity(2, 2), Vec::Unit(2, 0), 1.0);
  EXPECT_NEAR(d[0], std::exp(-0.5), 1e-15);
  EXPECT_EQ(d[1], 0.0);
  EXPECT_THROW(classical_integrate(rot, Vec::Ones(3), 1.0), std::invalid_argument);
}

TEST(ProblemJsonTest, Serializes) {
  const auto j = nlohmann::json::parse(to_json(build_dense_ode()));
  EXPECT_EQ(j["name"], "dense-ode");
  EXPECT_EQ(j["initial"].size(), 4u);
}

}  // namespace
}  // namespace qfe
