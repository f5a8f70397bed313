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

#include "qfe/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qfe/ansatz.hpp"
#include "qfe/pauli.hpp"
#include "qfe/spectral.hpp"
#include "qfe/stochastic.hpp"

namespace qfe {

namespace {

double pauli_roundtrip(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const Eigen::Index dim = Eigen::Index{1} << n;
    CMat a(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = {g(rng), g(rng)};
    }
    worst = std::max(worst, (to_matrix(decompose(a)) - a).norm());
    worst = std::max(worst, (to_matrix(split(decompose(a))) - a).norm());
  }
  return worst;
}

double d2_vs_d1_squared() {
  double worst = 0.0;
  for (int N = 2; N <= 16; ++N) {
    const CollocationGrid grid = build_grid(N);
    const Mat d1 = build_D1(grid);
    const Mat sq = d1 * d1;
    worst = std::max(worst, (build_D2(grid) - sq).norm() / sq.norm());
  }
  return worst;
}

double ansatz_finite_difference(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  const double h = 1e-5;
  double worst = 0.0;
  for (const auto& [n, layers] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{3, 4}}) {
    const AnsatzSpec spec = AnsatzSpec::ry_layers(n, layers);
    Vec theta(spec.num_parameters() + 1);
    theta[0] = scale(rng);
    for (Eigen::Index k = 1; k < theta.size(); ++k) theta[k] = angle(rng);
    const AnsatzState state(spec, theta);
    for (int k = 0; k <= spec.num_parameters(); ++k) {
      Vec plus = theta, minus = theta;
      plus[k] += h;
      minus[k] -= h;
      const CVec fd = (evaluate(AnsatzState(spec, plus)).amplitudes() -
                       evaluate(AnsatzState(spec, minus)).amplitudes()) /
                      (2.0 * h);
      const CVec analytic = derivative_state(state, k).amplitudes();
      worst = std::max(worst, (fd - analytic).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double hermite_orthonormality() {
  const int order = 9;  // h_0 .. h_8
  const QuadratureRule rule = gauss_hermite(order + 1, 1);
  Mat gram = Mat::Zero(order, order);
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const Vec h = hermite_values(rule.nodes(q, 0), order);
    gram += rule.weights[q] * h * h.transpose();
  }
  return (gram - Mat::Identity(order, order)).cwiseAbs().maxCoeff();
}

double hermite_function_orthonormality() {
  const int order = 9;
  const auto [x, w] = gauss_hermite_physicists(order + 1);
  Mat gram = Mat::Zero(order, order);
  for (Eigen::Index q = 0; q < x.size(); ++q) {
    const Vec psi = hermite_function_values(x[q], order) * std::exp(0.5 * x[q] * x[q]);
    gram += w[q] * psi * psi.transpose();
  }
  return (gram - Mat::Identity(order, order)).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;
  out.push_back({"pauli_roundtrip", pauli_roundtrip(rng), 1e-11});
  out.push_back({"d2_equals_d1_squared", d2_vs_d1_squared(), 1e-8});
  out.push_back({"ansatz_finite_difference", ansatz_finite_difference(rng), 1e-8});
  out.push_back({"hermite_orthonormality", hermite_orthonormality(), 1e-10});
  out.push_back({"hermite_function_orthonormality", hermite_function_orthonormality(), 1e-10});
  return out;
}

}  // namespace qfe
