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

// Hermite chaos, Gauss-Hermite quadrature, stochastic Galerkin matrices,
// Karhunen-Loeve expansion and moment readout from encoded amplitudes.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "qfe/common.hpp"
#include "qfe/qsim.hpp"

namespace qfe {

/// h_0..h_{count-1}(x): orthonormal probabilists' Hermite polynomials,
/// E[h_i h_j] = delta_ij for x ~ N(0, 1).
Vec hermite_values(double x, int count);

/// Hermite functions psi_0..psi_{count-1}(x) = H_k(x) e^{-x^2/2} / sqrt(sqrt(pi) 2^k k!),
/// orthonormal in L2(R).
Vec hermite_function_values(double x, int count);

/// Tensor rule for E[f(xi)], xi ~ N(0, I_dims). Row q of `nodes` is one point.
struct QuadratureRule {
  Mat nodes;     // points x dims
  Vec weights;   // sum to 1
  Eigen::Index size() const noexcept { return weights.size(); }
  int dims() const noexcept { return static_cast<int>(nodes.cols()); }
};

/// `nodes`-point Gauss-Hermite rule for the standard normal (Golub-Welsch),
/// tensorized over `dims` dimensions (dims = 0 yields the single empty point).
QuadratureRule gauss_hermite(int nodes, int dims = 1);

/// Physicists' rule for the weight e^{-x^2}: nodes and weights (sum sqrt(pi)).
std::pair<Vec, Vec> gauss_hermite_physicists(int nodes);

/// e(l, i, j) = <h_l, h_i h_j> / <h_l, h_l> for indices < N.
class TripleTensor {
 public:
  explicit TripleTensor(int N);
  int size() const noexcept { return N_; }
  double operator()(int l, int i, int j) const {
    return data_[offset(l, i, j)];
  }
  double& operator()(int l, int i, int j) { return data_[offset(l, i, j)]; }

 private:
  std::size_t offset(int l, int i, int j) const {
    return (static_cast<std::size_t>(l) * N_ + i) * N_ + j;
  }
  int N_;
  std::vector<double> data_;
};

/// Computed with ceil((3N+1)/2)-point Gauss-Hermite quadrature.
TripleTensor triple_products(int N);

/// H(l, j) = sum_i a_i e(l, i, j); dmu/dt = H mu for du/dt = a(xi) u.
Mat galerkin_hamiltonian(const Vec& a_coeffs, int N);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// mean = alpha amp_0, variance = alpha^2 (1 - |amp_0|^2) for a normalized
/// encoding in an orthonormal basis with h_0 = 1.
Moments extract_moments(const QuantumState& state, double alpha);

struct SampledMoments {
  Moments moments;
  double p0_estimate = 0.0;      // estimate of |amp_0|^2
  double p0_standard_error = 0.0;
};

/// Same readout with |amp_0|^2 estimated from `shots` projective samples.
SampledMoments extract_moments_sampled(const QuantumState& state, double alpha,
                                       std::uint64_t shots, std::mt19937_64& rng);

using Function1D = std::function<double(double)>;
using Kernel = std::function<double(double, double)>;

struct KlOptions {
  int basis_size = 10;                // K
  std::optional<int> terms;           // L; default from the energy rule
  double energy_fraction = 0.95;
  int quadrature_nodes = 40;
};

/// gamma(x; xi) = mu(x) + sum_{i < L} sqrt(lambda_i) phi_i(x) xi_i with
/// phi_i = sum_k d(k, i) psi_k.
struct KlExpansion {
  Function1D mean;
  Vec eigenvalues;   // all K, descending
  Mat coefficients;  // K x K, column i = d_i
  int terms = 0;     // L

  double eigenfunction(int i, double x) const;
  double realization(double x, const Vec& xi) const;
  /// sum_{i < count} lambda_i phi_i(x) phi_i(y)
  double covariance(double x, double y, int count) const;
};

/// Eigen-decomposes K(k, m) = \iint C(x, y) psi_k(y) psi_m(x) dy dx, evaluated
/// by nested physicists' Gauss-Hermite quadrature. Throws std::domain_error on
/// an eigenvalue below -1e-10.
KlExpansion kl_expand(Function1D mean, const Kernel& covariance, const KlOptions& options = {});

/// c_i = E[f(xi) h_i(xi)] for i < N.
Vec pce_project(const Function1D& f, int N, int quadrature_nodes = 60);

/// sqrt(E[(f - sum_i c_i h_i)^2]).
double pce_l2_error(const Function1D& f, const Vec& coeffs, int quadrature_nodes = 60);

}  // namespace qfe
