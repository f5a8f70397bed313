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

#include "qfe/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qfe {

Vec hermite_values(double x, int count) {
  if (count < 0) throw std::invalid_argument("hermite_values: negative count");
  Vec h(count);
  if (count > 0) h[0] = 1.0;
  if (count > 1) h[1] = x;
  for (int k = 1; k + 1 < count; ++k) {
    h[k + 1] = (x * h[k] - std::sqrt(static_cast<double>(k)) * h[k - 1]) /
               std::sqrt(static_cast<double>(k + 1));
  }
  return h;
}

Vec hermite_function_values(double x, int count) {
  if (count < 0) throw std::invalid_argument("hermite_function_values: negative count");
  Vec psi(count);
  if (count > 0) psi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (count > 1) psi[1] = std::sqrt(2.0) * x * psi[0];
  for (int k = 1; k + 1 < count; ++k) {
    const double kk = static_cast<double>(k);
    psi[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * x * psi[k] - std::sqrt(kk / (kk + 1.0)) * psi[k - 1];
  }
  return psi;
}

namespace {

// Golub-Welsch for the probabilists' weight: Jacobi matrix with zero
// diagonal and off-diagonal sqrt(k).
std::pair<Vec, Vec> probabilists_rule(int nodes) {
  if (nodes < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
  Mat j = Mat::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) {
    j(k, k - 1) = j(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(j);
  Vec x = es.eigenvalues();
  Vec w = es.eigenvectors().row(0).transpose().cwiseAbs2();
  // exact symmetry about zero
  for (int k = 0; k < nodes / 2; ++k) {
    const double xs = 0.5 * (x[nodes - 1 - k] - x[k]);
    x[k] = -xs;
    x[nodes - 1 - k] = xs;
    const double ws = 0.5 * (w[k] + w[nodes - 1 - k]);
    w[k] = w[nodes - 1 - k] = ws;
  }
  if (nodes % 2 == 1) x[nodes / 2] = 0.0;
  w /= w.sum();
  return {x, w};
}

}  // namespace

QuadratureRule gauss_hermite(int nodes, int dims) {
  if (dims < 0) throw std::invalid_argument("gauss_hermite: negative dimension count");
  const auto [x, w] = probabilists_rule(nodes);
  Eigen::Index total = 1;
  for (int d = 0; d < dims; ++d) total *= nodes;
  QuadratureRule rule;
  rule.nodes.resize(total, dims);
  rule.weights.resize(total);
  for (Eigen::Index q = 0; q < total; ++q) {
    Eigen::Index rest = q;
    double weight = 1.0;
    // last dimension varies fastest
    for (int d = dims - 1; d >= 0; --d) {
      const Eigen::Index digit = rest % nodes;
      rest /= nodes;
      rule.nodes(q, d) = x[digit];
      weight *= w[digit];
    }
    rule.weights[q] = weight;
  }
  return rule;
}

std::pair<Vec, Vec> gauss_hermite_physicists(int nodes) {
  auto [x, w] = probabilists_rule(nodes);
  return {x / std::sqrt(2.0), w * std::sqrt(kPi)};
}

TripleTensor::TripleTensor(int N) : N_(N) {
  if (N < 1) throw std::invalid_argument("triple_products: N must be >= 1");
  data_.assign(static_cast<std::size_t>(N) * N * N, 0.0);
}

TripleTensor triple_products(int N) {
  TripleTensor e(N);
  const int nodes = (3 * N + 2) / 2;  // ceil((3N + 1) / 2)
  const QuadratureRule rule = gauss_hermite(nodes, 1);
  Mat h(rule.size(), N);
  for (Eigen::Index q = 0; q < rule.size(); ++q) h.row(q) = hermite_values(rule.nodes(q, 0), N);
  for (int l = 0; l < N; ++l) {
    const double norm = (rule.weights.array() * h.col(l).array().square()).sum();
    for (int i = 0; i < N; ++i) {
      for (int j = i; j < N; ++j) {
        const double v =
            (rule.weights.array() * h.col(l).array() * h.col(i).array() * h.col(j).array()).sum() /
            norm;
        e(l, i, j) = v;
        e(l, j, i) = v;
      }
    }
  }
  return e;
}

Mat galerkin_hamiltonian(const Vec& a_coeffs, int N) {
  if (a_coeffs.size() > N) {
    throw std::invalid_argument("galerkin_hamiltonian: " + std::to_string(a_coeffs.size()) +
                                " coefficients exceed the basis size " + std::to_string(N));
  }
  const TripleTensor e = triple_products(N);
  Mat h = Mat::Zero(N, N);
  for (int l = 0; l < N; ++l) {
    for (int j = 0; j < N; ++j) {
      for (Eigen::Index i = 0; i < a_coeffs.size(); ++i) {
        h(l, j) += a_coeffs[i] * e(l, static_cast<int>(i), j);
      }
    }
  }
  return h;
}

Moments extract_moments(const QuantumState& state, double alpha) {
  const cplx a0 = state[0];
  return {alpha * a0.real(), alpha * alpha * (1.0 - std::norm(a0))};
}

SampledMoments extract_moments_sampled(const QuantumState& state, double alpha,
                                       std::uint64_t shots, std::mt19937_64& rng) {
  if (shots == 0) throw std::invalid_argument("extract_moments_sampled: shots must be positive");
  const double p = std::clamp(std::norm(state[0]) / state.amplitudes().squaredNorm(), 0.0, 1.0);
  std::binomial_distribution<std::uint64_t> draw(shots, p);
  const double p_hat = static_cast<double>(draw(rng)) / static_cast<double>(shots);
  SampledMoments out;
  out.p0_estimate = p_hat;
  out.p0_standard_error = std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(shots));
  const double sign = state[0].real() < 0.0 ? -1.0 : 1.0;
  out.moments = {alpha * sign * std::sqrt(p_hat), alpha * alpha * (1.0 - p_hat)};
  return out;
}

double KlExpansion::eigenfunction(int i, double x) const {
  if (i < 0 || i >= eigenvalues.size()) {
    throw std::out_of_range("KlExpansion: eigenfunction index " + std::to_string(i));
  }
  return coefficients.col(i).dot(hermite_function_values(x, static_cast<int>(coefficients.rows())));
}

double KlExpansion::realization(double x, const Vec& xi) const {
  if (xi.size() != terms) {
    throw std::invalid_argument("KlExpansion: expected " + std::to_string(terms) +
                                " random variables, got " + std::to_string(xi.size()));
  }
  const Vec psi = hermite_function_values(x, static_cast<int>(coefficients.rows()));
  double value = mean(x);
  for (int i = 0; i < terms; ++i) {
    value += std::sqrt(std::max(eigenvalues[i], 0.0)) * coefficients.col(i).dot(psi) * xi[i];
  }
  return value;
}

double KlExpansion::covariance(double x, double y, int count) const {
  const int k = static_cast<int>(coefficients.rows());
  const Vec px = coefficients.transpose() * hermite_function_values(x, k);
  const Vec py = coefficients.transpose() * hermite_function_values(y, k);
  double sum = 0.0;
  for (int i = 0; i < std::min<int>(count, static_cast<int>(eigenvalues.size())); ++i) {
    sum += eigenvalues[i] * px[i] * py[i];
  }
  return sum;
}

KlExpansion kl_expand(Function1D mean, const Kernel& covariance, const KlOptions& options) {
  const int K = options.basis_size;
  if (K < 1) throw std::invalid_argument("kl_expand: basis size must be >= 1");
  if (options.terms && (*options.terms < 0 || *options.terms > K)) {
    throw std::invalid_argument("kl_expand: truncation must lie in [0, K]");
  }
  const auto [x, w] = gauss_hermite_physicists(options.quadrature_nodes);
  const Eigen::Index nq = x.size();
  // E(k, q) = psi_k(x_q) w_q e^{x_q^2}: plain integration weights on R.
  Mat e(K, nq);
  for (Eigen::Index q = 0; q < nq; ++q) {
    e.col(q) = hermite_function_values(x[q], K) * (w[q] * std::exp(x[q] * x[q]));
  }
  Mat c(nq, nq);
  for (Eigen::Index a = 0; a < nq; ++a) {
    for (Eigen::Index b = 0; b < nq; ++b) c(a, b) = covariance(x[a], x[b]);
  }
  Mat kmat = e * c * e.transpose();
  kmat = 0.5 * (kmat + kmat.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(kmat);
  const Vec lam_asc = es.eigenvalues();
  if (lam_asc[0] < -1e-10) {
    throw std::domain_error("kl_expand: eigenvalue " + std::to_string(lam_asc[0]) +
                            " is negative (covariance not PSD or quadrature under-resolved)");
  }
  KlExpansion out;
  out.mean = std::move(mean);
  out.eigenvalues.resize(K);
  out.coefficients.resize(K, K);
  for (int i = 0; i < K; ++i) {
    out.eigenvalues[i] = lam_asc[K - 1 - i];
    Vec d = es.eigenvectors().col(K - 1 - i);
    // deterministic sign: largest-magnitude component positive
    Eigen::Index arg;
    d.cwiseAbs().maxCoeff(&arg);
    if (d[arg] < 0.0) d = -d;
    out.coefficients.col(i) = d;
  }
  if (options.terms) {
    out.terms = *options.terms;
  } else {
    const double total = out.eigenvalues.cwiseMax(0.0).sum();
    double acc = 0.0;
    out.terms = K;
    for (int i = 0; i < K; ++i) {
      acc += std::max(out.eigenvalues[i], 0.0);
      if (acc >= options.energy_fraction * total) {
        out.terms = i + 1;
        break;
      }
    }
  }
  return out;
}

Vec pce_project(const Function1D& f, int N, int quadrature_nodes) {
  if (N < 1) throw std::invalid_argument("pce_project: N must be >= 1");
  const QuadratureRule rule = gauss_hermite(quadrature_nodes, 1);
  Vec c = Vec::Zero(N);
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const double xq = rule.nodes(q, 0);
    c += rule.weights[q] * f(xq) * hermite_values(xq, N);
  }
  return c;
}

double pce_l2_error(const Function1D& f, const Vec& coeffs, int quadrature_nodes) {
  const QuadratureRule rule = gauss_hermite(quadrature_nodes, 1);
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const double xq = rule.nodes(q, 0);
    const double r = f(xq) - coeffs.dot(hermite_values(xq, static_cast<int>(coeffs.size())));
    sum += rule.weights[q] * r * r;
  }
  return std::sqrt(sum);
}

}  // namespace qfe
