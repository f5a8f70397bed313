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

#include "qfe/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qfe {

namespace {

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

// T_N'(x) = N U_{N-1}(x), with U from its three-term recurrence.
double chebyshev_t_derivative(int N, double x) {
  double u_prev = 1.0;      // U_0
  double u = 2.0 * x;       // U_1
  if (N == 1) return 1.0;
  for (int k = 2; k < N; ++k) {
    const double next = 2.0 * x * u - u_prev;
    u_prev = u;
    u = next;
  }
  return static_cast<double>(N) * u;
}

}  // namespace

CollocationGrid build_grid(int N) {
  if (N < 1) throw std::invalid_argument("build_grid: N must be >= 1, got " + std::to_string(N));
  CollocationGrid g;
  g.N = N;
  g.x.resize(N + 1);
  g.cbar = Vec::Ones(N + 1);
  g.cbar[0] = g.cbar[N] = 2.0;
  for (int j = 0; j <= N; ++j) g.x[j] = std::cos(kPi * j / N);
  // symmetric rounding: x_{N-j} = -x_j, and the midpoint is exactly zero
  for (int j = 0; j <= N / 2; ++j) {
    g.x[N - j] = -g.x[j];
    if (2 * j == N) g.x[j] = 0.0;
  }
  return g;
}

Mat build_D1(const CollocationGrid& grid) {
  const Eigen::Index n = grid.size();
  Mat d = Mat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double row = 0.0;
    for (Eigen::Index l = 0; l < n; ++l) {
      if (l == j) continue;
      d(j, l) = (grid.cbar[j] / grid.cbar[l]) * sign_pow(static_cast<int>(j + l)) /
                (grid.x[j] - grid.x[l]);
      row += d(j, l);
    }
    d(j, j) = -row;
  }
  return d;
}

Mat build_D2(const CollocationGrid& grid) {
  const int N = grid.N;
  const double n2 = static_cast<double>(N) * N;
  const Vec& x = grid.x;
  const Vec& c = grid.cbar;
  Mat d(N + 1, N + 1);
  for (int j = 0; j <= N; ++j) {
    for (int l = 0; l <= N; ++l) {
      if ((j == 0 || j == N) && l == j) {
        d(j, l) = (n2 * n2 - 1.0) / 15.0;
      } else if (j == 0) {
        const double s = 1.0 - x[l];
        d(j, l) = (2.0 / 3.0) * sign_pow(l) / c[l] * ((2.0 * n2 + 1.0) * s - 6.0) / (s * s);
      } else if (j == N) {
        const double s = 1.0 + x[l];
        d(j, l) = (2.0 / 3.0) * sign_pow(l + N) / c[l] * ((2.0 * n2 + 1.0) * s - 6.0) / (s * s);
      } else if (j == l) {
        const double s = 1.0 - x[j] * x[j];
        d(j, l) = -((n2 - 1.0) * s + 3.0) / (3.0 * s * s);
      } else {
        const double dx = x[j] - x[l];
        d(j, l) = sign_pow(j + l) / c[l] * (x[j] * x[j] + x[j] * x[l] - 2.0) /
                  ((1.0 - x[j] * x[j]) * dx * dx);
      }
    }
  }
  return d;
}

Mat interior_restrict(const Mat& D, bool dirichlet_zero) {
  if (!dirichlet_zero) {
    throw std::invalid_argument("interior_restrict: only homogeneous Dirichlet data is supported");
  }
  if (D.rows() != D.cols()) throw std::invalid_argument("interior_restrict: matrix is not square");
  if (D.rows() < 4) {
    throw std::invalid_argument("interior_restrict: need N >= 3 (at least 4 points), got " +
                                std::to_string(D.rows()) + " points");
  }
  const Eigen::Index m = D.rows() - 2;
  return D.block(1, 1, m, m);
}

double cardinal(const CollocationGrid& grid, int j, double x) {
  if (j < 0 || j > grid.N) {
    throw std::out_of_range("cardinal: index " + std::to_string(j) + " out of range");
  }
  const double xj = grid.x[j];
  if (std::abs(x - xj) < 1e-14) return 1.0;
  const int N = grid.N;
  const double num = (1.0 - x * x) * chebyshev_t_derivative(N, x);
  return sign_pow(j + 1) * num / (grid.cbar[j] * N * N * (x - xj));
}

double interpolate(const CollocationGrid& grid, const Vec& values, double x) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("interpolate: expected " + std::to_string(grid.size()) +
                                " values, got " + std::to_string(values.size()));
  }
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    if (std::abs(x - grid.x[j]) < 1e-14) return values[j];
  }
  double sum = 0.0;
  for (int j = 0; j <= grid.N; ++j) sum += values[j] * cardinal(grid, j, x);
  return sum;
}

}  // namespace qfe
