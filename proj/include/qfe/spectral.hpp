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

// Chebyshev collocation on Gauss-Chebyshev-Lobatto points.

#pragma once

#include "qfe/common.hpp"

namespace qfe {

/// x_j = cos(pi j / N), j = 0..N, descending from 1 to -1.
struct CollocationGrid {
  int N = 0;
  Vec x;
  Vec cbar;  // 2 at the end points, 1 inside

  Eigen::Index size() const noexcept { return x.size(); }
};

CollocationGrid build_grid(int N);

/// First-derivative matrix; off-diagonals (cbar_j / cbar_l)(-1)^{j+l}/(x_j - x_l),
/// diagonal from the negative row sum.
Mat build_D1(const CollocationGrid& grid);

/// Second-derivative matrix from its closed-form entries.
Mat build_D2(const CollocationGrid& grid);

/// Drops the first and last rows and columns (homogeneous Dirichlet data).
/// Throws for matrices smaller than 4x4 or when dirichlet_zero is false.
Mat interior_restrict(const Mat& D, bool dirichlet_zero = true);

/// Lagrange cardinal function S_j(x) of the grid (S_j(x_l) = delta_jl).
double cardinal(const CollocationGrid& grid, int j, double x);

/// sum_j values_j S_j(x).
double interpolate(const CollocationGrid& grid, const Vec& values, double x);

}  // namespace qfe
