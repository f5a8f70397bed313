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

// Benchmark problems (dense linear ODE, stochastic ODE, heat equation and
// heat equation with a random diffusivity field) and their references.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfe/common.hpp"
#include "qfe/spectral.hpp"
#include "qfe/stochastic.hpp"

namespace qfe {

/// How the evolved coefficient vector is read.
enum class Readout { RawCoefficients, PceMoments, FieldMoments };

std::string to_string(Readout r);

/// du/dt = H u, u(0) = initial.
struct ProblemInstance {
  std::string name;
  Mat hamiltonian;
  Vec initial;
  Readout readout = Readout::RawCoefficients;
  Vec grid;  // spatial points of the unknowns (collocation problems only)

  int num_qubits() const;
  void validate() const;
};

/// The 4x4 dense system with u(0) = (1, 0, 0, 0).
ProblemInstance build_dense_ode();

inline constexpr double kStochasticOdeMean = -1.8;
inline constexpr double kStochasticOdeStd = 1.0;

/// Galerkin system of du/dt = a u with a ~ N(-1.8, 1), u(0) = 1, on N
/// orthonormal Hermite modes.
ProblemInstance build_stochastic_ode(int N);
double stochastic_ode_mean(double t);
double stochastic_ode_variance(double t);

inline constexpr double kHeatDiffusivity = 0.3;
inline constexpr int kHeatGridN = 9;

/// diffusivity * D2 restricted to the interior of the N-grid, u(0) = sin(pi x).
ProblemInstance build_heat(double diffusivity = kHeatDiffusivity, int N = kHeatGridN);
double heat_reference(double x, double t, double diffusivity = kHeatDiffusivity);

/// diag(D1 gamma) D1 + diag(gamma) D2, interior-restricted; gamma sampled on
/// all N+1 grid points.
Mat heat_hamiltonian_for_field(const CollocationGrid& grid, const Vec& gamma);

struct StochasticHeatOptions {
  int N = kHeatGridN;
  int kl_basis = 10;
  int kl_quadrature_nodes = 40;
  /// Explicit KL truncation. When unset, the energy rule is applied and then
  /// lowered until every node realization is positive on the grid.
  std::optional<int> terms;
  int quadrature_nodes = 3;
};

double stochastic_heat_mean_field(double x);
double stochastic_heat_covariance(double x, double y);

struct StochasticHeatSet {
  std::vector<ProblemInstance> instances;
  Vec weights;
  Mat node_points;  // instances x terms
  int terms = 0;
  int energy_rule_terms = 0;
  KlExpansion kl;
};

StochasticHeatSet build_stochastic_heat(const StochasticHeatOptions& options = {});

struct FieldMoments {
  Vec mean;
  Vec variance;
};

/// mean = sum_j w_j u_j, variance = sum_j w_j u_j^2 - mean^2.
FieldMoments recombine(const std::vector<Vec>& solutions, const Vec& weights);

/// expm(H t) u0.
Vec classical_integrate(const Mat& H, const Vec& u0, double t);

/// {name, readout, hamiltonian, initial, grid}.
std::string to_json(const ProblemInstance& problem);

}  // namespace qfe
