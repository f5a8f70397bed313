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

#include "qfe/problems.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace qfe {

std::string to_string(Readout r) {
  switch (r) {
    case Readout::RawCoefficients: return "coefficients";
    case Readout::PceMoments: return "pce-moments";
    case Readout::FieldMoments: return "field-moments";
  }
  return "?";
}

int ProblemInstance::num_qubits() const {
  return log2_exact(static_cast<std::uint64_t>(initial.size()));
}

void ProblemInstance::validate() const {
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() != initial.size()) {
    throw std::invalid_argument("problem \"" + name + "\": Hamiltonian and initial vector sizes differ");
  }
  if (!(initial.norm() > 0.0)) {
    throw std::invalid_argument("problem \"" + name + "\": initial vector is zero");
  }
}

ProblemInstance build_dense_ode() {
  ProblemInstance p;
  p.name = "dense-ode";
  p.hamiltonian.resize(4, 4);
  p.hamiltonian << -0.1, 0.4, 0.2, -0.7,
                   0.9, 0.1, -0.1, -1.1,
                   0.5, 0.2, -0.4, -0.5,
                   0.6, 0.5, 0.3, -1.6;
  p.initial = Vec::Zero(4);
  p.initial[0] = 1.0;
  return p;
}

ProblemInstance build_stochastic_ode(int N) {
  if (N < 2) throw std::invalid_argument("build_stochastic_ode: N must be >= 2");
  ProblemInstance p;
  p.name = "stochastic-ode";
  Vec a(2);
  a << kStochasticOdeMean, kStochasticOdeStd;
  p.hamiltonian = galerkin_hamiltonian(a, N);
  p.initial = Vec::Zero(N);
  p.initial[0] = 1.0;
  p.readout = Readout::PceMoments;
  return p;
}

double stochastic_ode_mean(double t) { return std::exp(-1.8 * t + 0.5 * t * t); }

double stochastic_ode_variance(double t) {
  return std::exp(-3.6 * t + t * t) * std::expm1(t * t);
}

ProblemInstance build_heat(double diffusivity, int N) {
  const CollocationGrid grid = build_grid(N);
  ProblemInstance p;
  p.name = "heat";
  p.hamiltonian = diffusivity * interior_restrict(build_D2(grid));
  p.grid = grid.x.segment(1, N - 1);
  p.initial = p.grid.unaryExpr([](double x) { return std::sin(kPi * x); });
  p.readout = Readout::RawCoefficients;
  return p;
}

double heat_reference(double x, double t, double diffusivity) {
  return std::exp(-diffusivity * kPi * kPi * t) * std::sin(kPi * x);
}

Mat heat_hamiltonian_for_field(const CollocationGrid& grid, const Vec& gamma) {
  if (gamma.size() != grid.size()) {
    throw std::invalid_argument("heat_hamiltonian_for_field: expected " +
                                std::to_string(grid.size()) + " field values, got " +
                                std::to_string(gamma.size()));
  }
  const Mat d1 = build_D1(grid);
  const Mat d2 = build_D2(grid);
  const Vec dgamma = d1 * gamma;
  const Mat full = dgamma.asDiagonal() * d1 + gamma.asDiagonal() * d2;
  return interior_restrict(full);
}

double stochastic_heat_mean_field(double x) { return 2.7 - 0.1 * std::sin(kPi * x); }

double stochastic_heat_covariance(double x, double y) {
  const double d = x - y;
  return std::exp(-0.5 * d * d);
}

StochasticHeatSet build_stochastic_heat(const StochasticHeatOptions& options) {
  const CollocationGrid grid = build_grid(options.N);
  KlOptions kl_opt;
  kl_opt.basis_size = options.kl_basis;
  kl_opt.quadrature_nodes = options.kl_quadrature_nodes;
  kl_opt.terms = options.terms;
  StochasticHeatSet set;
  set.kl = kl_expand(stochastic_heat_mean_field, stochastic_heat_covariance, kl_opt);
  set.energy_rule_terms = set.kl.terms;

  auto field_at = [&](const Vec& xi, int terms) {
    KlExpansion kl = set.kl;
    kl.terms = terms;
    return grid.x.unaryExpr([&](double x) { return kl.realization(x, xi); }).eval();
  };
  auto all_positive = [&](int terms) {
    const QuadratureRule rule = gauss_hermite(options.quadrature_nodes, terms);
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      if (!(field_at(rule.nodes.row(q).transpose(), terms).minCoeff() > 0.0)) return false;
    }
    return true;
  };
  int terms = set.kl.terms;
  if (!options.terms) {
    while (terms > 0 && !all_positive(terms)) --terms;
  }
  set.terms = terms;
  set.kl.terms = terms;

  const QuadratureRule rule = gauss_hermite(options.quadrature_nodes, terms);
  set.weights = rule.weights;
  set.node_points = rule.nodes;
  const Vec interior = grid.x.segment(1, options.N - 1);
  const Vec u0 = interior.unaryExpr([](double x) { return std::sin(kPi * x); });
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    ProblemInstance p;
    p.name = "stochastic-heat[" + std::to_string(q) + "]";
    p.hamiltonian = heat_hamiltonian_for_field(grid, field_at(rule.nodes.row(q).transpose(), terms));
    p.initial = u0;
    p.grid = interior;
    p.readout = Readout::FieldMoments;
    set.instances.push_back(std::move(p));
  }
  return set;
}

FieldMoments recombine(const std::vector<Vec>& solutions, const Vec& weights) {
  if (solutions.empty() || static_cast<Eigen::Index>(solutions.size()) != weights.size()) {
    throw std::invalid_argument("recombine: need one weight per solution");
  }
  const Eigen::Index m = solutions.front().size();
  FieldMoments out{Vec::Zero(m), Vec::Zero(m)};
  Vec second = Vec::Zero(m);
  for (std::size_t j = 0; j < solutions.size(); ++j) {
    if (solutions[j].size() != m) throw std::invalid_argument("recombine: ragged solutions");
    const double w = weights[static_cast<Eigen::Index>(j)];
    out.mean += w * solutions[j];
    second += w * solutions[j].cwiseAbs2();
  }
  out.variance = second - out.mean.cwiseAbs2();
  return out;
}

Vec classical_integrate(const Mat& H, const Vec& u0, double t) {
  if (H.rows() != H.cols() || H.rows() != u0.size()) {
    throw std::invalid_argument("classical_integrate: dimension mismatch");
  }
  if (!H.allFinite() || !u0.allFinite() || !std::isfinite(t)) {
    throw std::invalid_argument("classical_integrate: non-finite input");
  }
  const Mat ht = H * t;
  return ht.exp() * u0;
}

std::string to_json(const ProblemInstance& problem) {
  nlohmann::ordered_json j;
  j["name"] = problem.name;
  j["readout"] = to_string(problem.readout);
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < problem.hamiltonian.rows(); ++r) {
    rows.push_back(std::vector<double>(problem.hamiltonian.row(r).begin(),
                                       problem.hamiltonian.row(r).end()));
  }
  j["hamiltonian"] = rows;
  j["initial"] = std::vector<double>(problem.initial.begin(), problem.initial.end());
  j["grid"] = std::vector<double>(problem.grid.begin(), problem.grid.end());
  return j.dump();
}

}  // namespace qfe
