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

#include "qfe/vqs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/SVD>

#include "qfe/hadamard_test.hpp"

namespace qfe {

std::string to_string(EvalMode m) { return m == EvalMode::Exact ? "exact" : "circuit"; }
std::string to_string(Strategy s) { return s == Strategy::Original ? "original" : "parallel"; }
std::string to_string(Integrator i) { return i == Integrator::Euler ? "euler" : "rk4"; }

EvalMode eval_mode_from_string(const std::string& name) {
  if (name == "exact") return EvalMode::Exact;
  if (name == "circuit") return EvalMode::Circuit;
  throw std::invalid_argument("unknown mode \"" + name + "\" (expected exact or circuit)");
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "original") return Strategy::Original;
  if (name == "parallel") return Strategy::Parallel;
  throw std::invalid_argument("unknown strategy \"" + name + "\" (expected original or parallel)");
}

Integrator integrator_from_string(const std::string& name) {
  if (name == "euler") return Integrator::Euler;
  if (name == "rk4") return Integrator::RK4;
  throw std::invalid_argument("unknown integrator \"" + name + "\" (expected euler or rk4)");
}

HamiltonianRepr HamiltonianRepr::from_dense(const CMat& matrix) {
  HamiltonianRepr h;
  h.decomposition = decompose(matrix);
  h.num_qubits = h.decomposition.num_qubits;
  h.dense = matrix;
  h.split = qfe::split(h.decomposition);
  return h;
}

HamiltonianRepr HamiltonianRepr::from_dense(const Mat& matrix) {
  return from_dense(CMat(matrix.cast<cplx>()));
}

namespace {

void require_matching(const AnsatzState& state, const HamiltonianRepr& h) {
  if (h.num_qubits != state.spec.num_qubits) {
    throw std::invalid_argument("Hamiltonian acts on " + std::to_string(h.num_qubits) +
                                " qubits, ansatz has " + std::to_string(state.spec.num_qubits));
  }
}

Circuit pauli_circuit(const PauliString& pauli) {
  Circuit c(pauli.num_qubits());
  for (int q = 0; q < pauli.num_qubits(); ++q) {
    switch (pauli.at(q)) {
      case Pauli::I: break;
      case Pauli::X: c.add(Gate::x(q)); break;
      case Pauli::Y: c.add(Gate::y(q)); break;
      case Pauli::Z: c.add(Gate::z(q)); break;
    }
  }
  return c;
}

ExecutionCounter& need_counter(ExecutionCounter* counter, const char* who) {
  if (counter == nullptr) {
    throw std::invalid_argument(std::string(who) + ": circuit mode needs an execution counter");
  }
  return *counter;
}

}  // namespace

Mat assemble_A(const AnsatzState& state, EvalMode mode, ExecutionCounter* counter) {
  state.validate();
  const int m1 = state.num_parameters() + 1;
  if (mode == EvalMode::Exact) {
    const CMat d = derivative_states(state);
    Mat a = (d.adjoint() * d).real();
    return 0.5 * (a + a.transpose());
  }
  ExecutionCounter& ctr = need_counter(counter, "assemble_A");
  std::vector<Circuit> circuits;
  std::vector<cplx> factors;
  for (int k = 0; k < m1; ++k) {
    circuits.push_back(derivative_circuit(state, k));
    factors.push_back(derivative_prefactor(state, k));
  }
  Mat a(m1, m1);
  const Circuit empty;
  parallel_for(static_cast<std::size_t>(m1 * m1), [&](std::size_t task) {
    const int k = static_cast<int>(task) / m1;
    const int i = static_cast<int>(task) % m1;
    const cplx z = std::conj(factors[static_cast<std::size_t>(k)]) * factors[static_cast<std::size_t>(i)];
    a(k, i) = weighted_real_overlap(z, empty, circuits[static_cast<std::size_t>(k)],
                                    circuits[static_cast<std::size_t>(i)], kLabelA, ctr);
  });
  return a;
}

Vec assemble_C(const AnsatzState& state, const HamiltonianRepr& h, Strategy strategy,
               EvalMode mode, ExecutionCounter* counter) {
  state.validate();
  require_matching(state, h);
  const int n = state.spec.num_qubits;
  const int m1 = state.num_parameters() + 1;
  Vec c = Vec::Zero(m1);
  if (h.decomposition.terms.empty()) return c;

  if (mode == EvalMode::Exact) {
    const CVec psi = evaluate(state).amplitudes();
    CVec hpsi = CVec::Zero(psi.size());
    if (strategy == Strategy::Original) {
      for (const auto& term : h.decomposition.terms) {
        hpsi += term.coefficient * apply_pauli_string(psi, term.pauli);
      }
    } else {
      for (const auto& part : h.split.parts) {
        if (part.empty()) continue;
        hpsi += (part_phase(part.cls) * part.scale) * apply_part_via_vblock(part, psi, n);
      }
    }
    const CMat d = derivative_states(state);
    return (d.adjoint() * hpsi).real();
  }

  ExecutionCounter& ctr = need_counter(counter, "assemble_C");
  if (strategy == Strategy::Parallel) {
    std::vector<const HamiltonianPart*> parts;
    for (const auto& part : h.split.parts) {
      if (!part.empty()) parts.push_back(&part);
    }
    const std::size_t np = parts.size();
    Mat terms = Mat::Zero(m1, static_cast<Eigen::Index>(np));
    parallel_for(static_cast<std::size_t>(m1) * np, [&](std::size_t task) {
      const int k = static_cast<int>(task / np);
      const std::size_t l = task % np;
      terms(k, static_cast<Eigen::Index>(l)) =
          parallel_C_term(state, *parts[l], k, EvalMode::Circuit, &ctr, kLabelCParallel);
    });
    return terms.rowwise().sum();
  }

  const auto& pauli_terms = h.decomposition.terms;
  const std::size_t np = pauli_terms.size();
  std::vector<Circuit> kets;
  for (const auto& term : pauli_terms) {
    Circuit ket = state.spec.build(state.beta());
    ket.append(pauli_circuit(term.pauli));
    kets.push_back(std::move(ket));
  }
  std::vector<Circuit> bras;
  for (int k = 0; k < m1; ++k) bras.push_back(derivative_circuit(state, k));
  Mat terms = Mat::Zero(m1, static_cast<Eigen::Index>(np));
  const Circuit empty;
  parallel_for(static_cast<std::size_t>(m1) * np, [&](std::size_t task) {
    const int k = static_cast<int>(task / np);
    const std::size_t j = task % np;
    const cplx z = std::conj(derivative_prefactor(state, k)) * state.alpha() *
                   pauli_terms[j].coefficient;
    terms(k, static_cast<Eigen::Index>(j)) =
        weighted_real_overlap(z, empty, bras[static_cast<std::size_t>(k)], kets[j],
                              kLabelCOriginal, ctr);
  });
  return terms.rowwise().sum();
}

SolverError::SolverError(const std::string& what, long step)
    : std::runtime_error(step >= 0 ? what + " (step " + std::to_string(step) + ")" : what),
      step_(step) {}

StepSolution solve_step(const Mat& A, const Vec& C, double regularization,
                        int refinement_sweeps) {
  if (A.rows() != A.cols() || A.rows() != C.size()) {
    throw std::invalid_argument("solve_step: A is " + std::to_string(A.rows()) + "x" +
                                std::to_string(A.cols()) + ", C has " +
                                std::to_string(C.size()) + " entries");
  }
  if (!A.allFinite() || !C.allFinite()) throw SolverError("solve_step: non-finite A or C");
  if (!(regularization >= 0.0)) throw std::invalid_argument("solve_step: negative regularization");
  const Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  Vec filter(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double denom = s[i] * s[i] + regularization;
    filter[i] = denom > 0.0 ? s[i] / denom : 0.0;
  }
  auto ridge = [&](const Vec& rhs) -> Vec {
    return svd.matrixV() * filter.asDiagonal() * (svd.matrixU().transpose() * rhs);
  };
  Vec x = ridge(C);
  for (int sweep = 0; sweep < refinement_sweeps; ++sweep) x += ridge(C - A * x);
  if (!x.allFinite()) throw SolverError("solve_step: non-finite solution");
  return {x, (A * x - C).norm()};
}

double Trajectory::max_residual() const {
  return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

Trajectory evolve(const VqsProblem& problem, const AnsatzSpec& spec, ExecutionCounter* counter) {
  const VqsOptions& opt = problem.options;
  const HamiltonianRepr& h = problem.hamiltonian;
  if (!(opt.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  if (!(opt.t_final >= 0.0)) throw std::invalid_argument("evolve: t_final must be >= 0");
  if (h.num_qubits != spec.num_qubits) {
    throw std::invalid_argument("evolve: Hamiltonian acts on " + std::to_string(h.num_qubits) +
                                " qubits, ansatz has " + std::to_string(spec.num_qubits));
  }
  const CVec& u0 = problem.initial_coefficients;
  if (u0.size() != (Eigen::Index{1} << spec.num_qubits)) {
    throw std::invalid_argument("evolve: initial vector has " + std::to_string(u0.size()) +
                                " entries, expected 2^" + std::to_string(spec.num_qubits));
  }
  const double alpha0 = u0.norm();
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) {
    throw std::invalid_argument("evolve: initial vector must be finite and non-zero");
  }

  const FitResult fit =
      fit_initial(spec, QuantumState(spec.num_qubits, u0 / alpha0), alpha0, opt.fit);

  ExecutionCounter local;
  ExecutionCounter* ctr = counter != nullptr ? counter : &local;

  const long steps = std::lround(opt.t_final / opt.dt);
  Trajectory traj;
  traj.fit_infidelity = fit.infidelity;
  traj.theta_history.resize(steps + 1, spec.num_parameters() + 1);
  traj.times.reserve(static_cast<std::size_t>(steps + 1));

  Vec theta = fit.state.theta;
  auto record = [&](long s) {
    traj.times.push_back(static_cast<double>(s) * opt.dt);
    traj.theta_history.row(s) = theta.transpose();
    if (opt.record_states) traj.state_history.push_back(evaluate(AnsatzState(spec, theta)).amplitudes());
  };
  record(0);

  long current_step = 0;
  auto rhs = [&](const Vec& th) -> Vec {
    AnsatzState st;
    try {
      st = AnsatzState(spec, th);
    } catch (const std::invalid_argument& e) {
      throw SolverError(std::string("evolve: invalid parameters: ") + e.what(), current_step);
    }
    const Mat a = assemble_A(st, opt.mode, ctr);
    const Vec c = assemble_C(st, h, opt.strategy, opt.mode, ctr);
    if (!a.allFinite() || !c.allFinite()) {
      throw SolverError("evolve: non-finite McLachlan system", current_step);
    }
    StepSolution sol;
    try {
      sol = solve_step(a, c, opt.regularization, opt.refinement_sweeps);
    } catch (const SolverError& e) {
      throw SolverError(e.what(), current_step);
    }
    traj.residuals.push_back(sol.residual);
    return sol.theta_dot;
  };

  for (long s = 0; s < steps; ++s) {
    current_step = s;
    const std::uint64_t before = ctr->total();
    if (opt.integrator == Integrator::Euler) {
      theta += opt.dt * rhs(theta);
    } else {
      const Vec k1 = rhs(theta);
      const Vec k2 = rhs(theta + 0.5 * opt.dt * k1);
      const Vec k3 = rhs(theta + 0.5 * opt.dt * k2);
      const Vec k4 = rhs(theta + opt.dt * k3);
      theta += (opt.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!theta.allFinite()) throw SolverError("evolve: non-finite theta", s);
    if (!(theta[0] > 0.0)) throw SolverError("evolve: normalization factor reached zero", s);
    if (s == 0) traj.circuits_first_step = ctr->total() - before;
    record(s + 1);
  }
  return traj;
}

std::uint64_t original_circuit_count(std::uint64_t M, std::uint64_t P) {
  return (M + 1) * (M + 1) + P * (M + 1);
}

std::uint64_t parallel_circuit_count(std::uint64_t M, std::uint64_t non_empty_parts) {
  return (M + 1) * (M + 1) + non_empty_parts * (M + 1);
}

}  // namespace qfe
