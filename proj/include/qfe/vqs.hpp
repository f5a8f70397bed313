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

// McLachlan variational simulation of d|psi>/dt = H |psi> for a general
// (non-Hermitian) H.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfe/ansatz.hpp"
#include "qfe/common.hpp"
#include "qfe/pauli.hpp"
#include "qfe/ppo.hpp"
#include "qfe/qsim.hpp"

namespace qfe {

/// How C is evaluated. Original: one Hadamard test per (k, Pauli term).
/// Parallel: one V-block test per (k, non-empty split part).
enum class Strategy { Original, Parallel };
enum class Integrator { Euler, RK4 };

std::string to_string(EvalMode m);
std::string to_string(Strategy s);
std::string to_string(Integrator i);
EvalMode eval_mode_from_string(const std::string& name);
Strategy strategy_from_string(const std::string& name);
Integrator integrator_from_string(const std::string& name);

/// Dense matrix together with its Pauli decomposition and split.
struct HamiltonianRepr {
  int num_qubits = 0;
  CMat dense;
  PauliDecomposition decomposition;
  SplitHamiltonian split;

  static HamiltonianRepr from_dense(const CMat& matrix);
  static HamiltonianRepr from_dense(const Mat& matrix);
};

/// Labels under which circuit-mode runs are counted.
inline constexpr const char* kLabelA = "vqs.A";
inline constexpr const char* kLabelCOriginal = "vqs.C.original";
inline constexpr const char* kLabelCParallel = "vqs.C.parallel";

/// A_ik = Re<d_k psi|d_i psi>. Circuit mode runs (M+1)^2 Hadamard tests.
Mat assemble_A(const AnsatzState& state, EvalMode mode = EvalMode::Exact,
               ExecutionCounter* counter = nullptr);

/// C_k = Re<d_k psi|H|psi>.
Vec assemble_C(const AnsatzState& state, const HamiltonianRepr& h, Strategy strategy,
               EvalMode mode = EvalMode::Exact, ExecutionCounter* counter = nullptr);

/// Raised on non-finite data or a failed step; step() is -1 outside evolve.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, long step = -1);
  long step() const noexcept { return step_; }

 private:
  long step_;
};

struct StepSolution {
  Vec theta_dot;
  double residual = 0.0;  // ||A theta_dot - C||
};

/// Tikhonov solution (A^T A + lambda I)^{-1} A^T C, followed by
/// `refinement_sweeps` rounds of iterative refinement on the residual.
StepSolution solve_step(const Mat& A, const Vec& C, double regularization = 1e-8,
                        int refinement_sweeps = 1);

struct VqsOptions {
  double dt = 1e-3;
  double t_final = 1.0;
  EvalMode mode = EvalMode::Exact;
  Strategy strategy = Strategy::Parallel;
  Integrator integrator = Integrator::Euler;
  double regularization = 1e-8;
  int refinement_sweeps = 1;
  FitOptions fit;
  bool record_states = true;
};

struct VqsProblem {
  HamiltonianRepr hamiltonian;
  CVec initial_coefficients;
  VqsOptions options;
};

struct Trajectory {
  std::vector<double> times;
  Mat theta_history;                 // rows = recorded times, cols = M+1
  std::vector<CVec> state_history;   // decoded alpha U(beta)|0>, if recorded
  std::vector<double> residuals;     // per step
  double fit_infidelity = 0.0;
  std::uint64_t circuits_first_step = 0;

  std::size_t size() const noexcept { return times.size(); }
  double max_residual() const;
};

/// Fits theta(0) to the initial coefficients and steps theta forward.
/// `counter`, when given, accumulates every circuit-mode execution.
Trajectory evolve(const VqsProblem& problem, const AnsatzSpec& spec,
                  ExecutionCounter* counter = nullptr);

/// Per-step circuit counts: (M+1)^2 + P(M+1) and (M+1)^2 + 4(M+1).
std::uint64_t original_circuit_count(std::uint64_t M, std::uint64_t P);
std::uint64_t parallel_circuit_count(std::uint64_t M, std::uint64_t non_empty_parts = 4);

}  // namespace qfe
