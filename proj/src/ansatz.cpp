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

#include "qfe/ansatz.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/NonLinearOptimization>

namespace qfe {

std::string to_string(Entangler e) {
  switch (e) {
    case Entangler::ChainCX: return "chain-cx";
    case Entangler::ChainCZ: return "chain-cz";
    case Entangler::None: return "none";
  }
  return "?";
}

Entangler entangler_from_string(const std::string& name) {
  if (name == "chain-cx") return Entangler::ChainCX;
  if (name == "chain-cz") return Entangler::ChainCZ;
  if (name == "none") return Entangler::None;
  throw std::invalid_argument("unknown entangler \"" + name +
                              "\" (expected chain-cx, chain-cz or none)");
}

AnsatzSpec AnsatzSpec::ry_layers(int num_qubits, int layers, Entangler entangler) {
  AnsatzSpec spec;
  spec.num_qubits = num_qubits;
  spec.layers = layers;
  spec.entangler = entangler;
  spec.validate();
  return spec;
}

GateKind AnsatzSpec::axis(int k) const {
  if (k < 0 || k >= num_parameters()) {
    throw std::out_of_range("AnsatzSpec: rotation index " + std::to_string(k) +
                            " out of range [0, " + std::to_string(num_parameters()) + ")");
  }
  return axes.empty() ? GateKind::RY : axes[static_cast<std::size_t>(k)];
}

void AnsatzSpec::validate() const {
  if (num_qubits < 1) throw std::invalid_argument("AnsatzSpec: num_qubits must be >= 1");
  if (layers < 1) throw std::invalid_argument("AnsatzSpec: layers must be >= 1");
  if (!axes.empty()) {
    if (static_cast<int>(axes.size()) != num_parameters()) {
      throw std::invalid_argument("AnsatzSpec: " + std::to_string(axes.size()) +
                                  " axes given for " + std::to_string(num_parameters()) +
                                  " parameters");
    }
    for (GateKind g : axes) {
      if (g != GateKind::RX && g != GateKind::RY && g != GateKind::RZ) {
        throw std::invalid_argument("AnsatzSpec: rotation axes must be RX, RY or RZ");
      }
    }
  }
}

Circuit AnsatzSpec::build(const Vec& beta, int insert_after, std::string label) const {
  if (beta.size() != num_parameters()) {
    throw std::invalid_argument("AnsatzSpec::build: expected " +
                                std::to_string(num_parameters()) + " angles, got " +
                                std::to_string(beta.size()));
  }
  if (insert_after >= num_parameters()) {
    throw std::out_of_range("AnsatzSpec::build: insertion index " +
                            std::to_string(insert_after) + " out of range");
  }
  Circuit c(num_qubits, std::move(label));
  int k = 0;
  for (int layer = 0; layer < layers; ++layer) {
    for (int q = 0; q < num_qubits; ++q, ++k) {
      const GateKind kind = axis(k);
      c.add(Gate{kind, q, beta[k], {}});
      if (k == insert_after) {
        const GateKind generator =
            kind == GateKind::RX ? GateKind::X : kind == GateKind::RY ? GateKind::Y : GateKind::Z;
        c.add(Gate{generator, q, 0.0, {}});
      }
    }
    if (layer + 1 < layers && entangler != Entangler::None) {
      for (int q = 0; q + 1 < num_qubits; ++q) {
        c.add(entangler == Entangler::ChainCX ? Gate::x(q + 1, {q}) : Gate::z(q + 1, {q}));
      }
    }
  }
  return c;
}

AnsatzState::AnsatzState(AnsatzSpec s, Vec t) : spec(std::move(s)), theta(std::move(t)) {
  validate();
}

void AnsatzState::validate() const {
  spec.validate();
  if (theta.size() != spec.num_parameters() + 1) {
    throw std::invalid_argument("AnsatzState: theta has " + std::to_string(theta.size()) +
                                " entries, expected M+1 = " +
                                std::to_string(spec.num_parameters() + 1));
  }
  if (!(theta[0] > 0.0)) {
    throw std::invalid_argument("AnsatzState: alpha must be positive, got " +
                                std::to_string(theta[0]));
  }
}

QuantumState evaluate(const AnsatzState& state) {
  state.validate();
  QuantumState psi(state.spec.num_qubits);
  apply_circuit(psi, state.spec.build(state.beta()));
  psi.amplitudes() *= state.alpha();
  return psi;
}

cplx derivative_prefactor(const AnsatzState& state, int k) {
  if (k < 0 || k > state.num_parameters()) {
    throw std::out_of_range("derivative index " + std::to_string(k) + " out of range [0, " +
                            std::to_string(state.num_parameters()) + "]");
  }
  return k == 0 ? cplx{1.0, 0.0} : cplx{0.0, -0.5 * state.alpha()};
}

Circuit derivative_circuit(const AnsatzState& state, int k, std::string label) {
  derivative_prefactor(state, k);  // range check
  return state.spec.build(state.beta(), k - 1, std::move(label));
}

QuantumState derivative_state(const AnsatzState& state, int k) {
  state.validate();
  const cplx p = derivative_prefactor(state, k);
  QuantumState u(state.spec.num_qubits);
  apply_circuit(u, derivative_circuit(state, k));
  u.amplitudes() *= p;
  return u;
}

CMat derivative_states(const AnsatzState& state) {
  const int m = state.num_parameters();
  CMat d(Eigen::Index{1} << state.spec.num_qubits, m + 1);
  for (int k = 0; k <= m; ++k) d.col(k) = derivative_state(state, k).amplitudes();
  return d;
}

FitError::FitError(const std::string& what, double best_infidelity, Vec best_beta)
    : std::runtime_error(what), best_infidelity_(best_infidelity), best_beta_(std::move(best_beta)) {}

namespace {

// Residual r(beta) = [Re; Im](U(beta)|0> - target), zero-padded so that
// Eigen's LM sees at least as many residuals as unknowns.
struct FitFunctor {
  using Scalar = double;
  using InputType = Vec;
  using ValueType = Vec;
  using JacobianType = Mat;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const AnsatzSpec& spec;
  const CVec& target;
  int n_values;

  int inputs() const { return spec.num_parameters(); }
  int values() const { return n_values; }

  int operator()(const Vec& beta, Vec& fvec) const {
    const Eigen::Index dim = target.size();
    QuantumState psi(spec.num_qubits);
    apply_circuit(psi, spec.build(beta));
    fvec = Vec::Zero(n_values);
    const CVec diff = psi.amplitudes() - target;
    fvec.head(dim) = diff.real();
    fvec.segment(dim, dim) = diff.imag();
    return 0;
  }

  int df(const Vec& beta, Mat& fjac) const {
    const Eigen::Index dim = target.size();
    fjac = Mat::Zero(n_values, inputs());
    for (int k = 0; k < inputs(); ++k) {
      QuantumState u(spec.num_qubits);
      apply_circuit(u, spec.build(beta, k));
      const CVec col = cplx{0.0, -0.5} * u.amplitudes();
      fjac.col(k).head(dim) = col.real();
      fjac.col(k).segment(dim, dim) = col.imag();
    }
    return 0;
  }
};

double infidelity_of(const AnsatzSpec& spec, const Vec& beta, const CVec& target) {
  QuantumState psi(spec.num_qubits);
  apply_circuit(psi, spec.build(beta));
  return 1.0 - std::norm(psi.amplitudes().dot(target));
}

}  // namespace

FitResult fit_initial(const AnsatzSpec& spec, const QuantumState& target, double alpha,
                      const FitOptions& options) {
  spec.validate();
  if (target.num_qubits() != spec.num_qubits) {
    throw std::invalid_argument("fit_initial: target has " + std::to_string(target.num_qubits()) +
                                " qubits, ansatz has " + std::to_string(spec.num_qubits));
  }
  if (!target.is_normalized(1e-10)) {
    throw std::invalid_argument("fit_initial: target state is not normalized");
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("fit_initial: alpha must be positive");

  const int m = spec.num_parameters();
  const int n_values = std::max<int>(2 * static_cast<int>(target.dim()), m);
  FitFunctor functor{spec, target.amplitudes(), n_values};
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);

  Vec best_beta = Vec::Zero(m);
  double best = 1.0;
  {
    QuantumState psi(spec.num_qubits);
    apply_circuit(psi, spec.build(best_beta));
    if (psi.amplitudes().dot(target.amplitudes()).real() > 0.0) {
      best = infidelity_of(spec, best_beta, target.amplitudes());
    }
  }
  int restarts_used = 0;
  for (int r = 0; r < options.restarts && best > options.tolerance; ++r) {
    Vec beta(m);
    if (r == 0) {
      beta.setZero();
    } else {
      for (int k = 0; k < m; ++k) beta[k] = angle(rng);
    }
    Eigen::LevenbergMarquardt<FitFunctor> lm(functor);
    lm.parameters.maxfev = options.max_iterations;
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-15;
    lm.parameters.gtol = 0.0;
    lm.minimize(beta);
    restarts_used = r + 1;
    const double inf = infidelity_of(spec, beta, target.amplitudes());
    QuantumState psi(spec.num_qubits);
    apply_circuit(psi, spec.build(beta));
    const bool aligned = psi.amplitudes().dot(target.amplitudes()).real() > 0.0;
    if (aligned && inf < best) {
      best = inf;
      best_beta = beta;
    }
  }
  if (best > options.tolerance) {
    throw FitError("fit_initial: best infidelity " + std::to_string(best) +
                       " exceeds tolerance " + std::to_string(options.tolerance) + " after " +
                       std::to_string(restarts_used) + " restarts",
                   best, best_beta);
  }
  Vec theta(m + 1);
  theta[0] = alpha;
  theta.tail(m) = best_beta;
  return {AnsatzState(spec, std::move(theta)), std::max(best, 0.0), restarts_used};
}

}  // namespace qfe
