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

#include "qfe/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qfe/ansatz.hpp"
#include "qfe/common.hpp"
#include "qfe/problems.hpp"
#include "qfe/selftest.hpp"
#include "qfe/spectral.hpp"
#include "qfe/stochastic.hpp"
#include "qfe/vqs.hpp"

namespace qfe::cli {

namespace {

using ojson = nlohmann::ordered_json;

const std::set<std::string> kProblems = {"dense-ode", "stochastic-ode", "heat",
                                         "stochastic-heat"};
const std::set<std::string> kSweeps = {"heat", "interpolation", "constant", "pce",
                                       "stochastic-ode"};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

int default_layers(int n) {
  switch (n) {
    case 1: return 1;
    case 2: return 2;
    case 3: return 4;
    default: return n + 1;
  }
}

int default_qubits(const std::string& problem) {
  if (problem == "dense-ode") return 2;
  if (problem == "stochastic-ode") return 3;
  return 3;
}

// Typed readers that collect messages instead of throwing on the first one.
struct JsonReader {
  const nlohmann::json& j;
  std::vector<std::string>& errors;

  template <class T>
  void read(const char* key, T& out, bool (nlohmann::json::*check)() const noexcept,
            const char* type_name) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!(v.*check)()) {
      errors.push_back(std::string("'") + key + "' must be " + type_name);
      return;
    }
    out = v.get<T>();
  }
};

void apply_json(RunConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  static const std::set<std::string> known = {
      "problem", "n",    "layers", "M",      "dt",     "t_final", "mode",
      "strategy", "integrator", "seed", "stride", "output", "format"};
  std::vector<std::string> errors;
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) errors.push_back("unknown key '" + key + "'");
  }
  JsonReader r{j, errors};
  r.read("problem", c.problem, &nlohmann::json::is_string, "a string");
  r.read("n", c.n, &nlohmann::json::is_number_integer, "an integer");
  r.read("layers", c.layers, &nlohmann::json::is_number_integer, "an integer");
  r.read("M", c.M, &nlohmann::json::is_number_integer, "an integer");
  r.read("dt", c.dt, &nlohmann::json::is_number, "a number");
  r.read("t_final", c.t_final, &nlohmann::json::is_number, "a number");
  r.read("mode", c.mode, &nlohmann::json::is_string, "a string");
  r.read("strategy", c.strategy, &nlohmann::json::is_string, "a string");
  r.read("integrator", c.integrator, &nlohmann::json::is_string, "a string");
  r.read("seed", c.seed, &nlohmann::json::is_number_unsigned, "a non-negative integer");
  r.read("stride", c.stride, &nlohmann::json::is_number_integer, "an integer");
  r.read("output", c.output, &nlohmann::json::is_string, "a string");
  r.read("format", c.format, &nlohmann::json::is_string, "a string");
  if (!errors.empty()) {
    std::string msg = "config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
}

std::string join_set(const std::set<std::string>& s) {
  std::string out;
  for (const auto& v : s) out += (out.empty() ? "" : ", ") + v;
  return out;
}

// Record the rows at stride multiples plus the final time.
std::vector<std::size_t> recorded_rows(std::size_t count, int stride) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % static_cast<std::size_t>(stride) == 0 || i + 1 == count) rows.push_back(i);
  }
  return rows;
}

VqsOptions vqs_options(const RunConfig& c) {
  VqsOptions o;
  o.dt = c.dt;
  o.t_final = c.t_final;
  o.mode = eval_mode_from_string(c.mode);
  o.strategy = strategy_from_string(c.strategy);
  o.integrator = integrator_from_string(c.integrator);
  o.fit.seed = c.seed;
  return o;
}

AnsatzSpec ansatz_for(const RunConfig& c) { return AnsatzSpec::ry_layers(c.n, c.layers); }

ojson circuit_block(const RunConfig& c, const ExecutionCounter& counter,
                    std::uint64_t per_step, std::uint64_t pauli_terms,
                    std::uint64_t non_empty_parts, std::size_t instances) {
  ojson b = ojson::object();
  b["mode"] = c.mode;
  b["strategy"] = c.strategy;
  b["instances"] = instances;
  b["parameters"] = c.M + 1;
  b["pauli_terms"] = pauli_terms;
  b["non_empty_parts"] = non_empty_parts;
  const auto m = static_cast<std::uint64_t>(c.M);
  ojson formula = ojson::object();
  formula["original"] = instances * original_circuit_count(m, pauli_terms / instances);
  formula["parallel"] = instances * parallel_circuit_count(m, non_empty_parts / instances);
  // Same formula with every one of the 4^n strings counted, zero or not.
  formula["original_full_basis"] =
      instances * original_circuit_count(m, std::uint64_t{1} << (2 * c.n));
  b["formula_per_step"] = formula;
  b["executed_per_step"] = per_step;
  b["executed_total"] = counter.total();
  ojson labels = ojson::object();
  for (const auto& [label, count] : counter.tallies()) labels[label] = count;
  b["by_label"] = labels;
  return b;
}

std::vector<std::string> theta_columns(int M, const std::string& prefix = "theta_") {
  std::vector<std::string> cols;
  for (int k = 0; k <= M; ++k) cols.push_back(prefix + std::to_string(k));
  return cols;
}

RunResult run_single(const RunConfig& c) {
  ProblemInstance problem;
  if (c.problem == "dense-ode") {
    problem = build_dense_ode();
  } else if (c.problem == "stochastic-ode") {
    problem = build_stochastic_ode(1 << c.n);
  } else {
    problem = build_heat(kHeatDiffusivity, (1 << c.n) + 1);
  }
  VqsProblem vp{HamiltonianRepr::from_dense(problem.hamiltonian),
                problem.initial.cast<cplx>(), vqs_options(c)};
  ExecutionCounter counter;
  const Trajectory tr = evolve(vp, ansatz_for(c), &counter);

  const int dim = 1 << c.n;
  Table table;
  table.columns.push_back("t");
  for (auto& col : theta_columns(c.M)) table.columns.push_back(col);
  const bool moments = problem.readout == Readout::PceMoments;
  if (moments) {
    for (const char* col : {"sol_mean", "sol_var", "ref_mean", "ref_var"}) table.columns.push_back(col);
  } else {
    for (int j = 0; j < dim; ++j) table.columns.push_back("sol_" + std::to_string(j));
    for (int j = 0; j < dim; ++j) table.columns.push_back("ref_" + std::to_string(j));
  }
  table.columns.push_back("abs_err_max");

  for (std::size_t i : recorded_rows(tr.size(), c.stride)) {
    const double t = tr.times[i];
    std::vector<double> row{t};
    for (int k = 0; k <= c.M; ++k) row.push_back(tr.theta_history(static_cast<Eigen::Index>(i), k));
    const CVec& amps = tr.state_history[i];
    double err = 0.0;
    if (moments) {
      const double alpha = tr.theta_history(static_cast<Eigen::Index>(i), 0);
      const Moments m = extract_moments(QuantumState(c.n, amps / alpha), alpha);
      const double rm = stochastic_ode_mean(t);
      const double rv = stochastic_ode_variance(t);
      row.insert(row.end(), {m.mean, m.variance, rm, rv});
      err = std::max(std::abs(m.mean - rm), std::abs(m.variance - rv));
    } else {
      Vec ref(dim);
      if (c.problem == "heat") {
        for (int j = 0; j < dim; ++j) ref[j] = heat_reference(problem.grid[j], t);
      } else {
        ref = classical_integrate(problem.hamiltonian, problem.initial, t);
      }
      for (int j = 0; j < dim; ++j) row.push_back(amps[j].real());
      for (int j = 0; j < dim; ++j) row.push_back(ref[j]);
      err = (amps.real() - ref).cwiseAbs().maxCoeff();
    }
    row.push_back(err);
    table.rows.push_back(std::move(row));
  }
  const auto& split = vp.hamiltonian.split;
  return {std::move(table),
          circuit_block(c, counter, tr.circuits_first_step, vp.hamiltonian.decomposition.size(),
                        split.non_empty_parts(), 1)};
}

RunResult run_stochastic_heat(const RunConfig& c) {
  StochasticHeatOptions opts;
  opts.N = (1 << c.n) + 1;
  const StochasticHeatSet set = build_stochastic_heat(opts);
  const std::size_t count = set.instances.size();
  const AnsatzSpec spec = ansatz_for(c);

  std::vector<Trajectory> trajectories(count);
  std::vector<HamiltonianRepr> reprs(count);
  ExecutionCounter counter;
  parallel_for(count, [&](std::size_t s) {
    const auto& inst = set.instances[s];
    reprs[s] = HamiltonianRepr::from_dense(inst.hamiltonian);
    VqsProblem vp{reprs[s], inst.initial.cast<cplx>(), vqs_options(c)};
    trajectories[s] = evolve(vp, spec, &counter);
  });

  const int dim = 1 << c.n;
  Table table;
  table.columns.push_back("t");
  for (std::size_t s = 0; s < count; ++s) {
    for (auto& col : theta_columns(c.M, "theta_" + std::to_string(s) + "_")) {
      table.columns.push_back(col);
    }
  }
  for (const char* prefix : {"sol_mean_", "sol_var_", "ref_mean_", "ref_var_"}) {
    for (int j = 0; j < dim; ++j) table.columns.push_back(prefix + std::to_string(j));
  }
  table.columns.push_back("abs_err_max");

  const std::size_t steps = trajectories.front().size();
  for (std::size_t i : recorded_rows(steps, c.stride)) {
    const double t = trajectories.front().times[i];
    std::vector<double> row{t};
    std::vector<Vec> vqs_sols;
    std::vector<Vec> ref_sols;
    for (std::size_t s = 0; s < count; ++s) {
      const Trajectory& tr = trajectories[s];
      for (int k = 0; k <= c.M; ++k) row.push_back(tr.theta_history(static_cast<Eigen::Index>(i), k));
      vqs_sols.push_back(tr.state_history[i].real());
      ref_sols.push_back(classical_integrate(set.instances[s].hamiltonian, set.instances[s].initial, t));
    }
    const FieldMoments sol = recombine(vqs_sols, set.weights);
    const FieldMoments ref = recombine(ref_sols, set.weights);
    for (const Vec* v : {&sol.mean, &sol.variance, &ref.mean, &ref.variance}) {
      for (int j = 0; j < dim; ++j) row.push_back((*v)[j]);
    }
    row.push_back(std::max((sol.mean - ref.mean).cwiseAbs().maxCoeff(),
                           (sol.variance - ref.variance).cwiseAbs().maxCoeff()));
    table.rows.push_back(std::move(row));
  }

  std::uint64_t per_step = 0;
  std::uint64_t terms = 0;
  std::uint64_t parts = 0;
  for (std::size_t s = 0; s < count; ++s) {
    per_step += trajectories[s].circuits_first_step;
    terms += reprs[s].decomposition.size();
    parts += reprs[s].split.non_empty_parts();
  }
  // Per-instance formulas differ with P; report exact sums.
  ojson block = circuit_block(c, counter, per_step, terms, parts, count);
  std::uint64_t original = 0;
  std::uint64_t parallel = 0;
  for (std::size_t s = 0; s < count; ++s) {
    original += original_circuit_count(static_cast<std::uint64_t>(c.M), reprs[s].decomposition.size());
    parallel += parallel_circuit_count(static_cast<std::uint64_t>(c.M), reprs[s].split.non_empty_parts());
  }
  block["formula_per_step"]["original"] = original;
  block["formula_per_step"]["parallel"] = parallel;
  block["formula_per_step"]["original_full_basis"] =
      count * original_circuit_count(static_cast<std::uint64_t>(c.M), std::uint64_t{1} << (2 * c.n));
  block["kl_terms"] = set.terms;
  return {std::move(table), std::move(block)};
}

// Max error of the classical collocation solution of the heat problem over
// the interior points and t = 0, 0.1, ..., 1.
double heat_collocation_error(int N) {
  const ProblemInstance p = build_heat(kHeatDiffusivity, N);
  double err = 0.0;
  for (int s = 0; s <= 10; ++s) {
    const double t = 0.1 * s;
    const Vec u = classical_integrate(p.hamiltonian, p.initial, t);
    for (Eigen::Index j = 0; j < u.size(); ++j) {
      err = std::max(err, std::abs(u[j] - heat_reference(p.grid[j], t)));
    }
  }
  return err;
}

// Max interpolation error on a fine grid of [-1, 1].
double interpolation_error(const std::function<double(double)>& f, int points) {
  const CollocationGrid grid = build_grid(points - 1);
  Vec values(grid.x.size());
  for (Eigen::Index j = 0; j < values.size(); ++j) values[j] = f(grid.x[j]);
  double err = 0.0;
  constexpr int kSamples = 2001;
  for (int s = 0; s < kSamples; ++s) {
    const double x = -1.0 + 2.0 * s / (kSamples - 1);
    err = std::max(err, std::abs(interpolate(grid, values, x) - f(x)));
  }
  return err;
}

std::pair<int, int> sweep_defaults(const std::string& sweep) {
  if (sweep == "heat") return {6, 13};
  if (sweep == "interpolation") return {7, 13};
  if (sweep == "constant") return {6, 13};
  if (sweep == "pce") return {2, 8};
  return {2, 3};
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

ojson header_for(const ojson& config) {
  ojson h = ojson::object();
  h["version"] = std::string(version());
  h["config"] = config;
  return h;
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  apply_json(c, j);
  return c;
}

void RunConfig::merge_json(const nlohmann::json& j) { apply_json(*this, j); }

nlohmann::ordered_json RunConfig::to_json() const {
  ojson j = ojson::object();
  j["problem"] = problem;
  j["n"] = n;
  j["layers"] = layers;
  j["M"] = M;
  j["dt"] = dt;
  j["t_final"] = t_final;
  j["mode"] = mode;
  j["strategy"] = strategy;
  j["integrator"] = integrator;
  j["seed"] = seed;
  j["stride"] = stride;
  j["output"] = output;
  j["format"] = format;
  return j;
}

void RunConfig::resolve() {
  std::vector<std::string> errors;
  if (problem.empty()) {
    errors.push_back("'problem' is required (one of " + join_set(kProblems) + ")");
  } else if (!kProblems.count(problem)) {
    errors.push_back("unknown problem '" + problem + "' (one of " + join_set(kProblems) + ")");
  }
  if (errors.empty()) {
    if (n == 0) n = default_qubits(problem);
    if (problem == "dense-ode" && n != 2) errors.push_back("dense-ode requires n = 2");
    if ((problem == "heat" || problem == "stochastic-heat") && n != 3) {
      errors.push_back(problem + " requires n = 3");
    }
    if (problem == "stochastic-ode" && (n < 1 || n > 6)) {
      errors.push_back("stochastic-ode requires 1 <= n <= 6");
    }
  }
  if (n > 0 && layers == 0) layers = default_layers(n);
  if (layers < 1) errors.push_back("'layers' must be >= 1");
  if (n > 0 && layers >= 1) {
    if (M == -1) M = n * layers;
    if (M != n * layers) {
      errors.push_back("'M' = " + std::to_string(M) + " does not match n * layers = " +
                       std::to_string(n * layers));
    }
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) errors.push_back("'dt' must be > 0");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) errors.push_back("'t_final' must be >= 0");
  if (mode != "exact" && mode != "circuit") errors.push_back("'mode' must be exact or circuit");
  if (strategy != "original" && strategy != "parallel") {
    errors.push_back("'strategy' must be original or parallel");
  }
  if (integrator != "euler" && integrator != "rk4") errors.push_back("'integrator' must be euler or rk4");
  if (stride < 1) errors.push_back("'stride' must be >= 1");
  if (format != "csv" && format != "json") errors.push_back("'format' must be csv or json");
  if (!errors.empty()) {
    std::string msg = "config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
}

RunResult execute_run(const RunConfig& config) {
  if (config.problem == "stochastic-heat") return run_stochastic_heat(config);
  return run_single(config);
}

std::string render(const nlohmann::ordered_json& header, const Table& table,
                   const std::string& format) {
  if (format == "json") {
    ojson j = header;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    return j.dump(1) + "\n";
  }
  std::ostringstream os;
  os << "# qfe " << header.value("version", "") << "\n";
  for (const auto& [key, value] : header.items()) {
    if (key == "version") continue;
    os << "# " << key << ": " << value.dump() << "\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << "\n";
  }
  return os.str();
}

nlohmann::ordered_json SweepConfig::to_json() const {
  ojson j = ojson::object();
  j["sweep"] = sweep;
  j["from"] = from;
  j["to"] = to;
  j["seed"] = seed;
  j["output"] = output;
  j["format"] = format;
  return j;
}

void SweepConfig::resolve() {
  if (!kSweeps.count(sweep)) {
    throw ConfigError("config:\n  unknown sweep '" + sweep + "' (one of " + join_set(kSweeps) + ")");
  }
  const auto [lo, hi] = sweep_defaults(sweep);
  if (from == -1) from = lo;
  if (to == -1) to = hi;
  std::vector<std::string> errors;
  const int min_from = sweep == "pce" ? 1 : (sweep == "stochastic-ode" ? 1 : 3);
  const int max_to = sweep == "stochastic-ode" ? 5 : 40;
  if (from < min_from) errors.push_back("'from' must be >= " + std::to_string(min_from));
  if (to > max_to) errors.push_back("'to' must be <= " + std::to_string(max_to));
  if (to < from) errors.push_back("'to' must be >= 'from'");
  if (format != "csv" && format != "json") errors.push_back("'format' must be csv or json");
  if (!errors.empty()) {
    std::string msg = "config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
}

Table execute_sweep(const SweepConfig& c) {
  Table table;
  if (c.sweep == "heat") {
    table.columns = {"N", "points", "error"};
    for (int N = c.from; N <= c.to; ++N) {
      table.rows.push_back({double(N), double(N + 1), heat_collocation_error(N)});
    }
  } else if (c.sweep == "interpolation" || c.sweep == "constant") {
    table.columns = {"points", "error"};
    const std::function<double(double)> f =
        c.sweep == "constant" ? std::function<double(double)>([](double) { return 0.75; })
                              : std::function<double(double)>([](double x) { return std::sin(kPi * x); });
    for (int points = c.from; points <= c.to; ++points) {
      table.rows.push_back({double(points), interpolation_error(f, points)});
    }
  } else if (c.sweep == "pce") {
    table.columns = {"N", "error"};
    const Function1D f = [](double xi) { return std::exp(0.5 * xi); };
    for (int N = c.from; N <= c.to; ++N) {
      table.rows.push_back({double(N), pce_l2_error(f, pce_project(f, N))});
    }
  } else {
    table.columns = {"n", "N", "mean_err_max", "var_err_max", "var_err_t1"};
    for (int n = c.from; n <= c.to; ++n) {
      RunConfig rc;
      rc.problem = "stochastic-ode";
      rc.n = n;
      rc.seed = c.seed;
      rc.resolve();
      const RunResult r = run_single(rc);
      double mean_err = 0.0;
      double var_err = 0.0;
      // columns: t, theta..., sol_mean, sol_var, ref_mean, ref_var, abs_err_max
      const std::size_t base = static_cast<std::size_t>(rc.M) + 2;
      for (const auto& row : r.table.rows) {
        mean_err = std::max(mean_err, std::abs(row[base] - row[base + 2]));
        var_err = std::max(var_err, std::abs(row[base + 1] - row[base + 3]));
      }
      const auto& last = r.table.rows.back();
      table.rows.push_back({double(n), double(1 << n), mean_err, var_err,
                            std::abs(last[base + 1] - last[base + 3])});
    }
  }
  return table;
}

std::string count_report(int n, int M, std::optional<std::uint64_t> P,
                         const std::string& strategy) {
  if (n < 1 || n > 31) throw ConfigError("config:\n  'n' must be in [1, 31]");
  if (M < 0) throw ConfigError("config:\n  'M' must be >= 0");
  if (strategy != "original" && strategy != "parallel") {
    throw ConfigError("config:\n  'strategy' must be original or parallel");
  }
  const std::uint64_t p = P.value_or(std::uint64_t{1} << (2 * n));
  const auto m = static_cast<std::uint64_t>(M);
  const std::uint64_t original = original_circuit_count(m, p);
  const std::uint64_t parallel = parallel_circuit_count(m, 4);
  std::ostringstream os;
  os << "n = " << n << ", M = " << M << ", P = " << p << "\n";
  os << "original: (M+1)^2 + P(M+1) = " << original << "\n";
  os << "parallel: (M+1)^2 + 4(M+1) = " << parallel << "\n";
  os << "ratio original/parallel = " << format_number(double(original) / double(parallel)) << "\n";
  os << strategy << ": " << (strategy == "original" ? original : parallel) << "\n";
  return os.str();
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational quantum solver for functional-expansion differential equations", "qfe"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  RunConfig run_flags;
  std::string config_path;
  auto* run = app.add_subcommand("run", "Solve a problem and write its time series");
  run->add_option("problem", run_flags.problem,
                  "dense-ode | stochastic-ode | heat | stochastic-heat");
  run->add_option("--config", config_path, "JSON config file; flags override its keys");
  auto* o_n = run->add_option("--n", run_flags.n, "System qubits");
  auto* o_layers = run->add_option("--layers", run_flags.layers, "RY layers of the ansatz");
  auto* o_m = run->add_option("--M", run_flags.M, "Rotation count, must equal n * layers");
  auto* o_dt = run->add_option("--dt", run_flags.dt, "Time step");
  auto* o_tf = run->add_option("--t-final", run_flags.t_final, "Final time");
  auto* o_mode = run->add_option("--mode", run_flags.mode, "exact | circuit");
  auto* o_strategy = run->add_option("--strategy", run_flags.strategy, "original | parallel");
  auto* o_integrator = run->add_option("--integrator", run_flags.integrator, "euler | rk4");
  auto* o_seed = run->add_option("--seed", run_flags.seed, "Seed for fit restarts");
  auto* o_stride = run->add_option("--stride", run_flags.stride, "Write every stride-th step");
  auto* o_output = run->add_option("--output,-o", run_flags.output, "Output path (default stdout)");
  auto* o_format = run->add_option("--format", run_flags.format, "csv | json");

  int count_n = 2;
  int count_m = 4;
  std::uint64_t count_p = 0;
  std::string count_strategy = "original";
  auto* count = app.add_subcommand("count", "Evaluate the circuit-count formulas");
  count->add_option("--n", count_n, "System qubits")->capture_default_str();
  count->add_option("--M", count_m, "Rotation count")->capture_default_str();
  auto* o_p = count->add_option("--P", count_p, "Pauli term count (default 4^n)");
  count->add_option("--strategy", count_strategy, "original | parallel")->capture_default_str();

  SweepConfig sweep;
  auto* conv = app.add_subcommand("convergence", "Error versus resolution sweeps");
  conv->add_option("sweep", sweep.sweep, "heat | interpolation | constant | pce | stochastic-ode")
      ->required();
  conv->add_option("--from", sweep.from, "First resolution");
  conv->add_option("--to", sweep.to, "Last resolution");
  conv->add_option("--seed", sweep.seed, "Seed for fit restarts");
  conv->add_option("--output,-o", sweep.output, "Output path (default stdout)");
  conv->add_option("--format", sweep.format, "csv | json");

  std::uint64_t selftest_seed = 0;
  auto* selftest = app.add_subcommand("selftest", "Run the numerical hygiene checks");
  selftest->add_option("--seed", selftest_seed, "Seed for random inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      RunConfig cfg;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw ConfigError("cannot open config file '" + config_path + "'");
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(f);
        } catch (const nlohmann::json::parse_error& e) {
          throw ConfigError(std::string("config file: ") + e.what());
        }
        cfg.merge_json(j);
      }
      if (!run_flags.problem.empty()) cfg.problem = run_flags.problem;
      if (o_n->count()) cfg.n = run_flags.n;
      if (o_layers->count()) cfg.layers = run_flags.layers;
      if (o_m->count()) cfg.M = run_flags.M;
      if (o_dt->count()) cfg.dt = run_flags.dt;
      if (o_tf->count()) cfg.t_final = run_flags.t_final;
      if (o_mode->count()) cfg.mode = run_flags.mode;
      if (o_strategy->count()) cfg.strategy = run_flags.strategy;
      if (o_integrator->count()) cfg.integrator = run_flags.integrator;
      if (o_seed->count()) cfg.seed = run_flags.seed;
      if (o_stride->count()) cfg.stride = run_flags.stride;
      if (o_output->count()) cfg.output = run_flags.output;
      if (o_format->count()) cfg.format = run_flags.format;
      cfg.resolve();
      const RunResult result = execute_run(cfg);
      ojson header = header_for(cfg.to_json());
      header["circuits"] = result.circuits;
      write_output(cfg.output, render(header, result.table, cfg.format), out);
      return kExitOk;
    }
    if (*count) {
      std::optional<std::uint64_t> p;
      if (o_p->count()) p = count_p;
      out << count_report(count_n, count_m, p, count_strategy);
      return kExitOk;
    }
    if (*conv) {
      sweep.resolve();
      const Table table = execute_sweep(sweep);
      write_output(sweep.output, render(header_for(sweep.to_json()), table, sweep.format), out);
      return kExitOk;
    }
    if (*selftest) {
      bool ok = true;
      for (const CheckResult& r : run_selftest(selftest_seed)) {
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << " " << format_number(r.value)
            << " < " << format_number(r.threshold) << "\n";
        ok = ok && r.passed();
      }
      return ok ? kExitOk : kExitCheckFailed;
    }
  } catch (const ConfigError& e) {
    err << "qfe: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverError& e) {
    err << "qfe: solver failure at step " << e.step() << ": " << e.what() << "\n";
    return kExitSolver;
  } catch (const FitError& e) {
    err << "qfe: initial fit failed (best infidelity " << format_number(e.best_infidelity())
        << ") at step 0: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace qfe::cli
