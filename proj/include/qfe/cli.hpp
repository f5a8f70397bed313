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

// The `qfe` command line: run, count, convergence and selftest verbs.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qfe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

/// Invalid configuration; the message lists every problem found.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string problem;          // dense-ode | stochastic-ode | heat | stochastic-heat
  int n = 0;                    // 0 selects the problem default
  int layers = 0;               // 0 selects the default for n
  int M = -1;                   // -1 derives n * layers
  double dt = 1e-3;
  double t_final = 1.0;
  std::string mode = "exact";
  std::string strategy = "parallel";
  std::string integrator = "euler";
  std::uint64_t seed = 0;
  int stride = 1;               // write every stride-th time step
  std::string output;           // empty writes to stdout
  std::string format = "csv";

  /// Reads the keys present in `j`; unknown keys and wrong types are errors.
  static RunConfig from_json(const nlohmann::json& j);
  /// Applies a JSON object on top of this config.
  void merge_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
  /// Fills defaults and checks ranges; throws ConfigError.
  void resolve();
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunResult {
  Table table;
  nlohmann::ordered_json circuits;
};

/// Runs a resolved config. Throws SolverError / FitError on solver failure.
RunResult execute_run(const RunConfig& config);

/// CSV (with '#' header lines) or JSON rendering; both embed the version,
/// the config and the circuit block.
std::string render(const nlohmann::ordered_json& header, const Table& table,
                   const std::string& format);

struct SweepConfig {
  std::string sweep;   // heat | interpolation | constant | pce | stochastic-ode
  int from = -1;       // -1 selects the sweep default
  int to = -1;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "csv";

  nlohmann::ordered_json to_json() const;
  void resolve();
};

Table execute_sweep(const SweepConfig& config);

/// Both circuit-count formulas and their ratio. P defaults to 4^n.
std::string count_report(int n, int M, std::optional<std::uint64_t> P,
                         const std::string& strategy);

/// Entry point used by the `qfe` executable.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfe::cli
