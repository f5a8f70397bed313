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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qfe {

struct CheckResult {
  std::string name;
  double value = 0.0;      // measured worst-case deviation
  double threshold = 0.0;  // pass when value < threshold
  bool passed() const noexcept { return value < threshold; }
};

/// Numerical hygiene checks: Pauli roundtrip, D2 against D1*D1, ansatz
/// derivatives against central differences, Hermite orthonormality.
std::vector<CheckResult> run_selftest(std::uint64_t seed = 0);

}  // namespace qfe
