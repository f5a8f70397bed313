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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string_view>

#include <Eigen/Dense>

namespace qfe {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Version string embedded in every output file.
std::string_view version() noexcept;

/// e^{i phi}, exact when phi is a multiple of pi/2.
cplx unit_phase(double phi);

/// True when `value` is a power of two (and non-zero).
constexpr bool is_power_of_two(std::uint64_t value) noexcept {
  return value != 0 && (value & (value - 1)) == 0;
}

/// log2 of a power of two; the caller checks is_power_of_two first.
int log2_exact(std::uint64_t value) noexcept;

/// Worker count for internal parallel loops. Honors QFE_THREADS when set to a
/// positive integer, otherwise uses the hardware concurrency (at least 1).
int worker_threads();

/// Runs body(i) for i in [0, count) on up to worker_threads() threads.
/// Iterations must be independent; the first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qfe
