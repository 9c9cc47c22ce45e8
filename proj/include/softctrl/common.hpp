// Copyright 2026 The softctrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace softctrl {

using Complex = std::complex<double>;

/// Dense complex square matrix: Hamiltonians, propagators, observables.
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Angular frequencies are stored in rad/us and times in us throughout.
namespace units {

constexpr double khz(double f) { return kTwoPi * f * 1e-3; }
constexpr double mhz(double f) { return kTwoPi * f; }
constexpr double to_khz(double omega) { return omega / kTwoPi * 1e3; }
constexpr double to_mhz(double omega) { return omega / kTwoPi; }

}  // namespace units

// Error categories map onto CLI exit codes (schema 2, numerical 3, infeasible 4).

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleSequence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace softctrl
