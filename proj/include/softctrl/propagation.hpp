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

#include <functional>
#include <vector>

#include "softctrl/common.hpp"

namespace softctrl::propagation {

/// Instantaneous unitary applied at `time` (idealised pulses).
struct Kick {
  double time = 0.0;
  Operator unitary;
};

struct TimeDependentHamiltonian {
  /// H(t) on [t_start, t_end]; static_part is returned outside the support.
  std::function<Operator(double)> evaluate;
  Operator static_part;
  double t_start = 0.0;
  double t_end = 0.0;
  /// Sorted interior times where H(t) may jump; steps never straddle them.
  std::vector<double> breakpoints;
  /// H is constant between breakpoints, so each interval is one exact exponential.
  bool piecewise_constant = false;
  std::vector<Kick> kicks;
  /// Operators whose joint sparsity pattern contains that of every H(t); when
  /// non-empty the evolution is split into the invariant blocks.
  std::vector<Operator> structure;
  /// Largest angular frequency present (rad/us); sets the default step.
  double max_frequency = 0.0;

  Eigen::Index dim() const { return static_part.rows(); }
  Operator operator()(double t) const;
};

enum class Method { Midpoint, Magnus4 };

struct PropagationConfig {
  double dt = 0.0;  // <= 0 selects the default step for the method
  double target_error = 1e-6;
  Method method = Method::Magnus4;
  int max_halvings = 10;
};

/// Default step: 1/(50 f_max) for the midpoint rule, 1/(4 f_max) for Magnus-4.
double default_step(const TimeDependentHamiltonian& h, Method method);

/// Time-ordered propagator on [t_start, t_end] at fixed step. Throws
/// NumericalError when the result is not unitary to 1e-8 sqrt(dim).
Operator propagate(const TimeDependentHamiltonian& h, const PropagationConfig& config);

struct AdaptiveResult {
  Operator unitary;
  double dt = 0.0;
  double richardson_delta = 0.0;
  double unitarity_defect = 0.0;
  int halvings = 0;
};

/// Scalar figure of merit used for the step-halving test.
using Metric = std::function<double(const Operator&)>;

/// Halves dt until |metric(U(dt)) - metric(U(dt/2))| <= target_error and
/// returns the finer propagator. Without a metric, ||U(dt) - U(dt/2)||_F / sqrt(dim) is used.
AdaptiveResult propagate_adaptive(const TimeDependentHamiltonian& h,
                                  const PropagationConfig& config, const Metric& metric = {});

/// |Tr(U_target U^dagger)| / Tr(U U^dagger).
double gate_fidelity(const Operator& u, const Operator& u_target);

/// |<measured|U|initial>|^2; population loss when both states coincide is 1 minus this.
double transition_probability(const Operator& u, const StateVector& initial,
                              const StateVector& measured);

/// 1 - |<psi|U|psi>|^2.
double population_loss(const Operator& u, const StateVector& psi);

}  // namespace softctrl::propagation
