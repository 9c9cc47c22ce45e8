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

#include "softctrl/common.hpp"

namespace softctrl::quadrature {

struct Options {
  double abs_tol = 1e-12;
  int max_subdivisions = 10000;
};

struct Result {
  Complex value;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of a complex
/// integrand on [a, b]. Throws NumericalError if the error estimate stays
/// above abs_tol after max_subdivisions bisections.
Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 const Options& options = {});

}  // namespace softctrl::quadrature
