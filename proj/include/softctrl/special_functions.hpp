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

#include "softctrl/common.hpp"

namespace softctrl::special {

/// exp(-y^2) * erf(x + i y) for x > 0.
///
/// Uses the exponentially convergent series of Abramowitz & Stegun 7.1.29
/// with every cosh/sinh(n y) folded into a single exponent, so the result
/// stays finite for any y. Accurate to ~1e-15 absolute.
Complex damped_erf(double x, double y);

/// erf(x + i y); overflows for large |y|, prefer damped_erf.
Complex erf(Complex z);

}  // namespace softctrl::special
