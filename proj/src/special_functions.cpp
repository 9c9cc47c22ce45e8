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

#include "softctrl/special_functions.hpp"

#include <cmath>

namespace softctrl::special {

Complex damped_erf(double x, double y) {
  if (x < 0.0) return -damped_erf(-x, -y);

  const double y2 = y * y;
  const double x2 = x * x;
  const double s2 = std::sin(2.0 * x * y);
  const double c2 = std::cos(2.0 * x * y);

  Complex sum = std::exp(-y2) * std::erf(x);

  // e^{-x^2}/(2 pi x) [(1 - cos 2xy) + i sin 2xy], with the x -> 0 limit i y / pi.
  const double base = std::exp(-x2 - y2);
  if (x > 0.0) {
    const double sxy = std::sin(x * y);
    sum += base / (2.0 * kPi * x) * Complex(2.0 * sxy * sxy, s2);
  } else {
    sum += base * Complex(0.0, y / kPi);
  }

  const int n_max = static_cast<int>(std::ceil(2.0 * std::abs(y))) + 16;
  Complex series = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    const double common = -0.25 * nd * nd - x2 - y2;
    const double e0 = std::exp(common);
    const double ep = std::exp(common + nd * y);
    const double em = std::exp(common - nd * y);
    const double cosh_part = ep + em;  // 2 cosh(ny) e^{common}
    const double sinh_part = ep - em;  // 2 sinh(ny) e^{common}
    const double re = 2.0 * x * e0 - x * cosh_part * c2 + 0.5 * nd * sinh_part * s2;
    const double im = x * cosh_part * s2 + 0.5 * nd * sinh_part * c2;
    series += Complex(re, im) / (nd * nd + 4.0 * x2);
  }
  sum += (2.0 / kPi) * series;
  return sum;
}

Complex erf(Complex z) { return damped_erf(z.real(), z.imag()) * std::exp(z.imag() * z.imag()); }

}  // namespace softctrl::special
