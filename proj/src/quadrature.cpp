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

#include "softctrl/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace softctrl::quadrature {

namespace {

// Kronrod abscissae on [0,1]; odd indices are the embedded Gauss points.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a;
  double b;
  Complex value;
  double error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval kronrod15(const std::function<Complex(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Complex fc = f(center);
  Complex kronrod = fc * kWgk[7];
  Complex gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Complex sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 const Options& options) {
  if (a == b) return {Complex(0.0), 0.0, 0};
  std::priority_queue<Interval> queue;
  Interval first = kronrod15(f, a, b);
  Complex total = first.value;
  double error = first.error;
  queue.push(first);
  int subdivisions = 0;
  while (error > options.abs_tol) {
    if (subdivisions >= options.max_subdivisions) {
      throw NumericalError("quadrature did not converge: error estimate " + std::to_string(error) +
                           " after " + std::to_string(subdivisions) + " subdivisions");
    }
    Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw NumericalError("quadrature interval underflow");
    }
    Interval left = kronrod15(f, worst.a, mid);
    Interval right = kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++subdivisions;
    // The running error sum drifts with cancellation; resum periodically.
    if (subdivisions % 64 == 0) {
      auto copy = queue;
      double e = 0.0;
      Complex v = 0.0;
      while (!copy.empty()) {
        e += copy.top().error;
        v += copy.top().value;
        copy.pop();
      }
      error = e;
      total = v;
    }
  }
  return {total, error, subdivisions};
}

}  // namespace softctrl::quadrature
