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

#include <vector>

#include "softctrl/common.hpp"

namespace softctrl::modulation {

enum class EnvelopeKind { Constant, Gaussian, Digitized };

struct Segment {
  double t_start;
  double t_end;
  double value;
};

/// Coupling envelope lambda(t) supported on [-T/2, T/2] and zero outside.
class Envelope {
 public:
  static Envelope constant(double lambda0, double duration);
  static Envelope gaussian(double lambda0, double sigma, double duration);
  /// Segments must be contiguous, ordered, and cover a window centred on 0.
  static Envelope digitized(std::vector<Segment> segments);

  EnvelopeKind kind() const { return kind_; }
  double duration() const { return duration_; }
  double lambda0() const { return lambda0_; }
  double sigma() const { return sigma_; }
  const std::vector<Segment>& segments() const { return segments_; }

  double evaluate(double t) const;

  /// (1/T) * integral of lambda over its support.
  double mean() const;

  /// Largest value lambda attains.
  double peak() const;

  /// Interior discontinuities (segment edges of a digitized envelope).
  std::vector<double> breakpoints() const;

 private:
  EnvelopeKind kind_ = EnvelopeKind::Constant;
  double duration_ = 1.0;
  double lambda0_ = 1.0;
  double sigma_ = 0.0;
  std::vector<Segment> segments_;
};

/// g(delta) = (1/T) int lambda(t) exp(i delta t) dt by adaptive quadrature.
Complex averaging_factor_numeric(const Envelope& env, double delta);

/// lambda0 sinc(T delta / 2).
double g_constant(double lambda0, double duration, double delta);

/// Closed form of the truncated-Gaussian averaging factor. Real for this
/// symmetric envelope; returned as complex for uniformity with the numeric path.
Complex g_gaussian_closed_form(double lambda0, double sigma, double duration, double delta);

/// Peak amplitude that gives a Gaussian of width sigma a unit time average on [-T/2, T/2].
double normalized_gaussian_amplitude(double sigma, double duration);

Envelope normalized_gaussian_envelope(double sigma, double duration);

/// Piecewise-constant approximation sampled at segment midpoints and
/// rescaled so the time average is unchanged.
Envelope digitize(const Envelope& env, int n_blocks);

}  // namespace softctrl::modulation
