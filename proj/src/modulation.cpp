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

#include "softctrl/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "softctrl/quadrature.hpp"
#include "softctrl/special_functions.hpp"

namespace softctrl::modulation {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
  }
}

// Beyond this the A&S series needs more than ~1000 terms.
constexpr double kSeriesLimitY = 500.0;

}  // namespace

Envelope Envelope::constant(double lambda0, double duration) {
  require_positive(lambda0, "lambda0");
  require_positive(duration, "duration");
  Envelope e;
  e.kind_ = EnvelopeKind::Constant;
  e.lambda0_ = lambda0;
  e.duration_ = duration;
  return e;
}

Envelope Envelope::gaussian(double lambda0, double sigma, double duration) {
  require_positive(lambda0, "lambda0");
  require_positive(sigma, "sigma");
  require_positive(duration, "duration");
  Envelope e;
  e.kind_ = EnvelopeKind::Gaussian;
  e.lambda0_ = lambda0;
  e.sigma_ = sigma;
  e.duration_ = duration;
  return e;
}

Envelope Envelope::digitized(std::vector<Segment> segments) {
  if (segments.empty()) throw std::invalid_argument("digitized envelope needs segments");
  const double a = segments.front().t_start;
  const double b = segments.back().t_end;
  const double span = b - a;
  require_positive(span, "digitized duration");
  const double tol = 1e-12 * span;
  if (std::abs(a + b) > tol) {
    throw std::invalid_argument("digitized envelope must be centred on t = 0");
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!(segments[i].t_end > segments[i].t_start)) {
      throw std::invalid_argument("digitized segment has non-positive width");
    }
    if (i > 0 && std::abs(segments[i].t_start - segments[i - 1].t_end) > tol) {
      throw std::invalid_argument("digitized segments must be contiguous");
    }
  }
  Envelope e;
  e.kind_ = EnvelopeKind::Digitized;
  e.duration_ = span;
  e.segments_ = std::move(segments);
  e.lambda0_ = e.peak();
  return e;
}

double Envelope::evaluate(double t) const {
  const double half = 0.5 * duration_;
  if (t < -half || t > half) return 0.0;
  switch (kind_) {
    case EnvelopeKind::Constant:
      return lambda0_;
    case EnvelopeKind::Gaussian:
      return lambda0_ * std::exp(-t * t / (2.0 * sigma_ * sigma_));
    case EnvelopeKind::Digitized: {
      auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                                 [](double v, const Segment& s) { return v < s.t_end; });
      if (it == segments_.end()) return segments_.back().value;
      return it->value;
    }
  }
  return 0.0;
}

double Envelope::mean() const {
  switch (kind_) {
    case EnvelopeKind::Constant:
      return lambda0_;
    case EnvelopeKind::Gaussian:
      return lambda0_ * std::sqrt(2.0 * kPi) * sigma_ / duration_ *
             std::erf(duration_ / (2.0 * std::sqrt(2.0) * sigma_));
    case EnvelopeKind::Digitized: {
      double s = 0.0;
      for (const auto& seg : segments_) s += seg.value * (seg.t_end - seg.t_start);
      return s / duration_;
    }
  }
  return 0.0;
}

double Envelope::peak() const {
  if (kind_ != EnvelopeKind::Digitized) return lambda0_;
  double m = 0.0;
  for (const auto& seg : segments_) m = std::max(m, std::abs(seg.value));
  return m;
}

std::vector<double> Envelope::breakpoints() const {
  std::vector<double> out;
  if (kind_ != EnvelopeKind::Digitized) return out;
  for (std::size_t i = 1; i < segments_.size(); ++i) out.push_back(segments_[i].t_start);
  return out;
}

Complex averaging_factor_numeric(const Envelope& env, double delta) {
  const double T = env.duration();
  quadrature::Options opt;
  auto integrand = [&](double t) { return env.evaluate(t) * std::exp(Complex(0.0, delta * t)); };
  if (env.kind() != EnvelopeKind::Digitized) {
    opt.abs_tol = 1e-12 * T;
    return quadrature::integrate(integrand, -0.5 * T, 0.5 * T, opt).value / T;
  }
  // Integrate each flat piece separately so no panel straddles a jump.
  Complex sum = 0.0;
  for (const auto& seg : env.segments()) {
    opt.abs_tol = 1e-12 * (seg.t_end - seg.t_start);
    auto piece = [&](double t) { return seg.value * std::exp(Complex(0.0, delta * t)); };
    sum += quadrature::integrate(piece, seg.t_start, seg.t_end, opt).value;
  }
  return sum / T;
}

double g_constant(double lambda0, double duration, double delta) {
  const double x = 0.5 * duration * delta;
  if (x == 0.0) return lambda0;
  return lambda0 * std::sin(x) / x;
}

Complex g_gaussian_closed_form(double lambda0, double sigma, double duration, double delta) {
  require_positive(sigma, "sigma");
  require_positive(duration, "duration");
  const double x = duration / (2.0 * std::sqrt(2.0) * sigma);
  const double y = sigma * std::abs(delta) / std::sqrt(2.0);
  if (y > kSeriesLimitY) {
    return averaging_factor_numeric(Envelope::gaussian(lambda0, sigma, duration), delta);
  }
  const double re = special::damped_erf(x, y).real();
  return {lambda0 * std::sqrt(2.0 * kPi) * sigma / duration * re, 0.0};
}

double normalized_gaussian_amplitude(double sigma, double duration) {
  require_positive(sigma, "sigma");
  require_positive(duration, "duration");
  return duration /
         (std::sqrt(2.0 * kPi) * sigma * std::erf(duration / (2.0 * std::sqrt(2.0) * sigma)));
}

Envelope normalized_gaussian_envelope(double sigma, double duration) {
  return Envelope::gaussian(normalized_gaussian_amplitude(sigma, duration), sigma, duration);
}

Envelope digitize(const Envelope& env, int n_blocks) {
  if (n_blocks < 1) throw std::invalid_argument("digitize: n_blocks must be >= 1");
  const double T = env.duration();
  const double w = T / n_blocks;
  std::vector<Segment> segs;
  segs.reserve(n_blocks);
  double sampled = 0.0;
  for (int b = 0; b < n_blocks; ++b) {
    const double a = -0.5 * T + b * w;
    const double e = (b + 1 == n_blocks) ? 0.5 * T : a + w;
    const double v = env.evaluate(0.5 * (a + e));
    segs.push_back({a, e, v});
    sampled += v * (e - a);
  }
  const double target = env.mean() * T;
  if (sampled != 0.0) {
    const double scale = target / sampled;
    for (auto& s : segs) s.value *= scale;
  }
  return Envelope::digitized(std::move(segs));
}

}  // namespace softctrl::modulation
