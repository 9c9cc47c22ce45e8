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

#include "softctrl/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "softctrl/format.hpp"
#include "softctrl/operators.hpp"

namespace softctrl::sequences {

namespace {

using operators::PauliAxis;

bool inside_domain(double x1, double x2) { return x1 > 1e-9 && x2 > x1 + 1e-9 && x2 < 0.5 - 1e-9; }

double d_axy_dxi1(int k, double xi1) { return 8.0 * std::cos(k * kPi * xi1); }
double d_axy_dxi2(int k, double xi2) { return -8.0 * std::cos(k * kPi * xi2); }

}  // namespace

ModulationFunction::ModulationFunction(const PulseSequence& seq) : t_start_(seq.t_start) {
  flips_.reserve(seq.pulses.size());
  for (const auto& p : seq.pulses) flips_.push_back(p.center);
  std::sort(flips_.begin(), flips_.end());
}

double ModulationFunction::operator()(double t) const {
  if (t < t_start_) return 1.0;
  const auto n = std::upper_bound(flips_.begin(), flips_.end(), t) - flips_.begin();
  return (n % 2) ? -1.0 : 1.0;
}

ModulationFunction modulation_function(const PulseSequence& seq) { return ModulationFunction(seq); }

double fourier_coefficient(const PulseSequence& seq, int k) {
  if (k < 1) throw std::invalid_argument("fourier_coefficient: k must be >= 1");
  if (!(seq.omega_dd > 0.0)) throw std::invalid_argument("fourier_coefficient: omega_dd must be > 0");
  const double period = kTwoPi / seq.omega_dd;
  if (seq.duration() < period * (1.0 - 1e-12)) {
    throw std::invalid_argument("fourier_coefficient: sequence shorter than one DD period");
  }
  const double t0 = seq.t_start;
  const double w = k * seq.omega_dd;
  std::vector<double> edges{t0};
  for (const auto& p : seq.pulses) {
    if (p.center > t0 && p.center < t0 + period) edges.push_back(p.center);
  }
  std::sort(edges.begin(), edges.end());
  edges.push_back(t0 + period);

  double c = 0.0;
  double s = 0.0;
  double sign = 1.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = w * (edges[i] - t0);
    const double b = w * (edges[i + 1] - t0);
    c += sign * (std::sin(b) - std::sin(a));
    s += sign * (std::cos(a) - std::cos(b));
    sign = -sign;
  }
  c *= 2.0 / (period * w);
  s *= 2.0 / (period * w);
  if (std::abs(s) > 1e-9) {
    std::ostringstream msg;
    msg << "fourier_coefficient: sequence is not symmetric (sine component " << s << " at k=" << k
        << ")";
    throw std::invalid_argument(msg.str());
  }
  return c;
}

double axy_fourier(int k, double xi1, double xi2) {
  const double kp = k * kPi;
  return 4.0 / kp * (2.0 * std::sin(kp * xi1) - 2.0 * std::sin(kp * xi2) + std::sin(0.5 * kp));
}

CompositeAXYBlock solve_axy_timings(double f_target, int k_dd) {
  if (k_dd < 1 || k_dd % 2 == 0) throw std::invalid_argument("solve_axy_timings: k_dd must be odd");
  if (!std::isfinite(f_target) || std::abs(f_target) > kMaxAXYCoefficient) {
    throw InfeasibleSequence("AXY target f=" + format_number(f_target) +
                             " exceeds the reachable range |f| <= 4/pi");
  }
  const int kc = k_dd == 1 ? 3 : 1;
  auto residual = [&](double x1, double x2) {
    return Eigen::Vector2d(axy_fourier(k_dd, x1, x2) - f_target, axy_fourier(kc, x1, x2));
  };

  bool found = false;
  CompositeAXYBlock best;
  constexpr int kGrid = 16;
  for (int i = 1; i < kGrid; ++i) {
    for (int j = i + 1; j < kGrid; ++j) {
      double x1 = 0.5 * i / kGrid;
      double x2 = 0.5 * j / kGrid;
      Eigen::Vector2d r = residual(x1, x2);
      for (int it = 0; it < 100 && r.lpNorm<Eigen::Infinity>() > 1e-14; ++it) {
        Eigen::Matrix2d jac;
        jac << d_axy_dxi1(k_dd, x1), d_axy_dxi2(k_dd, x2), d_axy_dxi1(kc, x1), d_axy_dxi2(kc, x2);
        if (std::abs(jac.determinant()) < 1e-14) break;
        const Eigen::Vector2d step = jac.partialPivLu().solve(r);
        double damp = 1.0;
        bool moved = false;
        for (int h = 0; h < 30; ++h, damp *= 0.5) {
          const double n1 = x1 - damp * step[0];
          const double n2 = x2 - damp * step[1];
          if (!inside_domain(n1, n2)) continue;
          const Eigen::Vector2d rn = residual(n1, n2);
          if (rn.norm() < r.norm()) {
            x1 = n1;
            x2 = n2;
            r = rn;
            moved = true;
            break;
          }
        }
        if (!moved) break;
      }
      if (r.lpNorm<Eigen::Infinity>() > 1e-12 || !inside_domain(x1, x2)) continue;
      if (!found || x1 < best.xi1 - 1e-9) {
        best = {x1, x2, axy_fourier(k_dd, x1, x2), axy_fourier(kc, x1, x2)};
        found = true;
      }
    }
  }
  if (!found) {
    throw InfeasibleSequence("no AXY timing realises f=" + format_number(f_target) +
                             " at k=" + std::to_string(k_dd));
  }
  return best;
}

int xy8_phase_index(std::size_t m) {
  static constexpr int kPattern[8] = {0, 1, 0, 1, 1, 0, 1, 0};
  return kPattern[m % 8];
}

PulseSequence axy_sequence(const AXYOptions& options, const std::vector<double>& f_per_composite) {
  if (options.n_composite < 1) throw std::invalid_argument("axy_sequence: n_composite must be >= 1");
  if (!(options.addressed_frequency > 0.0)) {
    throw std::invalid_argument("axy_sequence: addressed frequency must be > 0");
  }
  if (f_per_composite.size() != 1 &&
      f_per_composite.size() != static_cast<std::size_t>(options.n_composite)) {
    throw std::invalid_argument("axy_sequence: need one f value or one per composite");
  }
  if (!options.instantaneous && !(options.rabi > 0.0)) {
    throw std::invalid_argument("axy_sequence: finite pulses need a positive Rabi frequency");
  }
  PulseSequence seq;
  seq.k_dd = options.k_dd;
  seq.omega_dd = options.addressed_frequency / options.k_dd;
  seq.t_start = options.t_start;
  const double window = kPi / seq.omega_dd;
  seq.t_end = options.t_start + options.n_composite * window;
  const double duration = options.instantaneous ? 0.0 : kPi / options.rabi;

  std::map<double, CompositeAXYBlock> solved;
  seq.pulses.reserve(5 * static_cast<std::size_t>(options.n_composite));
  for (int m = 0; m < options.n_composite; ++m) {
    const double f = f_per_composite.size() == 1 ? f_per_composite[0] : f_per_composite[m];
    auto it = solved.find(f);
    if (it == solved.end()) it = solved.emplace(f, solve_axy_timings(f, options.k_dd)).first;
    const auto& b = it->second;
    const std::array<double, 5> frac = {b.xi1, b.xi2, 0.5, 1.0 - b.xi2, 1.0 - b.xi1};
    const double base = xy8_phase_index(static_cast<std::size_t>(m)) * 0.5 * kPi;
    const double w0 = options.t_start + m * window;
    for (int p = 0; p < 5; ++p) {
      const double extra = options.knill_phases ? kKnillPhases[p] : 0.0;
      seq.pulses.push_back({w0 + frac[p] * window, duration, base + extra,
                            options.instantaneous ? 0.0 : options.rabi, 0.0});
    }
  }
  double prev_end = seq.t_start;
  for (const auto& p : seq.pulses) {
    if (p.center - 0.5 * p.duration < prev_end - 1e-12) {
      throw InfeasibleSequence("axy_sequence: pulses overlap; Rabi frequency too low for this timing");
    }
    prev_end = p.center + 0.5 * p.duration;
  }
  if (prev_end > seq.t_end + 1e-12) throw InfeasibleSequence("axy_sequence: last pulse overruns the sequence");
  return seq;
}

GaussianAXYSchedule gaussian_axy_schedule(double f_max, int n_blocks, double sigma,
                                          double duration) {
  if (n_blocks < 1) throw std::invalid_argument("gaussian_axy_schedule: n_blocks must be >= 1");
  if (!(sigma > 0.0) || !(duration > 0.0)) {
    throw std::invalid_argument("gaussian_axy_schedule: sigma and duration must be > 0");
  }
  GaussianAXYSchedule s{{}, f_max, sigma, duration};
  s.f_blocks.reserve(n_blocks);
  for (int b = 0; b < n_blocks; ++b) {
    const double tb = (b + 0.5) * duration / n_blocks - 0.5 * duration;
    const double f = f_max * std::exp(-tb * tb / (2.0 * sigma * sigma));
    if (std::abs(f) > kMaxAXYCoefficient) {
      throw InfeasibleSequence("gaussian_axy_schedule: block " + std::to_string(b) + " needs |f| > 4/pi");
    }
    s.f_blocks.push_back(f);
  }
  return s;
}

std::vector<double> expand_blocks(const std::vector<double>& f_blocks, int composites_per_block) {
  std::vector<double> out;
  out.reserve(f_blocks.size() * composites_per_block);
  for (double f : f_blocks) out.insert(out.end(), composites_per_block, f);
  return out;
}

Operator effective_dd_hamiltonian(double f_kdd, const std::vector<NucleusCoupling>& nuclei) {
  const auto system = operators::SpinSystem::qubits(nuclei.size() + 1);
  const Operator sz0 = operators::embed(operators::pauli(PauliAxis::Z), 0, system);
  Operator h = Operator::Zero(system.dim(), system.dim());
  for (std::size_t j = 0; j < nuclei.size(); ++j) {
    const Operator sx = operators::embed(operators::pauli(PauliAxis::X), j + 1, system);
    const Operator sz = operators::embed(operators::pauli(PauliAxis::Z), j + 1, system);
    h += -0.125 * f_kdd * nuclei[j].a_perp * (sz0 * sx) - 0.5 * nuclei[j].delta * sz;
  }
  return h;
}

propagation::TimeDependentHamiltonian sequence_to_hamiltonian(
    const PulseSequence& seq, const propagation::TimeDependentHamiltonian& base,
    const DriveErrors& errors) {
  const Eigen::Index dim = base.dim();
  if (dim % 2 != 0) throw std::invalid_argument("sequence_to_hamiltonian: no qubit factor");
  const Operator id_rest = operators::identity(dim / 2);
  const Operator x0 = operators::kron(operators::pauli(PauliAxis::X), id_rest);
  const Operator y0 = operators::kron(operators::pauli(PauliAxis::Y), id_rest);
  const Operator z0 = operators::kron(operators::pauli(PauliAxis::Z), id_rest);
  const double scale = 1.0 + errors.rabi_error;

  std::vector<Pulse> finite;
  propagation::TimeDependentHamiltonian out = base;
  out.t_start = seq.t_start;
  out.t_end = seq.t_end;
  double max_rabi = 0.0;
  for (const auto& p : seq.pulses) {
    if (p.duration < 0.0) throw std::invalid_argument("sequence_to_hamiltonian: negative duration");
    if (p.duration == 0.0) {
      const double theta = 0.5 * kPi * scale;
      const Operator axis = std::cos(p.phase) * x0 + std::sin(p.phase) * y0;
      out.kicks.push_back({p.center, std::cos(theta) * operators::identity(dim) -
                                         kI * std::sin(theta) * axis});
      continue;
    }
    if (!finite.empty() && p.center - 0.5 * p.duration <
                               finite.back().center + 0.5 * finite.back().duration - 1e-12) {
      throw std::invalid_argument("sequence_to_hamiltonian: overlapping pulse windows");
    }
    finite.push_back(p);
    out.breakpoints.push_back(p.center - 0.5 * p.duration);
    out.breakpoints.push_back(p.center + 0.5 * p.duration);
    max_rabi = std::max(max_rabi, std::abs(p.rabi) * scale);
  }
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.max_frequency = std::max(base.max_frequency, max_rabi);
  if (!out.structure.empty() && !finite.empty()) {
    out.structure.push_back(x0);
    out.structure.push_back(y0);
  }

  auto base_eval = base.evaluate;
  out.evaluate = [=](double t) {
    Operator h = base_eval(t);
    auto it = std::upper_bound(finite.begin(), finite.end(), t,
                               [](double v, const Pulse& p) { return v < p.center + 0.5 * p.duration; });
    if (it != finite.end() && t >= it->center - 0.5 * it->duration) {
      const double amp = 0.5 * it->rabi * scale;
      h += amp * (std::cos(it->phase) * x0 + std::sin(it->phase) * y0) - 0.5 * it->detuning * z0;
    }
    return h;
  };
  return out;
}

void write_csv(const PulseSequence& seq, std::ostream& out) {
  out << "center_us,duration_us,phase_rad,rabi_rad_per_us\n";
  for (const auto& p : seq.pulses) {
    out << format_number(p.center) << ',' << format_number(p.duration) << ','
        << format_number(p.phase) << ',' << format_number(p.rabi) << '\n';
  }
}

}  // namespace softctrl::sequences
