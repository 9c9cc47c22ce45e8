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

#include <array>
#include <iosfwd>
#include <vector>

#include "softctrl/common.hpp"
#include "softctrl/propagation.hpp"

namespace softctrl::sequences {

struct Pulse {
  double center = 0.0;    // us
  double duration = 0.0;  // us; 0 = instantaneous
  double phase = 0.0;     // rad
  double rabi = 0.0;      // rad/us
  double detuning = 0.0;  // extra offset during this pulse, rad/us
};

struct PulseSequence {
  std::vector<Pulse> pulses;  // time ordered
  double t_start = 0.0;
  double t_end = 0.0;
  double omega_dd = 0.0;  // rad/us
  int k_dd = 1;

  double duration() const { return t_end - t_start; }
};

/// F(t) = (-1)^{number of pulse centres before t}, with F(t_start) = +1.
class ModulationFunction {
 public:
  explicit ModulationFunction(const PulseSequence& seq);
  double operator()(double t) const;
  const std::vector<double>& flips() const { return flips_; }

 private:
  double t_start_;
  std::vector<double> flips_;
};

ModulationFunction modulation_function(const PulseSequence& seq);

/// Cosine Fourier coefficient of F over the first DD period starting at
/// t_start, integrated exactly between flips. Throws InfeasibleSequence if the
/// matching sine coefficient exceeds 1e-9 (F is then not a cosine series).
double fourier_coefficient(const PulseSequence& seq, int k);

/// Fourier coefficient f_k of one symmetric five-pulse composite with flips at
/// window fractions (xi1, xi2, 1/2, 1-xi2, 1-xi1).
double axy_fourier(int k, double xi1, double xi2);

struct CompositeAXYBlock {
  double xi1 = 0.0;
  double xi2 = 0.0;
  /// Realised f at the addressed harmonic and at the nulled one.
  double f_target = 0.0;
  double f_nulled = 0.0;
};

/// Solves f_{k_dd}(xi) = f_target with the lowest other odd harmonic (f_1, or
/// f_3 when k_dd = 1) set to zero. Damped Newton from a grid of starts; the
/// solution with the smallest xi1 is returned so the branch is continuous in f.
CompositeAXYBlock solve_axy_timings(double f_target, int k_dd);

/// Base phase (units of pi/2) of composite m: XYXYYXYX.
int xy8_phase_index(std::size_t m);

/// Extra phases of the five elementary pulses inside a composite.
inline constexpr std::array<double, 5> kKnillPhases = {kPi / 6.0, 0.0, kPi / 2.0, 0.0, kPi / 6.0};

struct AXYOptions {
  double addressed_frequency = 0.0;  // k_dd * omega_dd, rad/us
  int k_dd = 3;
  int n_composite = 128;
  double rabi = units::mhz(20.0);
  bool instantaneous = false;
  bool knill_phases = true;
  double t_start = 0.0;
};

/// AXY train with one f value per composite (size n_composite) or a single
/// value for all. Each composite spans half a DD period.
PulseSequence axy_sequence(const AXYOptions& options, const std::vector<double>& f_per_composite);

struct GaussianAXYSchedule {
  std::vector<double> f_blocks;  // one per block of four composites
  double f_max = 0.0;
  double sigma = 0.0;
  double duration = 0.0;
};

/// f_b = f_max exp(-t_b^2 / (2 sigma^2)) at block midpoints t_b (relative to the centre).
GaussianAXYSchedule gaussian_axy_schedule(double f_max, int n_blocks, double sigma,
                                          double duration);

/// Expands a block schedule to per-composite values (four composites per block).
std::vector<double> expand_blocks(const std::vector<double>& f_blocks, int composites_per_block = 4);

/// Largest |f| a five-pulse composite can reach: 4/pi.
inline constexpr double kMaxAXYCoefficient = 4.0 / kPi;

struct NucleusCoupling {
  double a_perp = 0.0;  // rad/us
  double delta = 0.0;   // omega_j - omega_n, rad/us
};

/// -(1/8) f sigma0z sum_j a_perp,j sigma_jx - sum_j (delta_j / 2) sigma_jz on qubit (x) nuclei.
Operator effective_dd_hamiltonian(double f_kdd, const std::vector<NucleusCoupling>& nuclei);

struct DriveErrors {
  double rabi_error = 0.0;  // fractional amplitude error
};

/// Adds the control drive (Omega/2)(sigma0x cos phi + sigma0y sin phi) during
/// each pulse window to `base` (qubit = tensor factor 0). Instantaneous pulses
/// become kicks exp(-i (pi/2)(1 + err)(sigma0x cos phi + sigma0y sin phi)).
propagation::TimeDependentHamiltonian sequence_to_hamiltonian(
    const PulseSequence& seq, const propagation::TimeDependentHamiltonian& base,
    const DriveErrors& errors = {});

/// CSV with columns center_us, duration_us, phase_rad, rabi_rad_per_us.
void write_csv(const PulseSequence& seq, std::ostream& out);

}  // namespace softctrl::sequences
