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

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "softctrl/common.hpp"
#include "softctrl/modulation.hpp"
#include "softctrl/nv.hpp"
#include "softctrl/propagation.hpp"
#include "softctrl/spectral.hpp"

namespace softctrl::experiments {

/// Table of scan results: one row per grid point, axis columns first.
struct ScanResult {
  std::string protocol;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::vector<double> column(const std::string& name) const;
  void write_csv(std::ostream& out) const;
};

// ---------------------------------------------------------------------------
// Improved RWA fidelity maps.

enum class EnvelopeChoice { Constant, Gaussian };

struct RWAModelSpec {
  int n_resource_qubits = 2;  // 1: two-qubit model, 2: control plus two resources
  double omega = 1.0;         // rad/us; the second resource sits at 3 omega
  EnvelopeChoice envelope = EnvelopeChoice::Gaussian;
  double sigma_fraction = 1.0 / (4.0 * std::sqrt(2.0));  // sigma / T
};

struct RWAModel {
  Operator h_s;
  std::vector<spectral::InteractionTerm> terms;
  /// Operators spanning the corrected target Hamiltonian, in the order of target_names.
  std::vector<Operator> target_ops;
  std::vector<std::string> target_names;
};

RWAModel build_rwa_model(const RWAModelSpec& spec, double c);

/// lambda = 1 on [-T/2, T/2], or the unit-mean Gaussian of width sigma_fraction * T.
modulation::Envelope rwa_envelope(const RWAModelSpec& spec, double duration);

struct TargetFit {
  std::vector<double> params;  // coefficients of target_ops
  double residual = 0.0;       // rms mismatch of the fitted energies, rad/us
  Operator unitary;
};

/// Fits the corrected target Hamiltonian to the adiabatic dynamic phases and
/// returns exp(-i H_target T).
TargetFit corrected_target(const RWAModel& model, const modulation::Envelope& env);

struct RWAPoint {
  double fidelity = 1.0;
  double richardson_delta = 0.0;
  double unitarity_defect = 0.0;
  TargetFit target;
};

RWAPoint rwa_point(const RWAModelSpec& spec, double c, double duration,
                   const propagation::PropagationConfig& config);

/// Columns: c_over_omega, omega_T, fidelity, fitted target parameters, hygiene.
ScanResult rwa_fidelity_map(const RWAModelSpec& spec, const std::vector<double>& c_over_omega,
                            const std::vector<double>& omega_t,
                            const propagation::PropagationConfig& config, int threads);

/// Evenly spaced grid of n points on [a, b].
std::vector<double> linspace(double a, double b, int n);

// ---------------------------------------------------------------------------
// Pulsed DD spectra and gates on the NV register.

enum class DDProtocol { AXY, GaussianAXY };

struct DDConfig {
  DDProtocol protocol = DDProtocol::GaussianAXY;
  double f = 0.271;  // f_kdd for AXY, peak value for Gaussian AXY
  int n_composite = 128;
  int k_dd = 3;
  double sigma_fraction = 1.0 / (4.0 * std::sqrt(2.0));
  double rabi = units::mhz(20.0);
  bool instantaneous = false;
  bool knill_phases = true;
};

/// Per-composite f values for the protocol at a given total duration.
std::vector<double> composite_profile(const DDConfig& config, double duration);

/// Pulse train addressing `frequency` (rad/us) with the configured protocol.
sequences::PulseSequence dd_sequence(const DDConfig& config, double frequency);

/// Columns: frequency_rad_per_us, frequency_khz, signal, richardson_delta, unitarity_defect.
ScanResult dd_spectrum(const nv::NVSystemSpec& spec, const DDConfig& config,
                       const std::vector<double>& frequencies, int threads);

/// Columns: omega_rabi_rad_per_us, omega_rabi_khz, signal.
ScanResult hartmann_hahn_scan(const nv::NVSystemSpec& spec, const nv::HartmannHahnConfig& config,
                              int threads);

struct GateConfig {
  DDConfig dd;
  std::size_t target_nucleus = 0;
  /// f scaled so the target performs the quarter-turn exp(-i pi/4 sz sx);
  /// when false dd.f is used verbatim.
  bool half_rotation = true;
  std::vector<double> detunings{0.0};
  std::vector<double> rabi_errors{0.0, 0.05};
};

/// f (or f_max) that makes sum_c f_c W a_perp = 2 pi over the sequence.
double half_rotation_f(const nv::NVSystemSpec& spec, const GateConfig& config);

struct GatePoint {
  double fidelity = 0.0;  // minimum over spectator sectors
  std::vector<double> sector_fidelities;
  double richardson_delta = 0.0;
  double unitarity_defect = 0.0;
};

/// Fidelity of the conditional gate against exp(-i pi/4 sigma0z sigma_tx) (x) I, with
/// sigma_tx the target's Pauli operator along m_s * x_hat,
/// evaluated in the frame co-rotating with the nuclei and per spectator sector
/// (each sector's own phase, which carries the spectator's energy shift, is factored out).
GatePoint gate_point(const nv::NVSystemSpec& spec, const GateConfig& config, double detuning,
                     double rabi_error);

/// Columns: detuning_rad_per_us, detuning_mhz, rabi_error, fidelity, richardson_delta, unitarity_defect.
ScanResult gate_fidelity_vs_detuning(const nv::NVSystemSpec& spec, const GateConfig& config,
                                     int threads);

/// Local maxima of y whose value is at least `fraction` of the global maximum.
std::vector<std::size_t> prominent_maxima(const std::vector<double>& y, double fraction);

}  // namespace softctrl::experiments
