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

#include <optional>
#include <vector>

#include "softctrl/common.hpp"
#include "softctrl/propagation.hpp"
#include "softctrl/sequences.hpp"

namespace softctrl::nv {

/// One 13C nucleus, given either by lattice position or by explicit hyperfine vector.
struct NucleusSpec {
  std::optional<Vec3> position_nm;  // crystal frame
  std::optional<Vec3> hyperfine;    // rad/us, NV frame (z along the NV axis)
};

struct NVSystemSpec {
  double b_z_gauss = 400.0;
  int m_s = -1;
  double zero_field_splitting = units::mhz(2870.0);  // D
  double gamma_e = -units::mhz(2.8025);              // rad/us/G
  double gamma_n = units::khz(1.0705);               // rad/us/G
  /// NV symmetry axis in the frame used for nucleus positions.
  Vec3 nv_axis = Vec3::UnitZ();
  std::vector<NucleusSpec> nuclei;
  bool include_nn_coupling = true;
};

/// Rotation taking crystal-frame vectors into the NV frame (rows x, y, z with z = nv_axis).
Eigen::Matrix3d nv_frame(const Vec3& nv_axis);

/// Point-dipole hyperfine vector (NV frame, rad/us) of a nucleus at position_nm (crystal frame).
Vec3 hyperfine_vector(const Vec3& position_nm, const NVSystemSpec& spec);

/// Hyperfine vectors of all nuclei, explicit values taking precedence over positions.
std::vector<Vec3> hyperfine_vectors(const NVSystemSpec& spec);

struct NucleusParams {
  Vec3 omega_vec;  // gamma_n B z - (m_s/2) A
  double omega = 0.0;
  double a_par = 0.0;
  double a_perp = 0.0;
  double delta = 0.0;  // omega - addressed frequency
  Vec3 x_hat;          // (A - a_par w_hat) / a_perp
  Vec3 y_hat;          // w_hat x x_hat
  Vec3 z_hat;          // w_hat
  bool dd_visible = true;  // false when a_perp vanishes and x_hat is undefined
};

std::vector<NucleusParams> nuclear_params(const NVSystemSpec& spec, double omega_n = 0.0);

/// Secular H_sys on spin-1 (x) (spin-1/2)^N, electron levels ordered (+1, 0, -1).
Operator build_system_hamiltonian(const NVSystemSpec& spec);

/// Nuclear-nuclear dipolar coupling on (spin-1/2)^N (NV frame).
Operator nuclear_dipolar_coupling(const NVSystemSpec& spec);

/// Electron transition frequency between 0 and m_s without nuclei.
double qubit_frequency(const NVSystemSpec& spec);

/// Static qubit (x) nuclei Hamiltonian in the frame rotating at qubit_frequency + detuning.
/// Qubit basis: index 0 = |m_s>, index 1 = |0>.
Operator rotating_frame_static(const NVSystemSpec& spec, double detuning);

/// Pulsed control in the rotating frame; piecewise constant between pulse edges.
propagation::TimeDependentHamiltonian rotating_frame_qubit_hamiltonian(
    const NVSystemSpec& spec, const sequences::PulseSequence& seq, double detuning = 0.0,
    const sequences::DriveErrors& errors = {});

/// Constant resonant drive (Omega/2) sigma0x for duration T (Hartmann-Hahn).
propagation::TimeDependentHamiltonian hartmann_hahn_hamiltonian(const NVSystemSpec& spec,
                                                                double omega_rabi, double duration);

/// 1 - Tr[Pi U rho U^dagger] with rho = |psi><psi| (x) I/d_n and Pi = |psi><psi| (x) I.
double electron_population_loss(const Operator& u, const StateVector& electron_state);

/// |+> for sequences; the sigma_x eigenstate locked by a Hartmann-Hahn drive is the same vector.
StateVector plus_state();

struct HartmannHahnConfig {
  std::vector<double> omega_rabi;  // ascending, rad/us
  double duration = 54.0;         // us
};

struct SpectrumPoint {
  double x = 0.0;
  double signal = 0.0;
};

std::vector<SpectrumPoint> hartmann_hahn_spectrum(const NVSystemSpec& spec,
                                                  const HartmannHahnConfig& config,
                                                  int threads = 1);

/// Two 13C nuclei (0.26775, 0.62475, 0.80325) nm and (0.80325, 0.08925, 0.08925) nm
/// at 400 G with the NV axis along (1,1,1): a weakly coupled target near 441.9 kHz
/// and a strongly coupled spectator near 437.5 kHz.
NVSystemSpec two_nucleus_spec();

}  // namespace softctrl::nv
