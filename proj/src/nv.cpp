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

#include "softctrl/nv.hpp"

#include <cmath>
#include <stdexcept>

#include "softctrl/operators.hpp"
#include "softctrl/parallel.hpp"

namespace softctrl::nv {

namespace {

using operators::PauliAxis;

constexpr double kHbar = 1.054571817e-34;   // J s
constexpr double kMu0Over4Pi = 1e-7;        // T m / A
constexpr double kPerUsGaussToPerSTesla = 1e6 * 1e4;

// Dipolar prefactor (mu0/4pi) hbar g1 g2 / r^3 in rad/us for gyromagnetic
// ratios in rad/us/G and r in nm.
double dipolar_prefactor(double g1, double g2, double r_nm) {
  const double r = r_nm * 1e-9;
  const double c = kMu0Over4Pi * kHbar * (g1 * kPerUsGaussToPerSTesla) *
                   (g2 * kPerUsGaussToPerSTesla) / (r * r * r);
  return c * 1e-6;
}

std::array<Operator, 3> nuclear_spin(std::size_t j, const operators::SpinSystem& system) {
  return {0.5 * operators::embed(operators::pauli(PauliAxis::X), j, system),
          0.5 * operators::embed(operators::pauli(PauliAxis::Y), j, system),
          0.5 * operators::embed(operators::pauli(PauliAxis::Z), j, system)};
}

Operator dot(const Vec3& v, const std::array<Operator, 3>& s) {
  return v.x() * s[0] + v.y() * s[1] + v.z() * s[2];
}

void check_spec(const NVSystemSpec& spec) {
  if (spec.m_s != 1 && spec.m_s != -1) throw std::invalid_argument("m_s must be +1 or -1");
  if (spec.nv_axis.norm() == 0.0) throw std::invalid_argument("nv_axis must be non-zero");
  for (const auto& n : spec.nuclei) {
    if (!n.position_nm && !n.hyperfine) {
      throw std::invalid_argument("nucleus needs a position or a hyperfine vector");
    }
  }
}

}  // namespace

Eigen::Matrix3d nv_frame(const Vec3& nv_axis) {
  const Vec3 z = nv_axis.normalized();
  Eigen::Index least = 0;
  z.cwiseAbs().minCoeff(&least);
  const Vec3 e = Vec3::Unit(least);
  const Vec3 x = (e - e.dot(z) * z).normalized();
  const Vec3 y = z.cross(x);
  Eigen::Matrix3d r;
  r.row(0) = x;
  r.row(1) = y;
  r.row(2) = z;
  return r;
}

Vec3 hyperfine_vector(const Vec3& position_nm, const NVSystemSpec& spec) {
  const double r = position_nm.norm();
  if (!(r > 0.0)) throw std::invalid_argument("hyperfine_vector: nucleus at the origin");
  const Vec3 rhat = nv_frame(spec.nv_axis) * (position_nm / r);
  const double c = dipolar_prefactor(spec.gamma_e, spec.gamma_n, r);
  return c * (Vec3::UnitZ() - 3.0 * rhat.z() * rhat);
}

std::vector<Vec3> hyperfine_vectors(const NVSystemSpec& spec) {
  check_spec(spec);
  std::vector<Vec3> out;
  out.reserve(spec.nuclei.size());
  for (const auto& n : spec.nuclei) {
    out.push_back(n.hyperfine ? *n.hyperfine : hyperfine_vector(*n.position_nm, spec));
  }
  return out;
}

std::vector<NucleusParams> nuclear_params(const NVSystemSpec& spec, double omega_n) {
  std::vector<NucleusParams> out;
  for (const Vec3& a : hyperfine_vectors(spec)) {
    NucleusParams p;
    p.omega_vec = spec.gamma_n * spec.b_z_gauss * Vec3::UnitZ() - 0.5 * spec.m_s * a;
    p.omega = p.omega_vec.norm();
    p.z_hat = p.omega_vec / p.omega;
    p.a_par = a.dot(p.z_hat);
    const Vec3 perp = a - p.a_par * p.z_hat;
    p.a_perp = perp.norm();
    p.delta = p.omega - omega_n;
    if (p.a_perp > 1e-12 * std::max(a.norm(), 1e-300)) {
      p.x_hat = perp / p.a_perp;
      p.y_hat = p.z_hat.cross(p.x_hat);
    } else {
      p.dd_visible = false;
      p.x_hat = Vec3::Zero();
      p.y_hat = Vec3::Zero();
    }
    out.push_back(p);
  }
  return out;
}

Operator nuclear_dipolar_coupling(const NVSystemSpec& spec) {
  const std::size_t n = spec.nuclei.size();
  const auto system = operators::SpinSystem::qubits(n);
  Operator h = Operator::Zero(system.dim(), system.dim());
  if (!spec.include_nn_coupling) return h;
  const Eigen::Matrix3d frame = nv_frame(spec.nv_axis);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!spec.nuclei[i].position_nm || !spec.nuclei[j].position_nm) continue;
      const Vec3 d = *spec.nuclei[i].position_nm - *spec.nuclei[j].position_nm;
      const double r = d.norm();
      if (!(r > 0.0)) throw std::invalid_argument("two nuclei share a lattice site");
      const Vec3 rhat = frame * (d / r);
      const double c = dipolar_prefactor(spec.gamma_n, spec.gamma_n, r);
      const auto si = nuclear_spin(i, system);
      const auto sj = nuclear_spin(j, system);
      h += c * (si[0] * sj[0] + si[1] * sj[1] + si[2] * sj[2] - 3.0 * dot(rhat, si) * dot(rhat, sj));
    }
  }
  return h;
}

Operator build_system_hamiltonian(const NVSystemSpec& spec) {
  const auto a = hyperfine_vectors(spec);
  const std::size_t n = a.size();
  const auto nuclei = operators::SpinSystem::qubits(n);
  const Operator id_n = operators::identity(nuclei.dim());
  const Operator sz = operators::spin1_z();
  const Operator id_e = operators::identity(3);
  const double b = spec.b_z_gauss;

  Operator h = operators::kron(spec.zero_field_splitting * sz * sz - spec.gamma_e * b * sz, id_n);
  Operator nuc = nuclear_dipolar_coupling(spec);
  Operator hyper = Operator::Zero(nuclei.dim(), nuclei.dim());
  for (std::size_t j = 0; j < n; ++j) {
    const auto s = nuclear_spin(j, nuclei);
    nuc -= spec.gamma_n * b * s[2];
    hyper += dot(a[j], s);
  }
  h += operators::kron(id_e, nuc) + operators::kron(sz, hyper);
  return h;
}

double qubit_frequency(const NVSystemSpec& spec) {
  return spec.zero_field_splitting - spec.gamma_e * spec.b_z_gauss * spec.m_s;
}

Operator rotating_frame_static(const NVSystemSpec& spec, double detuning) {
  check_spec(spec);
  const Operator full = build_system_hamiltonian(spec);
  const Eigen::Index dn = full.rows() / 3;
  // Spin-1 ordering is (+1, 0, -1); the qubit keeps (m_s, 0).
  const Eigen::Index levels[2] = {spec.m_s == 1 ? 0 : 2, 1};
  Operator h(2 * dn, 2 * dn);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      h.block(r * dn, c * dn, dn, dn) = full.block(levels[r] * dn, levels[c] * dn, dn, dn);
    }
  }
  h.topLeftCorner(dn, dn) -= (qubit_frequency(spec) + detuning) * operators::identity(dn);
  return h;
}

namespace {

propagation::TimeDependentHamiltonian static_base(const NVSystemSpec& spec, double detuning,
                                                  double t_start, double t_end) {
  propagation::TimeDependentHamiltonian base;
  base.static_part = rotating_frame_static(spec, detuning);
  const Operator hs = base.static_part;
  base.evaluate = [hs](double) { return hs; };
  base.t_start = t_start;
  base.t_end = t_end;
  base.piecewise_constant = true;
  double f = std::abs(detuning);
  for (const auto& p : nuclear_params(spec)) f = std::max(f, p.omega + std::abs(p.a_par));
  base.max_frequency = f;
  return base;
}

}  // namespace

propagation::TimeDependentHamiltonian rotating_frame_qubit_hamiltonian(
    const NVSystemSpec& spec, const sequences::PulseSequence& seq, double detuning,
    const sequences::DriveErrors& errors) {
  return sequences::sequence_to_hamiltonian(seq, static_base(spec, detuning, seq.t_start, seq.t_end),
                                            errors);
}

propagation::TimeDependentHamiltonian hartmann_hahn_hamiltonian(const NVSystemSpec& spec,
                                                                double omega_rabi, double duration) {
  auto h = static_base(spec, 0.0, 0.0, duration);
  const Eigen::Index dn = h.dim() / 2;
  const Operator drive =
      0.5 * omega_rabi * operators::kron(operators::pauli(PauliAxis::X), operators::identity(dn));
  const Operator total = h.static_part + drive;
  h.evaluate = [total](double) { return total; };
  h.max_frequency = std::max(h.max_frequency, std::abs(omega_rabi));
  return h;
}

StateVector plus_state() {
  StateVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

double electron_population_loss(const Operator& u, const StateVector& electron_state) {
  const Eigen::Index dn = u.rows() / 2;
  if (electron_state.size() != 2 || u.rows() != 2 * dn) {
    throw std::invalid_argument("electron_population_loss: expected a qubit (x) nuclei propagator");
  }
  // M = (<psi| (x) I) U (|psi> (x) I); the retained population is ||M||_F^2 / d_n.
  Operator m = Operator::Zero(dn, dn);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      m += std::conj(electron_state[r]) * electron_state[c] * u.block(r * dn, c * dn, dn, dn);
    }
  }
  return 1.0 - m.squaredNorm() / static_cast<double>(dn);
}

std::vector<SpectrumPoint> hartmann_hahn_spectrum(const NVSystemSpec& spec,
                                                  const HartmannHahnConfig& config, int threads) {
  if (!std::is_sorted(config.omega_rabi.begin(), config.omega_rabi.end())) {
    throw std::invalid_argument("hartmann_hahn_spectrum: Rabi grid must be ascending");
  }
  std::vector<SpectrumPoint> out(config.omega_rabi.size());
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const double w = config.omega_rabi[i];
    const auto h = hartmann_hahn_hamiltonian(spec, w, config.duration);
    const Operator u = propagation::propagate(h, {});
    out[i] = {w, electron_population_loss(u, plus_state())};
  });
  return out;
}

NVSystemSpec two_nucleus_spec() {
  NVSystemSpec spec;
  spec.nv_axis = Vec3(1.0, 1.0, 1.0);
  spec.nuclei = {{Vec3(0.26775, 0.62475, 0.80325), std::nullopt},
                 {Vec3(0.80325, 0.08925, 0.08925), std::nullopt}};
  return spec;
}

}  // namespace softctrl::nv
