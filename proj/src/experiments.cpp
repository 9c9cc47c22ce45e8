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

#include "softctrl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "softctrl/format.hpp"
#include "softctrl/operators.hpp"
#include "softctrl/parallel.hpp"
#include "softctrl/sequences.hpp"

namespace softctrl::experiments {

namespace {

using operators::PauliAxis;
using operators::kron;
using operators::pauli;

Operator flip_flop(std::size_t a, std::size_t b, const operators::SpinSystem& system) {
  const Operator up = operators::embed(pauli(PauliAxis::Plus), a, system) *
                      operators::embed(pauli(PauliAxis::Minus), b, system);
  return up + up.adjoint();
}

double spectral_radius(const Operator& h) {
  return operators::hermitian_eigendecomposition(h).values.cwiseAbs().maxCoeff();
}

constexpr int kAdiabaticSteps = 1000;

}  // namespace

std::vector<double> ScanResult::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("ScanResult: no column '" + name + "'");
  const auto c = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(c));
  return out;
}

void ScanResult::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << format_number(r[c]);
    out << '\n';
  }
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("linspace: n must be >= 1");
  if (n == 1) return {a};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  out.back() = b;
  return out;
}

// ---------------------------------------------------------------------------

RWAModel build_rwa_model(const RWAModelSpec& spec, double c) {
  if (!(spec.omega > 0.0)) throw std::invalid_argument("rwa model: omega must be > 0");
  if (spec.n_resource_qubits != 1 && spec.n_resource_qubits != 2) {
    throw std::invalid_argument("rwa model: n_resource_qubits must be 1 or 2");
  }
  const std::size_t n = spec.n_resource_qubits + 1;
  const auto sys = operators::SpinSystem::qubits(n);
  auto z = [&](std::size_t i) { return operators::embed(pauli(PauliAxis::Z), i, sys); };
  auto x = [&](std::size_t i) { return operators::embed(pauli(PauliAxis::X), i, sys); };
  const double w = spec.omega;

  RWAModel m;
  const Operator zz = 0.5 * (z(0) + z(1));
  m.h_s = w * zz;
  Operator v = x(0) * x(1);
  m.target_ops = {zz};
  m.target_names = {"omega_eff"};
  if (n == 3) {
    m.h_s += 1.5 * w * z(2);
    v += x(0) * x(2);
    m.target_ops.push_back(0.5 * z(2));
    m.target_names.push_back("omega2_eff");
  }
  m.terms = {{c, v}};
  m.target_ops.push_back(flip_flop(0, 1, sys));
  m.target_names.push_back("c_eff");
  m.target_ops.push_back(operators::identity(sys.dim()));
  m.target_names.push_back("energy_offset");
  return m;
}

modulation::Envelope rwa_envelope(const RWAModelSpec& spec, double duration) {
  if (spec.envelope == EnvelopeChoice::Constant) return modulation::Envelope::constant(1.0, duration);
  return modulation::normalized_gaussian_envelope(spec.sigma_fraction * duration, duration);
}

TargetFit corrected_target(const RWAModel& model, const modulation::Envelope& env) {
  const auto ad = spectral::adiabatic_average_hamiltonian(model.h_s, model.terms, env, kAdiabaticSteps);
  const Eigen::Index dim = model.h_s.rows();
  const auto n_ops = static_cast<Eigen::Index>(model.target_ops.size());
  Eigen::MatrixXd a(dim, n_ops);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index o = 0; o < n_ops; ++o) {
      a(r, o) = (ad.basis.col(r).adjoint() * model.target_ops[o] * ad.basis.col(r))(0, 0).real();
    }
  }
  const Eigen::VectorXd e = ad.energies();
  const Eigen::VectorXd p = a.colPivHouseholderQr().solve(e);
  TargetFit fit;
  fit.params.assign(p.data(), p.data() + p.size());
  fit.residual = std::sqrt((a * p - e).squaredNorm() / static_cast<double>(dim));
  Operator h = Operator::Zero(dim, dim);
  for (Eigen::Index o = 0; o < n_ops; ++o) h += p[o] * model.target_ops[o];
  fit.unitary = operators::expm_hermitian_generator(h, env.duration());
  return fit;
}

RWAPoint rwa_point(const RWAModelSpec& spec, double c, double duration,
                   const propagation::PropagationConfig& config) {
  const RWAModel model = build_rwa_model(spec, c);
  RWAPoint out;
  if (duration == 0.0) {
    out.target.params.assign(model.target_ops.size(), 0.0);
    return out;
  }
  const auto env = rwa_envelope(spec, duration);
  out.target = corrected_target(model, env);

  const Operator v = spectral::total_interaction(model.terms, model.h_s.rows());
  propagation::TimeDependentHamiltonian h;
  h.static_part = model.h_s;
  const Operator hs = model.h_s;
  h.evaluate = [hs, v, env](double t) { return Operator(hs + env.evaluate(t) * v); };
  h.t_start = -0.5 * duration;
  h.t_end = 0.5 * duration;
  h.breakpoints = env.breakpoints();
  h.piecewise_constant = spec.envelope == EnvelopeChoice::Constant;
  h.structure = {model.h_s, v};
  h.max_frequency = std::max(spectral_radius(model.h_s), env.peak() * spectral_radius(v));

  const Operator target = out.target.unitary;
  const auto res = propagation::propagate_adaptive(
      h, config, [&target](const Operator& u) { return propagation::gate_fidelity(u, target); });
  out.fidelity = propagation::gate_fidelity(res.unitary, target);
  out.richardson_delta = res.richardson_delta;
  out.unitarity_defect = res.unitarity_defect;
  return out;
}

ScanResult rwa_fidelity_map(const RWAModelSpec& spec, const std::vector<double>& c_over_omega,
                            const std::vector<double>& omega_t,
                            const propagation::PropagationConfig& config, int threads) {
  ScanResult r;
  r.protocol = "rwa-map";
  r.columns = {"c_over_omega", "omega_T", "fidelity"};
  for (const auto& name : build_rwa_model(spec, 0.0).target_names) r.columns.push_back(name);
  r.columns.insert(r.columns.end(), {"fit_residual", "richardson_delta", "unitarity_defect"});
  const std::size_t nt = omega_t.size();
  r.rows.resize(c_over_omega.size() * nt);
  parallel_for(r.rows.size(), threads, [&](std::size_t i) {
    const double cw = c_over_omega[i / nt];
    const double wt = omega_t[i % nt];
    const RWAPoint p = rwa_point(spec, cw * spec.omega, wt / spec.omega, config);
    std::vector<double> row{cw, wt, p.fidelity};
    row.insert(row.end(), p.target.params.begin(), p.target.params.end());
    row.insert(row.end(), {p.target.residual, p.richardson_delta, p.unitarity_defect});
    r.rows[i] = std::move(row);
  });
  r.metadata = {{"n_resource_qubits", std::to_string(spec.n_resource_qubits)},
                {"omega", format_number(spec.omega)},
                {"envelope", spec.envelope == EnvelopeChoice::Constant ? "constant" : "gaussian"},
                {"sigma_fraction", format_number(spec.sigma_fraction)}};
  return r;
}

// ---------------------------------------------------------------------------

std::vector<double> composite_profile(const DDConfig& config, double duration) {
  if (config.protocol == DDProtocol::AXY) {
    return std::vector<double>(static_cast<std::size_t>(config.n_composite), config.f);
  }
  if (config.n_composite % 4 != 0) {
    throw std::invalid_argument("Gaussian AXY needs n_composite divisible by 4");
  }
  const auto sched = sequences::gaussian_axy_schedule(config.f, config.n_composite / 4,
                                                      config.sigma_fraction * duration, duration);
  return sequences::expand_blocks(sched.f_blocks);
}

sequences::PulseSequence dd_sequence(const DDConfig& config, double frequency) {
  sequences::AXYOptions opt;
  opt.addressed_frequency = frequency;
  opt.k_dd = config.k_dd;
  opt.n_composite = config.n_composite;
  opt.rabi = config.rabi;
  opt.instantaneous = config.instantaneous;
  opt.knill_phases = config.knill_phases;
  const double duration = config.n_composite * kPi * config.k_dd / frequency;
  return sequences::axy_sequence(opt, composite_profile(config, duration));
}

ScanResult dd_spectrum(const nv::NVSystemSpec& spec, const DDConfig& config,
                       const std::vector<double>& frequencies, int threads) {
  ScanResult r;
  r.protocol = config.protocol == DDProtocol::AXY ? "axy" : "gaussian-axy";
  r.columns = {"frequency_rad_per_us", "frequency_khz", "signal", "richardson_delta",
               "unitarity_defect"};
  r.rows.resize(frequencies.size());
  const StateVector plus = nv::plus_state();
  parallel_for(frequencies.size(), threads, [&](std::size_t i) {
    const double w = frequencies[i];
    const auto seq = dd_sequence(config, w);
    const auto h = nv::rotating_frame_qubit_hamiltonian(spec, seq);
    const auto res = propagation::propagate_adaptive(
        h, {}, [&](const Operator& u) { return nv::electron_population_loss(u, plus); });
    r.rows[i] = {w, units::to_khz(w), nv::electron_population_loss(res.unitary, plus),
                 res.richardson_delta, res.unitarity_defect};
  });
  r.metadata = {{"f", format_number(config.f)},
                {"n_composite", std::to_string(config.n_composite)},
                {"k_dd", std::to_string(config.k_dd)},
                {"rabi_rad_per_us", format_number(config.rabi)},
                {"instantaneous", config.instantaneous ? "true" : "false"}};
  return r;
}

ScanResult hartmann_hahn_scan(const nv::NVSystemSpec& spec, const nv::HartmannHahnConfig& config,
                              int threads) {
  ScanResult r;
  r.protocol = "hartmann-hahn";
  r.columns = {"omega_rabi_rad_per_us", "omega_rabi_khz", "signal"};
  for (const auto& p : nv::hartmann_hahn_spectrum(spec, config, threads)) {
    r.rows.push_back({p.x, units::to_khz(p.x), p.signal});
  }
  r.metadata = {{"duration_us", format_number(config.duration)}};
  return r;
}

// ---------------------------------------------------------------------------

double half_rotation_f(const nv::NVSystemSpec& spec, const GateConfig& config) {
  const auto params = nv::nuclear_params(spec);
  if (config.target_nucleus >= params.size()) throw std::invalid_argument("gate: no such target nucleus");
  const auto& t = params[config.target_nucleus];
  if (!t.dd_visible) throw std::invalid_argument("gate: target nucleus has a_perp = 0");
  const double window = kPi * config.dd.k_dd / t.omega;
  DDConfig unit = config.dd;
  unit.f = 1.0;
  double sum = 0.0;
  for (double f : composite_profile(unit, config.dd.n_composite * window)) sum += f;
  return kTwoPi / (t.a_perp * window * sum);
}

GatePoint gate_point(const nv::NVSystemSpec& spec, const GateConfig& config, double detuning,
                     double rabi_error) {
  const auto params = nv::nuclear_params(spec);
  const std::size_t n = params.size();
  if (config.target_nucleus >= n) throw std::invalid_argument("gate: no such target nucleus");
  const auto& tgt = params[config.target_nucleus];

  DDConfig dd = config.dd;
  if (config.half_rotation) dd.f = half_rotation_f(spec, config);
  const auto seq = dd_sequence(dd, tgt.omega);
  const auto h = nv::rotating_frame_qubit_hamiltonian(spec, seq, detuning, {rabi_error});

  // Frame co-rotating with every nucleus at the addressed frequency.
  const auto sys = operators::SpinSystem::qubits(n + 1);
  auto spin_along = [&](std::size_t j, const Vec3& v) -> Operator {
    return 0.5 * (v.x() * operators::embed(pauli(PauliAxis::X), j + 1, sys) +
                  v.y() * operators::embed(pauli(PauliAxis::Y), j + 1, sys) +
                  v.z() * operators::embed(pauli(PauliAxis::Z), j + 1, sys));
  };
  Operator h0 = Operator::Zero(sys.dim(), sys.dim());
  for (std::size_t j = 0; j < n; ++j) h0 -= tgt.omega * spin_along(j, params[j].z_hat);
  const Operator to_frame = operators::expm_hermitian_generator(h0, -seq.duration());

  // Positive f drives the rotation about m_s * x_hat, the transverse axis of
  // the electron-conditioned field (m_s/2) A.
  const Vec3 axis = spec.m_s * tgt.x_hat;
  const Operator x_t = axis.x() * pauli(PauliAxis::X) + axis.y() * pauli(PauliAxis::Y) +
                       axis.z() * pauli(PauliAxis::Z);
  const Operator target4 =
      operators::expm_hermitian_generator(kron(pauli(PauliAxis::Z), x_t), 0.25 * kPi);

  // Isometries onto each product eigenstate of the spectators' quantisation axes.
  std::vector<Operator> sectors{Operator::Identity(1, 1)};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Operator> next;
    if (j == config.target_nucleus) {
      for (const auto& s : sectors) next.push_back(kron(s, operators::identity(2)));
    } else {
      const Vec3& z = params[j].z_hat;
      const Operator zj = z.x() * pauli(PauliAxis::X) + z.y() * pauli(PauliAxis::Y) +
                          z.z() * pauli(PauliAxis::Z);
      const auto eig = operators::hermitian_eigendecomposition(zj);
      for (const auto& s : sectors) {
        for (int k = 0; k < 2; ++k) next.push_back(kron(s, eig.vectors.col(k)));
      }
    }
    sectors = std::move(next);
  }
  for (auto& s : sectors) s = kron(operators::identity(2), s);

  auto sector_fids = [&](const Operator& u) {
    const Operator ur = to_frame * u;
    std::vector<double> f;
    for (const auto& p : sectors) {
      const Operator us = p.adjoint() * ur * p;
      f.push_back(std::abs((target4 * us.adjoint()).trace()) / 4.0);
    }
    return f;
  };
  auto min_fid = [&](const Operator& u) {
    const auto f = sector_fids(u);
    return *std::min_element(f.begin(), f.end());
  };

  const auto res = propagation::propagate_adaptive(h, {}, min_fid);
  GatePoint out;
  out.sector_fidelities = sector_fids(res.unitary);
  out.fidelity = *std::min_element(out.sector_fidelities.begin(), out.sector_fidelities.end());
  out.richardson_delta = res.richardson_delta;
  out.unitarity_defect = res.unitarity_defect;
  return out;
}

ScanResult gate_fidelity_vs_detuning(const nv::NVSystemSpec& spec, const GateConfig& config,
                                     int threads) {
  ScanResult r;
  r.protocol = config.dd.protocol == DDProtocol::AXY ? "axy" : "gaussian-axy";
  r.columns = {"detuning_rad_per_us", "detuning_mhz", "rabi_error", "fidelity", "richardson_delta",
               "unitarity_defect"};
  const std::size_t nd = config.detunings.size();
  r.rows.resize(config.rabi_errors.size() * nd);
  parallel_for(r.rows.size(), threads, [&](std::size_t i) {
    const double err = config.rabi_errors[i / nd];
    const double d = config.detunings[i % nd];
    const GatePoint p = gate_point(spec, config, d, err);
    r.rows[i] = {d, units::to_mhz(d), err, p.fidelity, p.richardson_delta, p.unitarity_defect};
  });
  const double f = config.half_rotation ? half_rotation_f(spec, config) : config.dd.f;
  r.metadata = {{"f", format_number(f)},
                {"target_nucleus", std::to_string(config.target_nucleus)},
                {"n_composite", std::to_string(config.dd.n_composite)},
                {"k_dd", std::to_string(config.dd.k_dd)},
                {"knill_phases", config.dd.knill_phases ? "true" : "false"}};
  return r;
}

std::vector<std::size_t> prominent_maxima(const std::vector<double>& y, double fraction) {
  std::vector<std::size_t> out;
  if (y.empty()) return out;
  const double top = *std::max_element(y.begin(), y.end());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const bool left = i == 0 || y[i] > y[i - 1];
    const bool right = i + 1 == y.size() || y[i] >= y[i + 1];
    if (left && right && y[i] >= fraction * top) out.push_back(i);
  }
  return out;
}

}  // namespace softctrl::experiments
