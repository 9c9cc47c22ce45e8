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

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "softctrl/experiments.hpp"
#include "softctrl/format.hpp"
#include "softctrl/modulation.hpp"
#include "softctrl/parallel.hpp"

#ifndef SOFTCTRL_REVISION
#define SOFTCTRL_REVISION "unknown"
#endif

namespace softctrl::cli {

namespace {

namespace fs = std::filesystem;
using experiments::ScanResult;

struct CommonOptions {
  std::string config;
  std::string out = "out";
  int threads = 0;
  bool instantaneous = false;
  double dt = 0.0;
  std::optional<std::string> protocol;
  std::optional<double> f3;
  std::optional<int> kdd;
};

std::string provenance() { return std::string("softctrl ") + SOFTCTRL_VERSION + " (" + SOFTCTRL_REVISION + ")"; }

Json load_root(const CommonOptions& opt) {
  if (opt.config.empty()) return Json{{"schema", kSchema}};
  return load_config(opt.config);
}

void write_outputs(const CommonOptions& opt, const std::string& subcommand, const Json& config,
                   const std::string& csv_name, const std::string& csv, const Json& metadata) {
  fs::create_directories(opt.out);
  const fs::path csv_path = fs::path(opt.out) / csv_name;
  {
    std::ofstream f(csv_path, std::ios::binary);
    f << csv;
    if (!f) throw std::runtime_error("cannot write " + csv_path.string());
  }
  Json manifest;
  manifest["schema"] = kSchema;
  manifest["subcommand"] = subcommand;
  manifest["provenance"] = provenance();
  manifest["config"] = config;
  manifest["outputs"] = {{"csv", csv_name}};
  manifest["metadata"] = metadata;
  std::ofstream m(fs::path(opt.out) / "manifest.json", std::ios::binary);
  m << manifest.dump(2) << '\n';
  if (!m) throw std::runtime_error("cannot write manifest");
  std::cout << "wrote " << csv_path.string() << " and " << (fs::path(opt.out) / "manifest.json").string()
            << '\n';
}

Json metadata_json(const ScanResult& r) {
  Json m = Json::object();
  m["protocol"] = r.protocol;
  for (const auto& [k, v] : r.metadata) m[k] = v;
  return m;
}

std::string to_csv(const ScanResult& r) {
  std::ostringstream s;
  r.write_csv(s);
  return s.str();
}

nv::NVSystemSpec read_nv(Section& s) {
  nv::NVSystemSpec spec;
  spec.b_z_gauss = s.positive("b_z_gauss", spec.b_z_gauss);
  const long ms = s.integer("m_s", spec.m_s, -1);
  if (ms != 1 && ms != -1) throw SchemaError("config key 'nv.m_s' must be +1 or -1");
  spec.m_s = static_cast<int>(ms);
  spec.zero_field_splitting = units::mhz(s.positive("d_mhz", units::to_mhz(spec.zero_field_splitting)));
  spec.gamma_e = units::mhz(s.number("gamma_e_mhz_per_g", units::to_mhz(spec.gamma_e)));
  spec.gamma_n = units::khz(s.number("gamma_n_khz_per_g", units::to_khz(spec.gamma_n)));
  const auto axis = s.numbers("nv_axis", {0.0, 0.0, 1.0});
  if (axis.size() != 3 || Vec3(axis[0], axis[1], axis[2]).norm() == 0.0) {
    throw SchemaError("config key 'nv.nv_axis' must be a non-zero 3-vector");
  }
  spec.nv_axis = Vec3(axis[0], axis[1], axis[2]);
  spec.include_nn_coupling = s.boolean("include_nn_coupling", true);
  Json nuclei = Json::array();
  for (auto& n : s.tables("nuclei")) {
    nv::NucleusSpec ns;
    if (n.has("position_nm") == n.has("hyperfine_khz")) {
      throw SchemaError("config table '" + n.name() + "' needs exactly one of position_nm, hyperfine_khz");
    }
    if (n.has("position_nm")) {
      const auto p = n.numbers("position_nm", {});
      if (p.size() != 3 || Vec3(p[0], p[1], p[2]).norm() == 0.0) {
        throw SchemaError("config key '" + n.name() + ".position_nm' must be a non-zero 3-vector");
      }
      ns.position_nm = Vec3(p[0], p[1], p[2]);
    } else {
      const auto a = n.numbers("hyperfine_khz", {});
      if (a.size() != 3) throw SchemaError("config key '" + n.name() + ".hyperfine_khz' must be a 3-vector");
      ns.hyperfine = Vec3(units::khz(a[0]), units::khz(a[1]), units::khz(a[2]));
    }
    n.finish();
    nuclei.push_back(n.effective());
    spec.nuclei.push_back(ns);
  }
  s.effective()["nuclei"] = nuclei;
  return spec;
}

std::string hyperfine_mode(const nv::NVSystemSpec& spec) {
  bool pos = false;
  bool expl = false;
  for (const auto& n : spec.nuclei) (n.hyperfine ? expl : pos) = true;
  if (pos && expl) return "mixed";
  if (expl) return "explicit";
  return pos ? "point-dipole" : "none";
}

experiments::DDConfig read_dd(Section& s, const CommonOptions& opt, experiments::DDProtocol protocol,
                              double f_default) {
  experiments::DDConfig dd;
  dd.protocol = protocol;
  dd.f = s.number("f", f_default);
  dd.n_composite = static_cast<int>(s.integer("n_composite", 128, 1));
  dd.k_dd = static_cast<int>(s.integer("k_dd", 3, 1));
  if (dd.k_dd % 2 == 0) throw SchemaError("config key '" + s.name() + ".k_dd' must be odd");
  dd.sigma_fraction = s.positive("sigma_fraction", dd.sigma_fraction);
  dd.rabi = units::mhz(s.positive("rabi_mhz", 20.0));
  dd.knill_phases = s.boolean("knill_phases", true);
  dd.instantaneous = s.boolean("instantaneous", false) || opt.instantaneous;
  s.effective()["instantaneous"] = dd.instantaneous;
  return dd;
}

// --------------------------------------------------------------------------

int cmd_modulation_table(const CommonOptions& opt) {
  Json root = load_root(opt);
  check_top_level(root, {"schema", "modulation"});
  Section s(root, "modulation");
  const double lambda0 = s.positive("lambda0", 1.0);
  const double duration = s.positive("duration_us", 1.0);
  const double sigma = s.positive("sigma_us", duration / (4.0 * std::sqrt(2.0)));
  const bool normalize = s.boolean("normalize_gaussian", true);
  const double d0 = s.number("delta_min", 0.0);
  const double d1 = s.number("delta_max", 200.0);
  const long n = s.integer("n_points", 201, 1);
  s.finish();
  const double gauss_amp = normalize ? modulation::normalized_gaussian_amplitude(sigma, duration) : lambda0;

  std::ostringstream csv;
  csv << "delta,g_const_abs,g_gauss_abs\n";
  for (double d : experiments::linspace(d0, d1, static_cast<int>(n))) {
    csv << format_number(d) << ',' << format_number(std::abs(modulation::g_constant(lambda0, duration, d)))
        << ',' << format_number(std::abs(modulation::g_gaussian_closed_form(gauss_amp, sigma, duration, d)))
        << '\n';
  }
  const Json config{{"schema", kSchema}, {"modulation", s.effective()}};
  write_outputs(opt, "modulation-table", config, "modulation-table.csv", csv.str(),
                {{"gaussian_lambda0", gauss_amp}});
  return kExitOk;
}

int cmd_rwa_map(const CommonOptions& opt) {
  Json root = load_root(opt);
  check_top_level(root, {"schema", "rwa"});
  Section s(root, "rwa");
  experiments::RWAModelSpec spec;
  spec.n_resource_qubits = static_cast<int>(s.integer("n_resource_qubits", 2, 1));
  if (spec.n_resource_qubits > 2) throw SchemaError("config key 'rwa.n_resource_qubits' must be 1 or 2");
  spec.omega = s.positive("omega", 1.0);
  spec.envelope = s.choice("envelope", "gaussian", {"gaussian", "constant"}) == "constant"
                      ? experiments::EnvelopeChoice::Constant
                      : experiments::EnvelopeChoice::Gaussian;
  spec.sigma_fraction = s.positive("sigma_fraction", spec.sigma_fraction);
  const double c0 = s.non_negative("c_min", 0.0);
  const double c1 = s.non_negative("c_max", 2.0);
  const long nc = s.integer("c_points", 61, 1);
  const double t0 = s.non_negative("wt_min", 0.0);
  const double t1 = s.non_negative("wt_max", 200.0);
  const long nt = s.integer("wt_points", 61, 1);
  propagation::PropagationConfig pc;
  pc.method = s.choice("method", "magnus4", {"magnus4", "midpoint"}) == "midpoint" ? propagation::Method::Midpoint
                                                                                 : propagation::Method::Magnus4;
  pc.target_error = s.positive("target_error", 1e-6);
  if (pc.target_error > 1e-2) throw SchemaError("config key 'rwa.target_error' must be <= 1e-2");
  pc.dt = s.non_negative("dt_us", opt.dt);
  if (opt.dt > 0.0) {
    pc.dt = opt.dt;
    s.effective()["dt_us"] = opt.dt;
  }
  s.finish();
  const auto r = experiments::rwa_fidelity_map(spec, experiments::linspace(c0, c1, static_cast<int>(nc)),
                                               experiments::linspace(t0, t1, static_cast<int>(nt)), pc,
                                               resolve_threads(opt.threads));
  const Json config{{"schema", kSchema}, {"rwa", s.effective()}};
  write_outputs(opt, "rwa-map", config, "rwa-map.csv", to_csv(r), metadata_json(r));
  return kExitOk;
}

int cmd_spectrum(const CommonOptions& opt) {
  Json root = load_root(opt);
  check_top_level(root, {"schema", "nv", "spectrum"});
  Section nvs(root, "nv");
  const auto spec = read_nv(nvs);
  nvs.finish();
  Section s(root, "spectrum");
  std::string protocol = s.choice("protocol", "gaussian-axy", {"gaussian-axy", "axy", "hartmann-hahn"});
  if (opt.protocol) {
    protocol = *opt.protocol;
    if (protocol != "gaussian-axy" && protocol != "axy" && protocol != "hartmann-hahn") {
      throw SchemaError("--protocol must be gaussian-axy, axy or hartmann-hahn");
    }
    s.effective()["protocol"] = protocol;
  }
  const double f0 = s.positive("freq_min_khz", 428.0);
  const double f1 = s.positive("freq_max_khz", 452.0);
  const long n = s.integer("n_points", 97, 1);
  const auto grid = experiments::linspace(units::khz(f0), units::khz(f1), static_cast<int>(n));
  ScanResult r;
  if (protocol == "hartmann-hahn") {
    nv::HartmannHahnConfig hh;
    hh.duration = s.positive("duration_us", 54.0);
    s.finish();
    hh.omega_rabi = grid;
    r = experiments::hartmann_hahn_scan(spec, hh, resolve_threads(opt.threads));
  } else {
    const auto dd = read_dd(s, opt,
                            protocol == "axy" ? experiments::DDProtocol::AXY : experiments::DDProtocol::GaussianAXY,
                            0.271);
    s.finish();
    r = experiments::dd_spectrum(spec, dd, grid, resolve_threads(opt.threads));
  }
  Json meta = metadata_json(r);
  meta["hyperfine_mode"] = hyperfine_mode(spec);
  const Json config{{"schema", kSchema}, {"nv", nvs.effective()}, {"spectrum", s.effective()}};
  write_outputs(opt, "spectrum", config, "spectrum.csv", to_csv(r), meta);
  return kExitOk;
}

int cmd_gate_fidelity(const CommonOptions& opt) {
  Json root = load_root(opt);
  check_top_level(root, {"schema", "nv", "gate"});
  Section nvs(root, "nv");
  const auto spec = read_nv(nvs);
  nvs.finish();
  if (spec.nuclei.empty()) throw SchemaError("gate-fidelity needs at least one [[nv.nuclei]] entry");
  Section s(root, "gate");
  std::string protocol = s.choice("protocol", "gaussian-axy", {"gaussian-axy", "axy"});
  if (opt.protocol) {
    protocol = *opt.protocol;
    if (protocol != "gaussian-axy" && protocol != "axy") throw SchemaError("--protocol must be gaussian-axy or axy");
    s.effective()["protocol"] = protocol;
  }
  experiments::GateConfig g;
  g.dd = read_dd(s, opt, protocol == "axy" ? experiments::DDProtocol::AXY : experiments::DDProtocol::GaussianAXY,
                 0.271);
  g.target_nucleus = static_cast<std::size_t>(s.integer("target_nucleus", 0, 0));
  if (g.target_nucleus >= spec.nuclei.size()) throw SchemaError("config key 'gate.target_nucleus' out of range");
  g.half_rotation = s.boolean("half_rotation", true);
  const double d0 = s.number("detuning_min_mhz", -2.0);
  const double d1 = s.number("detuning_max_mhz", 2.0);
  const long n = s.integer("n_points", 41, 1);
  g.detunings = experiments::linspace(units::mhz(d0), units::mhz(d1), static_cast<int>(n));
  g.rabi_errors = s.numbers("rabi_errors", {0.0, 0.05});
  s.finish();
  const auto r = experiments::gate_fidelity_vs_detuning(spec, g, resolve_threads(opt.threads));
  Json meta = metadata_json(r);
  meta["hyperfine_mode"] = hyperfine_mode(spec);
  const Json config{{"schema", kSchema}, {"nv", nvs.effective()}, {"gate", s.effective()}};
  write_outputs(opt, "gate-fidelity", config, "gate-fidelity.csv", to_csv(r), meta);
  return kExitOk;
}

int cmd_sequence_export(const CommonOptions& opt) {
  Json root = load_root(opt);
  check_top_level(root, {"schema", "sequence"});
  Section s(root, "sequence");
  const std::string protocol = s.choice("protocol", "axy", {"axy", "gaussian-axy"});
  auto dd = read_dd(s, opt, protocol == "axy" ? experiments::DDProtocol::AXY : experiments::DDProtocol::GaussianAXY,
                    0.271);
  if (opt.f3) {
    dd.f = *opt.f3;
    s.effective()["f"] = dd.f;
  }
  if (opt.kdd) {
    if (*opt.kdd < 1 || *opt.kdd % 2 == 0) throw SchemaError("--kdd must be a positive odd integer");
    dd.k_dd = *opt.kdd;
    s.effective()["k_dd"] = dd.k_dd;
  }
  const double freq = units::khz(s.positive("frequency_khz", 441.9116));
  s.finish();
  const auto seq = experiments::dd_sequence(dd, freq);
  std::ostringstream csv;
  sequences::write_csv(seq, csv);
  const Json config{{"schema", kSchema}, {"sequence", s.effective()}};
  write_outputs(opt, "sequence-export", config, "sequence.csv", csv.str(),
                {{"n_pulses", seq.pulses.size()},
                 {"duration_us", seq.duration()},
                 {"omega_dd_rad_per_us", seq.omega_dd}});
  return kExitOk;
}

void add_common(CLI::App* app, CommonOptions& opt, bool with_config = true) {
  if (with_config) app->add_option("--config", opt.config, "TOML config (or a manifest.json to replay)");
  app->add_option("--out", opt.out, "output directory")->capture_default_str();
  app->add_option("--threads", opt.threads, "worker threads (default: SOFTCTRL_THREADS or all cores)");
  app->add_flag("--instantaneous-pulses", opt.instantaneous, "idealise pi pulses as instantaneous flips");
  app->add_option("--dt", opt.dt, "initial propagation step in us (default: from the largest frequency)");
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"softctrl: soft quantum control of coupled spin systems"};
  app.require_subcommand(1);
  CommonOptions opt;

  auto* mod = app.add_subcommand("modulation-table", "averaging factors of constant and Gaussian envelopes");
  mod->footer("CSV columns: delta (rad/us), g_const_abs, g_gauss_abs");
  add_common(mod, opt);

  auto* rwa = app.add_subcommand("rwa-map", "gate fidelity map over coupling and duration");
  rwa->footer(
      "CSV columns: c_over_omega, omega_T, fidelity, omega_eff, [omega2_eff,] c_eff, energy_offset,\n"
      "fit_residual, richardson_delta, unitarity_defect");
  add_common(rwa, opt);

  auto* spec = app.add_subcommand("spectrum", "NV electron signal versus addressed frequency or Rabi frequency");
  spec->footer(
      "CSV columns (DD): frequency_rad_per_us, frequency_khz, signal, richardson_delta, unitarity_defect\n"
      "CSV columns (hartmann-hahn): omega_rabi_rad_per_us, omega_rabi_khz, signal");
  add_common(spec, opt);
  spec->add_option("--protocol", opt.protocol, "gaussian-axy | axy | hartmann-hahn (overrides the config)");

  auto* gate = app.add_subcommand("gate-fidelity", "conditional electron-nuclear gate fidelity versus detuning");
  gate->footer(
      "CSV columns: detuning_rad_per_us, detuning_mhz, rabi_error, fidelity, richardson_delta, unitarity_defect");
  add_common(gate, opt);
  gate->add_option("--protocol", opt.protocol, "gaussian-axy | axy (overrides the config)");

  auto* seq = app.add_subcommand("sequence-export", "pulse table of an AXY or Gaussian AXY train");
  seq->footer("CSV columns: center_us, duration_us, phase_rad, rabi_rad_per_us");
  add_common(seq, opt);
  seq->add_option("--f3", opt.f3, "target Fourier coefficient (overrides the config)");
  seq->add_option("--kdd", opt.kdd, "addressed harmonic, odd (overrides the config)");

  auto* self = app.add_subcommand("selftest", "run the invariant suite and print a pass/fail table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSchema;
  }

  try {
    if (*self) return selftest();
    if (*mod) return cmd_modulation_table(opt);
    if (*rwa) return cmd_rwa_map(opt);
    if (*spec) return cmd_spectrum(opt);
    if (*gate) return cmd_gate_fidelity(opt);
    if (*seq) return cmd_sequence_export(opt);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitSchema;
  } catch (const InfeasibleSequence& e) {
    std::cerr << "infeasible sequence: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace softctrl::cli
