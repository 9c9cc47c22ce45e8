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

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cli.hpp"
#include "softctrl/modulation.hpp"
#include "softctrl/operators.hpp"
#include "softctrl/propagation.hpp"
#include "softctrl/sequences.hpp"
#include "softctrl/spectral.hpp"

namespace softctrl::cli {

namespace {

struct Check {
  std::string name;
  std::function<double()> measure;  // returns an error, compared against tol
  double tol;
};

std::vector<Check> checks() {
  using namespace softctrl::operators;
  std::vector<Check> c;
  c.push_back({"pauli algebra [X,Y] = 2iZ", [] {
                 const Operator x = pauli(PauliAxis::X), y = pauli(PauliAxis::Y), z = pauli(PauliAxis::Z);
                 return (commutator(x, y) - 2.0 * kI * z).norm();
               },
               1e-14});
  c.push_back({"g constant T=1 delta=2pi vanishes", [] { return std::abs(modulation::g_constant(1.0, 1.0, kTwoPi)); },
               1e-14});
  c.push_back({"gaussian g closed form vs quadrature", [] {
                 const double sigma = 1.0 / (4.0 * std::sqrt(2.0));
                 const auto env = modulation::Envelope::gaussian(1.0, sigma, 1.0);
                 double worst = 0.0;
                 for (double d : {0.0, 3.0, 17.0, 60.0}) {
                   worst = std::max(worst, std::abs(modulation::g_gaussian_closed_form(1.0, sigma, 1.0, d) -
                                                    modulation::averaging_factor_numeric(env, d)));
                 }
                 return worst;
               },
               1e-10});
  c.push_back({"normalised gaussian has unit mean", [] {
                 return std::abs(modulation::normalized_gaussian_envelope(0.25, 1.0).mean() - 1.0);
               },
               1e-10});
  c.push_back({"AXY timing solve reproduces f_k", [] {
                 const auto b = sequences::solve_axy_timings(0.271, 3);
                 return std::abs(sequences::axy_fourier(3, b.xi1, b.xi2) - 0.271) +
                        std::abs(sequences::axy_fourier(1, b.xi1, b.xi2));
               },
               1e-10});
  c.push_back({"spectral projectors resolve identity", [] {
                 const Operator h = kron(pauli(PauliAxis::Z), identity(2)) + 0.5 * kron(identity(2), pauli(PauliAxis::Z));
                 const auto s = spectral::decompose_static(h);
                 Operator sum = Operator::Zero(4, 4);
                 for (const auto& p : s.projectors) sum += p;
                 return (sum - identity(4)).norm();
               },
               1e-12});
  c.push_back({"static propagation matches exact exponential", [] {
                 const Operator h = pauli(PauliAxis::X) + 0.3 * pauli(PauliAxis::Z);
                 propagation::TimeDependentHamiltonian td;
                 td.evaluate = [h](double) { return h; };
                 td.static_part = h;
                 td.t_end = 2.0;
                 td.max_frequency = 2.0;
                 const Operator u = propagation::propagate(td, {});
                 return (u - expm_hermitian_generator(h, 2.0)).norm();
               },
               1e-10});
  c.push_back({"Magnus-4 driven qubit is unitary", [] {
                 propagation::TimeDependentHamiltonian td;
                 td.evaluate = [](double t) {
                   return Operator(std::cos(3.0 * t) * pauli(PauliAxis::X) + 0.5 * pauli(PauliAxis::Z));
                 };
                 td.static_part = 0.5 * pauli(PauliAxis::Z);
                 td.t_end = 5.0;
                 td.max_frequency = 3.5;
                 return unitarity_defect(propagation::propagate_adaptive(td, {}).unitary);
               },
               1e-10});
  return c;
}

}  // namespace

int selftest() {
  int failed = 0;
  std::printf("%-48s %-12s %s\n", "check", "error", "result");
  for (const auto& c : checks()) {
    double err = 0.0;
    bool ok = false;
    try {
      err = c.measure();
      ok = std::isfinite(err) && err <= c.tol;
    } catch (const std::exception&) {
      err = NAN;
    }
    if (!ok) ++failed;
    std::printf("%-48s %-12.3e %s\n", c.name.c_str(), err, ok ? "PASS" : "FAIL");
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(checks().size()) - failed, checks().size());
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace softctrl::cli
