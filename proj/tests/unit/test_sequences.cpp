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

#include <doctest.h>

#include <sstream>

#include "../oracles/frozen_values.hpp"
#include "softctrl/operators.hpp"
#include "softctrl/sequences.hpp"

using namespace softctrl;
using namespace softctrl::sequences;

namespace {

PulseSequence equidistant(int n, double period) {
  // pi pulses at T/4 and 3T/4 of each period: a +-1 square wave in cos(omega t).
  PulseSequence s;
  s.t_end = n * period;
  s.omega_dd = kTwoPi / period;
  for (int i = 0; i < n; ++i) {
    s.pulses.push_back({(i + 0.25) * period, 0.0, 0.0, 0.0, 0.0});
    s.pulses.push_back({(i + 0.75) * period, 0.0, 0.0, 0.0, 0.0});
  }
  return s;
}

}  // namespace

TEST_CASE("square-wave Fourier coefficients") {
  const auto s = equidistant(4, 2.0);
  CHECK(std::abs(fourier_coefficient(s, 1) - 4.0 / kPi) < 1e-12);
  CHECK(std::abs(fourier_coefficient(s, 2)) < 1e-12);
  CHECK(std::abs(fourier_coefficient(s, 3) + 4.0 / (3.0 * kPi)) < 1e-12);
  const auto f = modulation_function(s);
  CHECK(f(0.1) == 1.0);
  CHECK(f(1.0) == -1.0);
}

TEST_CASE("asymmetric sequences are not cosine series") {
  PulseSequence s;
  s.t_end = 1.0;
  s.omega_dd = kTwoPi;
  s.pulses = {{0.1, 0.0, 0.0, 0.0, 0.0}, {0.3, 0.0, 0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(fourier_coefficient(s, 1), std::invalid_argument);
}

TEST_CASE("AXY timing solve matches the reference root") {
  const auto b = solve_axy_timings(0.271, 3);
  CHECK(b.xi1 == doctest::Approx(oracle::kAxyXi1).epsilon(1e-10));
  CHECK(b.xi2 == doctest::Approx(oracle::kAxyXi2).epsilon(1e-10));
  CHECK(std::abs(b.f_target - 0.271) < 1e-12);
  CHECK(std::abs(b.f_nulled) < 1e-12);
  for (double f : {0.01, 0.2, 0.6, -0.3}) {
    const auto r = solve_axy_timings(f, 3);
    CAPTURE(f);
    CHECK(std::abs(axy_fourier(3, r.xi1, r.xi2) - f) < 1e-10);
    CHECK(std::abs(axy_fourier(1, r.xi1, r.xi2)) < 1e-10);
  }
  CHECK_THROWS_AS(solve_axy_timings(1.3, 3), InfeasibleSequence);
}

TEST_CASE("AXY train realises the target coefficient") {
  AXYOptions o;
  o.addressed_frequency = units::khz(441.9);
  o.n_composite = 8;
  o.instantaneous = true;
  const auto s = axy_sequence(o, {0.271});
  CHECK(s.pulses.size() == 40);
  CHECK(std::abs(fourier_coefficient(s, 3) - 0.271) < 1e-9);
  CHECK(std::abs(fourier_coefficient(s, 1)) < 1e-9);
  CHECK(s.omega_dd == doctest::Approx(o.addressed_frequency / 3.0));
}

TEST_CASE("XY8 phase pattern and Knill phases") {
  const int want[8] = {0, 1, 0, 1, 1, 0, 1, 0};
  for (std::size_t m = 0; m < 16; ++m) CHECK(xy8_phase_index(m) == want[m % 8]);
  AXYOptions o;
  o.addressed_frequency = 2.0;
  o.n_composite = 2;
  const auto s = axy_sequence(o, {0.2});
  CHECK(s.pulses[0].phase == doctest::Approx(kPi / 6.0));
  CHECK(s.pulses[7].phase == doctest::Approx(kPi / 2.0 + kPi / 2.0));
}

TEST_CASE("finite pulses that overlap are rejected") {
  AXYOptions o;
  o.addressed_frequency = units::mhz(5.0);
  o.rabi = units::mhz(1.0);
  CHECK_THROWS_AS(axy_sequence(o, {0.271}), InfeasibleSequence);
}

TEST_CASE("gaussian schedule peaks at the centre") {
  const auto g = gaussian_axy_schedule(0.271, 32, 10.0, 100.0);
  REQUIRE(g.f_blocks.size() == 32);
  CHECK(g.f_blocks[15] == doctest::Approx(g.f_blocks[16]));
  CHECK(g.f_blocks[15] < 0.271);
  CHECK(g.f_blocks[0] == doctest::Approx(0.271 * std::exp(-std::pow(100.0 / 2 - 100.0 / 64, 2) / 200.0)));
  CHECK(expand_blocks(g.f_blocks).size() == 128);
}

TEST_CASE("effective DD Hamiltonian") {
  const Operator h = effective_dd_hamiltonian(0.5, {{2.0, 0.0}});
  const Operator want = -(0.5 * 2.0 / 8.0) * operators::kron(operators::pauli(operators::PauliAxis::Z),
                                                              operators::pauli(operators::PauliAxis::X));
  CHECK((h - want).norm() < 1e-15);
}

TEST_CASE("sequence CSV export") {
  AXYOptions o;
  o.addressed_frequency = units::khz(441.9);
  o.n_composite = 1;
  std::ostringstream out;
  write_csv(axy_sequence(o, {0.271}), out);
  const std::string csv = out.str();
  CHECK(csv.rfind("center_us,duration_us,phase_rad,rabi_rad_per_us\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}
