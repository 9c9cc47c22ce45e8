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

#include <random>

#include "softctrl/operators.hpp"
#include "softctrl/propagation.hpp"
#include "support.hpp"

using namespace softctrl;
using namespace softctrl::propagation;
using operators::PauliAxis;

namespace {

// Rabi problem in the lab frame: H = (w/2) Z + W cos(w t) X, exact in the RWA limit.
TimeDependentHamiltonian driven_qubit(double w, double rabi, double t_end) {
  TimeDependentHamiltonian h;
  const Operator z = operators::pauli(PauliAxis::Z), x = operators::pauli(PauliAxis::X);
  h.evaluate = [=](double t) { return Operator(0.5 * w * z + rabi * std::cos(w * t) * x); };
  h.static_part = 0.5 * w * z;
  h.t_end = t_end;
  h.max_frequency = w + rabi;
  return h;
}

}  // namespace

TEST_CASE("Magnus-4 and midpoint converge to the same propagator") {
  const auto h = driven_qubit(20.0, 0.5, kPi / 0.5);
  PropagationConfig fine;
  fine.dt = 1e-4;
  const Operator ref = propagate(h, fine);
  PropagationConfig mid;
  mid.method = Method::Midpoint;
  mid.dt = 2e-4;
  CHECK((propagate(h, mid) - ref).norm() < 1e-5);
  // A pi pulse at the given Rabi rate flips the state up to Bloch-Siegert corrections.
  StateVector up(2);
  up << 1.0, 0.0;
  StateVector down(2);
  down << 0.0, 1.0;
  CHECK(transition_probability(ref, up, down) > 0.99);
}

TEST_CASE("Magnus-4 error scales as dt^4") {
  const auto h = driven_qubit(3.0, 1.0, 4.0);
  PropagationConfig c;
  c.dt = 1e-3;
  const Operator ref = propagate(h, c);
  c.dt = 0.04;
  const double e1 = (propagate(h, c) - ref).norm();
  c.dt = 0.02;
  const double e2 = (propagate(h, c) - ref).norm();
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("piecewise-constant Hamiltonians are exact per interval") {
  const Operator x = operators::pauli(PauliAxis::X), z = operators::pauli(PauliAxis::Z);
  TimeDependentHamiltonian h;
  h.evaluate = [=](double t) { return t < 1.0 ? x : Operator(z); };
  h.static_part = z;
  h.t_end = 2.5;
  h.breakpoints = {1.0};
  h.piecewise_constant = true;
  h.max_frequency = 1.0;
  const Operator want = operators::expm_hermitian_generator(z, 1.5) * operators::expm_hermitian_generator(x, 1.0);
  CHECK((propagate(h, {}) - want).norm() < 1e-13);
}

TEST_CASE("kicks are applied at their time") {
  const Operator z = operators::pauli(PauliAxis::Z), x = operators::pauli(PauliAxis::X);
  TimeDependentHamiltonian h;
  h.evaluate = [=](double) { return z; };
  h.static_part = z;
  h.t_end = 1.0;
  h.piecewise_constant = true;
  h.max_frequency = 1.0;
  h.kicks = {{0.3, x}};
  const Operator want =
      operators::expm_hermitian_generator(z, 0.7) * x * operators::expm_hermitian_generator(z, 0.3);
  CHECK((propagate(h, {}) - want).norm() < 1e-13);
}

TEST_CASE("block propagation matches the full one") {
  const auto sys = operators::SpinSystem::qubits(3);
  Operator zs = Operator::Zero(8, 8);
  for (std::size_t i = 0; i < 3; ++i) zs += (0.5 + i) * operators::embed(operators::pauli(PauliAxis::Z), i, sys);
  const Operator flip = operators::kron(operators::pauli(PauliAxis::Plus), operators::pauli(PauliAxis::Minus));
  const Operator v = operators::kron(flip + Operator(flip.adjoint()), operators::identity(2));
  TimeDependentHamiltonian h;
  h.evaluate = [=](double t) { return Operator(zs + std::sin(t) * v); };
  h.static_part = zs;
  h.t_end = 3.0;
  h.max_frequency = 4.0;
  PropagationConfig c;
  c.dt = 0.01;
  const Operator full = propagate(h, c);
  h.structure = {zs, v};
  CHECK((propagate(h, c) - full).norm() < 1e-12);
}

TEST_CASE("adaptive propagation reports hygiene") {
  const auto h = driven_qubit(5.0, 1.0, 3.0);
  const auto r = propagate_adaptive(h, {});
  CHECK(r.richardson_delta <= 1e-6);
  CHECK(r.unitarity_defect < 1e-10);
}

TEST_CASE("fidelity is phase insensitive") {
  std::mt19937_64 rng(3);
  const Operator u = operators::expm_hermitian_generator(testing::random_hermitian(4, rng), 1.0);
  CHECK(gate_fidelity(u, u * std::exp(Complex(0.0, 0.4))) == doctest::Approx(1.0));
  CHECK(gate_fidelity(u, operators::identity(4)) < 1.0);
}

TEST_CASE("non-Hermitian input is rejected") {
  TimeDependentHamiltonian h;
  Operator bad = operators::pauli(PauliAxis::Plus);
  h.evaluate = [=](double) { return bad; };
  h.static_part = bad;
  h.t_end = 1.0;
  h.max_frequency = 1.0;
  CHECK_THROWS(propagate(h, {}));
}
