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

#include "softctrl/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "softctrl/operators.hpp"

namespace softctrl::propagation {

namespace {

using Index = Eigen::Index;
using Blocks = std::vector<std::vector<Index>>;

struct Stepper {
  const TimeDependentHamiltonian& h;
  Method method;
  Blocks blocks;

  // exp(-i H_eff tau) assembled blockwise.
  Operator exp_blocks(const Operator& heff, double tau) const {
    const Index dim = heff.rows();
    if (blocks.size() <= 1) return operators::expm_hermitian_generator(heff, tau);
    Operator u = Operator::Zero(dim, dim);
    for (const auto& idx : blocks) {
      const Operator sub = operators::submatrix(heff, idx);
      const Operator e = operators::expm_hermitian_generator(sub, tau);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
          u(idx[i], idx[j]) = e(static_cast<Index>(i), static_cast<Index>(j));
        }
      }
    }
    return u;
  }

  Operator step(double t0, double tau) const {
    if (method == Method::Midpoint) return exp_blocks(h(t0 + 0.5 * tau), tau);
    constexpr double g = 0.28867513459481288225;  // sqrt(3)/6
    const Operator h1 = h(t0 + (0.5 - g) * tau);
    const Operator h2 = h(t0 + (0.5 + g) * tau);
    // Fourth-order Magnus step at the two Gauss points. i[H2, H1] is Hermitian.
    Operator heff = 0.5 * (h1 + h2) - kI * (std::sqrt(3.0) / 12.0 * tau) * (h2 * h1 - h1 * h2);
    heff = 0.5 * (heff + heff.adjoint());
    return exp_blocks(heff, tau);
  }
};

std::vector<double> interval_edges(const TimeDependentHamiltonian& h) {
  std::vector<double> edges{h.t_start};
  for (double b : h.breakpoints) {
    if (b > h.t_start && b < h.t_end) edges.push_back(b);
  }
  for (const auto& k : h.kicks) {
    if (k.time > h.t_start && k.time < h.t_end) edges.push_back(k.time);
  }
  edges.push_back(h.t_end);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// Kicks sitting exactly on `t`, in declaration order.
void apply_kicks(const TimeDependentHamiltonian& h, double t, Operator& u) {
  for (const auto& k : h.kicks) {
    if (k.time == t) u = k.unitary * u;
  }
}

Operator run(const TimeDependentHamiltonian& h, double dt, Method method, int substeps) {
  const Index dim = h.dim();
  if (!(h.t_end >= h.t_start)) throw std::invalid_argument("propagate: t_end < t_start");
  if (!h.evaluate) throw std::invalid_argument("propagate: Hamiltonian has no evaluator");
  Stepper stepper{h, method, {}};
  if (!h.structure.empty()) stepper.blocks = operators::connected_blocks(h.structure, 0.0);

  const auto edges = interval_edges(h);
  Operator u = Operator::Identity(dim, dim);
  apply_kicks(h, h.t_start, u);
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e];
    const double b = edges[e + 1];
    const double len = b - a;
    if (len > 0.0) {
      if (h.piecewise_constant) {
        // One decomposition per interval; `substeps` equal factors so that
        // step halving still exercises the product.
        const Operator hm = h(0.5 * (a + b));
        operators::require_hermitian(hm, "propagate");
        const Operator f = stepper.exp_blocks(hm, len / substeps);
        for (int s = 0; s < substeps; ++s) u = f * u;
      } else {
        const auto n = static_cast<long>(std::ceil(len / dt - 1e-9));
        if (n > 50'000'000) throw NumericalError("propagate: step underflow");
        const double tau = len / static_cast<double>(std::max(n, 1L));
        for (long s = 0; s < std::max(n, 1L); ++s) u = stepper.step(a + tau * s, tau) * u;
      }
    }
    apply_kicks(h, b, u);
  }
  const double defect = operators::unitarity_defect(u);
  if (defect > 1e-8 * std::sqrt(static_cast<double>(dim))) {
    throw NumericalError("propagate: unitarity defect " + std::to_string(defect));
  }
  return u;
}

}  // namespace

Operator TimeDependentHamiltonian::operator()(double t) const {
  if (t < t_start || t > t_end) return static_part;
  return evaluate(t);
}

double default_step(const TimeDependentHamiltonian& h, Method method) {
  const double span = std::max(h.t_end - h.t_start, 1e-300);
  if (!(h.max_frequency > 0.0)) return span;
  return method == Method::Midpoint ? 1.0 / (50.0 * h.max_frequency)
                                    : 1.0 / (4.0 * h.max_frequency);
}

Operator propagate(const TimeDependentHamiltonian& h, const PropagationConfig& config) {
  const double dt = config.dt > 0.0 ? config.dt : default_step(h, config.method);
  return run(h, dt, config.method, 1);
}

AdaptiveResult propagate_adaptive(const TimeDependentHamiltonian& h,
                                  const PropagationConfig& config, const Metric& metric) {
  if (!(config.target_error > 0.0) || config.target_error > 1e-2) {
    throw std::invalid_argument("propagate_adaptive: target_error must be in (0, 1e-2]");
  }
  double dt = config.dt > 0.0 ? config.dt : default_step(h, config.method);
  int sub = 1;
  const double norm = std::sqrt(static_cast<double>(h.dim()));
  auto measure = [&](const Operator& a, const Operator& b) {
    return metric ? std::abs(metric(a) - metric(b)) : (a - b).norm() / norm;
  };
  Operator coarse = run(h, dt, config.method, sub);
  for (int k = 0; k <= config.max_halvings; ++k) {
    Operator fine = run(h, 0.5 * dt, config.method, 2 * sub);
    const double delta = measure(coarse, fine);
    if (delta <= config.target_error) {
      return {fine, 0.5 * dt, delta, operators::unitarity_defect(fine), k};
    }
    coarse = std::move(fine);
    dt *= 0.5;
    sub *= 2;
  }
  throw NumericalError("propagate_adaptive: step halving did not reach the target error");
}

double gate_fidelity(const Operator& u, const Operator& u_target) {
  if (u.rows() != u_target.rows() || u.cols() != u_target.cols() || u.rows() != u.cols()) {
    throw std::invalid_argument("gate_fidelity: dimension mismatch");
  }
  const double tol = 1e-6 * std::sqrt(static_cast<double>(u.rows()));
  if (operators::unitarity_defect(u) > tol || operators::unitarity_defect(u_target) > tol) {
    throw std::invalid_argument("gate_fidelity: arguments must be unitary");
  }
  const double norm = (u * u.adjoint()).trace().real();
  return std::min(1.0, std::abs((u_target * u.adjoint()).trace()) / norm);
}

double transition_probability(const Operator& u, const StateVector& initial,
                              const StateVector& measured) {
  if (std::abs(initial.norm() - 1.0) > 1e-10 || std::abs(measured.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("transition_probability: states must be normalised");
  }
  if (initial.size() != u.cols() || measured.size() != u.rows()) {
    throw std::invalid_argument("transition_probability: dimension mismatch");
  }
  return std::norm(measured.dot(u * initial));
}

double population_loss(const Operator& u, const StateVector& psi) {
  return 1.0 - transition_probability(u, psi, psi);
}

}  // namespace softctrl::propagation
