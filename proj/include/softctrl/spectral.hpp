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

#include <cstddef>
#include <vector>

#include "softctrl/common.hpp"
#include "softctrl/modulation.hpp"

namespace softctrl::spectral {

/// Eigen-sectors of a static Hamiltonian after clustering near-degenerate levels.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending, one per sector
  std::vector<Operator> projectors;
  std::vector<Operator> bases;  // isometries whose columns span each sector
};

/// cluster_tol < 0 selects 1e-9 * max|omega|.
SpectralDecomposition decompose_static(const Operator& h_s, double cluster_tol = -1.0);

struct Block {
  std::size_t j = 0;
  std::size_t k = 0;
  double omega_j = 0.0;
  double omega_k = 0.0;
  double delta = 0.0;  // omega_j - omega_k, so [H_S, V^{jk}] = delta V^{jk}
  Operator op;
};

struct BlockDecomposition {
  std::vector<Block> blocks;
};

/// Blocks P_j V P_k; blocks below 1e-12 ||V||_F are dropped.
BlockDecomposition block_decompose(const Operator& v, const SpectralDecomposition& spec);

struct InteractionTerm {
  double coupling = 1.0;  // rad/us
  Operator op;
};

/// sum_alpha c_alpha V_alpha.
Operator total_interaction(const std::vector<InteractionTerm>& terms, Eigen::Index dim);

/// sum_alpha c_alpha sum_j V_alpha^{jj}: the part of the interaction that commutes with H_S.
Operator resonant_interaction(const Operator& h_s, const std::vector<InteractionTerm>& terms);

/// First Magnus term sum c_alpha g(delta_jk) V^{jk}.
Operator leading_order_average(const Operator& h_s, const std::vector<InteractionTerm>& terms,
                               const modulation::Envelope& env);

/// H_S + lambda(t) sum c_alpha V^{jj}.
Operator resonant_hamiltonian(const Operator& h_s, const std::vector<InteractionTerm>& terms,
                              const modulation::Envelope& env, double t);

struct AdiabaticSpectrum {
  Operator basis;          // columns: eigenstates of the resonant Hamiltonian family
  Eigen::VectorXd phases;  // accumulated dynamic phase of each column over [-T/2, T/2]
  double duration = 0.0;

  Eigen::VectorXd energies() const { return phases / duration; }
  Operator average_hamiltonian() const;
  /// exp(-i Hbar T).
  Operator propagator() const;
};

/// Dynamic phases of the eigenstates of H(t) = H_S + lambda(t) sum c V,
/// followed continuously from the resonant eigenbasis at t = -T/2 and
/// integrated by composite Simpson over n_steps (rounded up to even).
/// Throws NumericalError when branch matching is ambiguous.
AdiabaticSpectrum adiabatic_average_hamiltonian(const Operator& h_s,
                                                const std::vector<InteractionTerm>& terms,
                                                const modulation::Envelope& env, int n_steps);

}  // namespace softctrl::spectral
