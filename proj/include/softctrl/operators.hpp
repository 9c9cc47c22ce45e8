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
#include <string>
#include <vector>

#include "softctrl/common.hpp"

namespace softctrl::operators {

enum class PauliAxis { X, Y, Z, Plus, Minus };

/// 2x2 Pauli matrix; Plus/Minus are the ladder operators (sx +- i sy)/2.
Operator pauli(PauliAxis axis);

Operator identity(Eigen::Index dim);

/// Spin-1 matrices in the S_z basis ordered (+1, 0, -1).
Operator spin1_x();
Operator spin1_y();
Operator spin1_z();

struct Subsystem {
  std::string label;
  int dim = 2;
};

/// Ordered tensor factors; the first listed subsystem is the leftmost factor.
class SpinSystem {
 public:
  SpinSystem() = default;
  explicit SpinSystem(std::vector<Subsystem> subsystems);

  /// n spin-1/2 factors labelled q0..q{n-1}.
  static SpinSystem qubits(std::size_t n);

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return subsystems_.size(); }
  const Subsystem& operator[](std::size_t i) const { return subsystems_.at(i); }
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }

 private:
  std::vector<Subsystem> subsystems_;
  Eigen::Index dim_ = 1;
};

Operator kron(const Operator& a, const Operator& b);

/// op acting on `site`, identity on every other factor.
Operator embed(const Operator& op, std::size_t site, const SpinSystem& system);

Operator commutator(const Operator& a, const Operator& b);

/// ||A - A^dagger||_F.
double hermiticity_defect(const Operator& a);

/// ||A - A^dagger||_F <= rel_tol * ||A||_F (square matrices only).
bool is_hermitian(const Operator& a, double rel_tol = 1e-10);

/// Throws std::invalid_argument naming `what` when `a` is not Hermitian.
void require_hermitian(const Operator& a, const char* what);

/// ||U^dagger U - I||_F.
double unitarity_defect(const Operator& u);

struct EigenDecomposition {
  Eigen::VectorXd values;  // ascending
  Operator vectors;        // unitary, columns are eigenvectors
};

EigenDecomposition hermitian_eigendecomposition(const Operator& a);

/// exp(-i H t) for Hermitian H.
Operator expm_hermitian_generator(const Operator& h, double t);

/// exp(-i H t) from a precomputed decomposition of H.
Operator expm_from_decomposition(const EigenDecomposition& eig, double t);

/// Index sets of the invariant subspaces shared by all `terms`: connected
/// components of the union of their nonzero patterns.
std::vector<std::vector<Eigen::Index>> connected_blocks(const std::vector<Operator>& terms,
                                                       double zero_tol = 0.0);

Operator submatrix(const Operator& a, const std::vector<Eigen::Index>& idx);

}  // namespace softctrl::operators
