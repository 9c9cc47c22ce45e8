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

#include "softctrl/operators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace softctrl::operators {

Operator pauli(PauliAxis axis) {
  Operator m = Operator::Zero(2, 2);
  switch (axis) {
    case PauliAxis::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case PauliAxis::Y:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case PauliAxis::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case PauliAxis::Plus:
      m(0, 1) = 1.0;
      break;
    case PauliAxis::Minus:
      m(1, 0) = 1.0;
      break;
  }
  return m;
}

Operator identity(Eigen::Index dim) { return Operator::Identity(dim, dim); }

Operator spin1_x() {
  const double r = 1.0 / std::sqrt(2.0);
  Operator m = Operator::Zero(3, 3);
  m(0, 1) = m(1, 0) = r;
  m(1, 2) = m(2, 1) = r;
  return m;
}

Operator spin1_y() {
  const double r = 1.0 / std::sqrt(2.0);
  Operator m = Operator::Zero(3, 3);
  m(0, 1) = -kI * r;
  m(1, 0) = kI * r;
  m(1, 2) = -kI * r;
  m(2, 1) = kI * r;
  return m;
}

Operator spin1_z() {
  Operator m = Operator::Zero(3, 3);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

SpinSystem::SpinSystem(std::vector<Subsystem> subsystems) : subsystems_(std::move(subsystems)) {
  for (const auto& s : subsystems_) {
    if (s.dim != 2 && s.dim != 3) {
      throw std::invalid_argument("subsystem '" + s.label + "' must have dim 2 or 3");
    }
    dim_ *= s.dim;
  }
}

SpinSystem SpinSystem::qubits(std::size_t n) {
  std::vector<Subsystem> subs;
  subs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) subs.push_back({"q" + std::to_string(i), 2});
  return SpinSystem(std::move(subs));
}

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator embed(const Operator& op, std::size_t site, const SpinSystem& system) {
  if (site >= system.size()) throw std::invalid_argument("embed: site index out of range");
  if (op.rows() != system[site].dim || op.cols() != system[site].dim) {
    throw std::invalid_argument("embed: operator dimension does not match site '" +
                                system[site].label + "'");
  }
  Operator out = Operator::Identity(1, 1);
  for (std::size_t i = 0; i < system.size(); ++i) {
    out = kron(out, i == site ? op : identity(system[i].dim));
  }
  return out;
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

double hermiticity_defect(const Operator& a) { return (a - a.adjoint()).norm(); }

bool is_hermitian(const Operator& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return hermiticity_defect(a) <= rel_tol * a.norm();
}

void require_hermitian(const Operator& a, const char* what) {
  if (!is_hermitian(a)) {
    throw std::invalid_argument(std::string(what) + ": operator is not Hermitian (defect " +
                                std::to_string(hermiticity_defect(a)) + ")");
  }
}

double unitarity_defect(const Operator& u) {
  return (u.adjoint() * u - Operator::Identity(u.rows(), u.cols())).norm();
}

EigenDecomposition hermitian_eigendecomposition(const Operator& a) {
  require_hermitian(a, "hermitian_eigendecomposition");
  // Symmetrize so round-off in the lower triangle cannot leak in.
  const Operator sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigendecomposition: solver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Operator expm_from_decomposition(const EigenDecomposition& eig, double t) {
  const Eigen::VectorXcd phases =
      (eig.values.cast<Complex>() * Complex(0.0, -t)).array().exp().matrix();
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Operator expm_hermitian_generator(const Operator& h, double t) {
  return expm_from_decomposition(hermitian_eigendecomposition(h), t);
}

namespace {

Eigen::Index find_root(std::vector<Eigen::Index>& parent, Eigen::Index i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

std::vector<std::vector<Eigen::Index>> connected_blocks(const std::vector<Operator>& terms,
                                                       double zero_tol) {
  if (terms.empty()) return {};
  const Eigen::Index n = terms.front().rows();
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& t : terms) {
    if (t.rows() != n || t.cols() != n) throw std::invalid_argument("connected_blocks: dims differ");
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (std::abs(t(i, j)) > zero_tol || std::abs(t(j, i)) > zero_tol) {
          const auto a = find_root(parent, i);
          const auto b = find_root(parent, j);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<Eigen::Index> slot(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = find_root(parent, i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

Operator submatrix(const Operator& a, const std::vector<Eigen::Index>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Operator out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = a(idx[i], idx[j]);
  }
  return out;
}

}  // namespace softctrl::operators
