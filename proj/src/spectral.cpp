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

#include "softctrl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "softctrl/operators.hpp"

namespace softctrl::spectral {

namespace {

struct Clusters {
  std::vector<double> centers;
  std::vector<std::vector<Eigen::Index>> members;
};

// Groups ascending eigenvalues whose neighbour gaps stay below tol.
Clusters cluster_levels(const Eigen::VectorXd& values, double tol) {
  Clusters c;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (c.members.empty() || values[i] - values[c.members.back().back()] > tol) {
      c.members.emplace_back();
    }
    c.members.back().push_back(i);
  }
  for (const auto& m : c.members) {
    double s = 0.0;
    for (auto i : m) s += values[i];
    c.centers.push_back(s / static_cast<double>(m.size()));
  }
  return c;
}

double default_tol(const Eigen::VectorXd& values) {
  const double scale = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  return 1e-9 * std::max(scale, 1e-300);
}

Operator columns(const Operator& v, const std::vector<Eigen::Index>& idx) {
  Operator out(v.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = v.col(idx[c]);
  return out;
}

// Loewdin orthonormalisation M (M^dagger M)^{-1/2}: the orthonormal set
// closest to M column by column.
Operator loewdin(const Operator& m) {
  const Operator s = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (s + s.adjoint()));
  const Eigen::VectorXd w = es.eigenvalues();
  if (w.minCoeff() <= 1e-14) throw NumericalError("adiabatic tracking: projected states collapsed");
  const Eigen::VectorXd inv_sqrt = w.cwiseSqrt().cwiseInverse();
  return m * es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

SpectralDecomposition decompose_static(const Operator& h_s, double cluster_tol) {
  const auto eig = operators::hermitian_eigendecomposition(h_s);
  const double tol = cluster_tol < 0.0 ? default_tol(eig.values) : cluster_tol;
  const Clusters c = cluster_levels(eig.values, tol);
  SpectralDecomposition out;
  for (std::size_t s = 0; s < c.members.size(); ++s) {
    Operator q = columns(eig.vectors, c.members[s]);
    out.eigenvalues.push_back(c.centers[s]);
    out.projectors.push_back(q * q.adjoint());
    out.bases.push_back(std::move(q));
  }
  return out;
}

BlockDecomposition block_decompose(const Operator& v, const SpectralDecomposition& spec) {
  if (spec.projectors.empty() || v.rows() != spec.projectors.front().rows() ||
      v.cols() != v.rows()) {
    throw std::invalid_argument("block_decompose: dimension mismatch");
  }
  const double cutoff = 1e-12 * v.norm();
  BlockDecomposition out;
  const std::size_t n = spec.projectors.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Operator left = spec.projectors[j] * v;
    for (std::size_t k = 0; k < n; ++k) {
      Operator b = left * spec.projectors[k];
      if (b.norm() <= cutoff) continue;
      out.blocks.push_back({j, k, spec.eigenvalues[j], spec.eigenvalues[k],
                            spec.eigenvalues[j] - spec.eigenvalues[k], std::move(b)});
    }
  }
  return out;
}

Operator total_interaction(const std::vector<InteractionTerm>& terms, Eigen::Index dim) {
  Operator v = Operator::Zero(dim, dim);
  for (const auto& t : terms) {
    if (t.op.rows() != dim || t.op.cols() != dim) {
      throw std::invalid_argument("interaction term dimension mismatch");
    }
    v += t.coupling * t.op;
  }
  return v;
}

Operator resonant_interaction(const Operator& h_s, const std::vector<InteractionTerm>& terms) {
  const auto spec = decompose_static(h_s);
  Operator w = Operator::Zero(h_s.rows(), h_s.cols());
  for (const auto& t : terms) {
    operators::require_hermitian(t.op, "interaction term");
    for (const auto& p : spec.projectors) w += t.coupling * (p * t.op * p);
  }
  return w;
}

Operator leading_order_average(const Operator& h_s, const std::vector<InteractionTerm>& terms,
                               const modulation::Envelope& env) {
  const auto spec = decompose_static(h_s);
  Operator h = Operator::Zero(h_s.rows(), h_s.cols());
  for (const auto& t : terms) {
    operators::require_hermitian(t.op, "interaction term");
    for (const auto& b : block_decompose(t.op, spec).blocks) {
      h += t.coupling * modulation::averaging_factor_numeric(env, b.delta) * b.op;
    }
  }
  return 0.5 * (h + h.adjoint());
}

Operator resonant_hamiltonian(const Operator& h_s, const std::vector<InteractionTerm>& terms,
                              const modulation::Envelope& env, double t) {
  return h_s + env.evaluate(t) * resonant_interaction(h_s, terms);
}

Operator AdiabaticSpectrum::average_hamiltonian() const {
  return basis * energies().cast<Complex>().asDiagonal() * basis.adjoint();
}

Operator AdiabaticSpectrum::propagator() const {
  const Eigen::VectorXcd ph = (phases.cast<Complex>() * Complex(0.0, -1.0)).array().exp().matrix();
  return basis * ph.asDiagonal() * basis.adjoint();
}

AdiabaticSpectrum adiabatic_average_hamiltonian(const Operator& h_s,
                                                const std::vector<InteractionTerm>& terms,
                                                const modulation::Envelope& env, int n_steps) {
  operators::require_hermitian(h_s, "adiabatic_average_hamiltonian");
  if (n_steps < 2) throw std::invalid_argument("adiabatic_average_hamiltonian: n_steps < 2");
  if (n_steps % 2) ++n_steps;
  const Eigen::Index dim = h_s.rows();
  const Operator v = total_interaction(terms, dim);
  operators::require_hermitian(v, "interaction");

  // Start from the common eigenbasis of H_S and the resonant interaction:
  // diagonalise W inside each H_S sector.
  const auto spec = decompose_static(h_s);
  const Operator w = resonant_interaction(h_s, terms);
  Operator basis(dim, dim);
  Eigen::Index col = 0;
  for (const auto& q : spec.bases) {
    const Operator ws = q.adjoint() * w * q;
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (ws + ws.adjoint()));
    basis.middleCols(col, q.cols()) = q * es.eigenvectors();
    col += q.cols();
  }

  const double T = env.duration();
  const double h = T / n_steps;
  Operator current = basis;
  Eigen::MatrixXd energy(n_steps + 1, dim);

  for (int i = 0; i <= n_steps; ++i) {
    const double t = -0.5 * T + h * i;
    const Operator ht = h_s + env.evaluate(t) * v;
    const auto eig = operators::hermitian_eigendecomposition(ht);
    const Clusters c = cluster_levels(eig.values, default_tol(eig.values));

    // Assign every followed state to the level cluster holding most of its weight.
    std::vector<std::vector<Eigen::Index>> assigned(c.members.size());
    std::vector<Operator> cluster_vecs;
    cluster_vecs.reserve(c.members.size());
    for (const auto& m : c.members) cluster_vecs.push_back(columns(eig.vectors, m));
    for (Eigen::Index n = 0; n < dim; ++n) {
      double best = -1.0;
      double second = -1.0;
      std::size_t arg = 0;
      for (std::size_t s = 0; s < cluster_vecs.size(); ++s) {
        const double wgt = (cluster_vecs[s].adjoint() * current.col(n)).squaredNorm();
        if (wgt > best) {
          second = best;
          best = wgt;
          arg = s;
        } else if (wgt > second) {
          second = wgt;
        }
      }
      if (best - second < 1e-6) {
        std::ostringstream msg;
        msg << "adiabatic tracking ambiguous at t=" << t << " for state " << n << " (overlaps "
            << best << ", " << second << ")";
        throw NumericalError(msg.str());
      }
      assigned[arg].push_back(n);
    }

    for (std::size_t s = 0; s < c.members.size(); ++s) {
      if (assigned[s].size() != c.members[s].size()) {
        std::ostringstream msg;
        msg << "adiabatic tracking lost a branch at t=" << t << " (cluster of "
            << c.members[s].size() << " levels received " << assigned[s].size() << " states)";
        throw NumericalError(msg.str());
      }
      const Operator& q = cluster_vecs[s];
      Operator projected(dim, static_cast<Eigen::Index>(assigned[s].size()));
      for (std::size_t a = 0; a < assigned[s].size(); ++a) {
        projected.col(static_cast<Eigen::Index>(a)) = q * (q.adjoint() * current.col(assigned[s][a]));
      }
      const Operator ortho = loewdin(projected);
      for (std::size_t a = 0; a < assigned[s].size(); ++a) {
        const Eigen::Index n = assigned[s][a];
        current.col(n) = ortho.col(static_cast<Eigen::Index>(a));
        energy(i, n) = (current.col(n).adjoint() * ht * current.col(n))(0, 0).real();
      }
    }
  }

  Eigen::VectorXd phases = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i <= n_steps; ++i) {
    const double wgt = (i == 0 || i == n_steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    phases += wgt * energy.row(i).transpose();
  }
  phases *= h / 3.0;
  return {basis, phases, T};
}

}  // namespace softctrl::spectral
