// Copyright 2026 The weakval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weakval/logic.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace weakval {

namespace {

void require_projector(const Operator& x, const char* role) {
  if (!x.is_projector()) {
    throw NotProjector(std::string(role) + " must be a projector");
  }
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimMismatch(std::string(what) + ": operator dimensions differ");
  }
}

// Rounds a Hermitian contraction limit to the projector onto the eigenspace
// of eigenvalues above 1/2. The iteration drives every eigenvalue toward 0
// or 1, so the split point is far from the spectrum by the time this runs.
Matrix round_to_projector(const Matrix& m) {
  Matrix sym = ((m + m.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("projector rounding eigendecomposition did not converge");
  }
  const auto& vals = solver.eigenvalues();
  const Matrix& vecs = solver.eigenvectors();
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (Index i = 0; i < vals.size(); ++i) {
    if (vals(i) >= 0.5) {
      out += vecs.col(i) * vecs.col(i).adjoint();
    }
  }
  return out;
}

}  // namespace

bool commutes(const Operator& p, const Operator& q, double tol) {
  require_projector(p, "commutes: p");
  require_projector(q, "commutes: q");
  require_same_dim(p, q, "commutes");
  return operator_norm(commutator(p, q)) <= tol;
}

Operator meet(const Operator& p, const Operator& q, int max_iter, double tol) {
  require_projector(p, "meet: p");
  require_projector(q, "meet: q");
  require_same_dim(p, q, "meet");

  Matrix power = p.entries() * q.entries();
  // (pq)^(2^k): squaring reaches astronomically high powers immediately, so
  // slowly contracting principal angles still settle within a few dozen
  // rounds. The limit is the projector onto the common range.
  double defect = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    Matrix next = power * power;
    defect = operator_norm(next - power);
    power = std::move(next);
    if (defect <= tol) {
      return Operator::from_matrix(round_to_projector(power),
                                   OperatorKind::Projector);
    }
  }
  throw NoConvergence("meet iteration did not settle; last defect " +
                          std::to_string(defect),
                      defect, max_iter);
}

Operator join(const Operator& p, const Operator& q, int max_iter, double tol) {
  require_projector(p, "join: p");
  require_projector(q, "join: q");
  require_same_dim(p, q, "join");
  return orthocomplement(meet(orthocomplement(p), orthocomplement(q),
                              max_iter, tol));
}

Operator orthocomplement(const Operator& p) {
  require_projector(p, "orthocomplement: p");
  return Operator::from_matrix(
      Matrix::Identity(p.dim(), p.dim()) - p.entries(), OperatorKind::Projector);
}

LatticeVerdict check_orthomodular(const Operator& p, const Operator& q,
                                  double tol) {
  require_projector(p, "check_orthomodular: p");
  require_projector(q, "check_orthomodular: q");
  require_same_dim(p, q, "check_orthomodular");

  double below = operator_norm(compose(q, p) - p);
  if (below > tol) {
    throw PreconditionFailed(
        "check_orthomodular requires p <= q; |qp - p| = " +
        std::to_string(below));
  }
  Operator rebuilt = join(p, meet(q, orthocomplement(p)));
  double defect = operator_norm(q - rebuilt);
  return LatticeVerdict{defect <= tol, defect};
}

EffectiveCommutativity effective_commutativity(const Operator& p,
                                               const Operator& q,
                                               double relative_error,
                                               const StateVector& pre,
                                               const StateVector& post) {
  require_projector(p, "effective_commutativity: p");
  require_projector(q, "effective_commutativity: q");
  require_same_dim(p, q, "effective_commutativity");
  if (p.dim() != pre.dim() || p.dim() != post.dim()) {
    throw DimMismatch("effective_commutativity: state dimensions differ");
  }
  if ((p.entries() * post.amplitudes() - post.amplitudes()).norm() > 1e-9) {
    throw PreconditionFailed(
        "effective_commutativity requires p|post> = |post>");
  }
  if ((q.entries() * pre.amplitudes() - pre.amplitudes()).norm() > 1e-9) {
    throw PreconditionFailed("effective_commutativity requires q|pre> = |pre>");
  }

  Complex overlap = inner(post, pre);
  if (std::abs(overlap) <= kOverlapCutoff) {
    throw UndefinedWeakValue(
        "effective_commutativity is undefined for orthogonal selections");
  }
  Complex w = matrix_element(post, commutator(p, q), pre) / overlap;
  Complex coefficient = 1.0 - w;

  Matrix pq = p.entries() * q.entries();
  double residual = operator_norm(Matrix(pq * pq - coefficient * pq));
  return EffectiveCommutativity{std::abs(w) < relative_error, w, coefficient,
                                residual};
}

ObservableProductCheck effective_observable_product(const Operator& x_obs,
                                                    const Operator& y_proj,
                                                    const StateVector& state,
                                                    double absolute_error) {
  if (!x_obs.is_hermitian()) {
    throw NotHermitian("effective_observable_product: x_obs must be Hermitian");
  }
  require_projector(y_proj, "effective_observable_product: y_proj");
  require_same_dim(x_obs, y_proj, "effective_observable_product");
  if (x_obs.dim() != state.dim()) {
    throw DimMismatch("effective_observable_product: state dimension differs");
  }

  Vector y_dir = y_proj.entries() * state.amplitudes();
  double y_norm = y_dir.norm();
  Complex correction = 0.0;
  if (y_norm > kOverlapCutoff) {
    StateVector y = StateVector::make(std::move(y_dir));
    SpectralDecomposition spec = eig_hermitian(x_obs);
    for (size_t i = 0; i < spec.eigenvalues.size(); ++i) {
      const Operator& xi_proj = spec.eigenprojectors[i];
      Vector xi_dir = xi_proj.entries() * state.amplitudes();
      if (xi_dir.norm() <= kOverlapCutoff) continue;
      StateVector xi = StateVector::make(std::move(xi_dir));
      Complex overlap = inner(y, xi);
      if (std::abs(overlap) <= kOverlapCutoff) continue;
      Complex prefactor =
          matrix_element(state, compose(y_proj, xi_proj), state);
      Complex w = matrix_element(y, commutator(y_proj, xi_proj), xi) / overlap;
      correction += prefactor * spec.eigenvalues[i] * w;
    }
  }
  return ObservableProductCheck{std::abs(correction) < absolute_error,
                                correction};
}

}  // namespace weakval
