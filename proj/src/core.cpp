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

#include "weakval/core.hpp"

#include <cmath>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

namespace weakval {

namespace {

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw DimMismatch(std::string(what) + ": dimensions " + std::to_string(a) +
                      " and " + std::to_string(b) + " differ");
  }
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

bool entrywise_hermitian(const Matrix& m) {
  return max_abs(m - m.adjoint()) <= kConstructionTol;
}

bool entrywise_idempotent(const Matrix& m) {
  return max_abs(m * m - m) <= kConstructionTol;
}

}  // namespace

StateVector StateVector::make(const std::vector<Complex>& raw) {
  Vector v(static_cast<Index>(raw.size()));
  for (Index i = 0; i < v.size(); ++i) v(i) = raw[static_cast<size_t>(i)];
  return make(std::move(v));
}

StateVector StateVector::make(Vector raw) {
  if (raw.size() == 0) throw ZeroVector("state vector must have dimension >= 1");
  double n = raw.norm();
  if (n <= kOverlapCutoff) {
    throw ZeroVector("state vector norm " + std::to_string(n) +
                     " is too small to normalize");
  }
  raw /= n;
  return StateVector(std::move(raw));
}

StateVector StateVector::basis(Index dim, Index k) {
  if (dim < 1) throw ZeroVector("state vector must have dimension >= 1");
  if (k < 0 || k >= dim) {
    throw DimMismatch("basis index " + std::to_string(k) +
                      " out of range for dimension " + std::to_string(dim));
  }
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return StateVector(std::move(v));
}

Operator Operator::from_matrix(Matrix m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimMismatch("operator must be a non-empty square matrix");
  }
  OperatorKind kind = OperatorKind::General;
  if (entrywise_hermitian(m)) {
    kind = entrywise_idempotent(m) ? OperatorKind::Projector
                                   : OperatorKind::Hermitian;
  }
  return Operator(std::move(m), kind);
}

Operator Operator::from_matrix(Matrix m, OperatorKind declared) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimMismatch("operator must be a non-empty square matrix");
  }
  if (declared != OperatorKind::General && !entrywise_hermitian(m)) {
    throw NotHermitian("matrix is not Hermitian within tolerance 1e-12");
  }
  if (declared == OperatorKind::Projector && !entrywise_idempotent(m)) {
    throw NotProjector("matrix is not idempotent within tolerance 1e-12");
  }
  return Operator(std::move(m), declared);
}

Operator Operator::identity(Index dim) {
  if (dim < 1) throw DimMismatch("operator must be a non-empty square matrix");
  return Operator(Matrix::Identity(dim, dim), OperatorKind::Projector);
}

Operator Operator::zero(Index dim) {
  if (dim < 1) throw DimMismatch("operator must be a non-empty square matrix");
  return Operator(Matrix::Zero(dim, dim), OperatorKind::Projector);
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  return a.amplitudes().dot(b.amplitudes());
}

Operator outer(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "outer");
  return Operator::from_matrix(a.amplitudes() * b.amplitudes().adjoint());
}

Operator compose(const Operator& x, const Operator& y) {
  require_same_dim(x.dim(), y.dim(), "compose");
  return Operator::from_matrix(x.entries() * y.entries());
}

Operator adjoint(const Operator& x) {
  return Operator::from_matrix(x.entries().adjoint());
}

Operator commutator(const Operator& x, const Operator& y) {
  require_same_dim(x.dim(), y.dim(), "commutator");
  return Operator::from_matrix(x.entries() * y.entries() -
                               y.entries() * x.entries());
}

Operator operator+(const Operator& x, const Operator& y) {
  require_same_dim(x.dim(), y.dim(), "operator+");
  return Operator::from_matrix(x.entries() + y.entries());
}

Operator operator-(const Operator& x, const Operator& y) {
  require_same_dim(x.dim(), y.dim(), "operator-");
  return Operator::from_matrix(x.entries() - y.entries());
}

Operator operator*(Complex scalar, const Operator& x) {
  return Operator::from_matrix(scalar * x.entries());
}

Complex expectation(const Operator& x, const StateVector& s) {
  require_same_dim(x.dim(), s.dim(), "expectation");
  return s.amplitudes().dot(x.entries() * s.amplitudes());
}

Complex matrix_element(const StateVector& bra, const Operator& x,
                       const StateVector& ket) {
  require_same_dim(bra.dim(), x.dim(), "matrix_element");
  require_same_dim(x.dim(), ket.dim(), "matrix_element");
  return bra.amplitudes().dot(x.entries() * ket.amplitudes());
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return StateVector::make(std::move(v));
}

Operator tensor(const Operator& a, const Operator& b) {
  Matrix m = Eigen::kroneckerProduct(a.entries(), b.entries());
  return Operator::from_matrix(std::move(m));
}

SpectralDecomposition eig_hermitian(const Operator& x, double merge_tol) {
  if (!x.is_hermitian()) {
    throw NotHermitian("eig_hermitian requires a Hermitian operator");
  }
  // Re-symmetrize so the solver sees an exactly Hermitian matrix; the 1e-12
  // construction slack is far below every eigenvalue tolerance used here.
  Matrix h = (x.entries() + x.entries().adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("Hermitian eigendecomposition did not converge");
  }
  const auto& vals = solver.eigenvalues();
  const Matrix& vecs = solver.eigenvectors();
  Index n = x.dim();

  SpectralDecomposition out;
  Index start = 0;
  for (Index i = 1; i <= n; ++i) {
    if (i == n || vals(i) - vals(i - 1) > merge_tol) {
      Index count = i - start;
      auto block = vecs.middleCols(start, count);
      out.eigenvalues.push_back(vals.segment(start, count).mean());
      out.eigenprojectors.push_back(Operator::from_matrix(
          block * block.adjoint(), OperatorKind::Projector));
      start = i;
    }
  }
  return out;
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Matrix gram = m.adjoint() * m;
  gram = ((gram + gram.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("operator norm eigendecomposition did not converge");
  }
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double operator_norm(const Operator& x) { return operator_norm(x.entries()); }

StateVector range_direction(const Operator& p) {
  if (!p.is_projector()) {
    throw NotProjector("range_direction requires a projector");
  }
  double tr = p.trace().real();
  if (std::abs(tr - 1.0) > 1e-9) {
    throw PreconditionFailed("range_direction requires a rank-one projector; "
                             "trace is " + std::to_string(tr));
  }
  // Every column of |v><v| is a multiple of v; the largest one has norm at
  // least 1/sqrt(dim), far above roundoff.
  Index best = 0;
  p.entries().colwise().norm().maxCoeff(&best);
  return StateVector::make(Vector(p.entries().col(best)));
}

}  // namespace weakval
