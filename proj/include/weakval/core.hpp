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

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "weakval/errors.hpp"

namespace weakval {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Entrywise tolerance used when classifying or verifying operator kinds.
inline constexpr double kConstructionTol = 1e-12;
/// Default tolerance for numerical comparisons (commutator norms, defects).
inline constexpr double kComparisonTol = 1e-10;
/// Eigenvalues closer than this are treated as one degenerate level.
inline constexpr double kEigenvalueMergeTol = 1e-9;
/// Overlaps at or below this magnitude count as orthogonal.
inline constexpr double kOverlapCutoff = 1e-12;

/// Unit-norm complex amplitude vector on a finite-dimensional space.
///
/// Construction normalizes, so the invariant |amplitudes| = 1 holds to
/// machine precision for every live instance.
class StateVector {
 public:
  /// Normalizes `raw`; throws ZeroVector when its norm is <= 1e-12.
  static StateVector make(const std::vector<Complex>& raw);
  static StateVector make(Vector raw);
  /// Computational basis vector |k> in dimension `dim`.
  static StateVector basis(Index dim, Index k);

  Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](Index i) const { return amps_(i); }

 private:
  explicit StateVector(Vector v) : amps_(std::move(v)) {}

  Vector amps_;
};

/// Most specific structural class an operator is known to satisfy.
/// Projector implies Hermitian; Hermitian implies General.
enum class OperatorKind { General, Hermitian, Projector };

/// Square complex matrix tagged with a verified structural kind.
///
/// The kind is checked entrywise at construction (tolerance 1e-12), so
/// downstream code can branch on `kind()` without re-testing the matrix.
class Operator {
 public:
  /// Wraps `m` and detects the most specific kind it satisfies.
  static Operator from_matrix(Matrix m);
  /// Wraps `m` and verifies the declared kind. Throws NotHermitian or
  /// NotProjector when the matrix fails the declared structure; the stored
  /// kind is exactly `declared`, even if the matrix satisfies more.
  static Operator from_matrix(Matrix m, OperatorKind declared);
  static Operator identity(Index dim);
  static Operator zero(Index dim);

  Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  OperatorKind kind() const { return kind_; }
  bool is_hermitian() const { return kind_ != OperatorKind::General; }
  bool is_projector() const { return kind_ == OperatorKind::Projector; }
  Complex trace() const { return entries_.trace(); }

 private:
  Operator(Matrix m, OperatorKind k) : entries_(std::move(m)), kind_(k) {}

  Matrix entries_;
  OperatorKind kind_;
};

/// Result of a Hermitian eigendecomposition with degeneracy detection.
///
/// Eigenvalues are ascending and pairwise separated by more than the merge
/// tolerance; eigenprojectors[i] projects onto the full eigenspace of
/// eigenvalues[i], so the projectors are orthogonal and sum to the identity.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Operator> eigenprojectors;
};

/// <a|b> with conjugation on the first argument.
Complex inner(const StateVector& a, const StateVector& b);

/// |a><b|.
Operator outer(const StateVector& a, const StateVector& b);

/// Matrix product x*y with the result kind re-detected.
Operator compose(const Operator& x, const Operator& y);

Operator adjoint(const Operator& x);

/// x*y - y*x.
Operator commutator(const Operator& x, const Operator& y);

Operator operator+(const Operator& x, const Operator& y);
Operator operator-(const Operator& x, const Operator& y);
Operator operator*(Complex scalar, const Operator& x);

/// <s|x|s>.
Complex expectation(const Operator& x, const StateVector& s);

/// <bra|x|ket>.
Complex matrix_element(const StateVector& bra, const Operator& x,
                       const StateVector& ket);

/// Kronecker products; the left factor indexes the slow (major) axis.
StateVector tensor(const StateVector& a, const StateVector& b);
Operator tensor(const Operator& a, const Operator& b);

/// Eigendecomposition of a Hermitian (or projector) operator, merging
/// eigenvalues whose gap is at most `merge_tol` into one eigenspace.
SpectralDecomposition eig_hermitian(const Operator& x,
                                    double merge_tol = kEigenvalueMergeTol);

/// Largest singular value, computed as sqrt(lambda_max(m^dagger m)).
double operator_norm(const Matrix& m);
double operator_norm(const Operator& x);

/// Unit vector spanning the range of a rank-one projector; the overall
/// phase is arbitrary. Throws NotProjector for non-projector kinds and
/// PreconditionFailed when the trace is not 1 within 1e-9.
StateVector range_direction(const Operator& p);

}  // namespace weakval
