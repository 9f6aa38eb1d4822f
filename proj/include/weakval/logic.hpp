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

#include "weakval/core.hpp"

namespace weakval {

/// True when the commutator of two projectors vanishes in operator norm.
bool commutes(const Operator& p, const Operator& q,
              double tol = kComparisonTol);

/// Projector onto range(p) intersect range(q), the lattice meet.
///
/// Computed as the strong limit of (pq)^n via repeated squaring of the
/// product, then symmetrized and spectrally rounded to the nearest
/// projector. Equals compose(p, q) whenever the projectors commute.
/// Throws NoConvergence if the power tail has not settled below `tol`
/// after `max_iter` squarings.
Operator meet(const Operator& p, const Operator& q, int max_iter = 10000,
              double tol = 1e-12);

/// Projector onto range(p) + range(q), via the complement of the meet of
/// the complements.
Operator join(const Operator& p, const Operator& q, int max_iter = 10000,
              double tol = 1e-12);

/// I - p.
Operator orthocomplement(const Operator& p);

/// Outcome of an orthomodularity check q = p v (q ^ p').
struct LatticeVerdict {
  bool holds;
  double defect;  // operator-norm distance between q and the rebuilt side
};

/// Verifies the orthomodular law for p <= q. The precondition qp = p is
/// checked at `tol` and its failure throws PreconditionFailed.
LatticeVerdict check_orthomodular(const Operator& p, const Operator& q,
                                  double tol = kComparisonTol);

/// Degree to which a projector pair behaves as commuting between fixed
/// pre- and post-selected states.
///
/// For rank-one p = |post><post| and q with q|pre> = |pre>, the products
/// satisfy pqpq = (1 - w) pq where w is the weak value of [p, q] between
/// the selections. `identity_residual` is the operator-norm defect of that
/// identity, reported as evidence that the coefficient is exact.
struct EffectiveCommutativity {
  bool effectively_commuting;       // |w| < relative_error
  Complex commutator_weak_value;    // w
  Complex identity_coefficient;     // 1 - w
  double identity_residual;
};

/// Requires p and q to be projectors with p|post> = |post> and
/// q|pre> = |pre> (PreconditionFailed otherwise) and a nonzero overlap
/// <post|pre> (UndefinedWeakValue otherwise).
EffectiveCommutativity effective_commutativity(const Operator& p,
                                               const Operator& q,
                                               double relative_error,
                                               const StateVector& pre,
                                               const StateVector& post);

/// Outcome of testing whether an observable may be multiplied term by term
/// against a projector inside an expectation value.
struct ObservableProductCheck {
  bool within_error;    // |correction| < absolute_error
  Complex correction;   // sum of per-eigenspace commutator corrections
};

/// Expands x_obs over its eigenspaces and accumulates, for each eigenspace
/// projector X_i, the correction term <state|y X_i|state> x_i w_i with
/// w_i the weak value of [y, X_i] between |x_i> = X_i|state>/|X_i state|
/// and the range direction of y on |state>. Terms whose prefactor vanishes
/// (eigenspace orthogonal to the state, or zero overlap with y) contribute
/// nothing. Passing an infinite `absolute_error` always reports success.
ObservableProductCheck effective_observable_product(const Operator& x_obs,
                                                    const Operator& y_proj,
                                                    const StateVector& state,
                                                    double absolute_error);

}  // namespace weakval
