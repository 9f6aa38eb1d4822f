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

#include "weakval/weak.hpp"

#include <cmath>
#include <string>

namespace weakval {

namespace {

void require_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw DimMismatch(std::string(what) + ": dimensions differ");
  }
}

}  // namespace

Complex weak_value(const Operator& a, const StateVector& pre,
                   const StateVector& post) {
  require_dim(a.dim(), pre.dim(), "weak_value");
  require_dim(a.dim(), post.dim(), "weak_value");
  Complex overlap = inner(post, pre);
  if (std::abs(overlap) <= kOverlapCutoff) {
    throw OrthogonalSelection(
        "post-selection impossible: <post|pre> vanishes within 1e-12");
  }
  return matrix_element(post, a, pre) / overlap;
}

std::vector<ExpectationTerm> decompose_expectation(
    const Operator& a, const StateVector& phi,
    const std::vector<StateVector>& basis) {
  require_dim(a.dim(), phi.dim(), "decompose_expectation");
  Index dim = a.dim();
  if (static_cast<Index>(basis.size()) != dim) {
    throw IncompleteBasis("decompose_expectation requires exactly dim basis "
                          "states, got " + std::to_string(basis.size()));
  }
  Matrix resolution = Matrix::Zero(dim, dim);
  for (const StateVector& b : basis) {
    require_dim(b.dim(), dim, "decompose_expectation");
    resolution += b.amplitudes() * b.amplitudes().adjoint();
  }
  double defect = operator_norm(Matrix(resolution - Matrix::Identity(dim, dim)));
  if (defect > kComparisonTol) {
    throw IncompleteBasis("basis does not resolve the identity; defect " +
                          std::to_string(defect));
  }

  std::vector<ExpectationTerm> terms;
  terms.reserve(basis.size());
  for (const StateVector& psi : basis) {
    Complex overlap = inner(psi, phi);
    ExpectationTerm term{std::norm(overlap), std::nullopt};
    if (std::abs(overlap) > kOverlapCutoff) {
      term.weak_value = matrix_element(psi, a, phi) / overlap;
    }
    terms.push_back(term);
  }
  return terms;
}

WeakValueReport classify(const Operator& a, const StateVector& pre,
                         const StateVector& post, double tol) {
  if (!a.is_projector()) {
    throw NotProjector("classify requires a projector observable");
  }
  require_dim(a.dim(), pre.dim(), "classify");
  require_dim(a.dim(), post.dim(), "classify");

  Complex overlap = inner(post, pre);
  if (std::abs(overlap) <= kOverlapCutoff) {
    throw OrthogonalSelection(
        "post-selection impossible: <post|pre> vanishes within 1e-12");
  }

  Operator post_proj = outer(post, post);
  Operator pre_proj = outer(pre, pre);
  double n_post = operator_norm(commutator(post_proj, a));
  double n_pre = operator_norm(commutator(pre_proj, a));
  double n_selections = operator_norm(commutator(post_proj, pre_proj));

  ConditionSet conditions{n_post <= tol, n_pre <= tol, n_selections <= tol};
  bool probability = conditions.post_commutes || conditions.pre_commutes ||
                     conditions.pre_post_commute;

  auto [sym, comm] = real_imag_split(post_proj, a, pre);

  WeakValueReport report;
  report.value = matrix_element(post, a, pre) / overlap;
  report.pre_post_overlap = overlap;
  report.classification = probability ? Classification::ConditionalProbability
                                      : Classification::NotProbability;
  report.conditions = conditions;
  report.commutator_norms[0] = n_post;
  report.commutator_norms[1] = n_pre;
  report.commutator_norms[2] = n_selections;
  report.real_part_symmetric = sym;
  report.commutator_part = comm;
  return report;
}

std::pair<Complex, Complex> real_imag_split(const Operator& p,
                                            const Operator& a,
                                            const StateVector& phi) {
  if (!p.is_projector()) {
    throw NotProjector("real_imag_split requires projector p");
  }
  if (!a.is_projector()) {
    throw NotProjector("real_imag_split requires projector a");
  }
  require_dim(p.dim(), a.dim(), "real_imag_split");
  require_dim(p.dim(), phi.dim(), "real_imag_split");
  Complex sym = expectation(compose(p, a) + compose(a, p), phi) / 2.0;
  Complex comm = expectation(commutator(p, a), phi) / 2.0;
  return {sym, comm};
}

std::pair<double, double> squared_weak_value_check(const Operator& a,
                                                   const Operator& psi_proj,
                                                   const StateVector& phi) {
  if (!a.is_projector()) {
    throw NotProjector("squared_weak_value_check requires projector a");
  }
  StateVector psi = range_direction(psi_proj);
  require_dim(a.dim(), psi.dim(), "squared_weak_value_check");
  require_dim(a.dim(), phi.dim(), "squared_weak_value_check");

  double lhs = std::norm(weak_value(a, phi, psi));
  double pr_psi = std::norm(inner(psi, phi));
  double rhs = expectation(a, psi).real() * expectation(a, phi).real() / pr_psi;
  return {lhs, rhs};
}

Operator sandwich(const Operator& a, const Operator& psi_proj) {
  if (!a.is_hermitian()) {
    throw NotHermitian("sandwich requires a Hermitian observable");
  }
  if (!psi_proj.is_projector()) {
    throw NotProjector("sandwich requires a projector post-selection");
  }
  require_dim(a.dim(), psi_proj.dim(), "sandwich");
  Matrix h = a.entries() * psi_proj.entries() * a.entries();
  // Symmetrize away the construction-tolerance skew so the result's kind is
  // detected as Hermitian (or projector) rather than general.
  return Operator::from_matrix(((h + h.adjoint()) / 2.0).eval());
}

}  // namespace weakval
