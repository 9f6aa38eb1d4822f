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

#include <optional>
#include <utility>
#include <vector>

#include "weakval/core.hpp"

namespace weakval {

/// <post|a|pre> / <post|pre>. Throws OrthogonalSelection when the overlap
/// magnitude is at or below 1e-12.
Complex weak_value(const Operator& a, const StateVector& pre,
                   const StateVector& post);

/// One branch of an expectation value split over a post-selection basis.
struct ExpectationTerm {
  double probability;                // |<psi_j|phi>|^2
  std::optional<Complex> weak_value; // empty when the branch is orthogonal
};

/// Splits <phi|a|phi> into per-outcome products probability * weak value
/// over an orthonormal basis. The basis must resolve the identity within
/// 1e-10 (IncompleteBasis otherwise). Terms with vanishing overlap carry
/// probability 0 and no weak value; the remaining products sum back to the
/// expectation.
std::vector<ExpectationTerm> decompose_expectation(
    const Operator& a, const StateVector& phi,
    const std::vector<StateVector>& basis);

enum class Classification { ConditionalProbability, NotProbability };

/// Which of the three sufficient commutation conditions hold.
struct ConditionSet {
  bool post_commutes;      // [|post><post|, a] = 0
  bool pre_commutes;       // [|pre><pre|, a] = 0
  bool pre_post_commute;   // [|post><post|, |pre><pre|] = 0
};

/// Weak value of a projector together with the evidence for reading it as
/// a conditional probability.
///
/// real_part_symmetric and commutator_part are the Hermitian-symmetric and
/// commutator halves of <pre|P_post a|pre>, stored unnormalized, so
///   value * pre_post_overlap_probability() = real_part_symmetric
///                                            + commutator_part
/// and Im(value) is carried entirely by commutator_part.
struct WeakValueReport {
  Complex value;
  Complex pre_post_overlap;           // <post|pre>
  Classification classification;
  ConditionSet conditions;
  double commutator_norms[3];         // |[P_post,a]|, |[P_pre,a]|, |[P_post,P_pre]|
  Complex real_part_symmetric;
  Complex commutator_part;

  double pre_post_overlap_probability() const {
    return std::norm(pre_post_overlap);
  }
};

/// Classifies the weak value of projector `a` between the selections: it
/// is a conditional probability when at least one of the three commutators
/// vanishes at `tol` in operator norm, and unexplained otherwise.
WeakValueReport classify(const Operator& a, const StateVector& pre,
                         const StateVector& post,
                         double tol = kComparisonTol);

/// Splits <phi|p a|phi> for projectors p and a into its real symmetric
/// part <phi|(pa + ap)/2|phi> and purely imaginary commutator part
/// <phi|[p, a]|phi> / 2, returned in that order.
std::pair<Complex, Complex> real_imag_split(const Operator& p,
                                            const Operator& a,
                                            const StateVector& phi);

/// Both sides of the squared-magnitude law for a rank-one projector a
/// between |phi> and a rank-one post-selection |psi><psi| = psi_proj:
///   |weak value|^2 = Pr(a|psi) Pr(a|phi) / Pr(psi|phi).
/// Returns {left side, right side}.
std::pair<double, double> squared_weak_value_check(const Operator& a,
                                                   const Operator& psi_proj,
                                                   const StateVector& phi);

/// a * psi_proj * a, the Hermitian operator whose expectation in |phi>
/// divided by Pr(psi|phi) reproduces |weak value of a|^2.
Operator sandwich(const Operator& a, const Operator& psi_proj);

}  // namespace weakval
