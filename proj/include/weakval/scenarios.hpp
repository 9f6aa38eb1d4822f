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
#include <string>
#include <vector>

#include "weakval/weak.hpp"

namespace weakval {

/// Observable with a display label, as referenced from the CLI.
struct LabeledObservable {
  std::string label;
  Operator op;
};

/// A complete pre/post-selection setup: states plus named observables, all
/// of one dimension. Labels are unique within a scenario.
struct Scenario {
  std::string name;
  Index dim;
  StateVector pre;
  StateVector post;
  std::vector<LabeledObservable> observables;

  const LabeledObservable& find(const std::string& label) const;
};

/// Two-particle interferometer setup whose pair-occupation weak values
/// take the anomalous values (0, 1, 1, -1). The four joint projectors come
/// first in basis order (both-overlapping to neither-overlapping), then the
/// four single-particle number observables, each the sum of two joint
/// projectors.
Scenario hardy_scenario();

/// Three-site setup with uniform pre-selection and post-selection flipped
/// on the last site; the site projectors take weak values (1, 1, -1).
Scenario three_box_scenario();

/// Coefficients of proportionality in (P N)^2 = c P N for the two
/// selection projectors P of the interferometer setup against the
/// neither-overlapping joint projector N, in order (post, pre). The exact
/// values are (1/4, 1/3).
std::pair<double, double> hardy_identity_coefficients();

/// Least-squares coefficient c with compose(p, n)^2 = c * compose(p, n),
/// fitted in the Frobenius inner product. Throws NotProportional when the
/// residual exceeds 1e-10 in operator norm or the product vanishes.
Complex proportionality_coefficient(const Operator& p, const Operator& n);

/// Products Pr(outcome|post) * Pr(outcome|pre) over the four joint
/// projectors, scaled so the largest entry is 1; the exact table is
/// (0, 1, 1, 1).
std::vector<double> hardy_ratio_table();

/// Strict JSON codec for scenarios. Unknown fields anywhere are rejected
/// (ParseError); structural violations such as dimension mismatches, zero
/// states, duplicate labels, or matrices failing their declared kind are
/// ValidationError.
Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);
std::string serialize_scenario(const Scenario& s);

/// One observable's entry in a scenario report.
struct ScenarioRow {
  std::string label;
  WeakValueReport report;
  std::optional<double> ratio;  // set for rank-one projector observables
};

/// Weak-value reports for every observable of a scenario, plus the
/// rank-one ratio table. Non-projector observables are reported with the
/// commutation evidence but never classified as probabilities.
struct ScenarioReport {
  double overlap_probability;  // |<post|pre>|^2
  std::vector<ScenarioRow> rows;
  std::vector<double> ratio_table;  // one entry per rank-one projector row
};

ScenarioReport report(const Scenario& s, double tol = kComparisonTol);

}  // namespace weakval
