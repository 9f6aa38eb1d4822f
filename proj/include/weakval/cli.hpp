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

#include <string>
#include <utility>
#include <vector>

#include "weakval/core.hpp"
#include "weakval/pointer.hpp"

namespace weakval::cli {

enum class OutputFormat { Table, Csv };

/// Rectangular cell grid: every row has exactly one cell per header.
struct OutputTable {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

/// A command's result: scalar facts as ordered key/value metadata plus one
/// table. CSV rendering prefixes metadata lines with '#'; table rendering
/// prints them as a preamble.
struct CommandOutput {
  std::vector<std::pair<std::string, std::string>> metadata;
  OutputTable table;
};

/// 12 significant digits, never in locale-dependent form.
std::string format_real(double value);
/// re+imi / re-imi with both parts in format_real form.
std::string format_complex(Complex value);

/// Renders metadata and table. CSV output uses LF line endings, quotes
/// cells containing commas or quotes, and is parseable back to the same
/// values; table output is aligned for reading.
std::string render(const CommandOutput& out, OutputFormat format);

/// Weak-value report for the built-in two-particle interferometer setup,
/// with its proportionality coefficients in the metadata.
CommandOutput cmd_hardy(double tol = kComparisonTol);

/// Weak-value report for the built-in three-site setup.
CommandOutput cmd_threebox(double tol = kComparisonTol);

/// Weak-value report for a scenario. `scenario_ref` is a built-in name
/// ("hardy", "threebox") or a path to a scenario JSON file.
CommandOutput cmd_eval(const std::string& scenario_ref,
                       double tol = kComparisonTol);

/// Pointer-measurement sweep for one labeled observable of a scenario.
/// Couplings are deduplicated and sorted; they must all be positive. An
/// empty list selects the default sweep {0.05, 0.02, 0.01}.
CommandOutput cmd_simulate(const std::string& scenario_ref,
                           const std::string& observable_label,
                           std::vector<double> couplings,
                           Index grid_points = 1024, double sigma = 1.0,
                           double tol = kComparisonTol);

/// Lattice relations between two projectors of a scenario, referenced by
/// observable label or by the reserved labels "pre" / "post" for the
/// selection projectors. Reports commutation, meet/join traces, the
/// orthomodular check when one projector dominates the other, and the
/// product-collapse identity when both are rank one.
CommandOutput cmd_lattice(const std::string& scenario_ref,
                          const std::string& p_label,
                          const std::string& q_label,
                          double tol = kComparisonTol);

/// Full command-line entry point: parses arguments, dispatches, prints.
/// Returns 0 on success, 1 on internal errors, 2 on input or validation
/// errors, 3 when the requested selection pair is orthogonal.
int run_main(int argc, char** argv);

}  // namespace weakval::cli
