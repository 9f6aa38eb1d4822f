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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "testutil.hpp"
#include "weakval/cli.hpp"
#include "weakval/scenarios.hpp"

using namespace weakval;
using namespace weakval::cli;
using testutil::parse_complex_text;

namespace {

// Two-column lattice tables as quantity -> value.
std::map<std::string, std::string> as_map(const CommandOutput& out) {
  std::map<std::string, std::string> m;
  for (const auto& row : out.table.rows) m[row[0]] = row[1];
  return m;
}

std::string metadata_value(const CommandOutput& out, const std::string& key) {
  for (const auto& [k, v] : out.metadata) {
    if (k == key) return v;
  }
  throw std::runtime_error("no metadata key " + key);
}

std::string orthogonal_scenario_json() {
  Scenario s{"blocked",
             2,
             StateVector::basis(2, 0),
             StateVector::basis(2, 1),
             {{"up", outer(StateVector::basis(2, 0), StateVector::basis(2, 0))}}};
  return serialize_scenario(s);
}

}  // namespace

TEST_CASE("reals format to twelve significant digits") {
  CHECK(format_real(0.0) == "0.00000000000");
  CHECK(format_real(-0.0) == "0.00000000000");
  CHECK(format_real(1.0) == "1.00000000000");
  CHECK(format_real(0.25) == "0.250000000000");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(0.05) == "0.0500000000000");
  CHECK(format_real(-1.0) == "-1.00000000000");

  for (double x : {1.0 / 12.0, 3.14159265358979, 1e-14, 6.0221408e23,
                   -0.123456789012345}) {
    double back = std::stod(format_real(x));
    CHECK(std::abs(back - x) <= 1e-11 * std::abs(x));
  }
}

TEST_CASE("complex values format as re+imi and parse back") {
  CHECK(format_complex(Complex(0.5, -0.5)) ==
        "0.500000000000-0.500000000000i");
  CHECK(format_complex(Complex(-1.0, 0.0)) ==
        "-1.00000000000+0.00000000000i");
  CHECK(format_complex(Complex(0.0, 1.0)) == "0.00000000000+1.00000000000i");
  // Negative zero imaginary parts collapse to +0.
  CHECK(format_complex(Complex(1.0, -0.0)) ==
        "1.00000000000+0.00000000000i");

  for (Complex z : {Complex(0.5, -0.5), Complex(-1.0 / 3.0, 2e-13),
                    Complex(1e4, -3.25)}) {
    Complex back = parse_complex_text(format_complex(z));
    CHECK(std::abs(back - z) < 1e-10 * std::max(1.0, std::abs(z)));
  }
}

TEST_CASE("csv rendering quotes exactly the cells that need it") {
  CommandOutput out;
  out.metadata = {{"k", "v"}};
  out.table.headers = {"label", "note"};
  out.table.rows = {{"N_O,O", "plain"}, {"say \"hi\"", "a,b"}};
  std::string text = render(out, OutputFormat::Csv);
  CHECK(text ==
        "# k,v\n"
        "label,note\n"
        "\"N_O,O\",plain\n"
        "\"say \"\"hi\"\"\",\"a,b\"\n");

  testutil::ParsedCsv parsed = testutil::parse_csv(text);
  CHECK(parsed.metadata.at("k") == "v");
  REQUIRE(parsed.rows.size() == 2);
  CHECK(parsed.rows[0][0] == "N_O,O");
  CHECK(parsed.rows[1][0] == "say \"hi\"");
  CHECK(parsed.rows[1][1] == "a,b");
}

TEST_CASE("table rendering aligns columns under a rule") {
  CommandOutput out;
  out.metadata = {{"k", "v"}};
  out.table.headers = {"a", "long_header"};
  out.table.rows = {{"x", "y"}};
  std::string text = render(out, OutputFormat::Table);
  CHECK(text ==
        "k: v\n"
        "\n"
        "a  long_header\n"
        "-  -----------\n"
        "x  y\n");
}

TEST_CASE("interferometer command reports the frozen table") {
  CommandOutput out = cmd_hardy();
  CHECK(out.metadata[0] == std::pair<std::string, std::string>{"scenario",
                                                               "hardy"});
  CHECK(metadata_value(out, "dim") == "4");
  CHECK(metadata_value(out, "overlap_probability") == "0.0833333333333");
  CHECK(metadata_value(out, "identity_coefficients") ==
        "0.250000000000, 0.333333333333");

  REQUIRE(out.table.rows.size() == 8);
  testutil::ParsedCsv parsed =
      testutil::parse_csv(render(out, OutputFormat::Csv));
  CHECK(parsed.metadata.at("identity_coefficients") ==
        "0.250000000000, 0.333333333333");

  const auto& anomalous = parsed.row_by("label", "N_NO,NO");
  CHECK(anomalous[parsed.column("weak_value")] ==
        "-1.00000000000+0.00000000000i");
  CHECK(anomalous[parsed.column("classification")] == "NotProbability");
  CHECK(anomalous[parsed.column("conditions")] == "none");
  CHECK(anomalous[parsed.column("ratio")] == "1.00000000000");

  const auto& certified = parsed.row_by("label", "N_O,O");
  CHECK(certified[parsed.column("classification")] ==
        "ConditionalProbability");
  CHECK(certified[parsed.column("conditions")] == "pre");
  CHECK(certified[parsed.column("ratio")] == "0.00000000000");

  // Rank-two rows have no entry in the ratio column.
  CHECK(parsed.row_by("label", "N+_O")[parsed.column("ratio")] == "");

  // The CSV numbers re-parse to the in-process report values.
  ScenarioReport rep = report(hardy_scenario());
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = parsed.row_by("label", rep.rows[i].label);
    Complex w = parse_complex_text(row[parsed.column("weak_value")]);
    CHECK(std::abs(w - rep.rows[i].report.value) < 1e-12);
  }
}

TEST_CASE("three-site command has no collapse coefficients") {
  CommandOutput out = cmd_threebox();
  CHECK(metadata_value(out, "overlap_probability") == "0.111111111111");
  CHECK_THROWS(metadata_value(out, "identity_coefficients"));
  REQUIRE(out.table.rows.size() == 3);
  CHECK(out.table.rows[2][1] == "-1.00000000000+0.00000000000i");
  for (const auto& row : out.table.rows) CHECK(row[7] == "1.00000000000");
}

TEST_CASE("eval of a serialized fixture file matches the built-in") {
  std::string path = testutil::temp_path("hardy_copy");
  testutil::write_file(path, serialize_scenario(hardy_scenario()));
  std::string from_file = render(cmd_eval(path), OutputFormat::Csv);
  std::string builtin = render(cmd_hardy(), OutputFormat::Csv);
  CHECK(from_file == builtin);
  std::remove(path.c_str());
}

TEST_CASE("simulate command sweeps, sorts, and reports the exact value") {
  CommandOutput out = cmd_simulate("threebox", "box1", {});
  CHECK(metadata_value(out, "scenario") == "threebox");
  CHECK(metadata_value(out, "observable") == "box1");
  CHECK(metadata_value(out, "grid_points") == "1024");
  CHECK(metadata_value(out, "sigma") == "1.00000000000");
  CHECK(metadata_value(out, "exact") == "1.00000000000+0.00000000000i");
  Complex estimate = parse_complex_text(metadata_value(out, "estimate"));
  CHECK(std::abs(estimate - Complex(1.0, 0.0)) < 1e-5);
  CHECK(std::stod(metadata_value(out, "fit_residual")) < 1e-5);

  REQUIRE(out.table.rows.size() == 3);
  CHECK(out.table.rows[0][0] == "0.0500000000000");
  CHECK(out.table.rows[1][0] == "0.0200000000000");
  CHECK(out.table.rows[2][0] == "0.0100000000000");

  // Explicit couplings are sorted descending and deduplicated.
  CommandOutput custom =
      cmd_simulate("threebox", "box1", {0.01, 0.05, 0.05, 0.02});
  REQUIRE(custom.table.rows.size() == 3);
  CHECK(custom.table.rows[0][0] == "0.0500000000000");
  CHECK(custom.table.rows[2][0] == "0.0100000000000");
}

TEST_CASE("simulate command validates its inputs") {
  CHECK_THROWS_AS(cmd_simulate("threebox", "box9", {}), UnknownLabel);
  CHECK_THROWS_WITH_AS(cmd_simulate("threebox", "box1", {0.05, -0.01}),
                       doctest::Contains("coupling must be positive"),
                       ValidationError);
  CHECK_THROWS_AS(cmd_simulate("threebox", "box1", {}, 16),
                  PreconditionFailed);
}

TEST_CASE("lattice command reports the collapse identity for rank-one pairs") {
  auto post_case = as_map(cmd_lattice("hardy", "post", "N_NO,NO"));
  CHECK(post_case.at("commutes") == "false");
  CHECK(post_case.at("collapse_weak_value") ==
        "0.750000000000+0.00000000000i");
  CHECK(post_case.at("collapse_coefficient") ==
        "0.250000000000+0.00000000000i");
  CHECK(std::stod(post_case.at("collapse_residual")) < 1e-12);
  CHECK(post_case.at("effectively_commuting") == "false");
  CHECK(post_case.at("orthomodular_holds") == "n/a");
  CHECK(post_case.at("orthomodular_defect") == "n/a");

  auto pre_case = as_map(cmd_lattice("hardy", "pre", "N_NO,NO"));
  CHECK(pre_case.at("collapse_coefficient") ==
        "0.333333333333+0.00000000000i");
}

TEST_CASE("lattice command handles commuting and nested projectors") {
  auto nested = as_map(cmd_lattice("hardy", "N_O,O", "N+_O"));
  CHECK(nested.at("commutes") == "true");
  CHECK(nested.at("commutator_norm") == "0.00000000000");
  CHECK(nested.at("meet_trace") == "1.00000000000");
  CHECK(nested.at("join_trace") == "2.00000000000");
  CHECK(nested.at("orthomodular_holds") == "true");
  CHECK(std::stod(nested.at("orthomodular_defect")) < 1e-10);
  // One side is rank two, so the collapse identity is not applicable.
  CHECK(nested.at("collapse_weak_value") == "n/a");

  auto self = as_map(cmd_lattice("hardy", "N_O,O", "N_O,O"));
  CHECK(self.at("collapse_weak_value") == "0.00000000000+0.00000000000i");
  CHECK(self.at("collapse_coefficient") == "1.00000000000+0.00000000000i");
  CHECK(self.at("effectively_commuting") == "true");

  // Orthogonal rank-one ranges leave the collapse undefined.
  auto orthogonal = as_map(cmd_lattice("hardy", "N_O,O", "N_NO,NO"));
  CHECK(orthogonal.at("collapse_weak_value") == "n/a");
  CHECK(orthogonal.at("meet_trace") == "0.00000000000");

  CHECK_THROWS_AS(cmd_lattice("hardy", "post", "nowhere"), UnknownLabel);
}

TEST_CASE("lattice command rejects non-projector observables") {
  Matrix xm(2, 2);
  xm << 0, 1, 1, 0;
  Scenario s{"spin",
             2,
             StateVector::make(std::vector<Complex>{1.0, Complex(0.0, 1.0)}),
             StateVector::make(std::vector<Complex>{1.0, 1.0}),
             {{"flip", Operator::from_matrix(xm)},
              {"up", outer(StateVector::basis(2, 0),
                           StateVector::basis(2, 0))}}};
  std::string path = testutil::temp_path("spin");
  testutil::write_file(path, serialize_scenario(s));
  CHECK_THROWS_AS(cmd_lattice(path, "flip", "up"), NotProjector);
  auto fine = as_map(cmd_lattice(path, "up", "post"));
  CHECK(fine.at("commutes") == "false");
  std::remove(path.c_str());
}

#ifdef WEAKVAL_CLI_PATH

TEST_CASE("binary succeeds on the built-in fixtures") {
  CHECK(testutil::cli_status("hardy") == 0);
  CHECK(testutil::cli_status("--format csv threebox") == 0);
  CHECK(testutil::cli_status("lattice hardy post N_NO,NO") == 0);

  auto [status, text] = testutil::cli_capture("--format csv hardy");
  CHECK(status == 0);
  CHECK(text == render(cmd_hardy(), OutputFormat::Csv));

  auto [table_status, table_text] = testutil::cli_capture("hardy");
  CHECK(table_status == 0);
  CHECK(table_text.find("scenario: hardy") != std::string::npos);
}

TEST_CASE("binary maps failures onto the documented exit codes") {
  // Impossible selection: exit 3.
  std::string blocked = testutil::temp_path("blocked");
  testutil::write_file(blocked, orthogonal_scenario_json());
  CHECK(testutil::cli_status("eval " + blocked) == 3);
  std::remove(blocked.c_str());

  // Input errors: exit 2.
  CHECK(testutil::cli_status("eval /nonexistent/nope.json") == 2);
  CHECK(testutil::cli_status("simulate hardy no_such_label") == 2);
  CHECK(testutil::cli_status("--format yaml hardy") == 2);
  CHECK(testutil::cli_status("--no-such-flag hardy") == 2);
  CHECK(testutil::cli_status("") == 2);  // a subcommand is required

  // Internal numeric failure: exit 1.
  CHECK(testutil::cli_status(
            "simulate hardy N_NO,NO --g 6 --g 3 --g 1.5") == 1);
}

#endif  // WEAKVAL_CLI_PATH
