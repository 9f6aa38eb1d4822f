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

#include "weakval/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weakval/logic.hpp"
#include "weakval/scenarios.hpp"
#include "weakval/weak.hpp"

namespace weakval::cli {

namespace {

Scenario resolve_scenario(const std::string& ref) {
  if (ref == "hardy") return hardy_scenario();
  if (ref == "threebox") return three_box_scenario();
  return load_scenario_file(ref);
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

std::string format_conditions(const ConditionSet& c) {
  std::string out;
  auto append = [&out](const char* name) {
    if (!out.empty()) out += "+";
    out += name;
  };
  if (c.post_commutes) append("post");
  if (c.pre_commutes) append("pre");
  if (c.pre_post_commute) append("pre_post");
  return out.empty() ? "none" : out;
}

std::string format_classification(Classification c) {
  return c == Classification::ConditionalProbability ? "ConditionalProbability"
                                                     : "NotProbability";
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string render_csv(const CommandOutput& out) {
  std::string text;
  for (const auto& [key, value] : out.metadata) {
    text += "# " + key + "," + value + "\n";
  }
  std::string header;
  for (size_t c = 0; c < out.table.headers.size(); ++c) {
    if (c > 0) header += ',';
    header += csv_escape(out.table.headers[c]);
  }
  text += header + "\n";
  for (const auto& row : out.table.rows) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += ',';
      line += csv_escape(row[c]);
    }
    text += line + "\n";
  }
  return text;
}

std::string render_table(const CommandOutput& out) {
  std::string text;
  for (const auto& [key, value] : out.metadata) {
    text += key + ": " + value + "\n";
  }
  if (!out.metadata.empty()) text += "\n";

  std::vector<size_t> width(out.table.headers.size(), 0);
  for (size_t c = 0; c < out.table.headers.size(); ++c) {
    width[c] = out.table.headers[c].size();
    for (const auto& row : out.table.rows) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  auto emit_row = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) line += "  ";
      line += cells[c];
      if (c + 1 < cells.size()) {
        line += std::string(width[c] - cells[c].size(), ' ');
      }
    }
    text += line + "\n";
  };
  emit_row(out.table.headers);
  std::string rule;
  for (size_t c = 0; c < width.size(); ++c) {
    if (c > 0) rule += "  ";
    rule += std::string(width[c], '-');
  }
  text += rule + "\n";
  for (const auto& row : out.table.rows) emit_row(row);
  return text;
}

// Extra metadata for the interferometer fixture: the coefficients that
// collapse the squared selection-observable products.
void append_hardy_coefficients(const Scenario& s, CommandOutput& out) {
  for (const LabeledObservable& o : s.observables) {
    if (o.label != "N_NO,NO" || !o.op.is_projector()) continue;
    try {
      Complex c_post =
          proportionality_coefficient(outer(s.post, s.post), o.op);
      Complex c_pre = proportionality_coefficient(outer(s.pre, s.pre), o.op);
      out.metadata.emplace_back(
          "identity_coefficients",
          format_real(c_post.real()) + ", " + format_real(c_pre.real()));
    } catch (const NotProportional&) {
      // A renamed or edited fixture may not collapse; skip the line.
    }
    return;
  }
}

CommandOutput eval_scenario(const Scenario& s, double tol) {
  ScenarioReport rep = report(s, tol);

  CommandOutput out;
  out.metadata.emplace_back("scenario", s.name);
  out.metadata.emplace_back("dim", std::to_string(s.dim));
  out.metadata.emplace_back("overlap_probability",
                            format_real(rep.overlap_probability));
  if (s.name == "hardy") append_hardy_coefficients(s, out);

  out.table.headers = {"label",         "weak_value",   "classification",
                       "conditions",    "comm_post_obs", "comm_pre_obs",
                       "comm_pre_post", "ratio"};
  for (const ScenarioRow& row : rep.rows) {
    const WeakValueReport& r = row.report;
    out.table.rows.push_back({
        row.label,
        format_complex(r.value),
        format_classification(r.classification),
        format_conditions(r.conditions),
        format_real(r.commutator_norms[0]),
        format_real(r.commutator_norms[1]),
        format_real(r.commutator_norms[2]),
        row.ratio ? format_real(*row.ratio) : std::string(),
    });
  }
  return out;
}

Operator lattice_projector(const Scenario& s, const std::string& label) {
  if (label == "pre") return outer(s.pre, s.pre);
  if (label == "post") return outer(s.post, s.post);
  const Operator& op = s.find(label).op;
  if (!op.is_projector()) {
    throw NotProjector("lattice requires projector observables; \"" + label +
                       "\" is not one");
  }
  return op;
}

bool rank_one(const Operator& p) {
  return std::abs(p.trace().real() - 1.0) <= 1e-9;
}

}  // namespace

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // collapse negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g", value);
  return buf;
}

std::string format_complex(Complex value) {
  double im = value.imag() == 0.0 ? 0.0 : value.imag();
  std::string out = format_real(value.real());
  out += im < 0.0 ? "-" : "+";
  out += format_real(std::abs(im));
  out += "i";
  return out;
}

std::string render(const CommandOutput& out, OutputFormat format) {
  return format == OutputFormat::Csv ? render_csv(out) : render_table(out);
}

CommandOutput cmd_hardy(double tol) { return cmd_eval("hardy", tol); }

CommandOutput cmd_threebox(double tol) { return cmd_eval("threebox", tol); }

CommandOutput cmd_eval(const std::string& scenario_ref, double tol) {
  return eval_scenario(resolve_scenario(scenario_ref), tol);
}

CommandOutput cmd_simulate(const std::string& scenario_ref,
                           const std::string& observable_label,
                           std::vector<double> couplings, Index grid_points,
                           double sigma, double tol) {
  Scenario s = resolve_scenario(scenario_ref);
  const LabeledObservable& obs = s.find(observable_label);

  if (couplings.empty()) couplings = {0.05, 0.02, 0.01};
  for (double g : couplings) {
    if (!(g > 0.0)) {
      throw ValidationError("coupling must be positive, got " +
                            std::to_string(g));
    }
  }
  std::sort(couplings.begin(), couplings.end(), std::greater<double>());
  couplings.erase(std::unique(couplings.begin(), couplings.end()),
                  couplings.end());

  Complex exact = weak_value(obs.op, s.pre, s.post);
  PointerGrid grid = PointerGrid::make(grid_points, sigma);
  WeakValueEstimate est =
      extract_weak_value(obs.op, s.pre, s.post, couplings, grid);

  CommandOutput out;
  out.metadata.emplace_back("scenario", s.name);
  out.metadata.emplace_back("observable", obs.label);
  out.metadata.emplace_back("grid_points", std::to_string(grid.num_points));
  out.metadata.emplace_back("sigma", format_real(grid.sigma));
  out.metadata.emplace_back("estimate", format_complex(est.estimate));
  out.metadata.emplace_back("exact", format_complex(exact));
  out.metadata.emplace_back("fit_residual", format_real(est.fit_residual));
  (void)tol;

  out.table.headers = {"g", "post_selection_probability", "mean_position",
                       "mean_momentum"};
  for (const PointerStats& row : est.per_g) {
    out.table.rows.push_back({
        format_real(row.coupling),
        format_real(row.post_selection_probability),
        format_real(row.mean_position),
        format_real(row.mean_momentum),
    });
  }
  return out;
}

CommandOutput cmd_lattice(const std::string& scenario_ref,
                          const std::string& p_label,
                          const std::string& q_label, double tol) {
  Scenario s = resolve_scenario(scenario_ref);
  Operator p = lattice_projector(s, p_label);
  Operator q = lattice_projector(s, q_label);

  CommandOutput out;
  out.metadata.emplace_back("scenario", s.name);
  out.metadata.emplace_back("p", p_label);
  out.metadata.emplace_back("q", q_label);
  out.table.headers = {"quantity", "value"};
  auto add = [&out](const std::string& name, const std::string& value) {
    out.table.rows.push_back({name, value});
  };

  add("commutes", format_bool(commutes(p, q, tol)));
  add("commutator_norm", format_real(operator_norm(commutator(p, q))));
  add("meet_trace", format_real(meet(p, q).trace().real()));
  add("join_trace", format_real(join(p, q).trace().real()));

  // The orthomodular law needs one projector below the other; try both
  // orientations before reporting it as inapplicable.
  std::string holds = "n/a";
  std::string defect = "n/a";
  for (const auto& [below, above] : {std::pair(&p, &q), std::pair(&q, &p)}) {
    try {
      LatticeVerdict verdict = check_orthomodular(*below, *above, tol);
      holds = format_bool(verdict.holds);
      defect = format_real(verdict.defect);
      break;
    } catch (const PreconditionFailed&) {
    }
  }
  add("orthomodular_holds", holds);
  add("orthomodular_defect", defect);

  // Product-collapse identity pqpq = (1 - w) pq for rank-one pairs, taken
  // between the ranges of q (as preparation) and p (as selection).
  std::string collapse_wv = "n/a";
  std::string collapse_coef = "n/a";
  std::string collapse_residual = "n/a";
  std::string effectively = "n/a";
  if (rank_one(p) && rank_one(q)) {
    try {
      EffectiveCommutativity ec = effective_commutativity(
          p, q, tol, range_direction(q), range_direction(p));
      collapse_wv = format_complex(ec.commutator_weak_value);
      collapse_coef = format_complex(ec.identity_coefficient);
      collapse_residual = format_real(ec.identity_residual);
      effectively = format_bool(ec.effectively_commuting);
    } catch (const UndefinedWeakValue&) {
      // Orthogonal ranges leave the collapse coefficient undefined.
    }
  }
  add("collapse_weak_value", collapse_wv);
  add("collapse_coefficient", collapse_coef);
  add("collapse_residual", collapse_residual);
  add("effectively_commuting", effectively);
  return out;
}

int run_main(int argc, char** argv) {
  CLI::App app{"Weak values between pre- and post-selected states"};
  app.require_subcommand(1);

  double tol = kComparisonTol;
  std::string format = "table";
  app.add_option("--tol", tol, "comparison tolerance for commutators");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "csv"}));

  CLI::App* hardy = app.add_subcommand(
      "hardy", "report the built-in interferometer fixture");
  hardy->fallthrough();

  CLI::App* threebox =
      app.add_subcommand("threebox", "report the built-in three-site fixture");
  threebox->fallthrough();

  std::string eval_ref;
  CLI::App* eval =
      app.add_subcommand("eval", "report a scenario (built-in name or file)");
  eval->fallthrough();
  eval->add_option("scenario", eval_ref, "built-in name or JSON file path")
      ->required();

  std::string sim_ref;
  std::string sim_label;
  std::vector<double> sim_couplings;
  int sim_grid_points = 1024;
  double sim_sigma = 1.0;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "pointer-measurement sweep for one observable");
  simulate->fallthrough();
  simulate->add_option("scenario", sim_ref, "built-in name or JSON file path")
      ->required();
  simulate->add_option("label", sim_label, "observable label")->required();
  simulate->add_option("--g", sim_couplings,
                       "coupling strength, repeatable; default 0.05 0.02 0.01");
  simulate->add_option("--grid-points", sim_grid_points,
                       "pointer grid size (>= 64)");
  simulate->add_option("--sigma", sim_sigma, "pointer width");

  std::string lat_ref;
  std::string lat_p;
  std::string lat_q;
  CLI::App* lattice = app.add_subcommand(
      "lattice", "lattice relations between two projectors");
  lattice->fallthrough();
  lattice->add_option("scenario", lat_ref, "built-in name or JSON file path")
      ->required();
  lattice->add_option("p", lat_p, "projector label, or pre/post")->required();
  lattice->add_option("q", lat_q, "projector label, or pre/post")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CommandOutput out;
    if (*hardy) {
      out = cmd_hardy(tol);
    } else if (*threebox) {
      out = cmd_threebox(tol);
    } else if (*eval) {
      out = cmd_eval(eval_ref, tol);
    } else if (*simulate) {
      out = cmd_simulate(sim_ref, sim_label, sim_couplings, sim_grid_points,
                         sim_sigma, tol);
    } else {
      out = cmd_lattice(lat_ref, lat_p, lat_q, tol);
    }
    OutputFormat fmt = format == "csv" ? OutputFormat::Csv : OutputFormat::Table;
    std::cout << render(out, fmt);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const OrthogonalSelection*>(&e) ||
        dynamic_cast<const UndefinedWeakValue*>(&e) ||
        dynamic_cast<const PostSelectionVanished*>(&e)) {
      return 3;
    }
    bool input_error = dynamic_cast<const ParseError*>(&e) ||
                       dynamic_cast<const ValidationError*>(&e) ||
                       dynamic_cast<const UnknownLabel*>(&e) ||
                       dynamic_cast<const NotProjector*>(&e) ||
                       dynamic_cast<const NotHermitian*>(&e) ||
                       dynamic_cast<const DimMismatch*>(&e) ||
                       dynamic_cast<const ZeroVector*>(&e) ||
                       dynamic_cast<const PreconditionFailed*>(&e) ||
                       dynamic_cast<const IncompleteBasis*>(&e) ||
                       dynamic_cast<const NotProportional*>(&e);
    return input_error ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace weakval::cli
