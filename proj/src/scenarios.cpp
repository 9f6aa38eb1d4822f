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

#include "weakval/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace weakval {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const char* kind_name(OperatorKind k) {
  switch (k) {
    case OperatorKind::General: return "general";
    case OperatorKind::Hermitian: return "hermitian";
    case OperatorKind::Projector: return "projector";
  }
  return "general";
}

OperatorKind kind_from_name(const std::string& s, const std::string& where) {
  if (s == "general") return OperatorKind::General;
  if (s == "hermitian") return OperatorKind::Hermitian;
  if (s == "projector") return OperatorKind::Projector;
  throw ParseError(where + ": unknown kind \"" + s + "\"");
}

void reject_unknown_fields(const json& obj, const std::set<std::string>& known,
                           const std::string& where) {
  for (const auto& item : obj.items()) {
    if (known.find(item.key()) == known.end()) {
      throw ParseError(where + ": unknown field \"" + item.key() + "\"");
    }
  }
}

const json& require_field(const json& obj, const std::string& key,
                          const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing field \"" + key + "\"");
  }
  return *it;
}

Complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ParseError(where + ": complex entries must be [re, im] number pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

StateVector parse_state(const json& j, Index dim, const std::string& where) {
  if (!j.is_array()) {
    throw ParseError(where + ": must be an array of [re, im] pairs");
  }
  if (static_cast<Index>(j.size()) != dim) {
    throw ValidationError(where + ": expected " + std::to_string(dim) +
                          " amplitudes, got " + std::to_string(j.size()));
  }
  std::vector<Complex> amps;
  amps.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    amps.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
  }
  try {
    return StateVector::make(amps);
  } catch (const ZeroVector& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

Matrix parse_matrix(const json& j, Index dim, const std::string& where) {
  if (!j.is_array()) {
    throw ParseError(where + ": must be an array of rows");
  }
  if (static_cast<Index>(j.size()) != dim) {
    throw ValidationError(where + ": expected " + std::to_string(dim) +
                          " rows, got " + std::to_string(j.size()));
  }
  Matrix m(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!row.is_array()) {
      throw ParseError(row_where + ": must be an array of [re, im] pairs");
    }
    if (static_cast<Index>(row.size()) != dim) {
      throw ValidationError(row_where + ": expected " + std::to_string(dim) +
                            " entries, got " + std::to_string(row.size()));
    }
    for (Index c = 0; c < dim; ++c) {
      m(r, c) = parse_complex(row[static_cast<size_t>(c)],
                              row_where + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

ordered_json complex_to_json(Complex z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json state_to_json(const StateVector& s) {
  ordered_json out = ordered_json::array();
  for (Index i = 0; i < s.dim(); ++i) out.push_back(complex_to_json(s[i]));
  return out;
}

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

}  // namespace

const LabeledObservable& Scenario::find(const std::string& label) const {
  for (const LabeledObservable& o : observables) {
    if (o.label == label) return o;
  }
  std::string known;
  for (const LabeledObservable& o : observables) {
    known += known.empty() ? o.label : ", " + o.label;
  }
  throw UnknownLabel("no observable labeled \"" + label +
                     "\"; scenario has: " + known);
}

Scenario hardy_scenario() {
  StateVector over = StateVector::basis(2, 0);
  StateVector apart = StateVector::basis(2, 1);
  Operator p_over = outer(over, over);
  Operator p_apart = outer(apart, apart);

  // Joint occupation projectors; the first tensor factor is the slow index.
  Operator n_oo = tensor(p_over, p_over);
  Operator n_ono = tensor(p_over, p_apart);
  Operator n_noo = tensor(p_apart, p_over);
  Operator n_nono = tensor(p_apart, p_apart);

  StateVector pre = StateVector::make(
      Vector(tensor(over, apart).amplitudes() +
             tensor(apart, over).amplitudes() +
             tensor(apart, apart).amplitudes()));
  StateVector post = StateVector::make(
      Vector(tensor(over, over).amplitudes() -
             tensor(over, apart).amplitudes() -
             tensor(apart, over).amplitudes() +
             tensor(apart, apart).amplitudes()));

  return Scenario{
      "hardy",
      4,
      pre,
      post,
      {
          {"N_O,O", n_oo},
          {"N_O,NO", n_ono},
          {"N_NO,O", n_noo},
          {"N_NO,NO", n_nono},
          {"N+_O", n_oo + n_ono},
          {"N+_NO", n_noo + n_nono},
          {"N-_O", n_oo + n_noo},
          {"N-_NO", n_ono + n_nono},
      }};
}

Scenario three_box_scenario() {
  StateVector pre = StateVector::make(std::vector<Complex>{1.0, 1.0, 1.0});
  StateVector post = StateVector::make(std::vector<Complex>{1.0, 1.0, -1.0});
  std::vector<LabeledObservable> obs;
  for (Index k = 0; k < 3; ++k) {
    StateVector site = StateVector::basis(3, k);
    obs.push_back({"box" + std::to_string(k + 1), outer(site, site)});
  }
  return Scenario{"threebox", 3, pre, post, std::move(obs)};
}

Complex proportionality_coefficient(const Operator& p, const Operator& n) {
  if (p.dim() != n.dim()) {
    throw DimMismatch("proportionality_coefficient: dimensions differ");
  }
  Matrix b = p.entries() * n.entries();
  double b_norm2 = b.squaredNorm();
  if (b_norm2 <= 1e-28) {
    throw NotProportional("product vanishes; coefficient undefined");
  }
  Matrix a = b * b;
  Complex c = (b.adjoint() * a).trace() / b_norm2;
  double residual = operator_norm(Matrix(a - c * b));
  if (residual > kComparisonTol) {
    throw NotProportional("squared product is not proportional; residual " +
                          std::to_string(residual));
  }
  return c;
}

std::pair<double, double> hardy_identity_coefficients() {
  Scenario s = hardy_scenario();
  const Operator& joint_apart = s.find("N_NO,NO").op;
  Complex c_post =
      proportionality_coefficient(outer(s.post, s.post), joint_apart);
  Complex c_pre = proportionality_coefficient(outer(s.pre, s.pre), joint_apart);
  return {c_post.real(), c_pre.real()};
}

std::vector<double> hardy_ratio_table() {
  Scenario s = hardy_scenario();
  ScenarioReport rep = report(s);
  return rep.ratio_table;
}

Scenario load_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("scenario document must be a JSON object");
  }
  reject_unknown_fields(doc, {"name", "dim", "pre", "post", "observables"},
                        "scenario");

  const json& name_j = require_field(doc, "name", "scenario");
  if (!name_j.is_string()) throw ParseError("name: must be a string");
  const json& dim_j = require_field(doc, "dim", "scenario");
  if (!dim_j.is_number_integer()) throw ParseError("dim: must be an integer");
  Index dim = dim_j.get<Index>();
  if (dim < 1) throw ValidationError("dim: must be >= 1");

  StateVector pre = parse_state(require_field(doc, "pre", "scenario"), dim,
                                "pre");
  StateVector post = parse_state(require_field(doc, "post", "scenario"), dim,
                                 "post");

  const json& obs_j = require_field(doc, "observables", "scenario");
  if (!obs_j.is_array()) {
    throw ParseError("observables: must be an array");
  }
  std::vector<LabeledObservable> observables;
  std::set<std::string> seen;
  for (size_t i = 0; i < obs_j.size(); ++i) {
    std::string where = "observables[" + std::to_string(i) + "]";
    const json& o = obs_j[i];
    if (!o.is_object()) throw ParseError(where + ": must be an object");
    reject_unknown_fields(o, {"label", "kind", "matrix"}, where);

    const json& label_j = require_field(o, "label", where);
    if (!label_j.is_string()) {
      throw ParseError(where + ".label: must be a string");
    }
    std::string label = label_j.get<std::string>();
    if (label.empty()) {
      throw ValidationError(where + ".label: must be non-empty");
    }
    if (!seen.insert(label).second) {
      throw ValidationError("duplicate observable label \"" + label + "\"");
    }

    const json& kind_j = require_field(o, "kind", where);
    if (!kind_j.is_string()) {
      throw ParseError(where + ".kind: must be a string");
    }
    OperatorKind kind = kind_from_name(kind_j.get<std::string>(),
                                       where + ".kind");
    Matrix m = parse_matrix(require_field(o, "matrix", where), dim,
                            where + ".matrix");
    try {
      observables.push_back({std::move(label), Operator::from_matrix(m, kind)});
    } catch (const NotHermitian& e) {
      throw ValidationError(where + ": " + e.what());
    } catch (const NotProjector& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }

  return Scenario{name_j.get<std::string>(), dim, std::move(pre),
                  std::move(post), std::move(observables)};
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open scenario file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s) {
  ordered_json doc;
  doc["name"] = s.name;
  doc["dim"] = s.dim;
  doc["pre"] = state_to_json(s.pre);
  doc["post"] = state_to_json(s.post);
  ordered_json obs = ordered_json::array();
  for (const LabeledObservable& o : s.observables) {
    ordered_json entry;
    entry["label"] = o.label;
    entry["kind"] = kind_name(o.op.kind());
    entry["matrix"] = matrix_to_json(o.op.entries());
    obs.push_back(std::move(entry));
  }
  doc["observables"] = std::move(obs);
  return doc.dump(2) + "\n";
}

ScenarioReport report(const Scenario& s, double tol) {
  Complex overlap = inner(s.post, s.pre);
  if (std::abs(overlap) <= kOverlapCutoff) {
    throw OrthogonalSelection(
        "post-selection impossible: <post|pre> vanishes within 1e-12");
  }

  Operator post_proj = outer(s.post, s.post);
  Operator pre_proj = outer(s.pre, s.pre);

  ScenarioReport out;
  out.overlap_probability = std::norm(overlap);
  for (const LabeledObservable& o : s.observables) {
    ScenarioRow row;
    row.label = o.label;
    if (o.op.is_projector()) {
      row.report = classify(o.op, s.pre, s.post, tol);
    } else {
      // Same evidence as for projectors, but a non-projector observable is
      // not a proposition, so no commutation condition certifies it.
      WeakValueReport r;
      r.value = weak_value(o.op, s.pre, s.post);
      r.pre_post_overlap = overlap;
      r.classification = Classification::NotProbability;
      r.conditions = ConditionSet{false, false, false};
      r.commutator_norms[0] = operator_norm(commutator(post_proj, o.op));
      r.commutator_norms[1] = operator_norm(commutator(pre_proj, o.op));
      r.commutator_norms[2] = operator_norm(commutator(post_proj, pre_proj));
      r.real_part_symmetric =
          expectation(compose(post_proj, o.op) + compose(o.op, post_proj),
                      s.pre) / 2.0;
      r.commutator_part =
          expectation(commutator(post_proj, o.op), s.pre) / 2.0;
      row.report = r;
    }
    out.rows.push_back(std::move(row));
  }

  // Ratio table over the rank-one projector rows: the product of the two
  // single-selection outcome probabilities, scaled to a largest entry of 1.
  std::vector<size_t> rank_one_rows;
  std::vector<double> products;
  for (size_t i = 0; i < s.observables.size(); ++i) {
    const Operator& op = s.observables[i].op;
    if (!op.is_projector() || std::abs(op.trace().real() - 1.0) > 1e-9)
      continue;
    rank_one_rows.push_back(i);
    products.push_back(expectation(op, s.post).real() *
                       expectation(op, s.pre).real());
  }
  double peak = 0.0;
  for (double r : products) peak = std::max(peak, r);
  for (size_t k = 0; k < products.size(); ++k) {
    double scaled = peak > 0.0 ? products[k] / peak : 0.0;
    out.rows[rank_one_rows[k]].ratio = scaled;
    out.ratio_table.push_back(scaled);
  }
  return out;
}

}  // namespace weakval
