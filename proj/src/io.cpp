// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aapt/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace aapt {

namespace {

using nlohmann::json;

double require_number(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number()) {
    throw ParseError(std::string("missing numeric field \"") + key + "\"");
  }
  return doc[key].get<double>();
}

std::uint64_t optional_seed(const json& doc) {
  if (!doc.contains("seed")) return 0;
  const json& v = doc["seed"];
  // In-memory documents built from int literals carry signed values; accept
  // any integer that is in fact nonnegative.
  if (!v.is_number_unsigned() &&
      !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError("\"seed\" must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string require_string(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_string()) {
    throw ParseError(std::string("missing string field \"") + key + "\"");
  }
  return doc[key].get<std::string>();
}

BlochVector parse_bloch(const json& v) {
  if (!v.is_array() || v.size() != 3) {
    throw ParseError("Bloch vector must be an array of three numbers");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json bloch_json(const BlochVector& v) { return json::array({v.x, v.y, v.z}); }

BellKind parse_bell_kind(const json& doc) {
  const std::string name =
      doc.contains("variant") ? doc["variant"].get<std::string>() : "phi_plus";
  if (name == "phi_plus") return BellKind::PhiPlus;
  if (name == "phi_minus") return BellKind::PhiMinus;
  if (name == "psi_plus") return BellKind::PsiPlus;
  if (name == "psi_minus") return BellKind::PsiMinus;
  throw ParseError("unknown Bell variant \"" + name + "\"");
}

ComplexMatrix parse_complex_matrix(const json& rows, std::size_t dim) {
  if (!rows.is_array() || rows.size() != dim) {
    throw ParseError("matrix must have " + std::to_string(dim) + " rows");
  }
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != dim) {
      throw ParseError("matrix rows must have " + std::to_string(dim) + " entries");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const json& entry = row[j];
      if (entry.is_number()) {
        m(i, j) = Complex(entry.get<double>(), 0.0);
      } else if (entry.is_array() && entry.size() == 2) {
        m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
      } else {
        throw ParseError("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

SeparableSpec parse_separable(const json& doc) {
  SeparableSpec spec;
  const json& w = doc.contains("weights") ? doc["weights"] : json();
  if (!w.is_array() || w.size() != 4) {
    throw ParseError("separable state needs four weights");
  }
  for (std::size_t n = 0; n < 4; ++n) spec.weights[n] = w[n].get<double>();
  for (const char* key : {"system_vertices", "ancilla_vertices"}) {
    if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != 4) {
      throw ParseError(std::string("separable state needs four ") + key);
    }
  }
  for (std::size_t n = 0; n < 4; ++n) {
    spec.system_vertices[n] = parse_bloch(doc["system_vertices"][n]);
    spec.ancilla_vertices[n] = parse_bloch(doc["ancilla_vertices"][n]);
  }
  return spec;
}

json real_matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json complex_matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

LoadedState load_state(const json& doc) {
  if (!doc.is_object()) throw ParseError("state document must be a JSON object");
  const std::string kind = require_string(doc, "kind");

  if (kind == "bell") {
    return {bell_state(parse_bell_kind(doc)), "bell"};
  }
  if (kind == "werner") {
    return {werner_state(require_number(doc, "p"), parse_bell_kind(doc)), "werner"};
  }
  if (kind == "x") {
    const json& s = doc.contains("s") ? doc["s"] : json();
    if (!s.is_array() || s.size() != 3) {
      throw ParseError("x state needs \"s\": [s1, s2, s3]");
    }
    return {x_state(s[0].get<double>(), s[1].get<double>(), s[2].get<double>()), "x"};
  }
  if (kind == "separable") {
    return {separable_from_spec(parse_separable(doc)), "separable"};
  }
  if (kind == "raw") {
    if (!doc.contains("matrix")) throw ParseError("raw state needs \"matrix\"");
    return {DensityMatrix::from_matrix(parse_complex_matrix(doc["matrix"], 4)), "raw"};
  }
  if (kind == "random_pure") {
    return {random_pure(optional_seed(doc)), "pure"};
  }
  if (kind == "random_separable") {
    return {separable_from_spec(random_separable(optional_seed(doc))), "separable"};
  }
  if (kind == "random_mixed") {
    return {random_mixed(optional_seed(doc)), "mixed"};
  }
  throw ParseError("unknown state kind \"" + kind + "\"");
}

LoadedState load_state_file(const std::string& path) {
  return load_state(read_json_file(path));
}

Channel load_channel(const json& doc) {
  if (!doc.is_object()) throw ParseError("channel document must be a JSON object");
  const std::string kind = require_string(doc, "kind");

  if (kind == "identity") return identity_channel();
  if (kind == "rotation") {
    if (!doc.contains("axis")) throw ParseError("rotation needs \"axis\"");
    return rotation_channel(parse_bloch(doc["axis"]), require_number(doc, "angle"));
  }
  if (kind == "bit_flip") return bit_flip_channel(require_number(doc, "p"));
  if (kind == "phase_flip") return phase_flip_channel(require_number(doc, "p"));
  if (kind == "depolarizing") return depolarizing_channel(require_number(doc, "p"));
  if (kind == "amplitude_damping") {
    return amplitude_damping_channel(require_number(doc, "gamma"));
  }
  if (kind == "phase_damping") {
    return phase_damping_channel(require_number(doc, "lambda"));
  }
  if (kind == "random") {
    std::size_t count = 4;
    if (doc.contains("kraus_count")) {
      count = doc["kraus_count"].get<std::size_t>();
    }
    return random_channel(optional_seed(doc), count);
  }
  if (kind == "kraus") {
    if (!doc.contains("operators") || !doc["operators"].is_array()) {
      throw ParseError("kraus channel needs \"operators\": [matrix, ...]");
    }
    std::vector<ComplexMatrix> ops;
    for (const json& op : doc["operators"]) {
      ops.push_back(parse_complex_matrix(op, 2));
    }
    return Channel::from_kraus(std::move(ops));
  }
  throw ParseError("unknown channel kind \"" + kind + "\"");
}

Channel load_channel_file(const std::string& path) {
  return load_channel(read_json_file(path));
}

json separable_spec_json(const SeparableSpec& spec) {
  json doc;
  doc["schema"] = "state/v1";
  doc["kind"] = "separable";
  doc["weights"] = spec.weights;
  json sys = json::array();
  json anc = json::array();
  for (std::size_t n = 0; n < 4; ++n) {
    sys.push_back(bloch_json(spec.system_vertices[n]));
    anc.push_back(bloch_json(spec.ancilla_vertices[n]));
  }
  doc["system_vertices"] = sys;
  doc["ancilla_vertices"] = anc;
  return doc;
}

json werner_json(double p) {
  return json{{"schema", "state/v1"}, {"kind", "werner"}, {"p", p}, {"variant", "phi_plus"}};
}

json x_json(double s1, double s2, double s3) {
  return json{{"schema", "state/v1"}, {"kind", "x"}, {"s", json::array({s1, s2, s3})}};
}

json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json report_json(const FaithfulnessReport& report, double tol) {
  json doc;
  doc["schema"] = "faithfulness_report/v1";
  doc["sinisterness"] = report.sinisterness;
  doc["singular_values"] = report.singular_values;
  doc["kappa"] = json_number(report.kappa);
  doc["kappa_lower_bound"] = json_number(report.kappa_lower_bound);
  doc["optimal_x_kappa"] = json_number(report.optimal_x_kappa);
  doc["frobenius_measure"] = report.frobenius_measure;
  doc["adjugate_measure"] = json_number(report.adjugate_measure);
  doc["faithful"] = report.faithful;
  doc["tolerance"] = tol;
  return doc;
}

json reconstruction_json(const ReconstructionResult& result) {
  json doc;
  doc["schema"] = "reconstruction/v1";
  doc["chi_tilde_hat"] = real_matrix_json(result.chi_tilde_hat.matrix());
  doc["chi_hat"] = complex_matrix_json(result.chi_hat.matrix());
  doc["tau_out_observed"] = real_matrix_json(result.tau_out_observed);
  doc["error_vs_truth"] = result.error_vs_truth;
  doc["kappa_used"] = json_number(result.kappa_used);
  return doc;
}

json error_stats_json(const ErrorStats& stats) {
  json doc;
  doc["schema"] = "error_stats/v1";
  doc["runs"] = stats.runs;
  doc["mean_chi_tilde_error"] = stats.mean_chi_tilde_error;
  doc["mean_tau_error"] = stats.mean_tau_error;
  doc["mean_ratio"] = stats.mean_ratio;
  doc["max_ratio"] = stats.max_ratio;
  return doc;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return doc;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << content;
  if (!out) throw ParseError("failed writing file: " + path);
}

}  // namespace aapt
