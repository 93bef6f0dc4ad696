// Copyright 2026 The Noise Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noise_lab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "noise_lab/errors.hpp"

namespace noise_lab::io {
namespace {

template <class T>
T require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing key: ") + key);
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad value for ") + key + ": " + e.what());
  }
}

template <class T>
std::vector<T> scalar_or_list(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("missing key: ") + key);
  const json& v = j.at(key);
  try {
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad value for ") + key + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json to_json(const BooleanFunction& f) {
  json values = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    values.push_back({f[i].real(), f[i].imag()});
  }
  return {{"schema", kSchemaVersion}, {"n", f.n()}, {"values", std::move(values)}};
}

BooleanFunction function_from_json(const json& j) {
  const int n = require<int>(j, "n");
  const auto raw = require<std::vector<std::vector<double>>>(j, "values");
  std::vector<Complex> values;
  values.reserve(raw.size());
  for (const auto& pair : raw) {
    if (pair.size() != 2) throw InvalidInput("function values must be [re, im] pairs");
    values.emplace_back(pair[0], pair[1]);
  }
  return BooleanFunction(n, std::move(values));
}

void write_function_csv(std::ostream& out, const BooleanFunction& f) {
  CsvWriter csv(out);
  csv.row({"index", "re", "im"});
  for (std::size_t i = 0; i < f.size(); ++i) {
    csv.field(static_cast<std::uint64_t>(i)).field(f[i].real()).field(f[i].imag()).end_row();
  }
}

BooleanFunction read_function_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty function CSV");
  if (line.rfind("index,re,im", 0) != 0) throw InvalidInput("function CSV needs index,re,im header");
  std::vector<Complex> values;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string idx, re, im;
    if (!std::getline(row, idx, ',') || !std::getline(row, re, ',') || !std::getline(row, im)) {
      throw InvalidInput("malformed function CSV row: " + line);
    }
    if (std::stoull(idx) != values.size()) throw InvalidInput("function CSV rows must be in index order");
    values.emplace_back(std::stod(re), std::stod(im));
  }
  int n = 0;
  while ((std::size_t{1} << n) < values.size()) ++n;
  return BooleanFunction(n, std::move(values));
}

json to_json(const TreeAutomorphism& a) {
  std::vector<int> labels(a.labels().begin(), a.labels().end());
  return {{"n", a.n()}, {"labels", labels}};
}

TreeAutomorphism automorphism_from_json(const json& j) {
  const int n = require<int>(j, "n");
  const auto raw = require<std::vector<int>>(j, "labels");
  std::vector<std::int8_t> labels;
  labels.reserve(raw.size());
  for (int v : raw) {
    if (v != 1 && v != -1) throw InvalidInput("automorphism labels must be +1 or -1");
    labels.push_back(static_cast<std::int8_t>(v));
  }
  return TreeAutomorphism(n, std::move(labels));
}

json to_json(const CouplingSpec& spec) {
  json j{{"n", spec.n}, {"kind", coupling_kind_name(spec.kind)}};
  if (spec.kind == CouplingKind::kCorrelated || spec.kind == CouplingKind::kTreeTwisted) {
    j["rho"] = spec.rho;
  }
  if (spec.labels) j["labels"] = to_json(*spec.labels)["labels"];
  if (!spec.kernel.empty()) j["kernel"] = spec.kernel;
  return j;
}

CouplingSpec coupling_spec_from_json(const json& j) {
  CouplingSpec spec;
  spec.n = require<int>(j, "n");
  spec.kind = parse_coupling_kind(require<std::string>(j, "kind"));
  if (j.contains("rho")) spec.rho = require<double>(j, "rho");
  if (j.contains("labels")) {
    spec.labels = automorphism_from_json({{"n", spec.n}, {"labels", j.at("labels")}});
  }
  if (j.contains("kernel")) spec.kernel = require<std::vector<double>>(j, "kernel");
  return spec;
}

json to_json(const HyperReport& r) {
  return {{"schema", kSchemaVersion},
          {"maxValue", r.max_value},
          {"argmax", {{"r", r.argmax.r}, {"rho", r.argmax.rho}, {"x", r.argmax.x}, {"y", r.argmax.y}}},
          {"gridStep", r.grid_step},
          {"tolerance", r.tolerance},
          {"verdict", r.pass ? "pass" : "fail"},
          {"evaluations", r.evaluations}};
}

spider::ExperimentConfig experiment_config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("experiment config must be a JSON object");
  spider::ExperimentConfig c;
  c.n = scalar_or_list<std::int64_t>(j, "n");
  c.rho = scalar_or_list<double>(j, "rho");
  for (const auto& name : scalar_or_list<std::string>(j, "family")) {
    c.families.push_back(spider::parse_family(name));
  }
  c.samples = require<std::int64_t>(j, "samples");
  c.seed = require<std::uint64_t>(j, "seed");
  if (j.contains("automorphisms")) c.automorphisms = require<std::int64_t>(j, "automorphisms");
  if (j.contains("lipschitzRadius")) c.lipschitz_radius = require<std::int64_t>(j, "lipschitzRadius");
  c.validate();
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON in " + path + ": " + e.what());
  }
}

CsvWriter& CsvWriter::field(std::string_view text) {
  if (!first_) out_ << ',';
  out_ << text;
  first_ = false;
  return *this;
}

CsvWriter& CsvWriter::field(double x) { return field(std::string_view(format_double(x))); }

CsvWriter& CsvWriter::field(std::int64_t x) { return field(std::string_view(std::to_string(x))); }

CsvWriter& CsvWriter::field(std::uint64_t x) { return field(std::string_view(std::to_string(x))); }

void CsvWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (const auto& f : fields) field(std::string_view(f));
  end_row();
}

}  // namespace noise_lab::io
