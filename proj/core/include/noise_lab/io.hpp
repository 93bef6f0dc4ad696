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

#ifndef NOISE_LAB_IO_HPP_
#define NOISE_LAB_IO_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "noise_lab/boolean_cube.hpp"
#include "noise_lab/coupling.hpp"
#include "noise_lab/hyper.hpp"
#include "noise_lab/spider_experiment.hpp"
#include "noise_lab/tree_automorphism.hpp"

namespace noise_lab::io {

// Stamped into every emitted file; bump when a column or key changes.
inline constexpr std::string_view kSchemaVersion = "noise_lab/1";

using nlohmann::json;

// Shortest round-trip decimal form; stable across runs and platforms.
std::string format_double(double x);

json to_json(const BooleanFunction& f);
BooleanFunction function_from_json(const json& j);
void write_function_csv(std::ostream& out, const BooleanFunction& f);
BooleanFunction read_function_csv(std::istream& in);

json to_json(const TreeAutomorphism& a);
TreeAutomorphism automorphism_from_json(const json& j);

// {n, kind, rho?, labels?, kernel?}
json to_json(const CouplingSpec& spec);
CouplingSpec coupling_spec_from_json(const json& j);

// {maxValue, argmax, gridStep, tolerance, verdict, evaluations}
json to_json(const HyperReport& r);

// {n: [..], rho: [..], family: name | [names], samples, seed, automorphisms?}
spider::ExperimentConfig experiment_config_from_json(const json& j);

json read_json_file(const std::string& path);

// Minimal CSV emitter: fields are written verbatim, rows end in '\n'.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  CsvWriter& field(std::string_view text);
  CsvWriter& field(double x);
  CsvWriter& field(std::int64_t x);
  CsvWriter& field(std::uint64_t x);
  CsvWriter& field(int x) { return field(static_cast<std::int64_t>(x)); }
  void end_row();
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace noise_lab::io

#endif  // NOISE_LAB_IO_HPP_
