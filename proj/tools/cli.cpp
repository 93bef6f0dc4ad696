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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "noise_lab/boolean_cube.hpp"
#include "noise_lab/coupling.hpp"
#include "noise_lab/errors.hpp"
#include "noise_lab/hyper.hpp"
#include "noise_lab/io.hpp"
#include "noise_lab/parallel.hpp"
#include "noise_lab/rng.hpp"
#include "noise_lab/spider_experiment.hpp"
#include "noise_lab/spider_graph.hpp"
#include "noise_lab/spider_walk.hpp"

namespace noise_lab::cli {
namespace {

using io::json;

// Cells are JSON scalars; CSV renders them without quoting.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
};

struct Result {
  json doc = json::object();
  Table table;
  int exit_code = kExitOk;
};

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "csv";
};

std::string render_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return io::format_double(v.get<double>());
  return v.dump();
}

void emit(const Result& r, const std::string& command, std::uint64_t seed,
          const std::string& format, std::ostream& out) {
  if (format == "json") {
    json doc = r.doc;
    doc["schema"] = io::kSchemaVersion;
    doc["command"] = command;
    doc["seed"] = seed;
    json rows = json::array();
    for (const auto& row : r.table.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[r.table.header[i]] = row[i];
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
    return;
  }
  out << "# schema=" << io::kSchemaVersion << " command=" << command << " seed=" << seed;
  for (const auto& [key, value] : r.doc.items()) {
    if (value.is_primitive()) out << ' ' << key << '=' << render_cell(value);
  }
  out << '\n';
  io::CsvWriter csv(out);
  csv.row(r.table.header);
  for (const auto& row : r.table.rows) {
    for (const auto& cell : row) csv.field(std::string_view(render_cell(cell)));
    csv.end_row();
  }
}

// Parameter lookup: command-line flag, then config key, then default.
class Params {
 public:
  explicit Params(json config) : config_(std::move(config)) {}

  template <class T>
  T get(const std::optional<T>& flag, const char* key, T fallback) const {
    if (flag) return *flag;
    if (config_.is_object() && config_.contains(key)) {
      try {
        return config_.at(key).get<T>();
      } catch (const json::exception& e) {
        throw InvalidInput(std::string("bad value for ") + key + ": " + e.what());
      }
    }
    return fallback;
  }

  const json& config() const { return config_; }

 private:
  json config_;
};

BooleanFunction load_function(const Params& p, const std::optional<std::string>& family,
                              const std::optional<int>& n, const std::optional<std::string>& input) {
  const std::string path = p.get(input, "input", std::string());
  if (!path.empty()) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
      std::ifstream in(path);
      if (!in) throw InvalidInput("cannot open " + path);
      return io::read_function_csv(in);
    }
    return io::function_from_json(io::read_json_file(path));
  }
  const std::string name = p.get(family, "family", std::string());
  if (name.empty()) throw InvalidInput("need --family or --input");
  return builtin_family(name, p.get(n, "n", 0));
}

struct FunctionFlags {
  std::optional<std::string> family;
  std::optional<int> n;
  std::optional<std::string> input;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "builtin function family");
    app->add_option("--n", n, "cube dimension");
    app->add_option("--input", input, "function file (.json or .csv)");
  }
};

Result cmd_spectrum(const Params& p, const FunctionFlags& ff, const std::vector<int>& m_flag) {
  const BooleanFunction f = load_function(p, ff.family, ff.n, ff.input);
  const SpectralDecomposition spec = wht_forward(f);
  std::vector<int> ms = m_flag;
  if (ms.empty() && p.config().is_object() && p.config().contains("m")) {
    ms = p.config().at("m").get<std::vector<int>>();
  }
  if (ms.empty()) {
    for (int m = 1; m <= f.n(); ++m) ms.push_back(m);
  }
  Result r;
  r.doc["n"] = f.n();
  r.doc["normSq"] = norm_sq(f);
  r.table.header = {"kind", "m", "value"};
  for (int m = 0; m <= f.n(); ++m) r.table.rows.push_back({"w", m, spec.level_weight(m)});
  for (int m : ms) {
    const SpectralTails t = spectral_tails(spec, m);
    r.table.rows.push_back({"S_low", m, t.low});
    r.table.rows.push_back({"S_high", m, t.high});
  }
  return r;
}

Result cmd_noise(const Params& p, const FunctionFlags& ff, const std::optional<double>& rho_flag,
                 const std::optional<double>& eps_flag) {
  const BooleanFunction f = load_function(p, ff.family, ff.n, ff.input);
  std::optional<double> eps = eps_flag;
  if (!eps && !rho_flag && p.config().is_object() && p.config().contains("epsilon")) {
    eps = p.config().at("epsilon").get<double>();
  }
  const NoiseParam rho = eps ? NoiseParam::from_epsilon(*eps)
                             : NoiseParam(p.get(rho_flag, "rho", 1.0));
  const BooleanFunction g = noise_operator(f, rho);
  const Complex corr = noise_correlation(f, f, rho);
  Result r;
  r.doc["n"] = f.n();
  r.doc["rho"] = rho.rho();
  r.doc["inputNormSq"] = norm_sq(f);
  r.doc["outputNormSq"] = norm_sq(g);
  r.doc["noiseCorrelationRe"] = corr.real();
  r.doc["noiseCorrelationIm"] = corr.imag();
  r.doc["expectedConditionalVariance"] = expected_conditional_variance(f, rho);
  r.table.header = {"index", "re", "im"};
  for (std::size_t i = 0; i < g.size(); ++i) {
    r.table.rows.push_back({static_cast<std::uint64_t>(i), g[i].real(), g[i].imag()});
  }
  return r;
}

Result cmd_hyper(const Params& p, const std::optional<double>& step_flag,
                 const std::optional<double>& tol_flag) {
  const double step = p.get(step_flag, "gridStep", 1.0 / 64.0);
  const double tol = p.get(tol_flag, "tolerance", 1e-9);
  const HyperReport rep = verify_four_point(step, tol, thread_budget());
  Result r;
  r.doc = io::to_json(rep);
  r.doc.erase("schema");
  r.table.header = {"key", "value"};
  r.table.rows = {{"maxValue", rep.max_value},
                  {"argmax.r", rep.argmax.r},
                  {"argmax.rho", rep.argmax.rho},
                  {"argmax.x", rep.argmax.x},
                  {"argmax.y", rep.argmax.y},
                  {"gridStep", rep.grid_step},
                  {"tolerance", rep.tolerance},
                  {"verdict", rep.pass ? "pass" : "fail"},
                  {"evaluations", rep.evaluations},
                  {"originDeviation", rep.origin_deviation}};
  r.exit_code = rep.pass ? kExitOk : kExitVerification;
  return r;
}

Result cmd_coupling_check(const Params& p) {
  const json& cfg = p.config();
  if (!cfg.is_object()) throw InvalidInput("coupling-check needs --config");
  Result r;
  r.table.header = {"key", "value"};
  ImmersionVerdict verdict;
  if (cfg.contains("table")) {
    const JointTable table(cfg.at("n").get<int>(), cfg.at("table").get<std::vector<double>>());
    verdict = validate_immersion(table);
    r.table.rows.push_back({"source", "table"});
    if (verdict.ok) r.table.rows.push_back({"rhoMax", rho_max(from_table(table))});
  } else {
    const Coupling mu = make_coupling(io::coupling_spec_from_json(cfg));
    r.table.rows.push_back({"source", mu.describe()});
    r.table.rows.push_back({"rhoMax", rho_max(mu)});
    if (mu.is_explicit() && mu.n() <= kMaxExactLevels) verdict = validate_immersion(to_table(mu));
  }
  r.table.rows.push_back({"immersion", verdict.ok ? "pass" : "fail"});
  if (!verdict.ok) {
    r.table.rows.push_back({"step", verdict.step});
    r.table.rows.push_back({"firstPrefix", verdict.first_prefix});
    r.table.rows.push_back({"secondPrefix", verdict.second_prefix});
    r.table.rows.push_back({"deviation", verdict.deviation});
  }
  r.doc["verdict"] = verdict.ok ? "pass" : "fail";
  r.exit_code = verdict.ok ? kExitOk : kExitVerification;
  return r;
}

Result cmd_spider_exact(const Params& p, const std::optional<std::int64_t>& n_flag) {
  const std::int64_t n = p.get(n_flag, "n", std::int64_t{2});
  spider::ExactWalk walk(n);
  for (std::int64_t m = 0; m < n; ++m) walk.advance();
  Result r;
  const double second = walk.second_moment();
  const auto mean = walk.mean_position();
  const double nd = static_cast<double>(n);
  const double tol = n <= 4000 ? 1e-9 : 1e-12 * nd;
  const bool ok = std::abs(second - nd) <= tol && std::abs(mean) <= tol &&
                  std::abs(walk.total_mass() + walk.discarded_mass() - 1.0) <= 1e-12;
  r.doc["n"] = n;
  r.doc["secondMoment"] = second;
  r.doc["meanRe"] = mean.real();
  r.doc["meanIm"] = mean.imag();
  r.doc["totalMass"] = walk.total_mass();
  r.doc["discardedMass"] = walk.discarded_mass();
  r.doc["verdict"] = ok ? "pass" : "fail";
  r.table.header = {"vertex", "probability"};
  for (const auto& [v, prob] : walk.support()) r.table.rows.push_back({spider::to_string(v), prob});
  r.exit_code = ok ? kExitOk : kExitVerification;
  return r;
}

Result cmd_spider_walk(const Params& p, std::uint64_t seed, const std::optional<std::int64_t>& n_flag,
                       const std::optional<double>& rho_flag,
                       const std::optional<std::string>& family_flag) {
  const auto n = p.get(n_flag, "n", std::int64_t{32});
  const double rho = p.get(rho_flag, "rho", 0.9);
  const auto family = spider::parse_family(p.get(family_flag, "family", std::string("correlated")));
  if (n < 1 || n > 1'000'000) throw InvalidInput("walk length must lie in [1, 1e6]");
  const Coupling mu = spider::family_coupling(family, static_cast<int>(n), rho, seed, 0);
  Rng rng(seed, stream_id(0x3a1c, 0));
  const spider::PairTrajectory t = spider::coupled_walk(mu, rng);
  const auto ledger = spider::submartingale_ledger(t);
  Result r;
  r.doc["n"] = n;
  r.doc["coupling"] = mu.describe();
  r.table.header = {"step", "v1", "v2", "D", "L", "case", "s", "t", "ledger"};
  for (std::size_t m = 0; m < t.states.size(); ++m) {
    const auto& st = t.states[m];
    r.table.rows.push_back({static_cast<std::int64_t>(m), spider::to_string(st.first),
                            spider::to_string(st.second), st.distance, st.l_flag ? 1 : 0,
                            std::string(spider::drift_case_name(st.tag)), st.s, st.t, ledger[m]});
  }
  return r;
}

Result cmd_spider_census(const Params& p, const std::optional<std::int64_t>& radius_flag) {
  const auto radius = p.get(radius_flag, "radius", std::int64_t{30});
  const spider::DriftCensus c = spider::check_drift_monotonicity(radius);
  Result r;
  r.doc["radius"] = radius;
  r.doc["pairs"] = c.pairs;
  r.doc["violations"] = c.violations;
  r.doc["gainHalfMismatches"] = c.gain_half_mismatches;
  r.doc["rayPairNonzeroDrift"] = c.ray_pair_nonzero_drift;
  r.doc["verdict"] = c.pass() ? "pass" : "fail";
  r.table.header = {"case", "count"};
  for (const auto& [tag, count] : c.counts) {
    r.table.rows.push_back({std::string(spider::drift_case_name(tag)), count});
  }
  r.exit_code = c.pass() ? kExitOk : kExitVerification;
  return r;
}

struct CosinessFlags {
  std::vector<std::int64_t> n;
  std::vector<double> rho;
  std::vector<std::string> family;
  std::optional<std::int64_t> samples;
  std::optional<std::int64_t> automorphisms;
};

Result cmd_spider_cosiness(const Params& p, std::uint64_t seed, const CosinessFlags& f) {
  json cfg = p.config().is_object() ? p.config() : json::object();
  if (!f.n.empty()) cfg["n"] = f.n;
  if (!f.rho.empty()) cfg["rho"] = f.rho;
  if (!f.family.empty()) cfg["family"] = f.family;
  if (f.samples) cfg["samples"] = *f.samples;
  if (f.automorphisms) cfg["automorphisms"] = *f.automorphisms;
  if (!cfg.contains("family")) cfg["family"] = "correlated";
  if (!cfg.contains("samples")) cfg["samples"] = 10000;
  cfg["seed"] = seed;
  spider::ExperimentConfig config = io::experiment_config_from_json(cfg);
  const spider::ExperimentReport rep = spider::noncosiness_experiment(config);
  Result r;
  r.doc["C1"] = rep.c1;
  r.doc["samples"] = config.samples;
  r.doc["verdict"] = rep.pass() ? "pass" : "fail";
  r.table.header = {"n", "rho", "family", "replicate", "gap", "gap_ci", "ED_n", "sumL",
                    "sumJointDelta", "c0_hat", "C1", "gap_direct", "ED_n_ci", "sumL_ci",
                    "sumJointDelta_ci", "ledger", "ledger_ci", "stream"};
  for (const auto& row : rep.rows) {
    const auto& s = row.stats;
    r.table.rows.push_back({row.n, row.rho, std::string(spider::family_name(row.family)),
                            row.replicate, s.gap.mean, s.gap.ci_half_width(), s.distance.mean,
                            s.sum_l.mean, s.sum_joint_delta.mean, row.c0_hat, row.c1,
                            s.gap_direct.mean, s.distance.ci_half_width(),
                            s.sum_l.ci_half_width(), s.sum_joint_delta.ci_half_width(),
                            s.ledger.mean, s.ledger.ci_half_width(), row.stream_key});
  }
  r.exit_code = rep.pass() ? kExitOk : kExitVerification;
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"noise_lab: Fourier-Walsh, coupling and spider-walk experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--config", common.config_path, "JSON config file");
  app.add_option("--seed", common.seed, "64-bit run seed");
  app.add_option("--out", common.out_path, "output file (default stdout)");
  app.add_option("--format", common.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  FunctionFlags spectrum_ff, noise_ff;
  std::vector<int> m_list;
  auto* spectrum = app.add_subcommand("spectrum", "level weights and spectral tails");
  spectrum_ff.attach(spectrum);
  spectrum->add_option("--m", m_list, "tail cut points");

  std::optional<double> noise_rho, noise_eps;
  auto* noise = app.add_subcommand("noise", "apply the noise operator");
  noise_ff.attach(noise);
  noise->add_option("--rho", noise_rho, "correlation");
  noise->add_option("--epsilon", noise_eps, "flip probability");

  std::optional<double> grid_step, tolerance;
  auto* hyper = app.add_subcommand("hyper-verify", "scan the four-point inequality");
  hyper->add_option("--grid-step", grid_step, "grid spacing, at most 1/64");
  hyper->add_option("--tolerance", tolerance, "allowed excess over 4");

  auto* coupling = app.add_subcommand("coupling-check", "rho_max and immersion check");

  auto* spider_cmd = app.add_subcommand("spider", "spider walk experiments");
  spider_cmd->require_subcommand(1);
  spider_cmd->fallthrough();
  std::optional<std::int64_t> exact_n, walk_n, radius;
  std::optional<double> walk_rho;
  std::optional<std::string> walk_family;
  CosinessFlags cos;
  auto* exact = spider_cmd->add_subcommand("exact", "exact law of Z_n");
  exact->add_option("--n", exact_n, "steps");
  auto* walk = spider_cmd->add_subcommand("walk", "dump one coupled trajectory");
  walk->add_option("--n", walk_n, "steps");
  walk->add_option("--rho", walk_rho, "correlation");
  walk->add_option("--family", walk_family, "coupling family");
  auto* census = spider_cmd->add_subcommand("drift-census", "drift monotonicity census");
  census->add_option("--radius", radius, "neighborhood radius");
  auto* cosiness = spider_cmd->add_subcommand("cosiness", "non-cosiness experiment");
  cosiness->add_option("--n", cos.n, "walk lengths");
  cosiness->add_option("--rho", cos.rho, "correlations");
  cosiness->add_option("--family", cos.family, "coupling families");
  cosiness->add_option("--samples", cos.samples, "Monte Carlo samples");
  cosiness->add_option("--automorphisms", cos.automorphisms, "random tree twists");
  for (auto* sub : {exact, walk, census, cosiness}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    json config;
    if (!common.config_path.empty()) config = io::read_json_file(common.config_path);
    const Params params(config);
    const std::uint64_t seed = params.get(common.seed, "seed", std::uint64_t{1});
    Result result;
    std::string command;
    if (*spectrum) {
      command = "spectrum";
      result = cmd_spectrum(params, spectrum_ff, m_list);
    } else if (*noise) {
      command = "noise";
      result = cmd_noise(params, noise_ff, noise_rho, noise_eps);
    } else if (*hyper) {
      command = "hyper-verify";
      result = cmd_hyper(params, grid_step, tolerance);
    } else if (*coupling) {
      command = "coupling-check";
      result = cmd_coupling_check(params);
    } else if (*exact) {
      command = "spider exact";
      result = cmd_spider_exact(params, exact_n);
    } else if (*walk) {
      command = "spider walk";
      result = cmd_spider_walk(params, seed, walk_n, walk_rho, walk_family);
    } else if (*census) {
      command = "spider drift-census";
      result = cmd_spider_census(params, radius);
    } else {
      command = "spider cosiness";
      result = cmd_spider_cosiness(params, seed, cos);
    }
    std::ostringstream buffer;
    emit(result, command, seed, common.format, buffer);
    if (common.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(common.out_path, std::ios::binary);
      if (!file) throw InvalidInput("cannot write " + common.out_path);
      file << buffer.str();
    }
    if (result.exit_code != kExitOk) err << command << ": verification failed\n";
    return result.exit_code;
  } catch (const InvalidInput& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
  } catch (const UnsupportedRepresentation& e) {
    err << "unsupported: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
  }
  return kExitConfig;
}

}  // namespace noise_lab::cli
