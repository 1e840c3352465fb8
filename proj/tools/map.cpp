// Copyright 2026 The bbmap Authors
//
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
//
// `map` command line driver.
//
//   map run    map a circuit onto modules across policies/seeds, emit reports
//   map gen    draw a benchmark circuit and print its rotation-list text
//   map sweep  run a sensitivity sweep over one knob
//
// Exit codes: 0 success, 2 configuration error, 3 input parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbmap/benchgen.hpp"
#include "bbmap/parse.hpp"
#include "bbmap/pipeline.hpp"
#include "bbmap/report.hpp"
#include "bbmap/translate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

// Options shared by `run` and `sweep`.
struct RunOpts {
  std::string input;
  std::string format = "auto";  // rot | gates | auto (by extension)
  std::string gen;
  std::string topology = "line:auto";
  std::string policies = "hypergraph+priority,random+identity";
  std::string baseline = "random+identity";
  uint32_t seeds = 10;
  uint32_t capacity = 11;
  double epsilon = 0.06;
  std::string mode = "t";
  double rz_precision = 0.0;  // 0 = use --rz-t-count directly
  uint32_t rz_tcount = 40;
  std::string synth = "stochastic:0";
  std::string cost_table;
  std::string cost_preset = "1e-4";
  bool count_idle = false;
  std::string out = "-";
  std::string emit = "json";
  std::string config;
};

void add_run_options(CLI::App* cmd, RunOpts& o) {
  cmd->add_option("--input", o.input,
                  "circuit file (rotation list or gate list)");
  cmd->add_option("--format", o.format, "input format [auto]")
      ->check(CLI::IsMember({"auto", "rot", "gates"}));
  cmd->add_option("--gen", o.gen,
                  "generator spec, e.g. clustered:n=33,groups=3,intra=4,inter=1"
                  " (one fresh circuit per seed)");
  cmd->add_option("--topology", o.topology,
                  "module topology descriptor [line:auto]");
  cmd->add_option("--policies", o.policies,
                  "comma-separated mapping policies "
                  "[hypergraph+priority,random+identity]");
  cmd->add_option("--baseline", o.baseline,
                  "policy improvements are measured against "
                  "[random+identity]");
  cmd->add_option("--seeds", o.seeds, "number of seeds, 0..n-1 [10]")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--capacity", o.capacity, "logical qubits per module [11]")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", o.epsilon,
                  "partitioner balance slack [0.06]");
  cmd->add_option("--mode", o.mode, "rotation execution mode [t]")
      ->check(CLI::IsMember({"t", "rz"}));
  cmd->add_option("--rz-precision", o.rz_precision,
                  "rz synthesis accuracy; sets the per-rotation T count");
  cmd->add_option("--rz-t-count", o.rz_tcount,
                  "T gates per rz rotation when --rz-precision is unset [40]")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--synth", o.synth,
                  "intra-module synthesis cost model: stochastic[:seed] | "
                  "constant:<n> | table:<file> [stochastic:0]");
  cmd->add_option("--cost-table", o.cost_table,
                  "error/timestep table file (overrides --cost-preset)");
  cmd->add_option("--cost-preset", o.cost_preset,
                  "built-in physical error rate preset [1e-4]")
      ->check(CLI::IsMember({"1e-4", "1e-3"}));
  cmd->add_flag("--count-idle", o.count_idle,
                "charge idle timesteps to modules outside a rotation");
  cmd->add_option("--out", o.out, "output path, '-' for stdout [-]");
  cmd->add_option("--emit", o.emit, "output format [json]")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--config", o.config,
                  "key=value file with defaults; explicit flags win");
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  std::string t = s.substr(a, b - a + 1);
  if (t.size() >= 2 && (t.front() == '"' || t.front() == '\'') &&
      t.back() == t.front())
    t = t.substr(1, t.size() - 2);
  return t;
}

uint32_t config_u32(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    unsigned long v = std::stoul(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return static_cast<uint32_t>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "' needs an integer, got '" + value + "'");
  }
}

double config_real(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "' needs a number, got '" + value + "'");
  }
}

// Loads `key = value` lines into options the user did not set explicitly on
// the command line. Keys mirror the long flag names without the leading
// dashes. `sweep`/`values` are accepted only when the pointers are non-null
// (the sweep subcommand).
void apply_config(CLI::App* cmd, RunOpts& o, std::string* sweep_kind,
                  std::string* sweep_values) {
  if (o.config.empty()) return;
  std::istringstream in(read_file(o.config));
  std::string line;
  int lineno = 0;
  auto given = [&](const char* flag) { return cmd->count(flag) > 0; };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (strip(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key == "input") {
      if (!given("--input")) o.input = value;
    } else if (key == "format") {
      if (!given("--format")) o.format = value;
    } else if (key == "gen") {
      if (!given("--gen")) o.gen = value;
    } else if (key == "topology") {
      if (!given("--topology")) o.topology = value;
    } else if (key == "policies") {
      if (!given("--policies")) o.policies = value;
    } else if (key == "baseline") {
      if (!given("--baseline")) o.baseline = value;
    } else if (key == "seeds") {
      if (!given("--seeds")) o.seeds = config_u32(key, value);
    } else if (key == "capacity") {
      if (!given("--capacity")) o.capacity = config_u32(key, value);
    } else if (key == "epsilon") {
      if (!given("--epsilon")) o.epsilon = config_real(key, value);
    } else if (key == "mode") {
      if (!given("--mode")) o.mode = value;
    } else if (key == "rz-precision") {
      if (!given("--rz-precision")) o.rz_precision = config_real(key, value);
    } else if (key == "rz-t-count") {
      if (!given("--rz-t-count")) o.rz_tcount = config_u32(key, value);
    } else if (key == "synth") {
      if (!given("--synth")) o.synth = value;
    } else if (key == "cost-table") {
      if (!given("--cost-table")) o.cost_table = value;
    } else if (key == "cost-preset") {
      if (!given("--cost-preset")) o.cost_preset = value;
    } else if (key == "count-idle") {
      if (!given("--count-idle")) o.count_idle = value == "true" || value == "1";
    } else if (key == "out") {
      if (!given("--out")) o.out = value;
    } else if (key == "emit") {
      if (!given("--emit")) o.emit = value;
    } else if (key == "sweep" && sweep_kind) {
      if (!given("--sweep")) *sweep_kind = value;
    } else if (key == "values" && sweep_values) {
      if (!given("--values")) *sweep_values = value;
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
}

bbmap::PbcCircuit load_circuit(const std::string& path,
                               const std::string& format) {
  std::string text = read_file(path);
  bool gates = format == "gates" ||
               (format == "auto" && path.size() >= 6 &&
                path.compare(path.size() - 6, 6, ".gates") == 0);
  if (gates) return bbmap::to_pbc(bbmap::parse_gate_circuit(text));
  return bbmap::parse_rotation_list(text);
}

bbmap::SynthesisModel parse_synth(const std::string& s) {
  auto colon = s.find(':');
  std::string kind = s.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (kind == "stochastic")
    return bbmap::SynthesisModel::stochastic(
        arg.empty() ? 0 : std::stoull(arg));
  if (kind == "constant") {
    if (arg.empty()) throw std::invalid_argument("constant synth needs :<n>");
    return bbmap::SynthesisModel::constant(
        static_cast<uint32_t>(std::stoul(arg)));
  }
  if (kind == "table") {
    if (arg.empty())
      throw std::invalid_argument("table synth needs :<file>");
    std::istringstream in(read_file(arg));
    std::map<std::string, uint32_t> entries;
    uint32_t fallback = 19;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string fragment;
      uint32_t count;
      if (!(ls >> fragment)) continue;
      if (!(ls >> count))
        throw std::invalid_argument("synth table line needs '<fragment> <n>'");
      if (fragment == "default")
        fallback = count;
      else
        entries[fragment] = count;
    }
    return bbmap::SynthesisModel::table(std::move(entries), fallback);
  }
  throw std::invalid_argument("unknown synth model '" + s + "'");
}

std::vector<bbmap::MappingPolicy> parse_policy_list(const std::string& s) {
  std::vector<bbmap::MappingPolicy> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(bbmap::parse_policy(item));
  if (out.empty()) throw std::invalid_argument("empty policy list");
  return out;
}

void check_choice(const std::string& name, const std::string& value,
                  std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (value == a) return;
  throw std::invalid_argument("invalid " + name + " '" + value + "'");
}

bbmap::PipelineConfig make_config(const RunOpts& o) {
  check_choice("--format", o.format, {"auto", "rot", "gates"});
  check_choice("--mode", o.mode, {"t", "rz"});
  check_choice("--emit", o.emit, {"json", "csv"});
  check_choice("--cost-preset", o.cost_preset, {"1e-4", "1e-3"});
  bbmap::PipelineConfig cfg;
  if (!o.input.empty() && !o.gen.empty())
    throw std::invalid_argument("give --input or --gen, not both");
  if (o.input.empty() && o.gen.empty())
    throw std::invalid_argument("need a circuit: --input <file> or --gen "
                                "<spec>");
  if (!o.input.empty())
    cfg.circuit = load_circuit(o.input, o.format);
  else
    cfg.generator = bbmap::GeneratorSpec::parse(o.gen);
  cfg.topology = o.topology;
  cfg.policies = parse_policy_list(o.policies);
  cfg.baseline = bbmap::parse_policy(o.baseline);
  cfg.num_seeds = o.seeds;
  cfg.capacity = o.capacity;
  cfg.partition_epsilon = o.epsilon;
  cfg.mode = o.mode == "rz" ? bbmap::RotationMode::rz : bbmap::RotationMode::t;
  cfg.rz_t_count = o.rz_precision > 0
                       ? static_cast<uint32_t>(bbmap::rz_t_count(o.rz_precision))
                       : o.rz_tcount;
  cfg.count_idle = o.count_idle;
  cfg.synth = parse_synth(o.synth);
  cfg.cost = o.cost_preset == "1e-3" ? bbmap::CostTable::physical_1e3()
                                     : bbmap::CostTable::physical_1e4();
  if (!o.cost_table.empty())
    cfg.cost = bbmap::parse_cost_table(read_file(o.cost_table));
  return cfg;
}

void print_summary(const std::vector<bbmap::PolicySummary>& summary) {
  std::fprintf(stderr, "%-22s %13s %13s %14s %10s\n", "policy", "mean_P_total",
               "mean_P_nonfix", "mean_C_routing", "improv_nf");
  for (const bbmap::PolicySummary& s : summary)
    std::fprintf(stderr, "%-22s %13.4e %13.4e %14.2f %9.1f%%\n",
                 s.policy.c_str(), s.mean_p_total, s.mean_p_non_fixed,
                 s.mean_c_routing, 100.0 * s.improvement_p_non_fixed);
}

int cmd_run(const RunOpts& o) {
  bbmap::PipelineResult result = bbmap::run_pipeline(make_config(o));
  if (o.emit == "csv")
    write_output(o.out, bbmap::report_csv(result.rows));
  else
    write_output(o.out, bbmap::report_json(result.rows).dump(2) + "\n");
  print_summary(result.summary);
  return kExitOk;
}

int cmd_gen(const std::string& spec, uint32_t seed, const std::string& out) {
  bbmap::GeneratorSpec g = bbmap::GeneratorSpec::parse(spec);
  write_output(out, bbmap::serialize_rotation_list(g.generate(seed)));
  return kExitOk;
}

int cmd_sweep(const RunOpts& o, const std::string& kind_name,
              const std::string& values_csv) {
  if (kind_name.empty() || values_csv.empty())
    throw std::invalid_argument("sweep needs --sweep <knob> and --values");
  bbmap::SweepKind kind = bbmap::parse_sweep_kind(kind_name);
  std::vector<double> values;
  std::istringstream in(values_csv);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) values.push_back(std::stod(item));
  std::vector<bbmap::SweepPoint> points =
      bbmap::run_sensitivity(make_config(o), kind, values);
  if (o.emit == "csv") {
    std::string text = "sweep_kind,sweep_value," + bbmap::report_csv_header();
    text += "\n";
    for (const bbmap::SweepPoint& p : points)
      for (const bbmap::ReportRow& row : p.result.rows)
        text += std::string(kind_name) + "," +
                bbmap::detail::number_str(p.value) + "," +
                bbmap::report_csv_row(row) + "\n";
    write_output(o.out, text);
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const bbmap::SweepPoint& p : points) {
      nlohmann::ordered_json obj;
      obj["sweep"] = kind_name;
      obj["value"] = p.value;
      obj["rows"] = bbmap::report_json(p.result.rows);
      arr.push_back(std::move(obj));
    }
    write_output(o.out, arr.dump(2) + "\n");
  }
  for (const bbmap::SweepPoint& p : points) {
    std::fprintf(stderr, "-- %s = %g\n", kind_name.c_str(), p.value);
    print_summary(p.result.summary);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"map logical circuits onto code modules and report failure "
               "rates"};
  app.require_subcommand(1);

  RunOpts run_opts;
  CLI::App* run = app.add_subcommand("run", "map a circuit, emit reports");
  add_run_options(run, run_opts);

  std::string gen_spec, gen_out = "-";
  uint32_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen", "emit a generated rotation list");
  gen->add_option("--gen", gen_spec, "generator spec")->required();
  gen->add_option("--seed", gen_seed, "generator seed [0]");
  gen->add_option("--out", gen_out, "output path, '-' for stdout [-]");

  RunOpts sweep_opts;
  std::string sweep_kind, sweep_values;
  CLI::App* sweep = app.add_subcommand("sweep", "run a sensitivity sweep");
  add_run_options(sweep, sweep_opts);
  sweep->add_option("--sweep", sweep_kind,
                    "knob: capacity | factory_density | grid_shape | "
                    "error_scale");
  sweep->add_option("--values", sweep_values, "comma-separated sweep values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      apply_config(run, run_opts, nullptr, nullptr);
      return cmd_run(run_opts);
    }
    if (gen->parsed()) return cmd_gen(gen_spec, gen_seed, gen_out);
    apply_config(sweep, sweep_opts, &sweep_kind, &sweep_values);
    return cmd_sweep(sweep_opts, sweep_kind, sweep_values);
  } catch (const bbmap::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
}
