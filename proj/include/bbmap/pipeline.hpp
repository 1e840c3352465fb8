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
// End-to-end pipeline: circuit source -> clustering -> module placement ->
// routing -> instruction tally -> failure report, across policies and seeds,
// plus the sensitivity sweeps (capacity, factory density, grid shape, error
// scale).

#ifndef BBMAP_PIPELINE_HPP
#define BBMAP_PIPELINE_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbmap/benchgen.hpp"
#include "bbmap/cost.hpp"
#include "bbmap/hypergraph.hpp"
#include "bbmap/mapping.hpp"
#include "bbmap/partition.hpp"
#include "bbmap/report.hpp"
#include "bbmap/topology.hpp"

namespace bbmap {

struct PipelineConfig {
  // Exactly one circuit source: a fixed rotation list, or a generator that
  // draws an independent circuit per seed.
  std::optional<PbcCircuit> circuit;
  std::optional<GeneratorSpec> generator;

  std::string topology = "line:auto";
  std::vector<MappingPolicy> policies;
  MappingPolicy baseline = MappingPolicy::random_identity;
  uint32_t num_seeds = 10;  // seeds 0..num_seeds-1
  uint32_t capacity = 11;   // qubits per module
  double partition_epsilon = 0.06;
  RotationMode mode = RotationMode::t;
  uint32_t rz_t_count = 40;
  bool count_idle = false;
  SynthesisModel synth = SynthesisModel::stochastic(0);
  CostTable cost = CostTable::physical_1e4();

  void validate() const {
    int sources = (circuit.has_value() ? 1 : 0) + (generator.has_value() ? 1 : 0);
    if (sources != 1)
      throw std::invalid_argument(
          "config needs exactly one circuit source (input or generator)");
    if (policies.empty())
      throw std::invalid_argument("config needs at least one policy");
    if (num_seeds == 0) throw std::invalid_argument("config needs seeds >= 1");
    if (capacity == 0) throw std::invalid_argument("capacity must be >= 1");
    cost.validate();
  }
};

// Per-policy aggregate over seeds. Improvements are relative to the baseline
// policy's mean: (baseline - policy) / baseline, positive = better.
struct PolicySummary {
  std::string policy;
  double mean_p_total = 0, std_p_total = 0;
  double mean_p_non_fixed = 0, std_p_non_fixed = 0;
  double mean_c_routing = 0, std_c_routing = 0;
  double mean_b = 0;
  double improvement_p_total = 0;
  double improvement_p_non_fixed = 0;
  double improvement_c_routing = 0;
};

struct PipelineResult {
  std::vector<ReportRow> rows;  // policy-major, seed-minor
  std::vector<PolicySummary> summary;
};

namespace detail {

struct Mapped {
  Clustering clustering;
  Assignment assignment;
  bool priority_ties = false;
};

inline Mapped map_circuit(const PbcCircuit& circuit, MappingPolicy policy,
                          uint32_t capacity, double epsilon,
                          const Topology& topo, uint64_t seed) {
  uint32_t n = circuit.n_qubits;
  uint32_t k = (n + capacity - 1) / capacity;
  Mapped out;
  auto hypergraph_clustering = [&] {
    PartitionConfig cfg;
    cfg.k = k;
    cfg.capacity = capacity;
    cfg.epsilon = epsilon;
    cfg.seed = seed;
    return partition(build_interaction_hypergraph(circuit), cfg);
  };
  switch (policy) {
    case MappingPolicy::hypergraph_priority: {
      out.clustering = hypergraph_clustering();
      std::vector<ModuleSet> sets = module_supports(circuit, out.clustering);
      PriorityResult pr = assign_priorities(sets, k);
      out.priority_ties = pr.had_ties;
      out.assignment = priorities_to_positions(pr.priority, topo);
      break;
    }
    case MappingPolicy::hypergraph_greedy: {
      out.clustering = hypergraph_clustering();
      std::vector<ModuleSet> sets = module_supports(circuit, out.clustering);
      out.assignment = assign_greedy(module_frequencies(sets, k), topo);
      break;
    }
    case MappingPolicy::freqmax_greedy: {
      out.clustering = cluster_frequency_max(circuit, k, capacity);
      std::vector<ModuleSet> sets = module_supports(circuit, out.clustering);
      out.assignment = assign_greedy(module_frequencies(sets, k), topo);
      break;
    }
    case MappingPolicy::random_identity: {
      out.clustering = cluster_random(n, k, capacity, seed);
      out.assignment = identity_assignment(k, topo);
      break;
    }
    case MappingPolicy::chain_greedy:
    case MappingPolicy::clique_greedy: {
      ExpansionMode mode = policy == MappingPolicy::chain_greedy
                               ? ExpansionMode::chain
                               : ExpansionMode::clique;
      out.clustering = cluster_graph_expansion(circuit, k, capacity, mode, seed);
      std::vector<ModuleSet> sets = module_supports(circuit, out.clustering);
      out.assignment = assign_greedy(module_frequencies(sets, k), topo);
      break;
    }
    case MappingPolicy::bruteforce: {
      out.clustering = hypergraph_clustering();
      std::vector<ModuleSet> sets = module_supports(circuit, out.clustering);
      out.assignment = assign_bruteforce(sets, k, topo);
      break;
    }
  }
  return out;
}

inline void mean_std(const std::vector<double>& xs, double& mean,
                     double& stddev) {
  mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0;
  for (double x : xs) var += (x - mean) * (x - mean);
  stddev = std::sqrt(var / static_cast<double>(xs.size()));
}

inline double relative_improvement(double baseline, double value) {
  if (baseline == 0.0) return 0.0;
  return (baseline - value) / baseline;
}

}  // namespace detail

inline PipelineResult run_pipeline(const PipelineConfig& config) {
  config.validate();
  uint32_t n = config.circuit ? config.circuit->n_qubits : config.generator->n;
  if (n == 0) throw std::invalid_argument("circuit has no qubits");
  uint32_t k = (n + config.capacity - 1) / config.capacity;
  Topology topo = parse_topology(config.topology, k);

  TallyOptions opt;
  opt.mode = config.mode;
  opt.rz_t_count = config.rz_t_count;
  opt.count_idle = config.count_idle;

  PipelineResult result;
  for (MappingPolicy policy : config.policies) {
    for (uint32_t seed = 0; seed < config.num_seeds; ++seed) {
      PbcCircuit generated;
      const PbcCircuit* circuit;
      if (config.circuit) {
        circuit = &*config.circuit;
      } else {
        generated = config.generator->generate(seed);
        circuit = &generated;
      }
      detail::Mapped mapped = detail::map_circuit(
          *circuit, policy, config.capacity, config.partition_epsilon, topo,
          seed);
      ReportRow row;
      row.policy = policy_id(policy);
      row.topology = topo.str();
      row.seed = seed;
      row.priority_ties = mapped.priority_ties;
      row.tally = tally(*circuit, mapped.clustering, mapped.assignment, topo,
                        config.synth, opt);
      row.error = program_failure(row.tally, config.cost);
      result.rows.push_back(std::move(row));
    }
  }

  // Aggregate by policy; improvements against the baseline policy if it was
  // run, else against the first policy.
  size_t base_index = 0;
  for (size_t i = 0; i < config.policies.size(); ++i)
    if (config.policies[i] == config.baseline) base_index = i;
  std::vector<PolicySummary> summaries;
  for (size_t i = 0; i < config.policies.size(); ++i) {
    PolicySummary s;
    s.policy = policy_id(config.policies[i]);
    std::vector<double> pt, pnf, cr;
    double b_sum = 0;
    for (uint32_t seed = 0; seed < config.num_seeds; ++seed) {
      const ReportRow& row = result.rows[i * config.num_seeds + seed];
      pt.push_back(row.error.p_total);
      pnf.push_back(row.error.p_non_fixed);
      cr.push_back(static_cast<double>(row.tally.c_routing));
      b_sum += static_cast<double>(row.tally.b);
    }
    detail::mean_std(pt, s.mean_p_total, s.std_p_total);
    detail::mean_std(pnf, s.mean_p_non_fixed, s.std_p_non_fixed);
    detail::mean_std(cr, s.mean_c_routing, s.std_c_routing);
    s.mean_b = b_sum / config.num_seeds;
    summaries.push_back(s);
  }
  const PolicySummary& base = summaries[base_index];
  for (PolicySummary& s : summaries) {
    s.improvement_p_total =
        detail::relative_improvement(base.mean_p_total, s.mean_p_total);
    s.improvement_p_non_fixed = detail::relative_improvement(
        base.mean_p_non_fixed, s.mean_p_non_fixed);
    s.improvement_c_routing = detail::relative_improvement(
        base.mean_c_routing, s.mean_c_routing);
  }
  result.summary = std::move(summaries);
  return result;
}

enum class SweepKind { capacity, factory_density, grid_shape, error_scale };

inline SweepKind parse_sweep_kind(const std::string& s) {
  if (s == "capacity") return SweepKind::capacity;
  if (s == "factory_density") return SweepKind::factory_density;
  if (s == "grid_shape") return SweepKind::grid_shape;
  if (s == "error_scale") return SweepKind::error_scale;
  throw std::invalid_argument("unknown sweep kind '" + s + "'");
}

inline const char* sweep_kind_name(SweepKind k) {
  switch (k) {
    case SweepKind::capacity: return "capacity";
    case SweepKind::factory_density: return "factory_density";
    case SweepKind::grid_shape: return "grid_shape";
    case SweepKind::error_scale: return "error_scale";
  }
  return "?";
}

struct SweepPoint {
  double value = 0;
  PipelineResult result;
};

namespace detail {

// Evenly spread `count` factories over the line's [0, slots] coordinates.
inline std::string line_with_factories(uint32_t slots, uint32_t count) {
  std::string desc = "line:" + std::to_string(slots) + ":factories=";
  for (uint32_t i = 0; i < count; ++i) {
    uint64_t coord = static_cast<uint64_t>(i) * slots / count;
    if (i) desc += ";";
    desc += std::to_string(coord);
  }
  return desc;
}

}  // namespace detail

// One pipeline run per sweep value, varying a single knob:
//   capacity        qubits per module (value = capacity)
//   factory_density fraction of module slots that get a line factory
//   grid_shape      grid of value columns and ceil(M/value) rows
//   error_scale     multiplies every non-C error rate
inline std::vector<SweepPoint> run_sensitivity(
    const PipelineConfig& base, SweepKind kind,
    const std::vector<double>& values) {
  if (values.empty())
    throw std::invalid_argument("sensitivity sweep needs at least one value");
  std::vector<SweepPoint> out;
  for (double value : values) {
    PipelineConfig cfg = base;
    switch (kind) {
      case SweepKind::capacity: {
        if (value < 1 || value != std::floor(value))
          throw std::invalid_argument("capacity sweep values must be integers >= 1");
        cfg.capacity = static_cast<uint32_t>(value);
        break;
      }
      case SweepKind::factory_density: {
        if (!(value > 0.0) || value > 1.0)
          throw std::invalid_argument("factory density must be in (0,1]");
        uint32_t n = cfg.circuit ? cfg.circuit->n_qubits : cfg.generator->n;
        uint32_t slots = (n + cfg.capacity - 1) / cfg.capacity;
        uint32_t count = static_cast<uint32_t>(
            std::ceil(value * static_cast<double>(slots)));
        if (count == 0) count = 1;
        cfg.topology = detail::line_with_factories(slots, count);
        break;
      }
      case SweepKind::grid_shape: {
        if (value < 1 || value != std::floor(value))
          throw std::invalid_argument("grid shape values must be integers >= 1");
        uint32_t cols = static_cast<uint32_t>(value);
        uint32_t n = cfg.circuit ? cfg.circuit->n_qubits : cfg.generator->n;
        uint32_t slots = (n + cfg.capacity - 1) / cfg.capacity;
        uint32_t rows = (slots + cols - 1) / cols;
        cfg.topology =
            "grid:" + std::to_string(cols) + "x" + std::to_string(rows);
        break;
      }
      case SweepKind::error_scale: {
        if (!(value > 0.0))
          throw std::invalid_argument("error scale must be positive");
        cfg.cost.p_b *= value;
        cfg.cost.p_t_base *= value;
        cfg.cost.p_i *= value;
        cfg.cost.p_u *= value;
        cfg.cost.validate();
        break;
      }
    }
    SweepPoint point;
    point.value = value;
    point.result = run_pipeline(cfg);
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace bbmap

#endif  // BBMAP_PIPELINE_HPP
