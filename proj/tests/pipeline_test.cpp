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

#include "bbmap/pipeline.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "bbmap/report.hpp"

namespace bbmap {
namespace {

PipelineConfig clustered_config() {
  PipelineConfig cfg;
  cfg.generator = GeneratorSpec::parse("clustered:n=33,groups=3,intra=4,inter=1");
  cfg.policies = {MappingPolicy::random_identity,
                  MappingPolicy::hypergraph_priority};
  cfg.num_seeds = 10;
  return cfg;
}

TEST(PipelineConfig, ValidationRejectsBrokenConfigs) {
  PipelineConfig none;
  none.policies = {MappingPolicy::random_identity};
  EXPECT_THROW(none.validate(), std::invalid_argument);
  PipelineConfig both = clustered_config();
  both.circuit = PbcCircuit{};
  EXPECT_THROW(both.validate(), std::invalid_argument);
  PipelineConfig no_policy = clustered_config();
  no_policy.policies.clear();
  EXPECT_THROW(no_policy.validate(), std::invalid_argument);
  PipelineConfig no_seeds = clustered_config();
  no_seeds.num_seeds = 0;
  EXPECT_THROW(no_seeds.validate(), std::invalid_argument);
  PipelineConfig no_cap = clustered_config();
  no_cap.capacity = 0;
  EXPECT_THROW(no_cap.validate(), std::invalid_argument);
}

TEST(RunPipeline, RowLayoutIsPolicyMajorSeedMinor) {
  PipelineConfig cfg = clustered_config();
  cfg.num_seeds = 3;
  PipelineResult r = run_pipeline(cfg);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.rows[0].policy, "random+identity");
  EXPECT_EQ(r.rows[0].seed, 0u);
  EXPECT_EQ(r.rows[2].seed, 2u);
  EXPECT_EQ(r.rows[3].policy, "hypergraph+priority");
  // 33 qubits at capacity 11 -> 3 modules on an auto line.
  EXPECT_EQ(r.rows[0].topology, "line:3:factories=0");
}

TEST(RunPipeline, HypergraphPriorityBeatsRandomOnPlantedStructure) {
  PipelineResult r = run_pipeline(clustered_config());
  ASSERT_EQ(r.summary.size(), 2u);
  const PolicySummary& random = r.summary[0];
  const PolicySummary& hyper = r.summary[1];
  EXPECT_EQ(random.policy, "random+identity");
  EXPECT_EQ(hyper.policy, "hypergraph+priority");
  EXPECT_LT(hyper.mean_c_routing, random.mean_c_routing);
  EXPECT_GT(hyper.improvement_p_non_fixed, 0.0);
  // The baseline's improvement against itself is zero.
  EXPECT_EQ(random.improvement_p_non_fixed, 0.0);
}

TEST(RunPipeline, WideAllToAllLeavesNoRoomBetweenPolicies) {
  PipelineConfig cfg;
  cfg.generator = GeneratorSpec::parse("alltoall:n=22,mode=wide");
  cfg.policies = {MappingPolicy::random_identity,
                  MappingPolicy::hypergraph_priority,
                  MappingPolicy::freqmax_greedy, MappingPolicy::chain_greedy};
  cfg.num_seeds = 5;
  PipelineResult r = run_pipeline(cfg);
  double base = r.summary[0].mean_c_routing;
  for (const PolicySummary& s : r.summary) {
    EXPECT_NEAR(s.mean_c_routing, base, 0.01 * base);
  }
}

TEST(RunPipeline, ByteIdenticalAcrossRuns) {
  PipelineConfig cfg = clustered_config();
  cfg.num_seeds = 4;
  std::string a = report_json(run_pipeline(cfg).rows).dump(2);
  std::string b = report_json(run_pipeline(cfg).rows).dump(2);
  EXPECT_EQ(a, b);
}

TEST(RunPipeline, AllPoliciesProduceValidRows) {
  PipelineConfig cfg;
  cfg.generator = GeneratorSpec::parse("clustered:n=12,groups=2,intra=3,inter=1");
  cfg.capacity = 6;
  cfg.policies = {
      MappingPolicy::hypergraph_priority, MappingPolicy::hypergraph_greedy,
      MappingPolicy::freqmax_greedy,      MappingPolicy::random_identity,
      MappingPolicy::chain_greedy,        MappingPolicy::clique_greedy,
      MappingPolicy::bruteforce};
  cfg.num_seeds = 3;
  PipelineResult r = run_pipeline(cfg);
  ASSERT_EQ(r.rows.size(), 21u);
  for (const ReportRow& row : r.rows) {
    EXPECT_GT(row.error.p_total, 0.0);
    EXPECT_LT(row.error.p_total, 1.0);
    EXPECT_GT(row.tally.c_routing, 0);
    EXPECT_GT(row.tally.b, 0);
    EXPECT_GT(row.error.timesteps, 0);
    EXPECT_LE(row.error.p_non_fixed, row.error.p_total);
  }
  // The exhaustive placement is never beaten by the priority heuristic on
  // the same clustering seed.
  for (uint32_t seed = 0; seed < 3; ++seed) {
    EXPECT_LE(r.rows[18 + seed].tally.c_routing,
              r.rows[0 + seed].tally.c_routing);
  }
}

TEST(RunPipeline, FixedCircuitInputIsReusedAcrossSeeds) {
  PipelineConfig cfg;
  cfg.circuit = gen_clustered(12, 2, 3, 1, 99);
  cfg.capacity = 6;
  cfg.policies = {MappingPolicy::freqmax_greedy};
  cfg.num_seeds = 3;
  PipelineResult r = run_pipeline(cfg);
  // Deterministic policy + fixed circuit: identical rows apart from seed.
  EXPECT_EQ(r.rows[0].tally.c_routing, r.rows[1].tally.c_routing);
  EXPECT_EQ(r.rows[1].tally.c_routing, r.rows[2].tally.c_routing);
  EXPECT_EQ(r.summary[0].std_c_routing, 0.0);
}

TEST(RunPipeline, RzModeAddsFixedSynthesisCost) {
  PipelineConfig cfg;
  PbcCircuit c;
  c.n_qubits = 2;
  c.rotations = {PauliRotation(PauliString::parse("XZ"),
                               RotationAngle::rz(0.3), 1)};
  cfg.circuit = c;
  cfg.capacity = 1;
  cfg.policies = {MappingPolicy::freqmax_greedy};
  cfg.num_seeds = 1;
  cfg.mode = RotationMode::rz;
  cfg.rz_t_count = 40;
  PipelineResult r = run_pipeline(cfg);
  EXPECT_EQ(r.rows[0].tally.c_synth, 40);
  EXPECT_EQ(r.rows[0].tally.t_inject, 41);
  EXPECT_GT(r.rows[0].error.p_fixed, 0.0);
}

TEST(RunPipeline, InfeasibleTopologyIsAConfigError) {
  PipelineConfig cfg = clustered_config();
  cfg.topology = "line:2";  // 33 qubits need 3 modules
  EXPECT_THROW(run_pipeline(cfg), std::invalid_argument);
}

TEST(RunSensitivity, DegenerateCapacitySweepEqualsPipeline) {
  PipelineConfig cfg = clustered_config();
  cfg.num_seeds = 3;
  std::vector<SweepPoint> sweep =
      run_sensitivity(cfg, SweepKind::capacity, {11});
  ASSERT_EQ(sweep.size(), 1u);
  EXPECT_EQ(report_json(sweep[0].result.rows).dump(),
            report_json(run_pipeline(cfg).rows).dump());
}

TEST(RunSensitivity, SmallerModulesRaiseRoutingCost) {
  PipelineConfig cfg;
  cfg.circuit = gen_clustered(33, 3, 4, 1, 5);
  cfg.policies = {MappingPolicy::random_identity};
  cfg.num_seeds = 10;
  std::vector<SweepPoint> sweep =
      run_sensitivity(cfg, SweepKind::capacity, {11, 6});
  double at11 = sweep[0].result.summary[0].mean_c_routing;
  double at6 = sweep[1].result.summary[0].mean_c_routing;
  EXPECT_GT(at6, at11);
}

TEST(RunSensitivity, FullFactoryDensityNeverCostsMore) {
  PipelineConfig cfg;
  cfg.circuit = gen_clustered(33, 3, 4, 1, 5);
  cfg.policies = {MappingPolicy::random_identity};
  cfg.num_seeds = 5;
  PipelineResult base = run_pipeline(cfg);
  std::vector<SweepPoint> sweep =
      run_sensitivity(cfg, SweepKind::factory_density, {1.0});
  for (size_t i = 0; i < base.rows.size(); ++i) {
    EXPECT_LE(sweep[0].result.rows[i].tally.c_routing,
              base.rows[i].tally.c_routing);
  }
}

TEST(RunSensitivity, GridShapeSweepChangesTopology) {
  PipelineConfig cfg = clustered_config();
  cfg.num_seeds = 2;
  std::vector<SweepPoint> sweep =
      run_sensitivity(cfg, SweepKind::grid_shape, {2});
  EXPECT_EQ(sweep[0].result.rows[0].topology.substr(0, 8), "grid:2x2");
}

TEST(RunSensitivity, ErrorScaleLeavesRoutingAloneAndRaisesTotal) {
  PipelineConfig cfg = clustered_config();
  cfg.num_seeds = 3;
  std::vector<SweepPoint> sweep =
      run_sensitivity(cfg, SweepKind::error_scale, {1.0, 10.0});
  const PipelineResult& at1 = sweep[0].result;
  const PipelineResult& at10 = sweep[1].result;
  for (size_t i = 0; i < at1.rows.size(); ++i) {
    EXPECT_EQ(at10.rows[i].tally.c_routing, at1.rows[i].tally.c_routing);
    EXPECT_GT(at10.rows[i].error.p_total, at1.rows[i].error.p_total);
  }
}

TEST(RunSensitivity, RejectsBadSweepValues) {
  PipelineConfig cfg = clustered_config();
  EXPECT_THROW(run_sensitivity(cfg, SweepKind::capacity, {}),
               std::invalid_argument);
  EXPECT_THROW(run_sensitivity(cfg, SweepKind::capacity, {2.5}),
               std::invalid_argument);
  EXPECT_THROW(run_sensitivity(cfg, SweepKind::factory_density, {0.0}),
               std::invalid_argument);
  EXPECT_THROW(run_sensitivity(cfg, SweepKind::factory_density, {1.5}),
               std::invalid_argument);
  EXPECT_THROW(run_sensitivity(cfg, SweepKind::error_scale, {-1.0}),
               std::invalid_argument);
  EXPECT_THROW(run_sensitivity(cfg, SweepKind::error_scale, {1e9}),
               std::invalid_argument);  // scaled probability reaches 1
}

TEST(SweepKind, ParseRoundTrip) {
  for (SweepKind k : {SweepKind::capacity, SweepKind::factory_density,
                      SweepKind::grid_shape, SweepKind::error_scale})
    EXPECT_EQ(parse_sweep_kind(sweep_kind_name(k)), k);
  EXPECT_THROW(parse_sweep_kind("voltage"), std::invalid_argument);
}

}  // namespace
}  // namespace bbmap
