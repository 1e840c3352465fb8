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

#include "bbmap/benchgen.hpp"

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "bbmap/hypergraph.hpp"
#include "bbmap/parse.hpp"
#include "bbmap/partition.hpp"

namespace bbmap {
namespace {

uint32_t group_of(uint32_t q, uint32_t n, uint32_t groups) {
  return static_cast<uint32_t>(static_cast<uint64_t>(q) * groups / n);
}

TEST(GenClustered, RotationsRespectPlantedGroups) {
  PbcCircuit c = gen_clustered(12, 3, 5, 2, 7);
  EXPECT_NO_THROW(c.validate());
  int bridges = 0;
  for (const PauliRotation& r : c.rotations) {
    std::vector<uint32_t> supp = r.pauli.support();
    ASSERT_FALSE(supp.empty());
    std::set<uint32_t> gs;
    for (uint32_t q : supp) gs.insert(group_of(q, 12, 3));
    if (gs.size() == 1) {
      EXPECT_EQ(r.weight, 5);
      EXPECT_GE(supp.size(), 2u);
      EXPECT_LE(supp.size(), 4u);
    } else {
      ++bridges;
      EXPECT_EQ(gs.size(), 2u);
      EXPECT_EQ(supp.size(), 2u);
      EXPECT_EQ(r.weight, 2);
    }
  }
  EXPECT_EQ(bridges, 2);  // one per adjacent group pair
  // 4 rotations per group qubit.
  EXPECT_EQ(c.rotations.size(), 4u * 12u + 2u);
}

TEST(GenClustered, ZeroInterWeightLeavesZeroCutClustering) {
  PbcCircuit c = gen_clustered(12, 3, 5, 0, 11);
  for (const PauliRotation& r : c.rotations) {
    std::set<uint32_t> gs;
    for (uint32_t q : r.pauli.support()) gs.insert(group_of(q, 12, 3));
    EXPECT_EQ(gs.size(), 1u);
  }
  Hypergraph hg = build_interaction_hypergraph(c);
  PartitionConfig cfg;
  cfg.k = 3;
  cfg.capacity = 4;
  cfg.seed = 1;
  Clustering cl = partition(hg, cfg);
  EXPECT_EQ(connectivity_objective(hg, cl), 0);
}

TEST(GenClustered, PartitionerRecoversTwoPlantedGroups) {
  PbcCircuit c = gen_clustered(12, 2, 6, 1, 3);
  Hypergraph hg = build_interaction_hypergraph(c);
  PartitionConfig cfg;
  cfg.k = 2;
  cfg.capacity = 6;
  cfg.seed = 4;
  Clustering cl = partition(hg, cfg);
  for (uint32_t q = 1; q < 6; ++q) EXPECT_EQ(cl.module_of[q], cl.module_of[0]);
  for (uint32_t q = 7; q < 12; ++q)
    EXPECT_EQ(cl.module_of[q], cl.module_of[6]);
  EXPECT_NE(cl.module_of[0], cl.module_of[6]);
}

TEST(GenClustered, DeterministicPerSeed) {
  EXPECT_EQ(serialize_rotation_list(gen_clustered(20, 4, 3, 1, 9)),
            serialize_rotation_list(gen_clustered(20, 4, 3, 1, 9)));
  EXPECT_NE(serialize_rotation_list(gen_clustered(20, 4, 3, 1, 9)),
            serialize_rotation_list(gen_clustered(20, 4, 3, 1, 10)));
}

TEST(GenClustered, RejectsBadParameters) {
  EXPECT_THROW(gen_clustered(5, 6, 1, 1, 0), std::invalid_argument);
  EXPECT_THROW(gen_clustered(5, 0, 1, 1, 0), std::invalid_argument);
  EXPECT_THROW(gen_clustered(5, 2, 0, 1, 0), std::invalid_argument);
  EXPECT_THROW(gen_clustered(5, 2, 1, -1, 0), std::invalid_argument);
}

TEST(GenAllToAll, WideRotationsSpanEverything) {
  PbcCircuit c = gen_all_to_all(6, AllToAllMode::wide, 5);
  EXPECT_EQ(c.rotations.size(), 6u);
  for (const PauliRotation& r : c.rotations)
    EXPECT_EQ(r.pauli.support_size(), 6u);
}

TEST(GenAllToAll, PairwiseCoversEveryPairOnce) {
  PbcCircuit c = gen_all_to_all(6, AllToAllMode::pairwise, 5);
  EXPECT_EQ(c.rotations.size(), 15u);  // n(n-1)/2
  std::set<std::vector<uint32_t>> pairs;
  for (const PauliRotation& r : c.rotations) {
    std::vector<uint32_t> supp = r.pauli.support();
    EXPECT_EQ(supp.size(), 2u);
    pairs.insert(supp);
  }
  EXPECT_EQ(pairs.size(), 15u);
}

TEST(GenAllToAll, Deterministic) {
  EXPECT_EQ(serialize_rotation_list(gen_all_to_all(8, AllToAllMode::wide, 2)),
            serialize_rotation_list(gen_all_to_all(8, AllToAllMode::wide, 2)));
}

TEST(GenRandomPpr, FixedWidthTwoGivesRandomGraph) {
  PbcCircuit c = gen_random_ppr(10, 80, WidthDistribution::fixed(2), 3);
  EXPECT_EQ(c.rotations.size(), 80u);
  for (const PauliRotation& r : c.rotations)
    EXPECT_EQ(r.pauli.support_size(), 2u);
}

TEST(GenRandomPpr, WidthClipsAtQubitCount) {
  PbcCircuit c = gen_random_ppr(3, 20, WidthDistribution::fixed(7), 3);
  for (const PauliRotation& r : c.rotations)
    EXPECT_EQ(r.pauli.support_size(), 3u);
}

TEST(GenRandomPpr, UniformWidthHistogramPassesChiSquare) {
  PbcCircuit c = gen_random_ppr(30, 400, WidthDistribution::uniform(2, 5), 17);
  std::map<uint32_t, int> hist;
  for (const PauliRotation& r : c.rotations)
    hist[r.pauli.support_size()]++;
  ASSERT_EQ(hist.size(), 4u);
  double chi2 = 0;
  for (uint32_t w = 2; w <= 5; ++w) {
    double d = hist[w] - 100.0;
    chi2 += d * d / 100.0;
  }
  EXPECT_LT(chi2, 16.27);  // 0.999 quantile, 3 dof
}

TEST(GenRandomPpr, GeometricWidthHistogramPassesChiSquare) {
  const double p = 0.4;
  const int depth = 600;
  PbcCircuit c =
      gen_random_ppr(30, depth, WidthDistribution::geometric(p), 23);
  std::map<uint32_t, int> hist;
  for (const PauliRotation& r : c.rotations)
    hist[r.pauli.support_size()]++;
  double chi2 = 0;
  double tail = 1.0;
  int tail_count = depth;
  for (int k = 0; k < 6; ++k) {  // widths 2..7 individually, >=8 pooled
    double prob = p * std::pow(1 - p, k);
    tail -= prob;
    int count = hist.count(2 + k) ? hist[2 + k] : 0;
    tail_count -= count;
    double d = count - depth * prob;
    chi2 += d * d / (depth * prob);
  }
  double d = tail_count - depth * tail;
  chi2 += d * d / (depth * tail);
  EXPECT_LT(chi2, 22.46);  // 0.999 quantile, 6 dof
}

TEST(GenRandomPpr, Deterministic) {
  WidthDistribution w = WidthDistribution::geometric(0.3);
  EXPECT_EQ(serialize_rotation_list(gen_random_ppr(12, 40, w, 6)),
            serialize_rotation_list(gen_random_ppr(12, 40, w, 6)));
}

TEST(WidthDistribution, RejectsBadParameters) {
  EXPECT_THROW(WidthDistribution::fixed(0), std::invalid_argument);
  EXPECT_THROW(WidthDistribution::uniform(3, 2), std::invalid_argument);
  EXPECT_THROW(WidthDistribution::uniform(0, 2), std::invalid_argument);
  EXPECT_THROW(WidthDistribution::geometric(0.0), std::invalid_argument);
  EXPECT_THROW(WidthDistribution::geometric(1.0), std::invalid_argument);
}

TEST(GeneratorSpec, ParsesEveryKind) {
  GeneratorSpec g1 = GeneratorSpec::parse("clustered:n=33,groups=3,intra=4,inter=1");
  EXPECT_EQ(g1.n, 33u);
  EXPECT_EQ(g1.groups, 3u);
  EXPECT_EQ(g1.intra, 4);
  EXPECT_EQ(g1.inter, 1);
  PbcCircuit c1 = g1.generate(0);
  EXPECT_EQ(c1.n_qubits, 33u);

  GeneratorSpec g2 = GeneratorSpec::parse("alltoall:n=8,mode=pairwise");
  EXPECT_EQ(g2.generate(1).rotations.size(), 28u);
  GeneratorSpec g2w = GeneratorSpec::parse("alltoall:n=8");
  EXPECT_EQ(g2w.generate(1).rotations.size(), 8u);  // wide by default

  GeneratorSpec g3 = GeneratorSpec::parse("ppr:n=20,depth=50,width=geometric:0.4");
  EXPECT_EQ(g3.generate(2).rotations.size(), 50u);
  GeneratorSpec g4 = GeneratorSpec::parse("ppr:n=20,depth=50,width=uniform:2-5");
  EXPECT_EQ(g4.widths.lo, 2u);
  EXPECT_EQ(g4.widths.hi, 5u);
  GeneratorSpec g5 = GeneratorSpec::parse("ppr:n=20,depth=50,width=fixed:3");
  EXPECT_EQ(g5.widths.fixed_width, 3u);
}

TEST(GeneratorSpec, RejectsMalformedSpecs) {
  EXPECT_THROW(GeneratorSpec::parse("mystery:n=5"), std::invalid_argument);
  EXPECT_THROW(GeneratorSpec::parse("clustered:groups=3"),
               std::invalid_argument);  // missing n
  EXPECT_THROW(GeneratorSpec::parse("ppr:n=5"), std::invalid_argument);
  EXPECT_THROW(GeneratorSpec::parse("clustered:n=5,bogus=1"),
               std::invalid_argument);
  EXPECT_THROW(GeneratorSpec::parse("clustered:n=x"), std::invalid_argument);
  EXPECT_THROW(GeneratorSpec::parse("ppr:n=5,depth=2,width=uniform:25"),
               std::invalid_argument);
  EXPECT_THROW(GeneratorSpec::parse("ppr:n=5,depth=2,width=banana:1"),
               std::invalid_argument);
  EXPECT_THROW(GeneratorSpec::parse("alltoall:n=5,mode=diagonal"),
               std::invalid_argument);
  EXPECT_THROW(GeneratorSpec::parse("clustered:n"), std::invalid_argument);
}

}  // namespace
}  // namespace bbmap
