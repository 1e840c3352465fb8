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

#include "bbmap/partition.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "bbmap/rng.hpp"

namespace bbmap {
namespace {

// Exhaustive minimum over every capacity-respecting surjective assignment.
// Only usable for tiny instances; the labels are symmetric so this scans a
// k-fold redundant space, which is fine as an oracle.
int64_t enumeration_min(const Hypergraph& hg, uint32_t k, uint32_t cap) {
    uint32_t n = hg.n_vertices;
    std::vector<uint32_t> digits(n, 0);
    int64_t best = std::numeric_limits<int64_t>::max();
    for (;;) {
        std::vector<uint32_t> sizes(k, 0);
        for (uint32_t d : digits) ++sizes[d];
        bool ok = true;
        for (uint32_t s : sizes)
            if (s == 0 || s > cap) { ok = false; break; }
        if (ok) {
            Clustering c{digits, k, cap};
            best = std::min(best, connectivity_objective(hg, c));
        }
        uint32_t i = 0;
        while (i < n && ++digits[i] == k) digits[i++] = 0;
        if (i == n) break;
    }
    return best;
}

// Interaction pattern with a known optimum: the pair graph
// {0-3, 0-5, 1-4, 2-4, 0-1} is connected, so two non-empty modules must cut
// at least one edge, and {0,3,5} vs {1,2,4} cuts exactly one.
Hypergraph six_qubit_fixture() {
    Hypergraph hg;
    hg.n_vertices = 6;
    hg.edges = {
        {{0, 3}, 1}, {{0, 5}, 1}, {{1, 4}, 1}, {{2, 4}, 1}, {{0, 1}, 1},
    };
    return hg;
}

TEST(Partition, SixQubitFixtureReachesOptimum) {
    Hypergraph hg = six_qubit_fixture();
    PartitionStats stats;
    Clustering c = partition(hg, {.k = 2, .capacity = 3, .seed = 1}, &stats);
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(connectivity_objective(hg, c), 1);
    EXPECT_EQ(stats.objective, 1);
    EXPECT_GE(stats.initial_objective, stats.objective);
    EXPECT_GE(stats.rounds, 1u);
}

TEST(Partition, PlantedDisjointCliquesAreSeparated) {
    // Two groups with no cross edges: a zero-cut partition exists.
    Hypergraph hg;
    hg.n_vertices = 6;
    hg.edges = {
        {{0, 1}, 3}, {{1, 2}, 2}, {{0, 2}, 1}, {{0, 1, 2}, 4},
        {{3, 4}, 3}, {{4, 5}, 2}, {{3, 5}, 1}, {{3, 4, 5}, 4},
    };
    Clustering c = partition(hg, {.k = 2, .capacity = 3, .seed = 0});
    EXPECT_EQ(connectivity_objective(hg, c), 0);
}

TEST(Partition, MatchesEnumerationOnTinyInstances) {
    Rng rng(42);
    for (int inst = 0; inst < 30; ++inst) {
        uint32_t n = 4 + static_cast<uint32_t>(rng.below(5));  // 4..8
        uint32_t k = 2 + static_cast<uint32_t>(rng.below(2));  // 2..3
        uint32_t cap = static_cast<uint32_t>((n + k - 1) / k + rng.below(2));
        Hypergraph hg;
        hg.n_vertices = n;
        size_t n_edges = 3 + rng.below(6);
        for (size_t e = 0; e < n_edges; ++e) {
            uint32_t width = 2 + static_cast<uint32_t>(rng.below(2));
            std::vector<uint32_t> pins;
            while (pins.size() < width) {
                uint32_t v = static_cast<uint32_t>(rng.below(n));
                if (std::find(pins.begin(), pins.end(), v) == pins.end())
                    pins.push_back(v);
            }
            std::sort(pins.begin(), pins.end());
            hg.edges.push_back({pins, 1 + static_cast<int64_t>(rng.below(4))});
        }
        int64_t want = enumeration_min(hg, k, cap);
        Clustering c = partition(hg, {.k = k, .capacity = cap, .seed = 7});
        int64_t got = connectivity_objective(hg, c);
        EXPECT_GE(got, want) << "instance " << inst;  // oracle is a true min
        EXPECT_EQ(got, want) << "instance " << inst
                             << " n=" << n << " k=" << k << " cap=" << cap;
    }
}

TEST(Partition, DeterministicForFixedSeed) {
    Rng rng(5);
    Hypergraph hg;
    hg.n_vertices = 24;
    for (int e = 0; e < 40; ++e) {
        uint32_t a = static_cast<uint32_t>(rng.below(24));
        uint32_t b = static_cast<uint32_t>(rng.below(24));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        hg.edges.push_back({{a, b}, 1 + static_cast<int64_t>(rng.below(3))});
    }
    PartitionConfig cfg{.k = 3, .capacity = 9, .seed = 123};
    Clustering c1 = partition(hg, cfg);
    Clustering c2 = partition(hg, cfg);
    EXPECT_EQ(c1.module_of, c2.module_of);
    // A different seed is allowed to differ but must stay feasible.
    cfg.seed = 124;
    EXPECT_NO_THROW(partition(hg, cfg).validate());
}

TEST(Partition, LargerInstanceStaysFeasible) {
    Rng rng(9);
    Hypergraph hg;
    hg.n_vertices = 44;
    for (int e = 0; e < 150; ++e) {
        uint32_t width = 2 + static_cast<uint32_t>(rng.below(3));
        std::vector<uint32_t> pins;
        while (pins.size() < width) {
            uint32_t v = static_cast<uint32_t>(rng.below(44));
            if (std::find(pins.begin(), pins.end(), v) == pins.end())
                pins.push_back(v);
        }
        std::sort(pins.begin(), pins.end());
        hg.edges.push_back({pins, 1});
    }
    PartitionStats stats;
    Clustering c = partition(hg, {.k = 4, .capacity = 11, .seed = 3}, &stats);
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.module_of.size(), 44u);
    EXPECT_EQ(connectivity_objective(hg, c), stats.objective);
    EXPECT_GE(stats.initial_objective, stats.objective);
}

TEST(Partition, SingleModuleAndIdentityEdges) {
    Hypergraph hg = six_qubit_fixture();
    Clustering one = partition(hg, {.k = 1, .capacity = 6, .seed = 0});
    EXPECT_EQ(one.num_modules, 1u);
    EXPECT_EQ(connectivity_objective(hg, one), 0);
    // k == n forces singleton modules; every edge is cut.
    Clustering all = partition(hg, {.k = 6, .capacity = 1, .seed = 0});
    EXPECT_NO_THROW(all.validate());
    EXPECT_EQ(connectivity_objective(hg, all), 5);
}

TEST(Partition, RejectsInfeasibleConfigs) {
    Hypergraph hg = six_qubit_fixture();
    EXPECT_THROW(partition(hg, {.k = 0, .capacity = 3}), std::invalid_argument);
    EXPECT_THROW(partition(hg, {.k = 2, .capacity = 0}), std::invalid_argument);
    EXPECT_THROW(partition(hg, {.k = 7, .capacity = 1}), std::invalid_argument);
    EXPECT_THROW(partition(hg, {.k = 2, .capacity = 2}), std::invalid_argument);
}

}  // namespace
}  // namespace bbmap
