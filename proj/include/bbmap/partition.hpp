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
// Capacity-constrained k-way hypergraph partitioning minimizing the
// connectivity metric sum_e w_e (lambda_e - 1). Multilevel scheme:
//
//   1. coarsen by heavy-edge matching on a clique-expansion proxy,
//   2. greedy balanced initial partition on the coarsest graph,
//   3. uncoarsen with Fiduccia-Mattheyses style move refinement
//      (monotone per pass: every pass ends at its best seen prefix),
//   4. several independently seeded rounds, keep the best result.
//
// All tie-breaks are by lowest index, so results are deterministic for a
// fixed seed across platforms.

#ifndef BBMAP_PARTITION_HPP
#define BBMAP_PARTITION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bbmap/hypergraph.hpp"
#include "bbmap/rng.hpp"

namespace bbmap {

struct PartitionConfig {
  uint32_t k = 0;         // number of modules
  uint32_t capacity = 0;  // hard per-module qubit bound
  double epsilon = 0.06;  // balance slack for the initial packing target
  uint64_t seed = 0;
  uint32_t restarts = 0;  // 0 = pick by problem size
};

struct PartitionStats {
  int64_t initial_objective = 0;  // winning round, before refinement
  int64_t objective = 0;
  uint32_t rounds = 0;
};

namespace detail {

// One coarsening level. `size[v]` counts original qubits inside coarse
// vertex v. Edges keep >= 2 distinct pins and merge parallel copies.
struct PartLevel {
  uint32_t n = 0;
  std::vector<uint32_t> size;
  std::vector<Hyperedge> edges;
  std::vector<std::vector<uint32_t>> incident;  // vertex -> edge ids

  void build_incidence() {
    incident.assign(n, {});
    for (uint32_t e = 0; e < edges.size(); ++e)
      for (uint32_t v : edges[e].pins) incident[v].push_back(e);
  }
};

inline PartLevel base_level(const Hypergraph& hg) {
  PartLevel l;
  l.n = hg.n_vertices;
  l.size.assign(l.n, 1);
  std::map<std::vector<uint32_t>, size_t> index;
  for (const Hyperedge& e : hg.edges) {
    if (e.pins.size() < 2) continue;  // single-pin edges never cut
    auto it = index.find(e.pins);
    if (it != index.end()) {
      l.edges[it->second].weight += e.weight;
    } else {
      index.emplace(e.pins, l.edges.size());
      l.edges.push_back(e);
    }
  }
  l.build_incidence();
  return l;
}

// Heavy-edge matching + contraction. Returns the coarse level and fills
// `coarse_of` (fine vertex id -> coarse vertex id). Pair attraction uses the
// clique-expansion proxy w_e / (|e|-1); very wide edges contribute noise
// rather than locality, so edges above 64 pins are ignored here.
inline PartLevel coarsen(const PartLevel& fine, uint32_t size_limit, Rng& rng,
                         std::vector<uint32_t>& coarse_of) {
  std::vector<uint32_t> order(fine.n);
  for (uint32_t v = 0; v < fine.n; ++v) order[v] = v;
  rng.shuffle(order);

  std::vector<uint32_t> mate(fine.n, fine.n);  // fine.n = unmatched
  for (uint32_t v : order) {
    if (mate[v] != fine.n) continue;
    std::map<uint32_t, double> attraction;
    for (uint32_t e : fine.incident[v]) {
      const Hyperedge& edge = fine.edges[e];
      if (edge.pins.size() > 64) continue;
      double w = static_cast<double>(edge.weight) /
                 static_cast<double>(edge.pins.size() - 1);
      for (uint32_t u : edge.pins)
        if (u != v) attraction[u] += w;
    }
    uint32_t best = fine.n;
    double best_w = 0.0;
    for (const auto& [u, w] : attraction) {
      if (mate[u] != fine.n) continue;
      if (fine.size[v] + fine.size[u] > size_limit) continue;
      if (w > best_w) { best_w = w; best = u; }  // map order breaks ties low
    }
    if (best != fine.n) { mate[v] = best; mate[best] = v; }
  }

  coarse_of.assign(fine.n, 0);
  uint32_t next = 0;
  for (uint32_t v = 0; v < fine.n; ++v) {
    if (mate[v] != fine.n && mate[v] < v) coarse_of[v] = coarse_of[mate[v]];
    else coarse_of[v] = next++;
  }

  PartLevel coarse;
  coarse.n = next;
  coarse.size.assign(next, 0);
  for (uint32_t v = 0; v < fine.n; ++v) coarse.size[coarse_of[v]] += fine.size[v];
  std::map<std::vector<uint32_t>, size_t> index;
  std::vector<uint32_t> pins;
  for (const Hyperedge& e : fine.edges) {
    pins.clear();
    for (uint32_t v : e.pins) pins.push_back(coarse_of[v]);
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    if (pins.size() < 2) continue;
    auto it = index.find(pins);
    if (it != index.end()) {
      coarse.edges[it->second].weight += e.weight;
    } else {
      index.emplace(pins, coarse.edges.size());
      coarse.edges.push_back(Hyperedge{pins, e.weight});
    }
  }
  coarse.build_incidence();
  return coarse;
}

// Working state of a k-way assignment on one level.
struct PartState {
  const PartLevel* level = nullptr;
  uint32_t k = 0;
  std::vector<uint32_t> assign;               // vertex -> module
  std::vector<uint32_t> load;                 // module -> qubit load
  std::vector<uint32_t> count;                // module -> vertex count
  std::vector<std::vector<uint32_t>> pin_in;  // edge -> per-module pin count
  int64_t objective = 0;

  void rebuild() {
    load.assign(k, 0);
    count.assign(k, 0);
    pin_in.assign(level->edges.size(), std::vector<uint32_t>(k, 0));
    objective = 0;
    for (uint32_t v = 0; v < level->n; ++v) {
      load[assign[v]] += level->size[v];
      ++count[assign[v]];
    }
    for (uint32_t e = 0; e < level->edges.size(); ++e) {
      uint32_t lambda = 0;
      for (uint32_t v : level->edges[e].pins) {
        if (pin_in[e][assign[v]]++ == 0) ++lambda;
      }
      objective += level->edges[e].weight * static_cast<int64_t>(lambda - 1);
    }
  }

  // Objective decrease if v moves from its module to b.
  int64_t gain(uint32_t v, uint32_t b) const {
    uint32_t a = assign[v];
    int64_t g = 0;
    for (uint32_t e : level->incident[v]) {
      const Hyperedge& edge = level->edges[e];
      if (pin_in[e][a] == 1) g += edge.weight;
      if (pin_in[e][b] == 0) g -= edge.weight;
    }
    return g;
  }

  // Objective decrease if v and u (in different modules) trade places.
  // Edges containing both keep their per-module pin counts, so only the
  // exclusive edges of each endpoint contribute.
  int64_t swap_gain(uint32_t v, uint32_t u) const {
    uint32_t a = assign[v], b = assign[u];
    int64_t g = 0;
    for (uint32_t e : level->incident[v]) {
      const Hyperedge& edge = level->edges[e];
      if (std::binary_search(edge.pins.begin(), edge.pins.end(), u)) continue;
      if (pin_in[e][a] == 1) g += edge.weight;
      if (pin_in[e][b] == 0) g -= edge.weight;
    }
    for (uint32_t e : level->incident[u]) {
      const Hyperedge& edge = level->edges[e];
      if (std::binary_search(edge.pins.begin(), edge.pins.end(), v)) continue;
      if (pin_in[e][b] == 1) g += edge.weight;
      if (pin_in[e][a] == 0) g -= edge.weight;
    }
    return g;
  }

  void move(uint32_t v, uint32_t b) {
    uint32_t a = assign[v];
    for (uint32_t e : level->incident[v]) {
      const Hyperedge& edge = level->edges[e];
      if (--pin_in[e][a] == 0) objective -= edge.weight;
      if (pin_in[e][b]++ == 0) objective += edge.weight;
    }
    load[a] -= level->size[v];
    load[b] += level->size[v];
    --count[a];
    ++count[b];
    assign[v] = b;
  }
};

// Greedy balanced placement, heaviest vertex first: put each vertex where it
// already has the most hyperedge weight, within the size target. Returns
// nothing if even the hard capacity cannot fit some vertex (the caller then
// retries on a finer level, where vertices are smaller).
inline std::optional<std::vector<uint32_t>> greedy_initial(
    const PartLevel& level, uint32_t k, uint32_t target, uint32_t capacity,
    Rng& rng) {
  if (level.n < k) return std::nullopt;
  std::vector<uint32_t> order(level.n);
  for (uint32_t v = 0; v < level.n; ++v) order[v] = v;
  // Shuffle before the stable size sort so restarts explore different
  // placements among equally sized vertices.
  rng.shuffle(order);
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return level.size[a] > level.size[b];
  });

  constexpr uint32_t kUnassigned = std::numeric_limits<uint32_t>::max();
  std::vector<uint32_t> assign(level.n, kUnassigned);
  std::vector<uint32_t> load(k, 0);
  std::vector<std::vector<uint32_t>> pin_in(level.edges.size(),
                                            std::vector<uint32_t>(k, 0));
  for (uint32_t v : order) {
    int64_t best_gain = -1;
    uint32_t best_m = k;
    for (uint32_t m = 0; m < k; ++m) {
      if (load[m] + level.size[v] > target) continue;
      int64_t g = 0;
      for (uint32_t e : level.incident[v])
        if (pin_in[e][m] > 0) g += level.edges[e].weight;
      if (g > best_gain ||
          (g == best_gain && best_m < k && load[m] < load[best_m])) {
        best_gain = g;
        best_m = m;
      }
    }
    if (best_m == k) {
      // Target missed; fall back to least-loaded module within capacity.
      for (uint32_t m = 0; m < k; ++m) {
        if (load[m] + level.size[v] > capacity) continue;
        if (best_m == k || load[m] < load[best_m]) best_m = m;
      }
      if (best_m == k) return std::nullopt;
    }
    assign[v] = best_m;
    load[best_m] += level.size[v];
    for (uint32_t e : level.incident[v]) ++pin_in[e][best_m];
  }

  // Surjectivity repair: feed empty modules the smallest vertex from any
  // module that can spare one.
  std::vector<uint32_t> count(k, 0);
  for (uint32_t v = 0; v < level.n; ++v) ++count[assign[v]];
  for (uint32_t m = 0; m < k; ++m) {
    if (count[m] > 0) continue;
    uint32_t pick = level.n;
    for (uint32_t v = 0; v < level.n; ++v) {
      if (count[assign[v]] < 2) continue;
      if (pick == level.n || level.size[v] < level.size[pick]) pick = v;
    }
    if (pick == level.n) return std::nullopt;
    --count[assign[pick]];
    load[assign[pick]] -= level.size[pick];
    assign[pick] = m;
    ++count[m];
    load[m] += level.size[pick];
  }
  return assign;
}

// One FM pass: greedy best-gain moves with every vertex moved at most once,
// then rollback to the best prefix. Returns true if the pass improved the
// objective.
inline bool fm_pass(PartState& st, uint32_t capacity) {
  const PartLevel& level = *st.level;
  std::vector<bool> locked(level.n, false);
  struct Step { uint32_t v, from; };
  std::vector<Step> trail;
  int64_t best = st.objective;
  size_t best_len = 0;
  int64_t start = st.objective;

  for (;;) {
    int64_t best_gain = std::numeric_limits<int64_t>::min();
    uint32_t best_v = level.n, best_b = st.k;
    for (uint32_t v = 0; v < level.n; ++v) {
      if (locked[v]) continue;
      uint32_t a = st.assign[v];
      if (st.count[a] <= 1) continue;  // keep every module occupied
      for (uint32_t b = 0; b < st.k; ++b) {
        if (b == a || st.load[b] + level.size[v] > capacity) continue;
        int64_t g = st.gain(v, b);
        if (g > best_gain) { best_gain = g; best_v = v; best_b = b; }
      }
    }
    if (best_v == level.n) break;
    trail.push_back({best_v, st.assign[best_v]});
    st.move(best_v, best_b);
    locked[best_v] = true;
    if (st.objective < best) {
      best = st.objective;
      best_len = trail.size();
    }
  }
  while (trail.size() > best_len) {
    st.move(trail.back().v, trail.back().from);
    trail.pop_back();
  }
  return st.objective < start;
}

// Strictly improving pairwise exchanges. Under a tight balance (every module
// exactly full) single moves are all infeasible and FM is frozen; swaps keep
// loads intact whenever the two vertices have equal size, so they are the
// only refinement that applies there.
inline bool swap_pass(PartState& st, uint32_t capacity) {
  const PartLevel& level = *st.level;
  bool improved = false;
  for (;;) {
    int64_t best_gain = 0;
    uint32_t best_v = level.n, best_u = level.n;
    for (uint32_t v = 0; v < level.n; ++v) {
      for (uint32_t u = v + 1; u < level.n; ++u) {
        uint32_t a = st.assign[v], b = st.assign[u];
        if (a == b) continue;
        if (st.load[a] - level.size[v] + level.size[u] > capacity) continue;
        if (st.load[b] - level.size[u] + level.size[v] > capacity) continue;
        int64_t g = st.swap_gain(v, u);
        if (g > best_gain) { best_gain = g; best_v = v; best_u = u; }
      }
    }
    if (best_v == level.n) break;
    uint32_t a = st.assign[best_v], b = st.assign[best_u];
    st.move(best_v, b);
    st.move(best_u, a);
    improved = true;
  }
  return improved;
}

}  // namespace detail

// Partitions hg.n_vertices qubits into cfg.k modules of at most
// cfg.capacity qubits each, every module non-empty, minimizing
// sum_e w_e (lambda_e - 1).
inline Clustering partition(const Hypergraph& hg, const PartitionConfig& cfg,
                            PartitionStats* stats = nullptr) {
  uint32_t n = hg.n_vertices;
  if (cfg.k == 0) throw std::invalid_argument("partition needs k >= 1");
  if (cfg.capacity == 0) throw std::invalid_argument("partition needs capacity >= 1");
  if (cfg.k > n)
    throw std::invalid_argument("more modules than qubits cannot all be occupied");
  if (static_cast<uint64_t>(cfg.k) * cfg.capacity < n)
    throw std::invalid_argument("k modules of this capacity cannot hold all qubits");

  uint32_t target = static_cast<uint32_t>(std::ceil(
      (1.0 + cfg.epsilon) * static_cast<double>(n) / cfg.k));
  target = std::min(cfg.capacity, std::max(target, 1u));
  uint32_t rounds = cfg.restarts ? cfg.restarts : (n <= 32 ? 8 : n <= 128 ? 4 : 2);

  // Level 0 is shared by all rounds; coarsening order is per-round random.
  detail::PartLevel base = detail::base_level(hg);
  uint32_t stop_n = std::max(3 * cfg.k, 24u);
  uint32_t match_limit = std::max(1u, target / 2);

  std::optional<Clustering> best;
  int64_t best_obj = 0;
  PartitionStats best_stats;

  for (uint32_t round = 0; round < rounds; ++round) {
    Rng rng(mix_seed(cfg.seed, round));
    std::vector<detail::PartLevel> levels{base};
    std::vector<std::vector<uint32_t>> coarse_of;  // levels[i] -> levels[i+1]
    while (levels.back().n > stop_n) {
      std::vector<uint32_t> cmap;
      detail::PartLevel next = detail::coarsen(levels.back(), match_limit, rng, cmap);
      if (next.n == 0 || next.n > levels.back().n * 9 / 10) break;
      levels.push_back(std::move(next));
      coarse_of.push_back(std::move(cmap));
    }

    // Find the coarsest level that admits a feasible greedy start.
    std::optional<std::vector<uint32_t>> init;
    size_t start_level = levels.size();
    while (start_level-- > 0) {
      init = detail::greedy_initial(levels[start_level], cfg.k, target,
                                    cfg.capacity, rng);
      if (init) break;
    }
    if (!init) continue;  // no feasible start this round

    detail::PartState st;
    st.k = cfg.k;
    st.level = &levels[start_level];
    st.assign = *init;
    st.rebuild();
    int64_t initial_objective = st.objective;

    for (size_t lvl = start_level;; --lvl) {
      st.level = &levels[lvl];
      if (lvl != start_level) {
        // Project the coarser assignment down one level.
        std::vector<uint32_t> fine_assign(levels[lvl].n);
        for (uint32_t v = 0; v < levels[lvl].n; ++v)
          fine_assign[v] = st.assign[coarse_of[lvl][v]];
        st.assign = std::move(fine_assign);
      }
      st.rebuild();
      for (int pass = 0; pass < 16; ++pass) {
        bool moved = detail::fm_pass(st, cfg.capacity);
        bool swapped = detail::swap_pass(st, cfg.capacity);
        if (!moved && !swapped) break;
      }
      if (lvl == 0) break;
    }

    if (!best || st.objective < best_obj) {
      Clustering c;
      c.module_of = st.assign;
      c.num_modules = cfg.k;
      c.capacity = cfg.capacity;
      best = std::move(c);
      best_obj = st.objective;
      best_stats.initial_objective = initial_objective;
      best_stats.objective = st.objective;
    }
  }

  if (!best) throw std::runtime_error("partitioning found no feasible start");
  best_stats.rounds = rounds;
  best->validate();
  if (stats) *stats = best_stats;
  return *best;
}

}  // namespace bbmap

#endif  // BBMAP_PARTITION_HPP
