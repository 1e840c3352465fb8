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
// Module placement: per-rotation module sets, the outside-in priority
// heuristic, position assignment on a topology, the baseline clustering and
// assignment policies, and an exhaustive placement oracle.

#ifndef BBMAP_MAPPING_HPP
#define BBMAP_MAPPING_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbmap/hypergraph.hpp"
#include "bbmap/partition.hpp"
#include "bbmap/pauli.hpp"
#include "bbmap/rng.hpp"
#include "bbmap/topology.hpp"

namespace bbmap {

// Modules a rotation touches, with the rotation's weight. Kept aligned with
// the circuit's rotation list (no merging), so costs can be tallied per
// rotation later.
struct ModuleSet {
  std::vector<uint32_t> modules;  // sorted, distinct
  int64_t weight = 1;
};

inline std::vector<ModuleSet> module_supports(const PbcCircuit& circuit,
                                              const Clustering& clustering) {
  if (clustering.module_of.size() != circuit.n_qubits)
    throw std::invalid_argument("clustering width does not match circuit");
  std::vector<ModuleSet> sets;
  sets.reserve(circuit.rotations.size());
  for (const PauliRotation& r : circuit.rotations) {
    ModuleSet s;
    s.weight = r.weight;
    for (uint32_t q : r.pauli.support()) {
      uint32_t m = clustering.module_of[q];
      if (std::find(s.modules.begin(), s.modules.end(), m) == s.modules.end())
        s.modules.push_back(m);
    }
    std::sort(s.modules.begin(), s.modules.end());
    sets.push_back(std::move(s));
  }
  return sets;
}

// Total rotation weight incident to each module (a rotation counts once per
// module it touches).
inline std::vector<int64_t> module_frequencies(
    const std::vector<ModuleSet>& sets, uint32_t num_modules) {
  std::vector<int64_t> freq(num_modules, 0);
  for (const ModuleSet& s : sets)
    for (uint32_t m : s.modules) {
      if (m >= num_modules)
        throw std::invalid_argument("module id out of range");
      freq[m] += s.weight;
    }
  return freq;
}

struct PriorityResult {
  std::vector<uint32_t> priority;  // per module; 0 = placed furthest
  bool had_ties = false;           // some elimination step had equal minima
  // Residual frequencies were pairwise distinct before every elimination
  // step: the premise of the line-optimality theorem.
  bool distinct_at_every_step = true;
};

// Outside-in priority heuristic: repeatedly eliminate the module with the
// least residual frequency (ties to the lowest id), deleting its rotations
// and discounting the other participants. The first module eliminated gets
// priority 0 and ends up furthest from the factory.
inline PriorityResult assign_priorities(const std::vector<ModuleSet>& sets,
                                        uint32_t num_modules) {
  PriorityResult result;
  result.priority.assign(num_modules, 0);
  std::vector<int64_t> freq = module_frequencies(sets, num_modules);
  std::vector<bool> alive(sets.size(), true);
  std::vector<bool> remaining(num_modules, true);
  for (uint32_t step = 0; step < num_modules; ++step) {
    uint32_t pick = num_modules;
    uint32_t min_count = 0;
    std::vector<int64_t> residual;
    for (uint32_t m = 0; m < num_modules; ++m) {
      if (!remaining[m]) continue;
      residual.push_back(freq[m]);
      if (pick == num_modules || freq[m] < freq[pick]) {
        pick = m;
        min_count = 1;
      } else if (freq[m] == freq[pick]) {
        ++min_count;
      }
    }
    if (min_count > 1) result.had_ties = true;
    std::sort(residual.begin(), residual.end());
    if (std::adjacent_find(residual.begin(), residual.end()) !=
        residual.end())
      result.distinct_at_every_step = false;
    result.priority[pick] = step;
    remaining[pick] = false;
    for (size_t r = 0; r < sets.size(); ++r) {
      if (!alive[r]) continue;
      const ModuleSet& s = sets[r];
      if (!std::binary_search(s.modules.begin(), s.modules.end(), pick))
        continue;
      alive[r] = false;
      for (uint32_t m : s.modules)
        if (remaining[m]) freq[m] -= s.weight;
    }
  }
  return result;
}

// A placement of modules onto topology slots (injective).
struct Assignment {
  std::vector<uint32_t> slot_of_module;

  void validate(const Topology& topo) const {
    std::vector<bool> used(topo.num_slots(), false);
    for (uint32_t s : slot_of_module) {
      if (s >= topo.num_slots())
        throw std::invalid_argument("assignment slot out of range");
      if (used[s]) throw std::invalid_argument("assignment reuses a slot");
      used[s] = true;
    }
  }
};

namespace detail {

// Slots ordered nearest-first: (distance to nearest factory asc, row-major
// slot index asc).
inline std::vector<uint32_t> slots_by_distance(const Topology& topo) {
  std::vector<uint32_t> slots(topo.num_slots());
  std::iota(slots.begin(), slots.end(), 0u);
  std::stable_sort(slots.begin(), slots.end(), [&](uint32_t a, uint32_t b) {
    return topo.distance_to_nearest_factory(a) <
           topo.distance_to_nearest_factory(b);
  });
  return slots;
}

// Modules ranked by descending key (ties to the lowest id) receive the
// nearest slots first.
template <typename Key>
Assignment rank_assignment(const std::vector<Key>& keys,
                           const Topology& topo) {
  uint32_t m = static_cast<uint32_t>(keys.size());
  if (m == 0) throw std::invalid_argument("no modules to place");
  if (topo.num_slots() < m)
    throw std::invalid_argument("topology has fewer slots than modules");
  std::vector<uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return keys[a] > keys[b];
  });
  std::vector<uint32_t> slots = slots_by_distance(topo);
  Assignment out;
  out.slot_of_module.assign(m, 0);
  for (uint32_t i = 0; i < m; ++i) out.slot_of_module[order[i]] = slots[i];
  return out;
}

}  // namespace detail

// Highest priority lands on the nearest slot; priority 0 on the furthest of
// the first |priorities| slots. Extra slots stay unused.
inline Assignment priorities_to_positions(
    const std::vector<uint32_t>& priorities, const Topology& topo) {
  return detail::rank_assignment(priorities, topo);
}

// Most frequently used module closest to the factory.
inline Assignment assign_greedy(const std::vector<int64_t>& frequencies,
                                const Topology& topo) {
  return detail::rank_assignment(frequencies, topo);
}

// Module m on slot m, for the unoptimized baseline.
inline Assignment identity_assignment(uint32_t num_modules,
                                      const Topology& topo) {
  if (topo.num_slots() < num_modules)
    throw std::invalid_argument("topology has fewer slots than modules");
  Assignment out;
  out.slot_of_module.resize(num_modules);
  std::iota(out.slot_of_module.begin(), out.slot_of_module.end(), 0u);
  return out;
}

// Weighted routing cost of every rotation under a placement. Route costs are
// memoized per distinct slot set.
inline int64_t total_routing_cost(const std::vector<ModuleSet>& sets,
                                  const Assignment& assignment,
                                  const Topology& topo) {
  std::map<std::vector<uint32_t>, uint32_t> memo;
  int64_t total = 0;
  for (const ModuleSet& s : sets) {
    if (s.modules.empty()) continue;
    std::vector<uint32_t> slots;
    slots.reserve(s.modules.size());
    for (uint32_t m : s.modules) slots.push_back(assignment.slot_of_module.at(m));
    std::sort(slots.begin(), slots.end());
    auto it = memo.find(slots);
    if (it == memo.end()) it = memo.emplace(slots, topo.route_cost(slots)).first;
    total += s.weight * static_cast<int64_t>(it->second);
  }
  return total;
}

// Exhaustive placement oracle: the minimum-total-routing-cost injective
// placement, ties resolved to the lexicographically smallest slot vector.
// Exponential; gated to small instances.
inline Assignment assign_bruteforce(const std::vector<ModuleSet>& sets,
                                    uint32_t num_modules,
                                    const Topology& topo) {
  if (num_modules == 0) throw std::invalid_argument("no modules to place");
  if (num_modules > 8)
    throw std::invalid_argument("bruteforce placement limited to 8 modules");
  uint32_t slots = topo.num_slots();
  if (slots < num_modules)
    throw std::invalid_argument("topology has fewer slots than modules");
  double perms = 1.0;
  for (uint32_t i = 0; i < num_modules; ++i) perms *= slots - i;
  if (perms > 2e6)
    throw std::invalid_argument("bruteforce placement space too large");

  std::map<std::vector<uint32_t>, uint32_t> memo;
  auto cost_of = [&](const Assignment& a) {
    int64_t total = 0;
    for (const ModuleSet& s : sets) {
      if (s.modules.empty()) continue;
      std::vector<uint32_t> pos;
      pos.reserve(s.modules.size());
      for (uint32_t m : s.modules) pos.push_back(a.slot_of_module[m]);
      std::sort(pos.begin(), pos.end());
      auto it = memo.find(pos);
      if (it == memo.end()) it = memo.emplace(pos, topo.route_cost(pos)).first;
      total += s.weight * static_cast<int64_t>(it->second);
    }
    return total;
  };

  Assignment current, best;
  current.slot_of_module.assign(num_modules, 0);
  int64_t best_cost = std::numeric_limits<int64_t>::max();
  std::vector<bool> used(slots, false);
  // Depth-first in lexicographic slot order, so the first minimum found is
  // the lexicographically smallest.
  auto rec = [&](auto&& self, uint32_t m) -> void {
    if (m == num_modules) {
      int64_t c = cost_of(current);
      if (c < best_cost) {
        best_cost = c;
        best = current;
      }
      return;
    }
    for (uint32_t s = 0; s < slots; ++s) {
      if (used[s]) continue;
      used[s] = true;
      current.slot_of_module[m] = s;
      self(self, m + 1);
      used[s] = false;
    }
  };
  rec(rec, 0);
  return best;
}

// ---- Baseline clustering policies ----

// Qubits sorted by total incident rotation weight (descending, ties by
// index), then chopped into modules capacity at a time.
inline Clustering cluster_frequency_max(const PbcCircuit& circuit, uint32_t k,
                                        uint32_t capacity) {
  uint32_t n = circuit.n_qubits;
  if (k == 0 || capacity == 0)
    throw std::invalid_argument("clustering needs k >= 1 and capacity >= 1");
  if ((n + capacity - 1) / capacity != k)
    throw std::invalid_argument(
        "frequency-max bucketing needs k == ceil(n/capacity)");
  std::vector<int64_t> weight(n, 0);
  for (const PauliRotation& r : circuit.rotations)
    for (uint32_t q : r.pauli.support()) weight[q] += r.weight;
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return weight[a] > weight[b];
  });
  Clustering c;
  c.num_modules = k;
  c.capacity = capacity;
  c.module_of.assign(n, 0);
  for (uint32_t i = 0; i < n; ++i) c.module_of[order[i]] = i / capacity;
  c.validate();
  return c;
}

namespace detail {

// Number of ways to drop `r` distinguishable qubits into modules with the
// given remaining capacities. Depends only on the capacity multiset.
inline long double count_fillings(
    uint32_t r, std::vector<uint32_t> caps,
    std::map<std::pair<uint32_t, std::vector<uint32_t>>, long double>& memo) {
  if (r == 0) return 1.0L;
  uint64_t room = 0;
  for (uint32_t c : caps) room += c;
  if (room < r) return 0.0L;
  std::sort(caps.begin(), caps.end());
  auto key = std::make_pair(r, caps);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  long double total = 0.0L;
  for (size_t i = 0; i < caps.size(); ++i) {
    if (caps[i] == 0) continue;
    if (i > 0 && caps[i] == caps[i - 1]) continue;  // group equal capacities
    uint32_t copies = 0;
    for (uint32_t c : caps)
      if (c == caps[i]) ++copies;
    std::vector<uint32_t> next = caps;
    --next[i];
    total += static_cast<long double>(copies) *
             count_fillings(r - 1, std::move(next), memo);
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace detail

// Uniform draw over capacity-respecting assignments of n qubits to k
// modules, conditioned on every module being non-empty. Sequential sampling
// with exact subtree counts keeps the draw uniform; the non-empty condition
// is enforced by bounded rejection (it holds automatically whenever k-1
// modules cannot hold all qubits).
inline Clustering cluster_random(uint32_t n, uint32_t k, uint32_t capacity,
                                 uint64_t seed) {
  if (k == 0 || capacity == 0)
    throw std::invalid_argument("clustering needs k >= 1 and capacity >= 1");
  if (k > n) throw std::invalid_argument("more modules than qubits");
  if (static_cast<uint64_t>(k) * capacity < n)
    throw std::invalid_argument("capacity too small for qubit count");
  std::map<std::pair<uint32_t, std::vector<uint32_t>>, long double> memo;
  Rng rng(mix_seed(seed, 0x72616e646f6dULL));
  Clustering c;
  c.num_modules = k;
  c.capacity = capacity;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    c.module_of.assign(n, 0);
    std::vector<uint32_t> caps(k, capacity);
    bool ok = true;
    for (uint32_t q = 0; q < n && ok; ++q) {
      long double total = 0.0L;
      std::vector<long double> branch(k, 0.0L);
      for (uint32_t m = 0; m < k; ++m) {
        if (caps[m] == 0) continue;
        std::vector<uint32_t> next = caps;
        --next[m];
        branch[m] = detail::count_fillings(n - q - 1, std::move(next), memo);
        total += branch[m];
      }
      if (total <= 0.0L) { ok = false; break; }
      long double draw = static_cast<long double>(rng.real()) * total;
      uint32_t chosen = k - 1;
      for (uint32_t m = 0; m < k; ++m) {
        if (branch[m] <= 0.0L) continue;
        if (draw < branch[m]) { chosen = m; break; }
        draw -= branch[m];
        chosen = m;  // numeric slack lands on the last viable module
      }
      while (caps[chosen] == 0) --chosen;
      c.module_of[q] = chosen;
      --caps[chosen];
    }
    if (!ok) continue;
    std::vector<bool> seen(k, false);
    for (uint32_t m : c.module_of) seen[m] = true;
    if (std::find(seen.begin(), seen.end(), false) == seen.end()) return c;
  }
  throw std::runtime_error("random clustering kept leaving modules empty");
}

enum class ExpansionMode { chain, clique };

namespace detail {

// Pairwise edge weights obtained by flattening each rotation support into
// plain graph edges: all pairs (clique) or consecutive pairs in qubit index
// order (chain). Weights accumulate across rotations.
inline std::map<std::pair<uint32_t, uint32_t>, int64_t> expand_pairs(
    const PbcCircuit& circuit, ExpansionMode mode) {
  std::map<std::pair<uint32_t, uint32_t>, int64_t> pair_weight;
  for (const PauliRotation& r : circuit.rotations) {
    std::vector<uint32_t> supp = r.pauli.support();
    if (supp.size() < 2) continue;
    if (mode == ExpansionMode::chain) {
      for (size_t i = 0; i + 1 < supp.size(); ++i)
        pair_weight[{supp[i], supp[i + 1]}] += r.weight;
    } else {
      for (size_t i = 0; i < supp.size(); ++i)
        for (size_t j = i + 1; j < supp.size(); ++j)
          pair_weight[{supp[i], supp[j]}] += r.weight;
    }
  }
  return pair_weight;
}

}  // namespace detail

// SABRE/METIS-style baselines: replace each support by plain pairwise edges,
// then partition that graph.
inline Clustering cluster_graph_expansion(const PbcCircuit& circuit, uint32_t k,
                                          uint32_t capacity, ExpansionMode mode,
                                          uint64_t seed) {
  std::map<std::pair<uint32_t, uint32_t>, int64_t> pair_weight =
      detail::expand_pairs(circuit, mode);
  Hypergraph hg;
  hg.n_vertices = circuit.n_qubits;
  for (const auto& [pair, w] : pair_weight)
    hg.edges.push_back({{pair.first, pair.second}, w});
  PartitionConfig cfg;
  cfg.k = k;
  cfg.capacity = capacity;
  cfg.seed = seed;
  return partition(hg, cfg);
}

// ---- Policy identifiers ----

enum class MappingPolicy {
  hypergraph_priority,  // hypergraph partitioning + outside-in priorities
  hypergraph_greedy,    // hypergraph partitioning + frequency-greedy slots
  freqmax_greedy,
  random_identity,
  chain_greedy,
  clique_greedy,
  bruteforce,  // hypergraph partitioning + exhaustive placement
};

inline const char* policy_id(MappingPolicy p) {
  switch (p) {
    case MappingPolicy::hypergraph_priority: return "hypergraph+priority";
    case MappingPolicy::hypergraph_greedy: return "hypergraph+greedy";
    case MappingPolicy::freqmax_greedy: return "freqmax+greedy";
    case MappingPolicy::random_identity: return "random+identity";
    case MappingPolicy::chain_greedy: return "chain+greedy";
    case MappingPolicy::clique_greedy: return "clique+greedy";
    case MappingPolicy::bruteforce: return "bruteforce";
  }
  return "?";
}

inline MappingPolicy parse_policy(const std::string& id) {
  for (MappingPolicy p :
       {MappingPolicy::hypergraph_priority, MappingPolicy::hypergraph_greedy,
        MappingPolicy::freqmax_greedy, MappingPolicy::random_identity,
        MappingPolicy::chain_greedy, MappingPolicy::clique_greedy,
        MappingPolicy::bruteforce})
    if (id == policy_id(p)) return p;
  throw std::invalid_argument("unknown policy '" + id + "'");
}

}  // namespace bbmap

#endif  // BBMAP_MAPPING_HPP
