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
// Qubit interaction hypergraph. Each distinct rotation support becomes one
// weighted hyperedge; a clustering of qubits into modules is scored by the
// connectivity metric sum_e w_e * (lambda_e - 1), where lambda_e counts the
// modules an edge touches. Rotations whose support spans lambda modules need
// lambda - 1 extra module participations, so the metric counts exactly the
// inter-module coupling the mapper tries to avoid.

#ifndef BBMAP_HYPERGRAPH_HPP
#define BBMAP_HYPERGRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbmap/pauli.hpp"

namespace bbmap {

struct Hyperedge {
  std::vector<uint32_t> pins;  // sorted, distinct
  int64_t weight = 1;
};

struct Hypergraph {
  uint32_t n_vertices = 0;
  std::vector<Hyperedge> edges;
};

// Assignment of qubits to modules. `module_of[q]` is the module label of
// qubit q; labels are dense in [0, num_modules).
struct Clustering {
  std::vector<uint32_t> module_of;
  uint32_t num_modules = 0;
  uint32_t capacity = 0;

  std::vector<uint32_t> module_sizes() const {
    std::vector<uint32_t> sz(num_modules, 0);
    for (uint32_t m : module_of) {
      if (m >= num_modules)
        throw std::invalid_argument("module label out of range");
      ++sz[m];
    }
    return sz;
  }

  std::vector<std::vector<uint32_t>> modules() const {
    std::vector<std::vector<uint32_t>> out(num_modules);
    for (uint32_t q = 0; q < module_of.size(); ++q) {
      if (module_of[q] >= num_modules)
        throw std::invalid_argument("module label out of range");
      out[module_of[q]].push_back(q);
    }
    return out;
  }

  // Labels in range, no module empty, no module above capacity.
  void validate() const {
    if (num_modules == 0) throw std::invalid_argument("no modules");
    for (uint32_t sz : module_sizes()) {
      if (sz == 0) throw std::invalid_argument("clustering leaves a module empty");
      if (capacity != 0 && sz > capacity)
        throw std::invalid_argument("module exceeds capacity");
    }
  }
};

// One hyperedge per distinct rotation support; repeated supports merge by
// summing weights (first occurrence keeps its position). Rotation angles and
// signs are irrelevant here -- only which qubits interact, and how often.
inline Hypergraph build_interaction_hypergraph(const PbcCircuit& circuit) {
  Hypergraph hg;
  hg.n_vertices = circuit.n_qubits;
  std::map<std::vector<uint32_t>, size_t> index;
  for (const PauliRotation& r : circuit.rotations) {
    std::vector<uint32_t> pins = r.pauli.support();
    if (pins.empty()) continue;
    auto it = index.find(pins);
    if (it != index.end()) {
      hg.edges[it->second].weight += r.weight;
    } else {
      index.emplace(pins, hg.edges.size());
      hg.edges.push_back(Hyperedge{std::move(pins), r.weight});
    }
  }
  return hg;
}

// sum_e w_e * (lambda_e - 1) with lambda_e = #distinct modules under the
// clustering touched by edge e.
inline int64_t connectivity_objective(const Hypergraph& hg,
                                      const Clustering& clustering) {
  if (clustering.module_of.size() != hg.n_vertices)
    throw std::invalid_argument("clustering width does not match hypergraph");
  int64_t total = 0;
  std::vector<uint32_t> seen;
  for (const Hyperedge& e : hg.edges) {
    seen.clear();
    for (uint32_t v : e.pins) {
      uint32_t m = clustering.module_of.at(v);
      if (std::find(seen.begin(), seen.end(), m) == seen.end())
        seen.push_back(m);
    }
    if (!seen.empty())
      total += e.weight * static_cast<int64_t>(seen.size() - 1);
  }
  return total;
}

// hMETIS hypergraph file: header "numEdges numVertices 1" (the trailing 1
// flags edge weights), then one line per edge: weight followed by 1-indexed
// vertex ids.
inline std::string to_hmetis(const Hypergraph& hg) {
  std::ostringstream out;
  out << hg.edges.size() << ' ' << hg.n_vertices << " 1\n";
  for (const Hyperedge& e : hg.edges) {
    out << e.weight;
    for (uint32_t v : e.pins) out << ' ' << (v + 1);
    out << '\n';
  }
  return out.str();
}

}  // namespace bbmap

#endif  // BBMAP_HYPERGRAPH_HPP
