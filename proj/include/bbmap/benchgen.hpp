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
// Deterministic benchmark generators: rotation lists with planted group
// structure, all-to-all interaction patterns, and random Pauli-product
// rotations with a configurable support-width law.

#ifndef BBMAP_BENCHGEN_HPP
#define BBMAP_BENCHGEN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbmap/pauli.hpp"
#include "bbmap/rng.hpp"

namespace bbmap {

namespace detail {

inline Letter random_letter(Rng& rng) {
  constexpr Letter pool[3] = {Letter::X, Letter::Y, Letter::Z};
  return pool[rng.below(3)];
}

// A rotation with random non-identity letters on the given support.
inline PauliRotation random_rotation(uint32_t n,
                                     const std::vector<uint32_t>& support,
                                     int64_t weight, Rng& rng) {
  PauliString p(n);
  for (uint32_t q : support) p.set(q, random_letter(rng));
  return PauliRotation(std::move(p), RotationAngle::pi8(), weight);
}

// `count` distinct indices drawn uniformly from `pool`.
inline std::vector<uint32_t> sample_support(std::vector<uint32_t> pool,
                                            uint32_t count, Rng& rng) {
  rng.shuffle(pool);
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace detail

// Planted-structure benchmark: qubits split into near-equal contiguous
// groups; each group gets 4x its size of in-group rotations (width 2..4,
// weight intra_weight) and adjacent groups are bridged by one pair rotation
// of weight inter_weight (omitted entirely when inter_weight is 0, leaving a
// zero-cut clustering).
inline PbcCircuit gen_clustered(uint32_t n, uint32_t groups,
                                int64_t intra_weight, int64_t inter_weight,
                                uint64_t seed) {
  if (n == 0 || groups == 0 || groups > n)
    throw std::invalid_argument("need 1 <= groups <= n");
  if (intra_weight < 1)
    throw std::invalid_argument("intra_weight must be >= 1");
  if (inter_weight < 0)
    throw std::invalid_argument("inter_weight must be >= 0");
  Rng rng(mix_seed(seed, hash_bytes("clustered")));
  PbcCircuit c;
  c.n_qubits = n;
  std::vector<std::vector<uint32_t>> members(groups);
  for (uint32_t q = 0; q < n; ++q)
    members[static_cast<uint64_t>(q) * groups / n].push_back(q);
  for (uint32_t g = 0; g < groups; ++g) {
    const std::vector<uint32_t>& pool = members[g];
    uint32_t width_cap = std::min<uint32_t>(4, pool.size());
    uint32_t width_min = std::min<uint32_t>(2, width_cap);
    for (uint32_t i = 0; i < 4 * pool.size(); ++i) {
      uint32_t w = width_min +
                   static_cast<uint32_t>(rng.below(width_cap - width_min + 1));
      c.rotations.push_back(detail::random_rotation(
          n, detail::sample_support(pool, w, rng), intra_weight, rng));
    }
  }
  if (inter_weight > 0) {
    for (uint32_t g = 0; g + 1 < groups; ++g) {
      uint32_t a = members[g][rng.below(members[g].size())];
      uint32_t b = members[g + 1][rng.below(members[g + 1].size())];
      c.rotations.push_back(
          detail::random_rotation(n, {std::min(a, b), std::max(a, b)},
                                  inter_weight, rng));
    }
  }
  c.validate();
  return c;
}

enum class AllToAllMode {
  wide,      // full-support rotations; clustering cannot reduce spans
  pairwise,  // every 2-qubit support once
};

inline PbcCircuit gen_all_to_all(uint32_t n, AllToAllMode mode,
                                 uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  Rng rng(mix_seed(seed, hash_bytes("alltoall")));
  PbcCircuit c;
  c.n_qubits = n;
  if (mode == AllToAllMode::wide) {
    std::vector<uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    for (uint32_t i = 0; i < n; ++i)
      c.rotations.push_back(detail::random_rotation(n, all, 1, rng));
  } else {
    for (uint32_t a = 0; a < n; ++a)
      for (uint32_t b = a + 1; b < n; ++b)
        c.rotations.push_back(detail::random_rotation(n, {a, b}, 1, rng));
  }
  c.validate();
  return c;
}

// Support-width law for gen_random_ppr.
struct WidthDistribution {
  enum class Kind { fixed, uniform, geometric };
  Kind kind = Kind::fixed;
  uint32_t fixed_width = 2;
  uint32_t lo = 2, hi = 4;  // uniform, inclusive
  double p = 0.5;           // geometric: width = 2 + Geom(p) failures

  static WidthDistribution fixed(uint32_t w) {
    if (w < 1) throw std::invalid_argument("width must be >= 1");
    WidthDistribution d;
    d.kind = Kind::fixed;
    d.fixed_width = w;
    return d;
  }

  static WidthDistribution uniform(uint32_t lo, uint32_t hi) {
    if (lo < 1 || lo > hi) throw std::invalid_argument("need 1 <= lo <= hi");
    WidthDistribution d;
    d.kind = Kind::uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
  }

  static WidthDistribution geometric(double p) {
    if (!(p > 0.0) || !(p < 1.0))
      throw std::invalid_argument("geometric p must be in (0,1)");
    WidthDistribution d;
    d.kind = Kind::geometric;
    d.p = p;
    return d;
  }

  // Width draw, clipped to the qubit count.
  uint32_t sample(uint32_t n, Rng& rng) const {
    uint32_t w = fixed_width;
    switch (kind) {
      case Kind::fixed:
        w = fixed_width;
        break;
      case Kind::uniform:
        w = lo + static_cast<uint32_t>(rng.below(hi - lo + 1));
        break;
      case Kind::geometric: {
        double u = rng.real();
        double k = std::floor(std::log1p(-u) / std::log1p(-p));
        w = 2 + static_cast<uint32_t>(std::min(k, 1e9));
        break;
      }
    }
    return std::min(w, n);
  }
};

// `depth` random Pauli-product rotations with supports drawn by the width
// law and uniform non-identity letters.
inline PbcCircuit gen_random_ppr(uint32_t n, uint32_t depth,
                                 const WidthDistribution& widths,
                                 uint64_t seed) {
  if (n == 0) throw std::invalid_argument("need n >= 1");
  Rng rng(mix_seed(seed, hash_bytes("ppr")));
  PbcCircuit c;
  c.n_qubits = n;
  std::vector<uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  for (uint32_t i = 0; i < depth; ++i) {
    uint32_t w = widths.sample(n, rng);
    c.rotations.push_back(detail::random_rotation(
        n, detail::sample_support(all, w, rng), 1, rng));
  }
  c.validate();
  return c;
}

// Textual generator descriptor for configs and the CLI:
//   clustered:n=33,groups=3,intra=4,inter=1
//   alltoall:n=12,mode=wide
//   ppr:n=20,depth=50,width=geometric:0.4
struct GeneratorSpec {
  std::string text;

  enum class Kind { clustered, alltoall, ppr } kind = Kind::clustered;
  uint32_t n = 0;
  uint32_t groups = 2;
  int64_t intra = 4;
  int64_t inter = 1;
  AllToAllMode mode = AllToAllMode::wide;
  uint32_t depth = 0;
  WidthDistribution widths = WidthDistribution::fixed(2);

  PbcCircuit generate(uint64_t seed) const {
    switch (kind) {
      case Kind::clustered:
        return gen_clustered(n, groups, intra, inter, seed);
      case Kind::alltoall:
        return gen_all_to_all(n, mode, seed);
      case Kind::ppr:
        return gen_random_ppr(n, depth, widths, seed);
    }
    throw std::logic_error("unreachable");
  }

  static GeneratorSpec parse(const std::string& text);
};

namespace detail {

inline uint64_t parse_u64_field(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    unsigned long long x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("generator spec: bad value for '" + key +
                                "': '" + v + "'");
  }
}

inline WidthDistribution parse_width_law(const std::string& v) {
  size_t colon = v.find(':');
  std::string kind = v.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : v.substr(colon + 1);
  if (kind == "fixed")
    return WidthDistribution::fixed(
        static_cast<uint32_t>(parse_u64_field(arg, "width")));
  if (kind == "uniform") {
    size_t dash = arg.find('-');
    if (dash == std::string::npos)
      throw std::invalid_argument("generator spec: uniform width needs lo-hi");
    return WidthDistribution::uniform(
        static_cast<uint32_t>(parse_u64_field(arg.substr(0, dash), "width")),
        static_cast<uint32_t>(parse_u64_field(arg.substr(dash + 1), "width")));
  }
  if (kind == "geometric") {
    try {
      size_t used = 0;
      double p = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument("trailing");
      return WidthDistribution::geometric(p);
    } catch (const std::exception&) {
      throw std::invalid_argument("generator spec: bad geometric parameter '" +
                                  arg + "'");
    }
  }
  throw std::invalid_argument("generator spec: unknown width law '" + kind +
                              "'");
}

}  // namespace detail

inline GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  GeneratorSpec spec;
  spec.text = text;
  size_t colon = text.find(':');
  std::string kind = text.substr(0, colon);
  if (kind == "clustered") spec.kind = Kind::clustered;
  else if (kind == "alltoall") spec.kind = Kind::alltoall;
  else if (kind == "ppr") spec.kind = Kind::ppr;
  else
    throw std::invalid_argument("generator spec: unknown kind '" + kind + "'");
  std::map<std::string, std::string> kv;
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  size_t pos = 0;
  while (pos < rest.size()) {
    size_t comma = rest.find(',', pos);
    std::string item = rest.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? rest.size() : comma + 1;
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("generator spec: expected key=value, got '" +
                                  item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  auto take = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::string();
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  std::string n = take("n");
  if (n.empty())
    throw std::invalid_argument("generator spec: missing required 'n'");
  spec.n = static_cast<uint32_t>(detail::parse_u64_field(n, "n"));
  switch (spec.kind) {
    case Kind::clustered: {
      if (std::string v = take("groups"); !v.empty())
        spec.groups = static_cast<uint32_t>(detail::parse_u64_field(v, "groups"));
      if (std::string v = take("intra"); !v.empty())
        spec.intra = static_cast<int64_t>(detail::parse_u64_field(v, "intra"));
      if (std::string v = take("inter"); !v.empty())
        spec.inter = static_cast<int64_t>(detail::parse_u64_field(v, "inter"));
      break;
    }
    case Kind::alltoall: {
      std::string v = take("mode");
      if (v == "wide" || v.empty()) spec.mode = AllToAllMode::wide;
      else if (v == "pairwise") spec.mode = AllToAllMode::pairwise;
      else
        throw std::invalid_argument("generator spec: unknown mode '" + v + "'");
      break;
    }
    case Kind::ppr: {
      std::string d = take("depth");
      if (d.empty())
        throw std::invalid_argument("generator spec: ppr needs 'depth'");
      spec.depth = static_cast<uint32_t>(detail::parse_u64_field(d, "depth"));
      if (std::string v = take("width"); !v.empty())
        spec.widths = detail::parse_width_law(v);
      break;
    }
  }
  if (!kv.empty())
    throw std::invalid_argument("generator spec: unknown key '" +
                                kv.begin()->first + "'");
  return spec;
}

}  // namespace bbmap

#endif  // BBMAP_BENCHGEN_HPP
