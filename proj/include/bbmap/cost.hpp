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
// Instruction cost model: per-instruction logical error rates and timestep
// durations, the in-module synthesis cost model, instruction tallies for a
// mapped circuit, failure-rate aggregation, and the SWAP-vs-direct
// inter-module comparison.

#ifndef BBMAP_COST_HPP
#define BBMAP_COST_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbmap/mapping.hpp"
#include "bbmap/pauli.hpp"
#include "bbmap/rng.hpp"
#include "bbmap/topology.hpp"

namespace bbmap {

// Logical error rate and duration of each instruction class:
//   I  idle            U  shift automorphism
//   B  in-module measurement
//   C  inter-module measurement
//   T  magic-state injection (error = t_base + p_c unless decoupled)
struct CostTable {
  double p_i = 0, p_u = 0, p_b = 0, p_c = 0, p_t_base = 0;
  int64_t t_i = 8, t_u = 14, t_b = 120, t_c = 120, t_t = 471;
  // Optional caveat: treat injections as if routing contributed no error.
  bool t_inject_excludes_c = false;

  double p_t() const { return t_inject_excludes_c ? p_t_base : p_t_base + p_c; }

  void validate() const {
    for (double p : {p_i, p_u, p_b, p_c, p_t_base, p_t()})
      if (!(p >= 0.0) || p >= 1.0)
        throw std::invalid_argument("error probability outside [0,1)");
    for (int64_t t : {t_i, t_u, t_b, t_c, t_t})
      if (t < 1) throw std::invalid_argument("timestep duration must be >= 1");
  }

  // Central values at physical error rate 1e-4.
  static CostTable physical_1e4() {
    CostTable t;
    t.p_i = std::pow(10.0, -14.8);
    t.p_u = std::pow(10.0, -12.2);
    t.p_b = std::pow(10.0, -9.0);
    t.p_c = std::pow(10.0, -7.4);
    t.p_t_base = std::pow(10.0, -7.4);
    return t;
  }

  // Central values at physical error rate 1e-3.
  static CostTable physical_1e3() {
    CostTable t;
    t.p_i = std::pow(10.0, -8.8);
    t.p_u = std::pow(10.0, -6.4);
    t.p_b = std::pow(10.0, -5.0);
    t.p_c = std::pow(10.0, -2.7);
    t.p_t_base = std::pow(10.0, -5.5);
    return t;
  }
};

// Key-value overrides on top of the 1e-4 defaults, e.g.
//   P_B=1e-9
//   T_C=120   # timesteps
inline CostTable parse_cost_table(const std::string& text) {
  CostTable t = CostTable::physical_1e4();
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("cost table line " + std::to_string(line_no) +
                                  ": expected key=value");
    std::string key = line.substr(0, eq);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
      key.pop_back();
    std::string val = line.substr(eq + 1);
    size_t v = val.find_first_not_of(" \t");
    val = v == std::string::npos ? "" : val.substr(v);
    double num;
    try {
      size_t used = 0;
      num = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("cost table line " + std::to_string(line_no) +
                                  ": bad value '" + val + "'");
    }
    auto ts = [&] {
      int64_t n = static_cast<int64_t>(num);
      if (static_cast<double>(n) != num)
        throw std::invalid_argument("cost table line " +
                                    std::to_string(line_no) +
                                    ": timesteps must be an integer");
      return n;
    };
    if (key == "P_I") t.p_i = num;
    else if (key == "P_U") t.p_u = num;
    else if (key == "P_B") t.p_b = num;
    else if (key == "P_C") t.p_c = num;
    else if (key == "P_T_BASE") t.p_t_base = num;
    else if (key == "T_I") t.t_i = ts();
    else if (key == "T_U") t.t_u = ts();
    else if (key == "T_B") t.t_b = ts();
    else if (key == "T_C") t.t_c = ts();
    else if (key == "T_T") t.t_t = ts();
    else
      throw std::invalid_argument("cost table line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
  }
  t.validate();
  return t;
}

// In-module measurement count for synthesizing one rotation fragment inside
// one module. Counts always land in [1, 25].
class SynthesisModel {
 public:
  static SynthesisModel constant(uint32_t count) {
    check_count(count);
    SynthesisModel m;
    m.mode_ = Mode::constant;
    m.constant_ = count;
    return m;
  }

  // Fragment lookup with a fallback for unlisted fragments.
  static SynthesisModel table(std::map<std::string, uint32_t> entries,
                              uint32_t fallback = 19) {
    for (const auto& [frag, count] : entries) check_count(count);
    check_count(fallback);
    SynthesisModel m;
    m.mode_ = Mode::table;
    m.table_ = std::move(entries);
    m.constant_ = fallback;
    return m;
  }

  // Deterministic per (module, fragment): a clipped discretized normal with
  // mean 18.5 and support [1,25]; >= 90% of draws land in 19 +/- 6.
  static SynthesisModel stochastic(uint64_t seed) {
    SynthesisModel m;
    m.mode_ = Mode::stochastic;
    m.seed_ = seed;
    return m;
  }

  uint32_t cost(uint32_t module, const std::string& fragment) const {
    switch (mode_) {
      case Mode::constant:
        return constant_;
      case Mode::table: {
        auto it = table_.find(fragment);
        return it == table_.end() ? constant_ : it->second;
      }
      case Mode::stochastic: {
        uint64_t h = hash_bytes(fragment, mix_seed(seed_, module));
        double u = static_cast<double>(h >> 11) * 0x1.0p-53;
        const std::array<double, 25>& cdf = normal_cdf();
        for (uint32_t k = 0; k < 25; ++k)
          if (u < cdf[k]) return k + 1;
        return 25;
      }
    }
    return constant_;
  }

 private:
  enum class Mode { constant, table, stochastic };

  static void check_count(uint32_t c) {
    if (c < 1 || c > 25)
      throw std::invalid_argument("synthesis count outside [1,25]");
  }

  static const std::array<double, 25>& normal_cdf() {
    static const std::array<double, 25> cdf = [] {
      std::array<double, 25> w{};
      double total = 0.0;
      for (int k = 1; k <= 25; ++k) {
        double d = (k - 18.5) / 3.0;
        w[k - 1] = std::exp(-0.5 * d * d);
        total += w[k - 1];
      }
      double acc = 0.0;
      for (int k = 0; k < 25; ++k) {
        acc += w[k] / total;
        w[k] = acc;
      }
      w[24] = 1.0;
      return w;
    }();
    return cdf;
  }

  Mode mode_ = Mode::stochastic;
  uint32_t constant_ = 19;
  std::map<std::string, uint32_t> table_;
  uint64_t seed_ = 0;
};

// Per-rotation instruction contribution, retained for reporting.
struct RotationTally {
  int64_t b = 0, c_routing = 0, c_synth = 0, t_inject = 0, idle = 0;
};

struct InstructionTally {
  int64_t b = 0;          // in-module measurements
  int64_t c_routing = 0;  // inter-module measurements from routing
  int64_t c_synth = 0;    // inter-module measurements from rz synthesis
  int64_t t_inject = 0;   // magic-state injections
  int64_t idle = 0;
  int64_t shift = 0;  // shift automorphisms (reserved; no default source)
  std::vector<RotationTally> per_rotation;
};

enum class RotationMode {
  t,   // rotations are already pi/8 level: one injection each
  rz,  // rz rotations are synthesized into rz_t_count T gates each
};

struct TallyOptions {
  RotationMode mode = RotationMode::t;
  uint32_t rz_t_count = 40;  // T gates per synthesized rz rotation
  bool count_idle = false;   // accrue idle on non-participating modules
};

// Fragment of the rotation word owned by one module: its letters at the
// module's qubits in ascending global index.
inline std::string module_fragment(const PauliString& word,
                                   const Clustering& clustering,
                                   uint32_t module) {
  std::string out;
  for (uint32_t q = 0; q < clustering.module_of.size(); ++q)
    if (clustering.module_of[q] == module)
      out.push_back("IXYZ"[static_cast<int>(word.letter(q))]);
  return out;
}

inline InstructionTally tally(const PbcCircuit& circuit,
                              const Clustering& clustering,
                              const Assignment& assignment,
                              const Topology& topo,
                              const SynthesisModel& synth,
                              const TallyOptions& options = {}) {
  if (clustering.module_of.size() != circuit.n_qubits)
    throw std::invalid_argument("clustering width does not match circuit");
  if (assignment.slot_of_module.size() != clustering.num_modules)
    throw std::invalid_argument("assignment size does not match clustering");
  assignment.validate(topo);
  std::vector<ModuleSet> sets = module_supports(circuit, clustering);
  InstructionTally out;
  out.per_rotation.reserve(sets.size());
  std::map<std::vector<uint32_t>, uint32_t> route_memo;
  for (size_t r = 0; r < sets.size(); ++r) {
    const ModuleSet& s = sets[r];
    RotationTally rt;
    if (!s.modules.empty()) {
      for (uint32_t m : s.modules) {
        std::string frag =
            module_fragment(circuit.rotations[r].pauli, clustering, m);
        rt.b += static_cast<int64_t>(synth.cost(m, frag)) * s.weight;
      }
      std::vector<uint32_t> pos;
      pos.reserve(s.modules.size());
      for (uint32_t m : s.modules) pos.push_back(assignment.slot_of_module[m]);
      std::sort(pos.begin(), pos.end());
      auto it = route_memo.find(pos);
      if (it == route_memo.end())
        it = route_memo.emplace(pos, topo.route_cost(pos)).first;
      rt.c_routing = static_cast<int64_t>(it->second) * s.weight;
      rt.t_inject = s.weight;
      if (options.mode == RotationMode::rz &&
          circuit.rotations[r].angle.kind == RotationAngle::Kind::rz) {
        rt.c_synth = static_cast<int64_t>(options.rz_t_count) * s.weight;
        rt.t_inject += static_cast<int64_t>(options.rz_t_count) * s.weight;
      }
      if (options.count_idle)
        rt.idle = static_cast<int64_t>(clustering.num_modules -
                                       s.modules.size()) *
                  s.weight;
    }
    out.b += rt.b;
    out.c_routing += rt.c_routing;
    out.c_synth += rt.c_synth;
    out.t_inject += rt.t_inject;
    out.idle += rt.idle;
    out.per_rotation.push_back(rt);
  }
  return out;
}

namespace detail {

// 1 - prod (1-p_i)^n_i, accumulated in log space.
inline double failure_of(
    const std::vector<std::pair<int64_t, double>>& ops) {
  double log_success = 0.0;
  for (const auto& [count, p] : ops) {
    if (count < 0) throw std::invalid_argument("negative instruction count");
    log_success += static_cast<double>(count) * std::log1p(-p);
  }
  return -std::expm1(log_success);
}

}  // namespace detail

struct ErrorReport {
  double p_total = 0;      // every counted instruction
  double p_non_fixed = 0;  // mapping-dependent: B + routing C
  double p_fixed = 0;      // mapping-independent: synthesis C + injections
  int64_t timesteps = 0;
};

inline int64_t execution_time(const InstructionTally& t,
                              const CostTable& table) {
  return t.b * table.t_b + (t.c_routing + t.c_synth) * table.t_c +
         t.t_inject * table.t_t + t.idle * table.t_i + t.shift * table.t_u;
}

inline ErrorReport program_failure(const InstructionTally& t,
                                   const CostTable& table) {
  table.validate();
  ErrorReport r;
  r.p_total = detail::failure_of({{t.b, table.p_b},
                                  {t.c_routing + t.c_synth, table.p_c},
                                  {t.t_inject, table.p_t()},
                                  {t.idle, table.p_i},
                                  {t.shift, table.p_u}});
  r.p_non_fixed =
      detail::failure_of({{t.b, table.p_b}, {t.c_routing, table.p_c}});
  r.p_fixed =
      detail::failure_of({{t.c_synth, table.p_c}, {t.t_inject, table.p_t()}});
  r.timesteps = execution_time(t, table);
  return r;
}

// Moving a magic state x modules over by SWAPs versus measuring directly
// across the distance.
struct SwapComparison {
  double eps_swap = 0;
  double eps_inter = 0;
  int64_t swap_timesteps = 0;
  int64_t inter_timesteps = 0;
};

inline SwapComparison swap_vs_direct(int64_t x, int64_t y, int64_t y_i,
                                     int64_t y_j, const CostTable& table) {
  if (x < 1) throw std::invalid_argument("module distance must be >= 1");
  for (int64_t v : {y, y_i, y_j})
    if (v < 1 || v > 25)
      throw std::invalid_argument("in-module count outside [1,25]");
  SwapComparison c;
  c.eps_swap = 3.0 * static_cast<double>(x) * table.p_c +
               static_cast<double>(y) * table.p_b;
  c.eps_inter = static_cast<double>(x) * table.p_c +
                static_cast<double>(y_i + y_j) * table.p_b;
  // 120*(3x+y) vs 120*(x+max) at the default durations.
  c.swap_timesteps = table.t_c * 3 * x + table.t_b * y;
  c.inter_timesteps = table.t_c * x + table.t_b * std::max(y_i, y_j);
  return c;
}

}  // namespace bbmap

#endif  // BBMAP_COST_HPP
