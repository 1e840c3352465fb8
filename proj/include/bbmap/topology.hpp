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
// Module-array topologies and ancilla routing.
//
// line:  module slots sit at integer coordinates 1..M; magic-state factories
//        sit at integer coordinates in [0, M] (default: one factory at 0).
//        A joint measurement claims the ancilla interval spanning the
//        participating slots and the nearest useful factory; its cost is the
//        interval length in unit edges.
//
// grid:  slots form a cols x rows array, cell (row, col) with row 0 adjacent
//        to the factory edge. Factories are virtual cells at row -1 over a
//        subset of columns (default: every column). Routing uses a
//        trunk-and-branch tree: a vertical trunk drops from the factory to
//        the deepest target row, and each target row branches horizontally
//        from the trunk to its leftmost and rightmost targets.
//
// steiner_oracle computes the exact minimum tree (Dreyfus-Wagner) on small
// instances for validating the closed-form plans above.

#ifndef BBMAP_TOPOLOGY_HPP
#define BBMAP_TOPOLOGY_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbmap {

// Grid cell; factories live on the virtual row -1. Line topologies reuse
// `col` as the 1-d coordinate with row 0.
struct Cell {
  int32_t row = 0;
  int32_t col = 0;
  bool operator==(const Cell& o) const { return row == o.row && col == o.col; }
  bool operator<(const Cell& o) const {
    return row != o.row ? row < o.row : col < o.col;
  }
};

// A routed ancilla tree: the chosen factory (line coordinate or grid
// column) and the unit edges claimed. The measurement cost is edges.size().
struct RoutePlan {
  uint32_t factory = 0;
  std::vector<std::pair<Cell, Cell>> edges;

  uint32_t cost() const { return static_cast<uint32_t>(edges.size()); }
};

enum class TopologyKind { line, grid };

class Topology {
 public:
  // Slots at coordinates 1..slots, factories at coordinates in [0, slots].
  static Topology line(uint32_t slots, std::vector<uint32_t> factories = {}) {
    if (slots == 0) throw std::invalid_argument("line needs at least one slot");
    if (factories.empty()) factories = {0};
    std::sort(factories.begin(), factories.end());
    factories.erase(std::unique(factories.begin(), factories.end()),
                    factories.end());
    if (factories.back() > slots)
      throw std::invalid_argument("line factory coordinate out of [0, slots]");
    Topology t;
    t.kind_ = TopologyKind::line;
    t.slots_ = slots;
    t.factories_ = std::move(factories);
    return t;
  }

  // cols x rows slot array; factories at row -1 over `factory_cols`
  // (default: all columns).
  static Topology grid(uint32_t cols, uint32_t rows,
                       std::vector<uint32_t> factory_cols = {}) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("grid needs positive dimensions");
    if (factory_cols.empty())
      for (uint32_t c = 0; c < cols; ++c) factory_cols.push_back(c);
    std::sort(factory_cols.begin(), factory_cols.end());
    factory_cols.erase(std::unique(factory_cols.begin(), factory_cols.end()),
                       factory_cols.end());
    if (factory_cols.back() >= cols)
      throw std::invalid_argument("grid factory column out of range");
    Topology t;
    t.kind_ = TopologyKind::grid;
    t.rows_ = rows;
    t.cols_ = cols;
    t.factories_ = std::move(factory_cols);
    return t;
  }

  TopologyKind kind() const { return kind_; }
  uint32_t rows() const { return rows_; }
  uint32_t cols() const { return cols_; }
  const std::vector<uint32_t>& factories() const { return factories_; }

  uint32_t num_slots() const {
    return kind_ == TopologyKind::line ? slots_ : rows_ * cols_;
  }

  // Grid slots are row-major: slot = row * cols + col.
  Cell slot_cell(uint32_t slot) const {
    check_slot(slot);
    if (kind_ == TopologyKind::line)
      return Cell{0, static_cast<int32_t>(slot + 1)};
    return Cell{static_cast<int32_t>(slot / cols_),
                static_cast<int32_t>(slot % cols_)};
  }

  uint32_t distance_to_nearest_factory(uint32_t slot) const {
    check_slot(slot);
    uint32_t best = std::numeric_limits<uint32_t>::max();
    if (kind_ == TopologyKind::line) {
      int32_t x = static_cast<int32_t>(slot + 1);
      for (uint32_t f : factories_)
        best = std::min(best, static_cast<uint32_t>(
                                  std::abs(x - static_cast<int32_t>(f))));
    } else {
      Cell c = slot_cell(slot);
      for (uint32_t f : factories_)
        best = std::min(best, static_cast<uint32_t>(c.row) + 1 +
                                  static_cast<uint32_t>(std::abs(
                                      c.col - static_cast<int32_t>(f))));
    }
    return best;
  }

  // Ancilla tree for a joint measurement touching `slots`; the best factory
  // (ties to the lowest coordinate) is included as the injection point.
  RoutePlan route(const std::vector<uint32_t>& slots) const {
    return kind_ == TopologyKind::line ? line_plan(slots) : grid_plan(slots);
  }

  uint32_t route_cost(const std::vector<uint32_t>& slots) const {
    return route(slots).cost();
  }

  // Canonical descriptor, e.g. "line:5:factories=0" or
  // "grid:4x3:factories=0;1;2;3" (grid dimensions are cols x rows).
  std::string str() const {
    std::ostringstream out;
    if (kind_ == TopologyKind::line) out << "line:" << slots_;
    else out << "grid:" << cols_ << 'x' << rows_;
    out << ":factories=";
    for (size_t i = 0; i < factories_.size(); ++i) {
      if (i) out << ';';
      out << factories_[i];
    }
    return out.str();
  }

 private:
  void check_slot(uint32_t slot) const {
    if (slot >= num_slots()) throw std::invalid_argument("slot out of range");
  }

  RoutePlan line_plan(const std::vector<uint32_t>& slots) const {
    RoutePlan plan;
    plan.factory = factories_.front();
    if (slots.empty()) return plan;
    int32_t lo = std::numeric_limits<int32_t>::max(), hi = 0;
    for (uint32_t s : slots) {
      check_slot(s);
      int32_t x = static_cast<int32_t>(s + 1);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    uint32_t best = std::numeric_limits<uint32_t>::max();
    for (uint32_t f : factories_) {
      int32_t fx = static_cast<int32_t>(f);
      uint32_t span = static_cast<uint32_t>(std::max(hi, fx) - std::min(lo, fx));
      if (span < best) {
        best = span;
        plan.factory = f;
      }
    }
    int32_t fx = static_cast<int32_t>(plan.factory);
    int32_t from = std::min(lo, fx), to = std::max(hi, fx);
    for (int32_t x = from; x < to; ++x)
      plan.edges.push_back({Cell{0, x}, Cell{0, x + 1}});
    return plan;
  }

  RoutePlan grid_plan(const std::vector<uint32_t>& slots) const {
    RoutePlan plan;
    plan.factory = factories_.front();
    if (slots.empty()) return plan;
    // Per-row horizontal extents of the targets.
    int32_t deepest = -1;
    std::vector<std::pair<int32_t, int32_t>> extent(
        rows_, {std::numeric_limits<int32_t>::max(), -1});
    for (uint32_t s : slots) {
      Cell c = slot_cell(s);
      deepest = std::max(deepest, c.row);
      auto& [mn, mx] = extent[static_cast<uint32_t>(c.row)];
      mn = std::min(mn, c.col);
      mx = std::max(mx, c.col);
    }
    auto cost_with = [&](int32_t fc) {
      uint32_t cost = static_cast<uint32_t>(deepest + 1);  // trunk
      for (int32_t r = 0; r <= deepest; ++r) {
        auto [mn, mx] = extent[static_cast<uint32_t>(r)];
        if (mx < 0) continue;
        cost += static_cast<uint32_t>(std::max(fc - mn, 0) +
                                      std::max(mx - fc, 0));
      }
      return cost;
    };
    uint32_t best = std::numeric_limits<uint32_t>::max();
    for (uint32_t f : factories_) {
      uint32_t c = cost_with(static_cast<int32_t>(f));
      if (c < best) {
        best = c;
        plan.factory = f;
      }
    }
    int32_t fc = static_cast<int32_t>(plan.factory);
    for (int32_t r = -1; r < deepest; ++r)
      plan.edges.push_back({Cell{r, fc}, Cell{r + 1, fc}});
    for (int32_t r = 0; r <= deepest; ++r) {
      auto [mn, mx] = extent[static_cast<uint32_t>(r)];
      if (mx < 0) continue;
      for (int32_t c = mn; c < fc; ++c)
        plan.edges.push_back({Cell{r, c}, Cell{r, c + 1}});
      for (int32_t c = fc; c < mx; ++c)
        plan.edges.push_back({Cell{r, c}, Cell{r, c + 1}});
    }
    return plan;
  }

  TopologyKind kind_ = TopologyKind::line;
  uint32_t slots_ = 0;          // line only
  uint32_t rows_ = 0, cols_ = 0;  // grid only
  std::vector<uint32_t> factories_;
};

namespace detail {

// Exact minimum Steiner tree weight (Dreyfus-Wagner) on an unweighted graph
// given as an adjacency list; dp over terminal subsets with metric-closure
// relaxation.
inline uint32_t steiner_exact(const std::vector<std::vector<uint32_t>>& adj,
                              std::vector<uint32_t> terminals) {
  constexpr uint32_t kInf = std::numeric_limits<uint32_t>::max() / 4;
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()),
                  terminals.end());
  if (terminals.size() <= 1) return 0;
  uint32_t n = static_cast<uint32_t>(adj.size());

  // All-pairs shortest paths by BFS from every node.
  std::vector<std::vector<uint32_t>> dist(n, std::vector<uint32_t>(n, kInf));
  for (uint32_t s = 0; s < n; ++s) {
    std::vector<uint32_t> queue{s};
    dist[s][s] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
      uint32_t v = queue[head];
      for (uint32_t u : adj[v])
        if (dist[s][u] == kInf) {
          dist[s][u] = dist[s][v] + 1;
          queue.push_back(u);
        }
    }
  }

  uint32_t root = terminals.back();
  uint32_t t = static_cast<uint32_t>(terminals.size()) - 1;
  std::vector<std::vector<uint32_t>> dp(
      size_t{1} << t, std::vector<uint32_t>(n, kInf));
  for (uint32_t i = 0; i < t; ++i)
    for (uint32_t v = 0; v < n; ++v) dp[size_t{1} << i][v] = dist[terminals[i]][v];
  for (uint32_t s = 1; s < (1u << t); ++s) {
    if (std::popcount(s) > 1) {
      for (uint32_t v = 0; v < n; ++v)
        for (uint32_t sub = (s - 1) & s; sub > s - sub; sub = (sub - 1) & s)
          dp[s][v] = std::min(dp[s][v], dp[sub][v] + dp[s ^ sub][v]);
      // Metric-closure pass: grow the tree rooted near v towards u.
      std::vector<uint32_t> relaxed(n);
      for (uint32_t u = 0; u < n; ++u) {
        uint32_t best = dp[s][u];
        for (uint32_t v = 0; v < n; ++v)
          best = std::min(best, dp[s][v] + dist[v][u]);
        relaxed[u] = best;
      }
      dp[s] = std::move(relaxed);
    }
  }
  uint32_t answer = dp[(size_t{1} << t) - 1][root];
  if (answer >= kInf)
    throw std::invalid_argument("steiner terminals are disconnected");
  return answer;
}

}  // namespace detail

// Exact minimum ancilla tree connecting the given slots and the best single
// factory. Exponential in the slot count and limited to small arrays; meant
// for validating route() plans, not for production mapping.
inline uint32_t steiner_oracle(const Topology& topo,
                               const std::vector<uint32_t>& slots) {
  if (slots.empty()) return 0;
  std::vector<uint32_t> targets = slots;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (targets.size() > 8)
    throw std::invalid_argument("steiner oracle limited to 8 distinct slots");

  if (topo.kind() == TopologyKind::line) {
    uint32_t coords = topo.num_slots() + 1;  // nodes at 0..slots
    if (coords > 33)
      throw std::invalid_argument("steiner oracle limited to 32 line slots");
    std::vector<std::vector<uint32_t>> adj(coords);
    for (uint32_t x = 0; x + 1 < coords; ++x) {
      adj[x].push_back(x + 1);
      adj[x + 1].push_back(x);
    }
    std::vector<uint32_t> terminals;
    for (uint32_t s : targets) terminals.push_back(s + 1);
    uint32_t best = std::numeric_limits<uint32_t>::max();
    for (uint32_t f : topo.factories()) {
      terminals.push_back(f);
      best = std::min(best, detail::steiner_exact(adj, terminals));
      terminals.pop_back();
    }
    return best;
  }

  uint32_t cells = topo.rows() * topo.cols();
  if (cells > 20)
    throw std::invalid_argument("steiner oracle limited to 20 grid cells");
  // Cells 0..cells-1 row-major, plus one virtual factory node.
  uint32_t vf = cells;
  uint32_t best = std::numeric_limits<uint32_t>::max();
  for (uint32_t f : topo.factories()) {
    std::vector<std::vector<uint32_t>> adj(cells + 1);
    for (uint32_t r = 0; r < topo.rows(); ++r)
      for (uint32_t c = 0; c < topo.cols(); ++c) {
        uint32_t id = r * topo.cols() + c;
        if (c + 1 < topo.cols()) {
          adj[id].push_back(id + 1);
          adj[id + 1].push_back(id);
        }
        if (r + 1 < topo.rows()) {
          adj[id].push_back(id + topo.cols());
          adj[id + topo.cols()].push_back(id);
        }
      }
    adj[vf].push_back(f);
    adj[f].push_back(vf);
    std::vector<uint32_t> terminals = targets;
    terminals.push_back(vf);
    best = std::min(best, detail::steiner_exact(adj, terminals));
  }
  return best;
}

// Topology descriptors:
//   line:auto | line:<slots> [:factories=<c0>;<c1>;...]
//   grid:auto | grid:<cols>x<rows> [:factories=<col0>;<col1>;...]
// `auto` sizes the array to `required_slots` (grids cap at 4 columns).
inline Topology parse_topology(const std::string& descriptor,
                               uint32_t required_slots) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : descriptor) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.empty() || (parts[0] != "line" && parts[0] != "grid"))
    throw std::invalid_argument("unknown topology kind in '" + descriptor + "'");
  if (required_slots == 0)
    throw std::invalid_argument("topology needs at least one module slot");

  auto parse_u32 = [&](const std::string& s) {
    size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v < 0)
      throw std::invalid_argument("bad number '" + s + "' in topology '" +
                                  descriptor + "'");
    return static_cast<uint32_t>(v);
  };

  std::vector<uint32_t> factories;
  if (parts.size() > 3)
    throw std::invalid_argument("too many fields in topology '" + descriptor + "'");
  if (parts.size() == 3) {
    const std::string& f = parts[2];
    if (f.rfind("factories=", 0) != 0)
      throw std::invalid_argument("expected factories=... in '" + descriptor + "'");
    std::string list = f.substr(10), item;
    std::istringstream in(list);
    while (std::getline(in, item, ';')) factories.push_back(parse_u32(item));
    if (factories.empty())
      throw std::invalid_argument("empty factory list in '" + descriptor + "'");
  }
  if (parts.size() < 2)
    throw std::invalid_argument("topology '" + descriptor + "' needs a size");

  Topology topo = Topology::line(1);
  if (parts[0] == "line") {
    uint32_t slots =
        parts[1] == "auto" ? required_slots : parse_u32(parts[1]);
    topo = Topology::line(slots, std::move(factories));
  } else {
    uint32_t rows, cols;
    if (parts[1] == "auto") {
      cols = std::min(4u, required_slots);
      rows = (required_slots + cols - 1) / cols;
    } else {
      auto x = parts[1].find('x');
      if (x == std::string::npos)
        throw std::invalid_argument("grid size must be <cols>x<rows> in '" +
                                    descriptor + "'");
      cols = parse_u32(parts[1].substr(0, x));
      rows = parse_u32(parts[1].substr(x + 1));
    }
    topo = Topology::grid(cols, rows, std::move(factories));
  }
  if (topo.num_slots() < required_slots)
    throw std::invalid_argument("topology '" + descriptor + "' has " +
                                std::to_string(topo.num_slots()) +
                                " slots but " + std::to_string(required_slots) +
                                " modules need placing");
  return topo;
}

}  // namespace bbmap

#endif  // BBMAP_TOPOLOGY_HPP
