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

#ifndef BBMAP_GATE_CIRCUIT_HPP
#define BBMAP_GATE_CIRCUIT_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbmap {

enum class GateKind {
  h,
  s,
  sdg,
  cx,
  t,
  tdg,
  rz,
  measz,
};

inline bool is_clifford(GateKind k) {
  return k == GateKind::h || k == GateKind::s || k == GateKind::sdg ||
         k == GateKind::cx;
}

inline bool is_two_qubit(GateKind k) { return k == GateKind::cx; }

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::h: return "H";
    case GateKind::s: return "S";
    case GateKind::sdg: return "Sdg";
    case GateKind::cx: return "CX";
    case GateKind::t: return "T";
    case GateKind::tdg: return "Tdg";
    case GateKind::rz: return "RZ";
    case GateKind::measz: return "MEASZ";
  }
  return "?";
}

// One gate. `a` is the only operand for single-qubit gates; for CX, `a` is
// the control and `b` the target. `theta` carries the RZ angle and is zero
// otherwise.
struct Gate {
  GateKind kind = GateKind::h;
  std::size_t a = 0;
  std::size_t b = 0;
  double theta = 0.0;
};

struct GateCircuit {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;

  void validate() const {
    for (const Gate& g : gates) {
      if (g.a >= n_qubits)
        throw std::invalid_argument("gate operand out of range");
      if (is_two_qubit(g.kind)) {
        if (g.b >= n_qubits)
          throw std::invalid_argument("gate operand out of range");
        if (g.a == g.b)
          throw std::invalid_argument("two-qubit gate with equal operands");
      }
    }
  }

  std::size_t non_clifford_count() const {
    std::size_t c = 0;
    for (const Gate& g : gates)
      if (g.kind == GateKind::t || g.kind == GateKind::tdg ||
          g.kind == GateKind::rz)
        ++c;
    return c;
  }
};

}  // namespace bbmap

#endif  // BBMAP_GATE_CIRCUIT_HPP
