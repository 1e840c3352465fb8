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
// Text formats.
//
// Gate circuit:
//   QUBITS 3
//   H 0
//   CX 0 1
//   RZ 0.25 2
//   MEASZ 0
//
// Rotation list:
//   QUBITS 3
//   ROT pi8 XIZ 2        # weight 2, angle pi/8
//   ROT pi4 -ZZI         # sign prefix on the Pauli word
//   ROT rz:0.125 IYI
//   MEAS ZII
//
// '#' starts a comment; blank lines are skipped. Mnemonics are
// case-insensitive. Errors carry 1-based line numbers.

#ifndef BBMAP_PARSE_HPP
#define BBMAP_PARSE_HPP

#include <cctype>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bbmap/gate_circuit.hpp"
#include "bbmap/pauli.hpp"

namespace bbmap {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

inline std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(strip_comment(line));
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

inline std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

inline std::size_t parse_index(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size() || v < 0) throw std::invalid_argument("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a qubit index, got '" + tok + "'");
  }
}

inline double parse_real(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a real number, got '" + tok + "'");
  }
}

}  // namespace detail

// Parses the gate-circuit format. Validates operand ranges as it goes so the
// error message can carry the offending line.
inline GateCircuit parse_gate_circuit(std::istream& in) {
  GateCircuit c;
  bool have_header = false;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::tokenize(raw);
    if (toks.empty()) continue;
    std::string op = detail::upper(toks[0]);
    if (!have_header) {
      if (op != "QUBITS")
        throw ParseError(lineno, "expected 'QUBITS <n>' header");
      if (toks.size() != 2)
        throw ParseError(lineno, "QUBITS takes exactly one argument");
      c.n_qubits = detail::parse_index(toks[1], lineno);
      if (c.n_qubits == 0) throw ParseError(lineno, "QUBITS must be positive");
      have_header = true;
      continue;
    }
    Gate g;
    std::size_t want = 2;  // token count including mnemonic
    if (op == "H") g.kind = GateKind::h;
    else if (op == "S") g.kind = GateKind::s;
    else if (op == "SDG") g.kind = GateKind::sdg;
    else if (op == "T") g.kind = GateKind::t;
    else if (op == "TDG") g.kind = GateKind::tdg;
    else if (op == "MEASZ") g.kind = GateKind::measz;
    else if (op == "CX") { g.kind = GateKind::cx; want = 3; }
    else if (op == "RZ") { g.kind = GateKind::rz; want = 3; }
    else if (op == "QUBITS") throw ParseError(lineno, "duplicate QUBITS header");
    else throw ParseError(lineno, "unknown gate '" + toks[0] + "'");
    if (toks.size() != want)
      throw ParseError(lineno, std::string(gate_name(g.kind)) +
                                   " takes " + std::to_string(want - 1) +
                                   " argument(s)");
    if (g.kind == GateKind::rz) {
      g.theta = detail::parse_real(toks[1], lineno);
      g.a = detail::parse_index(toks[2], lineno);
    } else if (g.kind == GateKind::cx) {
      g.a = detail::parse_index(toks[1], lineno);
      g.b = detail::parse_index(toks[2], lineno);
      if (g.a == g.b) throw ParseError(lineno, "CX operands must differ");
    } else {
      g.a = detail::parse_index(toks[1], lineno);
    }
    if (g.a >= c.n_qubits || (is_two_qubit(g.kind) && g.b >= c.n_qubits))
      throw ParseError(lineno, "qubit index out of range");
    c.gates.push_back(g);
  }
  if (!have_header) throw ParseError(lineno + 1, "missing QUBITS header");
  return c;
}

inline GateCircuit parse_gate_circuit(const std::string& text) {
  std::istringstream in(text);
  return parse_gate_circuit(in);
}

namespace detail {

inline PauliString parse_word(const std::string& tok, std::size_t n,
                              std::size_t line) {
  PauliString p;
  try {
    p = PauliString::parse(tok);
  } catch (const std::exception& e) {
    throw ParseError(line, std::string("bad Pauli word: ") + e.what());
  }
  if (p.size() != n)
    throw ParseError(line, "Pauli word width " + std::to_string(p.size()) +
                               " does not match QUBITS " + std::to_string(n));
  if (!p.is_hermitian())
    throw ParseError(line, "Pauli word must carry a real sign");
  return p;
}

}  // namespace detail

// Parses the rotation-list format. Duplicate ROT lines (same angle, same
// signed word) merge by summing weights into the first occurrence.
inline PbcCircuit parse_rotation_list(std::istream& in) {
  PbcCircuit c;
  bool have_header = false;
  std::string raw;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t> seen;  // "<angle>|<word>" -> rotation idx
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::tokenize(raw);
    if (toks.empty()) continue;
    std::string op = detail::upper(toks[0]);
    if (!have_header) {
      if (op != "QUBITS")
        throw ParseError(lineno, "expected 'QUBITS <n>' header");
      if (toks.size() != 2)
        throw ParseError(lineno, "QUBITS takes exactly one argument");
      c.n_qubits = detail::parse_index(toks[1], lineno);
      if (c.n_qubits == 0) throw ParseError(lineno, "QUBITS must be positive");
      have_header = true;
      continue;
    }
    if (op == "ROT") {
      if (toks.size() != 3 && toks.size() != 4)
        throw ParseError(lineno, "ROT takes an angle, a Pauli word and an "
                                 "optional weight");
      RotationAngle angle;
      std::string atok = toks[1];
      std::string lower;
      for (char ch : atok)
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
      if (lower == "pi4") angle = RotationAngle::pi4();
      else if (lower == "pi8") angle = RotationAngle::pi8();
      else if (lower.rfind("rz:", 0) == 0)
        angle = RotationAngle::rz(detail::parse_real(atok.substr(3), lineno));
      else
        throw ParseError(lineno, "unknown angle '" + atok +
                                     "' (want pi4, pi8 or rz:<theta>)");
      PauliString word = detail::parse_word(toks[2], c.n_qubits, lineno);
      if (word.is_identity())
        throw ParseError(lineno, "rotation about the identity is meaningless");
      std::int64_t weight = 1;
      if (toks.size() == 4) {
        std::size_t w = detail::parse_index(toks[3], lineno);
        if (w == 0) throw ParseError(lineno, "weight must be positive");
        weight = static_cast<std::int64_t>(w);
      }
      std::ostringstream keys;
      keys << static_cast<int>(angle.kind) << ':' << angle.theta << '|'
           << word.str();
      std::string key = keys.str();
      auto it = seen.find(key);
      if (it != seen.end()) {
        c.rotations[it->second].weight += weight;
      } else {
        seen.emplace(key, c.rotations.size());
        c.rotations.push_back(PauliRotation{word, angle, weight});
      }
    } else if (op == "MEAS") {
      if (toks.size() != 2)
        throw ParseError(lineno, "MEAS takes exactly one Pauli word");
      c.measurements.push_back(detail::parse_word(toks[1], c.n_qubits, lineno));
    } else if (op == "QUBITS") {
      throw ParseError(lineno, "duplicate QUBITS header");
    } else {
      throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
    }
  }
  if (!have_header) throw ParseError(lineno + 1, "missing QUBITS header");
  return c;
}

inline PbcCircuit parse_rotation_list(const std::string& text) {
  std::istringstream in(text);
  return parse_rotation_list(in);
}

inline std::string serialize_rotation_list(const PbcCircuit& c) {
  std::ostringstream out;
  out << "QUBITS " << c.n_qubits << "\n";
  for (const PauliRotation& r : c.rotations) {
    out << "ROT ";
    switch (r.angle.kind) {
      case RotationAngle::Kind::clifford_pi4: out << "pi4"; break;
      case RotationAngle::Kind::t_pi8: out << "pi8"; break;
      case RotationAngle::Kind::rz: out << "rz:" << r.angle.theta; break;
    }
    out << ' ' << r.pauli.str();
    if (r.weight != 1) out << ' ' << r.weight;
    out << "\n";
  }
  for (const PauliString& m : c.measurements)
    out << "MEAS " << m.str() << "\n";
  return out.str();
}

}  // namespace bbmap

#endif  // BBMAP_PARSE_HPP
