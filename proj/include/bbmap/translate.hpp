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
// Gate-circuit to Pauli-based-computation translation.
//
// A circuit U = G_m ... G_1 is rewritten (up to global phase) as
// U = C * R_k ... R_1 where C is the product of the Clifford gates in their
// original order and every R_j is a non-Clifford Pauli product rotation.
// Moving a rotation exp(-i*phi*Q) from after a Clifford prefix C to before it
// conjugates its axis: exp(-i*phi*Q) * C = C * exp(-i*phi * C^dag Q C).
//
// The tableau below therefore tracks the *inverse-frame* images
// g_x[q] = C^dag X_q C and g_z[q] = C^dag Z_q C of the single-qubit
// generators under the Clifford prefix accumulated so far.

#ifndef BBMAP_TRANSLATE_HPP
#define BBMAP_TRANSLATE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "bbmap/gate_circuit.hpp"
#include "bbmap/pauli.hpp"

namespace bbmap {

class InverseFrame {
 public:
  explicit InverseFrame(uint32_t n) : n_(n) {
    gx_.reserve(n);
    gz_.reserve(n);
    for (uint32_t q = 0; q < n; ++q) {
      gx_.push_back(PauliString::single(n, q, Letter::X));
      gz_.push_back(PauliString::single(n, q, Letter::Z));
    }
  }

  uint32_t size() const { return n_; }
  const PauliString& x_image(uint32_t q) const { return gx_.at(q); }
  const PauliString& z_image(uint32_t q) const { return gz_.at(q); }

  // C^dag P C for an arbitrary signed Pauli word P, assembled letterwise
  // from the generator images (Y_q = i * X_q * Z_q).
  PauliString map_through(const PauliString& p) const {
    if (p.size() != n_) throw std::invalid_argument("pauli width mismatch");
    PauliString out(n_);
    out.set_sign(p.sign());
    for (uint32_t q : p.support()) {
      switch (p.letter(q)) {
        case Letter::X: out = out * gx_[q]; break;
        case Letter::Z: out = out * gz_[q]; break;
        case Letter::Y: out = (out * gx_[q] * gz_[q]).times_i(); break;
        case Letter::I: break;
      }
    }
    return out;
  }

  // Appends the Clifford rotation exp(-i pi/4 * axis) to the prefix. The
  // generator images update as g -> C^dag V^dag s V C; V^dag s V is s when
  // the axis commutes with the bare generator s and i*axis*s otherwise, and
  // mapping through the old frame turns axis into t below. Only generators
  // at qubits inside supp(axis) can anticommute with it.
  void apply_pi4(const PauliString& axis) {
    if (axis.size() != n_) throw std::invalid_argument("pauli width mismatch");
    if (!axis.is_hermitian())
      throw std::invalid_argument("rotation axis must be Hermitian");
    PauliString t = map_through(axis);
    for (uint32_t q : axis.support()) {
      Letter l = axis.letter(q);
      if (l != Letter::X) gx_[q] = (t * gx_[q]).times_i();
      if (l != Letter::Z) gz_[q] = (t * gz_[q]).times_i();
    }
  }

 private:
  uint32_t n_;
  std::vector<PauliString> gx_, gz_;
};

namespace detail {

// Clifford gates as pi/4 axis sequences, application order. A negated axis
// encodes a -pi/4 rotation. All identities hold up to global phase:
//   H = Z(pi/4) X(pi/4) Z(pi/4),   S = Z(pi/4),   Sdg = Z(-pi/4),
//   CX(c,t) = (Z_c X_t)(pi/4) (Z_c)(-pi/4) (X_t)(-pi/4).
inline std::vector<PauliString> clifford_axes(const Gate& g, uint32_t n) {
  auto one = [&](uint32_t q, Letter l) { return PauliString::single(n, q, l); };
  switch (g.kind) {
    case GateKind::h:
      return {one(static_cast<uint32_t>(g.a), Letter::Z),
              one(static_cast<uint32_t>(g.a), Letter::X),
              one(static_cast<uint32_t>(g.a), Letter::Z)};
    case GateKind::s:
      return {one(static_cast<uint32_t>(g.a), Letter::Z)};
    case GateKind::sdg:
      return {one(static_cast<uint32_t>(g.a), Letter::Z).negated()};
    case GateKind::cx: {
      PauliString zx(n);
      zx.set(static_cast<uint32_t>(g.a), Letter::Z);
      zx.set(static_cast<uint32_t>(g.b), Letter::X);
      return {zx, one(static_cast<uint32_t>(g.a), Letter::Z).negated(),
              one(static_cast<uint32_t>(g.b), Letter::X).negated()};
    }
    default:
      throw std::invalid_argument("not a Clifford gate");
  }
}

}  // namespace detail

// Translates a gate circuit into Pauli-based form. Every non-Clifford gate
// becomes exactly one rotation, in gate order:
//   T   -> pi/8 about the Z image,   Tdg -> pi/8 about the negated image,
//   RZ(theta) -> rz(theta/2) about the Z image (RZ(theta) = exp(-i theta/2 Z)).
// MEASZ records the Z image as a measurement basis and must be terminal:
// once a qubit is measured no further gate of any kind may follow.
inline PbcCircuit to_pbc(const GateCircuit& circuit) {
  circuit.validate();
  uint32_t n = static_cast<uint32_t>(circuit.n_qubits);
  InverseFrame frame(n);
  PbcCircuit out;
  out.n_qubits = n;
  bool measured = false;
  for (const Gate& g : circuit.gates) {
    if (measured && g.kind != GateKind::measz)
      throw std::invalid_argument("gates after MEASZ are not supported");
    switch (g.kind) {
      case GateKind::h:
      case GateKind::s:
      case GateKind::sdg:
      case GateKind::cx:
        for (const PauliString& axis : detail::clifford_axes(g, n))
          frame.apply_pi4(axis);
        break;
      case GateKind::t:
        out.rotations.emplace_back(frame.z_image(static_cast<uint32_t>(g.a)),
                                   RotationAngle::pi8());
        break;
      case GateKind::tdg:
        out.rotations.emplace_back(
            frame.z_image(static_cast<uint32_t>(g.a)).negated(),
            RotationAngle::pi8());
        break;
      case GateKind::rz:
        out.rotations.emplace_back(frame.z_image(static_cast<uint32_t>(g.a)),
                                   RotationAngle::rz(g.theta / 2.0));
        break;
      case GateKind::measz:
        out.measurements.push_back(frame.z_image(static_cast<uint32_t>(g.a)));
        measured = true;
        break;
    }
  }
  return out;
}

// T-gate count for synthesizing one RZ rotation to accuracy eps. Exact
// entries in `overrides` win; otherwise the count extrapolates log-linearly
// from the anchor pair: count(eps) = ceil(anchor_count * log(1/eps) /
// log(1/anchor_eps)). The default anchor charges 40 T gates at eps = 1e-4.
struct RzSynthesisSpec {
  double anchor_eps = 1e-4;
  uint64_t anchor_count = 40;
  std::map<double, uint64_t> overrides;

  uint64_t t_count(double eps) const {
    if (!(eps > 0.0) || !(eps < 1.0))
      throw std::invalid_argument("rz synthesis accuracy must be in (0, 1)");
    auto it = overrides.find(eps);
    if (it != overrides.end()) return it->second;
    double scaled = static_cast<double>(anchor_count) * std::log10(1.0 / eps) /
                    std::log10(1.0 / anchor_eps);
    return static_cast<uint64_t>(std::ceil(scaled - 1e-12));
  }
};

inline uint64_t rz_t_count(double eps, const RzSynthesisSpec& spec = {}) {
  return spec.t_count(eps);
}

}  // namespace bbmap

#endif  // BBMAP_TRANSLATE_HPP
