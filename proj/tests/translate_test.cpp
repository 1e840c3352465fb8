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

#include "bbmap/translate.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "bbmap/parse.hpp"
#include "bbmap/rng.hpp"
#include "support/dense.hpp"
#include "support/gates.hpp"

namespace bbmap {
namespace {

using testing::circuit_matrix;
using testing::equal_up_to_global_phase;
using testing::gate_matrix;
using testing::Mat;
using testing::max_abs_diff;
using testing::pauli_matrix;
using testing::rotation_matrix;

// Product of the emitted rotations, first rotation rightmost (applied first).
Mat rotation_product(const PbcCircuit& pbc) {
    Mat r = Mat::identity(size_t{1} << pbc.n_qubits);
    for (const PauliRotation& rot : pbc.rotations) {
        double phi = 0.0;
        switch (rot.angle.kind) {
            case RotationAngle::Kind::clifford_pi4: phi = M_PI / 4; break;
            case RotationAngle::Kind::t_pi8: phi = M_PI / 8; break;
            case RotationAngle::Kind::rz: phi = rot.angle.theta; break;
        }
        for (int64_t w = 0; w < rot.weight; ++w)
            r = rotation_matrix(rot.pauli, phi) * r;
    }
    return r;
}

// Product of only the Clifford gates of `c`, in their original order.
Mat clifford_product(const GateCircuit& c) {
    Mat f = Mat::identity(size_t{1} << c.n_qubits);
    for (const Gate& g : c.gates)
        if (is_clifford(g.kind)) f = gate_matrix(g, c.n_qubits) * f;
    return f;
}

GateCircuit strip_measurements(GateCircuit c) {
    std::vector<Gate> kept;
    for (const Gate& g : c.gates)
        if (g.kind != GateKind::measz) kept.push_back(g);
    c.gates = std::move(kept);
    return c;
}

// The frame starts at the identity map.
TEST(InverseFrame, StartsAsIdentity) {
    InverseFrame f(3);
    EXPECT_EQ(f.x_image(1).str(), "+IXI");
    EXPECT_EQ(f.z_image(2).str(), "+IIZ");
    EXPECT_EQ(f.map_through(PauliString::parse("-XYZ")).str(), "-XYZ");
}

// H exchanges the X and Z images; CX spreads them the textbook way.
TEST(InverseFrame, KnownGateActions) {
    {
        InverseFrame f(1);
        for (const auto& axis :
             detail::clifford_axes(Gate{GateKind::h, 0, 0, 0.0}, 1))
            f.apply_pi4(axis);
        EXPECT_EQ(f.x_image(0).str(), "+Z");
        EXPECT_EQ(f.z_image(0).str(), "+X");
    }
    {
        InverseFrame f(2);
        for (const auto& axis :
             detail::clifford_axes(Gate{GateKind::cx, 0, 1, 0.0}, 2))
            f.apply_pi4(axis);
        EXPECT_EQ(f.x_image(0).str(), "+XX");
        EXPECT_EQ(f.x_image(1).str(), "+IX");
        EXPECT_EQ(f.z_image(0).str(), "+ZI");
        EXPECT_EQ(f.z_image(1).str(), "+ZZ");
    }
}

// S: S^dag X S = -Y in the inverse frame.
TEST(InverseFrame, PhaseGateGivesSignedImage) {
    InverseFrame f(1);
    f.apply_pi4(PauliString::parse("Z"));
    EXPECT_EQ(f.x_image(0).str(), "-Y");
    EXPECT_EQ(f.z_image(0).str(), "+Z");
}

// Every image stays Hermitian and the map stays symplectic (images of X_q
// and Z_q anticommute on the same qubit, commute across qubits).
TEST(InverseFrame, FrameStaysSymplectic) {
    Rng rng(7);
    InverseFrame f(4);
    for (int step = 0; step < 200; ++step) {
        PauliString axis(4);
        while (axis.is_identity())
            for (uint32_t q = 0; q < 4; ++q)
                axis.set(q, static_cast<Letter>(rng.below(4)));
        if (rng.below(2)) axis = axis.negated();
        f.apply_pi4(axis);
        for (uint32_t q = 0; q < 4; ++q) {
            ASSERT_TRUE(f.x_image(q).is_hermitian());
            ASSERT_TRUE(f.z_image(q).is_hermitian());
            for (uint32_t r = 0; r < 4; ++r) {
                ASSERT_EQ(f.x_image(q).commutes_with(f.z_image(r)), q != r);
                ASSERT_TRUE(f.x_image(q).commutes_with(f.x_image(r)));
                ASSERT_TRUE(f.z_image(q).commutes_with(f.z_image(r)));
            }
        }
    }
}

TEST(ToPbc, HadamardThenTGivesXRotation) {
    GateCircuit c = parse_gate_circuit("QUBITS 1\nH 0\nT 0\nMEASZ 0\n");
    PbcCircuit pbc = to_pbc(c);
    ASSERT_EQ(pbc.rotations.size(), 1u);
    EXPECT_EQ(pbc.rotations[0].pauli.str(), "+X");
    EXPECT_EQ(pbc.rotations[0].angle.kind, RotationAngle::Kind::t_pi8);
    ASSERT_EQ(pbc.measurements.size(), 1u);
    EXPECT_EQ(pbc.measurements[0].str(), "+X");
}

TEST(ToPbc, CnotThenTGivesZZRotation) {
    GateCircuit c = parse_gate_circuit("QUBITS 2\nCX 0 1\nT 1\n");
    PbcCircuit pbc = to_pbc(c);
    ASSERT_EQ(pbc.rotations.size(), 1u);
    EXPECT_EQ(pbc.rotations[0].pauli.str(), "+ZZ");
}

TEST(ToPbc, CliffordOnlyCircuitHasNoRotations) {
    GateCircuit c = parse_gate_circuit(
        "QUBITS 3\nH 0\nCX 0 1\nS 2\nSDG 1\nCX 2 0\nMEASZ 0\nMEASZ 2\n");
    PbcCircuit pbc = to_pbc(c);
    EXPECT_TRUE(pbc.rotations.empty());
    EXPECT_EQ(pbc.measurements.size(), 2u);
}

TEST(ToPbc, RotationCountEqualsNonCliffordCount) {
    GateCircuit c = parse_gate_circuit(
        "QUBITS 2\nT 0\nH 0\nT 0\nTDG 1\nCX 0 1\nRZ 0.3 1\nT 0\n");
    PbcCircuit pbc = to_pbc(c);
    EXPECT_EQ(pbc.rotations.size(), c.non_clifford_count());
    EXPECT_EQ(pbc.rotations.size(), 5u);
}

TEST(ToPbc, TdgEmitsNegatedAxis) {
    PbcCircuit pbc = to_pbc(parse_gate_circuit("QUBITS 1\nTDG 0\n"));
    ASSERT_EQ(pbc.rotations.size(), 1u);
    EXPECT_EQ(pbc.rotations[0].pauli.str(), "-Z");
    EXPECT_EQ(pbc.rotations[0].angle.kind, RotationAngle::Kind::t_pi8);
}

TEST(ToPbc, RzEmitsHalfAngle) {
    PbcCircuit pbc = to_pbc(parse_gate_circuit("QUBITS 1\nRZ 0.7 0\n"));
    ASSERT_EQ(pbc.rotations.size(), 1u);
    EXPECT_EQ(pbc.rotations[0].angle.kind, RotationAngle::Kind::rz);
    EXPECT_DOUBLE_EQ(pbc.rotations[0].angle.theta, 0.35);
}

TEST(ToPbc, GatesAfterMeasurementAreRejected) {
    GateCircuit c = parse_gate_circuit("QUBITS 2\nMEASZ 0\nH 1\n");
    EXPECT_THROW(to_pbc(c), std::invalid_argument);
    // More measurements after a measurement are fine.
    GateCircuit ok = parse_gate_circuit("QUBITS 2\nH 0\nMEASZ 0\nMEASZ 1\n");
    EXPECT_EQ(to_pbc(ok).measurements.size(), 2u);
}

// Frozen small example, checked against the dense oracle by hand once:
// S X S^dag = Y, so T after S rotates about the (signed) Y image.
TEST(ToPbc, PhasedTExample) {
    GateCircuit c = parse_gate_circuit("QUBITS 1\nH 0\nS 0\nT 0\n");
    PbcCircuit pbc = to_pbc(c);
    ASSERT_EQ(pbc.rotations.size(), 1u);
    // Prefix C = S*H, so C^dag Z C = H^dag (S^dag Z S) H = H Z H = X.
    EXPECT_EQ(pbc.rotations[0].pauli.str(), "+X");
}

// The translation contract, end to end: U == F * R up to global phase where
// F multiplies the original Clifford gates in order and R the emitted
// rotations. Checked for deterministic random circuits over the whole gate
// set.
TEST(ToPbc, RandomCircuitsMatchDenseOracle) {
    Rng rng(20260815);
    const GateKind kinds[] = {GateKind::h,  GateKind::s,  GateKind::sdg,
                              GateKind::cx, GateKind::t,  GateKind::tdg,
                              GateKind::rz};
    for (int iter = 0; iter < 200; ++iter) {
        uint32_t n = 1 + static_cast<uint32_t>(rng.below(3));
        GateCircuit c;
        c.n_qubits = n;
        size_t len = 1 + rng.below(12);
        for (size_t i = 0; i < len; ++i) {
            Gate g;
            g.kind = kinds[rng.below(7)];
            if (g.kind == GateKind::cx && n == 1) g.kind = GateKind::h;
            g.a = rng.below(n);
            if (g.kind == GateKind::cx) {
                g.b = rng.below(n);
                while (g.b == g.a) g.b = rng.below(n);
            }
            if (g.kind == GateKind::rz)
                g.theta = rng.real() * 2 * M_PI - M_PI;
            c.gates.push_back(g);
        }
        PbcCircuit pbc = to_pbc(c);
        Mat u = circuit_matrix(c);
        Mat fr = clifford_product(c) * rotation_product(pbc);
        ASSERT_TRUE(equal_up_to_global_phase(u, fr, 1e-9))
            << "iteration " << iter;
    }
}

// Measurement bases must equal F^dag Z_q F exactly for the full Clifford
// product F, independent of interleaved non-Clifford gates.
TEST(ToPbc, MeasurementBasesMatchDenseOracle) {
    Rng rng(99);
    const GateKind kinds[] = {GateKind::h,  GateKind::s, GateKind::sdg,
                              GateKind::cx, GateKind::t, GateKind::tdg};
    for (int iter = 0; iter < 100; ++iter) {
        uint32_t n = 2 + static_cast<uint32_t>(rng.below(2));
        GateCircuit c;
        c.n_qubits = n;
        size_t len = rng.below(10);
        for (size_t i = 0; i < len; ++i) {
            Gate g;
            g.kind = kinds[rng.below(6)];
            if (g.kind == GateKind::cx && n == 1) g.kind = GateKind::s;
            g.a = rng.below(n);
            if (g.kind == GateKind::cx) {
                g.b = rng.below(n);
                while (g.b == g.a) g.b = rng.below(n);
            }
            c.gates.push_back(g);
        }
        uint32_t measured = static_cast<uint32_t>(rng.below(n));
        c.gates.push_back(Gate{GateKind::measz, measured, 0, 0.0});
        PbcCircuit pbc = to_pbc(c);
        ASSERT_EQ(pbc.measurements.size(), 1u);
        Mat f = clifford_product(strip_measurements(c));
        Mat want = testing::dagger(f) *
                   pauli_matrix(PauliString::single(n, measured, Letter::Z)) * f;
        ASSERT_LE(max_abs_diff(pauli_matrix(pbc.measurements[0]), want), 1e-9)
            << "iteration " << iter;
    }
}

TEST(RzSynthesis, AnchorAndExtrapolation) {
    RzSynthesisSpec spec;
    EXPECT_EQ(spec.t_count(1e-4), 40u);
    EXPECT_EQ(spec.t_count(1e-2), 20u);  // 40 * 2/4
    EXPECT_EQ(spec.t_count(1e-8), 80u);
    EXPECT_EQ(spec.t_count(1e-3), 30u);
    // ceil for non-decade accuracies: log10(1/3e-4) ~ 3.523 -> 40*3.523/4.
    EXPECT_EQ(spec.t_count(3e-4), 36u);
    EXPECT_EQ(rz_t_count(1e-4), 40u);
}

TEST(RzSynthesis, OverridesWinExactly) {
    RzSynthesisSpec spec;
    spec.overrides[1e-4] = 17;
    EXPECT_EQ(spec.t_count(1e-4), 17u);
    EXPECT_EQ(spec.t_count(1e-2), 20u);  // non-override still extrapolates
}

TEST(RzSynthesis, RejectsBadAccuracy) {
    RzSynthesisSpec spec;
    EXPECT_THROW(spec.t_count(0.0), std::invalid_argument);
    EXPECT_THROW(spec.t_count(1.0), std::invalid_argument);
    EXPECT_THROW(spec.t_count(-1e-4), std::invalid_argument);
}

}  // namespace
}  // namespace bbmap
