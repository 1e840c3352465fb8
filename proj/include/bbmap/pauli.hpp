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

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bbmap {

enum class Letter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char letter_char(Letter l) { return "IXYZ"[static_cast<int>(l)]; }

// Sign of a Pauli string as a power of i: value == i^k * (tensor of letters).
// Hermitian strings have k in {0, 2}.
enum class Sign : uint8_t { plus_one = 0, plus_i = 1, minus_one = 2, minus_i = 3 };

inline std::string sign_str(Sign s) {
    switch (s) {
        case Sign::plus_one: return "+";
        case Sign::plus_i: return "+i";
        case Sign::minus_one: return "-";
        case Sign::minus_i: return "-i";
    }
    return "?";
}

// An n-qubit Pauli operator in the two-bit-per-qubit symplectic encoding:
// per qubit, (x, z) bits select I=(0,0), X=(1,0), Y=(1,1), Z=(0,1), and a
// global phase exponent k tracks the sign i^k relative to the tensor product
// of the (Hermitian) letters. Multiplication, commutation checks and
// conjugation all run word-parallel over the bit planes.
class PauliString {
  public:
    PauliString() : n_(0), phase_(0) {}

    explicit PauliString(uint32_t n) : n_(n), phase_(0), x_(words(n), 0), z_(words(n), 0) {}

    // Parses "[sign]letters", sign in {+, -, i, +i, -i}, letters in {I,X,Y,Z}.
    static PauliString parse(std::string_view text) {
        size_t pos = 0;
        uint8_t phase = 0;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') phase = 2;
            ++pos;
        }
        if (pos < text.size() && text[pos] == 'i') {
            phase = (phase + 1) & 3;
            ++pos;
        }
        PauliString p(static_cast<uint32_t>(text.size() - pos));
        p.phase_ = phase;
        for (uint32_t q = 0; pos < text.size(); ++pos, ++q) {
            switch (text[pos]) {
                case 'I': break;
                case 'X': p.set(q, Letter::X); break;
                case 'Y': p.set(q, Letter::Y); break;
                case 'Z': p.set(q, Letter::Z); break;
                default:
                    throw std::invalid_argument("invalid pauli letter '" +
                                                std::string(1, text[pos]) + "'");
            }
        }
        return p;
    }

    static PauliString single(uint32_t n, uint32_t qubit, Letter l) {
        PauliString p(n);
        p.set(qubit, l);
        return p;
    }

    uint32_t size() const { return n_; }

    Letter letter(uint32_t q) const {
        check_index(q);
        int x = static_cast<int>((x_[q >> 6] >> (q & 63)) & 1);
        int z = static_cast<int>((z_[q >> 6] >> (q & 63)) & 1);
        constexpr Letter by_xz[4] = {Letter::I, Letter::X, Letter::Z, Letter::Y};
        return by_xz[x | (z << 1)];
    }

    void set(uint32_t q, Letter l) {
        check_index(q);
        uint64_t bit = 1ULL << (q & 63);
        uint64_t xb = (l == Letter::X || l == Letter::Y) ? bit : 0;
        uint64_t zb = (l == Letter::Z || l == Letter::Y) ? bit : 0;
        x_[q >> 6] = (x_[q >> 6] & ~bit) | xb;
        z_[q >> 6] = (z_[q >> 6] & ~bit) | zb;
    }

    Sign sign() const { return static_cast<Sign>(phase_); }
    void set_sign(Sign s) { phase_ = static_cast<uint8_t>(s); }
    bool is_hermitian() const { return (phase_ & 1) == 0; }

    // True when every letter is I (the sign is ignored).
    bool is_identity() const {
        for (size_t w = 0; w < x_.size(); ++w)
            if (x_[w] | z_[w]) return false;
        return true;
    }

    std::vector<uint32_t> support() const {
        std::vector<uint32_t> out;
        for (uint32_t q = 0; q < n_; ++q) {
            uint64_t bit = 1ULL << (q & 63);
            if ((x_[q >> 6] | z_[q >> 6]) & bit) out.push_back(q);
        }
        return out;
    }

    uint32_t support_size() const {
        uint32_t c = 0;
        for (size_t w = 0; w < x_.size(); ++w)
            c += static_cast<uint32_t>(std::popcount(x_[w] | z_[w]));
        return c;
    }

    bool commutes_with(const PauliString& o) const {
        check_same_size(o);
        int parity = 0;
        for (size_t w = 0; w < x_.size(); ++w)
            parity ^= std::popcount(x_[w] & o.z_[w]) ^ std::popcount(z_[w] & o.x_[w]);
        return (parity & 1) == 0;
    }

    // Phase-tracked operator product (*this) * o.
    PauliString operator*(const PauliString& o) const {
        check_same_size(o);
        PauliString r(n_);
        int delta = 0;
        for (size_t w = 0; w < x_.size(); ++w) {
            uint64_t x1 = x_[w], z1 = z_[w], x2 = o.x_[w], z2 = o.z_[w];
            uint64_t y1 = x1 & z1, xo1 = x1 & ~z1, zo1 = z1 & ~x1;
            uint64_t y2 = x2 & z2, xo2 = x2 & ~z2, zo2 = z2 & ~x2;
            // +i cases: Y*Z, X*Y, Z*X.  -i cases: Y*X, X*Z, Z*Y.
            uint64_t pos = (y1 & zo2) | (xo1 & y2) | (zo1 & xo2);
            uint64_t neg = (y1 & xo2) | (xo1 & zo2) | (zo1 & y2);
            delta += std::popcount(pos) - std::popcount(neg);
            r.x_[w] = x1 ^ x2;
            r.z_[w] = z1 ^ z2;
        }
        r.phase_ = static_cast<uint8_t>(((phase_ + o.phase_ + delta) % 4 + 4) % 4);
        return r;
    }

    PauliString negated() const {
        PauliString r = *this;
        r.phase_ = static_cast<uint8_t>((phase_ + 2) & 3);
        return r;
    }

    PauliString times_i() const {
        PauliString r = *this;
        r.phase_ = static_cast<uint8_t>((phase_ + 1) & 3);
        return r;
    }

    bool operator==(const PauliString& o) const {
        return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
    }
    bool operator!=(const PauliString& o) const { return !(*this == o); }

    // Letters only, e.g. "XIZ".
    std::string letters() const {
        std::string s;
        s.reserve(n_);
        for (uint32_t q = 0; q < n_; ++q) s.push_back(letter_char(letter(q)));
        return s;
    }

    std::string str() const { return sign_str(sign()) + letters(); }

  private:
    static size_t words(uint32_t n) { return (static_cast<size_t>(n) + 63) / 64; }

    void check_index(uint32_t q) const {
        if (q >= n_) throw std::invalid_argument("qubit index out of range");
    }
    void check_same_size(const PauliString& o) const {
        if (n_ != o.n_) throw std::invalid_argument("pauli string size mismatch");
    }

    uint32_t n_;
    uint8_t phase_;
    std::vector<uint64_t> x_, z_;
};

inline bool commutes(const PauliString& p, const PauliString& q) { return p.commutes_with(q); }
inline PauliString multiply(const PauliString& p, const PauliString& q) { return p * q; }

// Angle class of a Pauli product rotation exp(-i * angle * P):
//   clifford_pi4 : angle pi/4 (Clifford),
//   t_pi8       : angle pi/8 (one magic-state injection),
//   rz          : arbitrary angle theta (needs gate synthesis).
// Negative angles are represented by negating the rotation axis sign.
struct RotationAngle {
    enum class Kind : uint8_t { clifford_pi4, t_pi8, rz };
    Kind kind = Kind::t_pi8;
    double theta = 0.0;  // rz only

    static RotationAngle pi4() { return {Kind::clifford_pi4, 0.0}; }
    static RotationAngle pi8() { return {Kind::t_pi8, 0.0}; }
    static RotationAngle rz(double theta) { return {Kind::rz, theta}; }

    bool operator==(const RotationAngle& o) const {
        return kind == o.kind && (kind != Kind::rz || theta == o.theta);
    }
};

// One Pauli product rotation. `weight` counts how many times the rotation is
// applied (merged repetitions); it multiplies every cost the rotation incurs.
struct PauliRotation {
    PauliString pauli;
    RotationAngle angle;
    int64_t weight = 1;

    PauliRotation() = default;
    PauliRotation(PauliString p, RotationAngle a, int64_t w = 1)
        : pauli(std::move(p)), angle(a), weight(w) {
        if (weight < 1) throw std::invalid_argument("rotation weight must be >= 1");
    }
};

// A circuit in Pauli-based form: an ordered rotation list followed by
// terminal Pauli product measurements. After gate translation the rotations
// contain only t_pi8 and rz entries.
struct PbcCircuit {
    uint32_t n_qubits = 0;
    std::vector<PauliRotation> rotations;
    std::vector<PauliString> measurements;

    void validate() const {
        for (const auto& r : rotations) {
            if (r.pauli.size() != n_qubits)
                throw std::invalid_argument("rotation width does not match qubit count");
            if (r.weight < 1) throw std::invalid_argument("rotation weight must be >= 1");
        }
        for (const auto& m : measurements)
            if (m.size() != n_qubits)
                throw std::invalid_argument("measurement width does not match qubit count");
    }
};

// Commutes the Clifford rotation exp(-i pi/4 * P) rightward past `target`:
// returns U^dag * target * U. Commuting targets pass through unchanged;
// anticommuting targets become the phase-tracked product i * P * target
// (Hermitian whenever both inputs are). A negated axis encodes a -pi/4
// rotation and flips the resulting sign accordingly.
inline PauliString conjugate_rotation(const PauliRotation& clifford, const PauliString& target) {
    if (clifford.angle.kind != RotationAngle::Kind::clifford_pi4)
        throw std::invalid_argument("conjugate_rotation requires a pi/4 rotation");
    if (clifford.pauli.size() != target.size())
        throw std::invalid_argument("pauli string size mismatch");
    if (clifford.pauli.commutes_with(target)) return target;
    return (clifford.pauli * target).times_i();
}

}  // namespace bbmap
