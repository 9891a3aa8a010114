// Copyright 2026 the csd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSD_PAULI_HPP
#define CSD_PAULI_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "csd/bits.hpp"

namespace csd {

/// n-qubit Pauli stored as i^s * prod_q X_q^{x_q} Z_q^{z_q}.
///
/// In this normal form Y_q is (x=1, z=1) with one factor of i folded into s,
/// so Hermitian operators always display a sign of +1 or -1.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(size_t n) : n_(n), x_(n), z_(n) {}

  PauliOperator(BitVector x, BitVector z, uint8_t phase_i_power = 0)
      : n_(x.size()), x_(std::move(x)), z_(std::move(z)), s_(phase_i_power & 3) {
    if (z_.size() != n_) {
      throw std::invalid_argument("x/z length mismatch");
    }
  }

  /// Parses "XZZX", "+XZZX", "-YIZ", "iX", "-iZZ".
  static PauliOperator from_string(std::string_view s) {
    uint8_t phase = 0;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
      phase = s[0] == '-' ? 2 : 0;
      s.remove_prefix(1);
    }
    if (!s.empty() && s[0] == 'i') {
      phase = (phase + 1) & 3;
      s.remove_prefix(1);
    }
    PauliOperator p(s.size());
    p.s_ = phase;
    for (size_t q = 0; q < s.size(); q++) {
      p.set_pauli(q, s[q]);
    }
    return p;
  }

  static PauliOperator single(size_t n, size_t q, char pauli) {
    PauliOperator p(n);
    p.set_pauli(q, pauli);
    return p;
  }

  /// Builds from a (x|z) symplectic row of length 2n.
  static PauliOperator from_xz(const BitVector &xz, uint8_t phase_i_power = 0) {
    size_t n = xz.size() / 2;
    if (xz.size() != 2 * n) {
      throw std::invalid_argument("symplectic vector must have even length");
    }
    return PauliOperator(xz.slice(0, n), xz.slice(n, 2 * n), phase_i_power);
  }

  size_t num_qubits() const { return n_; }
  const BitVector &x() const { return x_; }
  const BitVector &z() const { return z_; }
  bool xbit(size_t q) const { return x_.get(q); }
  bool zbit(size_t q) const { return z_.get(q); }

  void set_xbit(size_t q, bool v) { x_.set(q, v); }
  void set_zbit(size_t q, bool v) { z_.set(q, v); }

  void set_pauli(size_t q, char pauli) {
    switch (pauli) {
      case 'I':
      case '_':
        x_.set(q, false);
        z_.set(q, false);
        break;
      case 'X':
        x_.set(q, true);
        z_.set(q, false);
        break;
      case 'Z':
        x_.set(q, false);
        z_.set(q, true);
        break;
      case 'Y':
        x_.set(q, true);
        z_.set(q, true);
        s_ = (s_ + 1) & 3;
        break;
      default:
        throw std::invalid_argument("unknown Pauli character");
    }
  }

  char pauli_char(size_t q) const {
    int code = (x_.get(q) ? 1 : 0) | (z_.get(q) ? 2 : 0);
    return "IXZY"[code];
  }

  /// Number of qubits acted on non-trivially.
  size_t weight() const {
    size_t w = 0;
    for (size_t s = 0; s < x_.words().size(); s++) {
      w += std::popcount(x_.words()[s] | z_.words()[s]);
    }
    return w;
  }

  /// Raw i-power of the X^x Z^z normal form.
  uint8_t internal_phase() const { return s_; }
  void set_internal_phase(uint8_t s) { s_ = s & 3; }

  /// i-power displayed in front of the I/X/Y/Z string.
  uint8_t display_phase() const {
    size_t ys = 0;
    for (size_t s = 0; s < x_.words().size(); s++) {
      ys += std::popcount(x_.words()[s] & z_.words()[s]);
    }
    return static_cast<uint8_t>((s_ + 3 * ys) & 3);
  }

  PauliOperator &operator*=(const PauliOperator &o) {
    if (o.n_ != n_) {
      throw std::invalid_argument("Pauli size mismatch");
    }
    // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{z1.x2} X^{x1+x2} Z^{z1+z2}
    s_ = (s_ + o.s_ + 2 * (z_.dot(o.x_) ? 1 : 0)) & 3;
    x_ ^= o.x_;
    z_ ^= o.z_;
    return *this;
  }

  friend PauliOperator operator*(PauliOperator a, const PauliOperator &b) {
    a *= b;
    return a;
  }

  bool commutes_with(const PauliOperator &o) const {
    return !(x_.dot(o.z_) ^ z_.dot(o.x_));
  }

  /// Equality including phase.
  bool operator==(const PauliOperator &o) const {
    return n_ == o.n_ && s_ == o.s_ && x_ == o.x_ && z_ == o.z_;
  }
  bool operator!=(const PauliOperator &o) const { return !(*this == o); }

  bool same_xz(const PauliOperator &o) const { return x_ == o.x_ && z_ == o.z_; }

  /// (x|z) row of length 2n.
  BitVector xz() const { return BitVector::concat(x_, z_); }

  /// True when the displayed sign is +1 or -1.
  bool is_hermitian() const { return (display_phase() & 1) == 0; }

  /// Copy with the phase adjusted to the +1 Hermitian representative.
  PauliOperator hermitian() const {
    PauliOperator out = *this;
    size_t ys = 0;
    for (size_t s = 0; s < x_.words().size(); s++) {
      ys += std::popcount(x_.words()[s] & z_.words()[s]);
    }
    out.s_ = uint8_t(ys & 3);
    return out;
  }

  std::string str() const {
    static const char *prefix[4] = {"+", "+i", "-", "-i"};
    std::string out = prefix[display_phase()];
    for (size_t q = 0; q < n_; q++) {
      out += pauli_char(q);
    }
    return out;
  }

 private:
  size_t n_ = 0;
  BitVector x_, z_;
  uint8_t s_ = 0;
};

/// 1 iff the operators anticommute: p.x * q.z + p.z * q.x (mod 2).
inline int symplectic_product(const PauliOperator &p, const PauliOperator &q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw std::invalid_argument("symplectic_product: size mismatch");
  }
  return (p.x().dot(q.z()) ^ p.z().dot(q.x())) ? 1 : 0;
}

/// Same product on raw (x|z) rows of equal even length.
inline int symplectic_product(const BitVector &a, const BitVector &b) {
  size_t n = a.size() / 2;
  if (a.size() != b.size() || a.size() != 2 * n) {
    throw std::invalid_argument("symplectic_product: bad row lengths");
  }
  BitVector ax = a.slice(0, n), az = a.slice(n, 2 * n);
  BitVector bx = b.slice(0, n), bz = b.slice(n, 2 * n);
  return (ax.dot(bz) ^ az.dot(bx)) ? 1 : 0;
}

}  // namespace csd

#endif
