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

#ifndef CSD_CONSTRUCT_HPP
#define CSD_CONSTRUCT_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "csd/stabilizer_code.hpp"

namespace csd {

struct SymplecticDouble {
  CssCode code;
  ZXDuality tau;
};

/// Symplectic double cover: checks (H_X|H_Z) in the X sector and (H_Z|H_X)
/// in the Z sector on 2n qubits, with the duality pairing {i, i+n}.
///
/// The logical basis is induced by the seed's basis: seed logical (a|b)
/// contributes the X-type logical with support (a b) and the Z-type logical
/// with support (b a). Pairs are ordered so that seed X logicals come first,
/// then seed Z logicals, which makes the fold gate actions take the block
/// forms used throughout.
inline SymplecticDouble symplectic_double(const StabilizerCode &seed) {
  StabilizerCode c = compute_logicals(seed);
  size_t n = c.n;
  SymplecticDouble out;
  out.code.n = 2 * n;
  out.code.hx = BitMatrix(c.checks.size(), 2 * n);
  out.code.hz = BitMatrix(c.checks.size(), 2 * n);
  for (size_t r = 0; r < c.checks.size(); r++) {
    const auto &chk = c.checks[r];
    for (size_t q = 0; q < n; q++) {
      out.code.hx.set(r, q, chk.xbit(q));
      out.code.hx.set(r, q + n, chk.zbit(q));
      out.code.hz.set(r, q, chk.zbit(q));
      out.code.hz.set(r, q + n, chk.xbit(q));
    }
  }

  auto as_x_logical = [&](const PauliOperator &l) {
    BitVector x = BitVector::concat(l.x(), l.z());
    return PauliOperator(x, BitVector(2 * n));
  };
  auto as_z_logical = [&](const PauliOperator &l) {
    BitVector z = BitVector::concat(l.z(), l.x());
    return PauliOperator(BitVector(2 * n), z);
  };
  for (size_t i = 0; i < c.k(); i++) {
    out.code.logical_x.push_back(as_x_logical(c.logical_x[i]));
    out.code.logical_z.push_back(as_z_logical(c.logical_z[i]));
  }
  for (size_t i = 0; i < c.k(); i++) {
    out.code.logical_x.push_back(as_x_logical(c.logical_z[i]));
    out.code.logical_z.push_back(as_z_logical(c.logical_x[i]));
  }

  out.tau = ZXDuality::half_shift(n);
  return out;
}

/// A concatenated symplectic double code: the self-dual CSS code, its block
/// layout, and the outer code it was built from. Check rows are ordered with
/// the per-block C4 rows first and the concatenated rows after.
struct CsdCode {
  CssCode css;
  ConcatLayout layout;
  CssCode outer;
  ZXDuality outer_tau;
  size_t n_blocks = 0;
  size_t n_concat = 0;  // concatenated generator rows per sector

  size_t num_qubits() const { return css.n; }

  /// Support row of the j-th concatenated X (or Z) generator.
  BitVector concat_x_row(size_t j) const { return css.hx.row(n_blocks + j); }
  BitVector concat_z_row(size_t j) const { return css.hz.row(n_blocks + j); }
};

namespace detail {

/// Rewrites an outer X-type support through the C4 logical map
/// (X1 = XXII, X2 = XIXI).
inline BitVector rewrite_x_support(const BitVector &outer, const ConcatLayout &layout,
                                   size_t n_inner) {
  BitVector out(n_inner);
  for (size_t q = 0; q < outer.size(); q++) {
    if (!outer.get(q)) {
      continue;
    }
    auto [b, slot] = layout.pair_map[q];
    out.flip(4 * b);
    out.flip(4 * b + (slot == 1 ? 1 : 2));
  }
  return out;
}

/// Z-type support through the C4 logical map (Z1 = ZIZI, Z2 = ZZII).
inline BitVector rewrite_z_support(const BitVector &outer, const ConcatLayout &layout,
                                   size_t n_inner) {
  BitVector out(n_inner);
  for (size_t q = 0; q < outer.size(); q++) {
    if (!outer.get(q)) {
      continue;
    }
    auto [b, slot] = layout.pair_map[q];
    out.flip(4 * b);
    out.flip(4 * b + (slot == 1 ? 2 : 1));
  }
  return out;
}

}  // namespace detail

/// Concatenates the outer CSS code with one C4 block per tau orbit. Orbit
/// {i, tau(i)} with i < tau(i) becomes a block whose logical slot 1 carries
/// outer qubit i and slot 2 carries tau(i).
inline CsdCode concatenate_c4(const CssCode &outer, const ZXDuality &tau) {
  if (!tau.valid() || tau.n() != outer.n) {
    throw std::invalid_argument("tau must be a fixed-point-free involution on the outer qubits");
  }
  CsdCode out;
  out.outer = outer;
  out.outer_tau = tau;

  out.layout.pair_map.resize(outer.n);
  for (size_t i = 0; i < outer.n; i++) {
    if (i < tau(i)) {
      uint32_t b = uint32_t(out.layout.blocks.size());
      out.layout.blocks.push_back(
          {uint32_t(4 * b), uint32_t(4 * b + 1), uint32_t(4 * b + 2), uint32_t(4 * b + 3)});
      out.layout.pair_map[i] = {b, 1};
      out.layout.pair_map[tau(i)] = {b, 2};
    }
  }
  out.n_blocks = out.layout.num_blocks();
  out.n_concat = outer.hx.rows();

  size_t n_inner = 4 * out.n_blocks;
  out.css.n = n_inner;
  out.css.hx = BitMatrix(out.n_blocks + outer.hx.rows(), n_inner);
  out.css.hz = BitMatrix(out.n_blocks + outer.hz.rows(), n_inner);
  for (size_t b = 0; b < out.n_blocks; b++) {
    for (int j = 0; j < 4; j++) {
      out.css.hx.set(b, 4 * b + j, true);
      out.css.hz.set(b, 4 * b + j, true);
    }
  }
  for (size_t r = 0; r < outer.hx.rows(); r++) {
    out.css.hx.set_row(out.n_blocks + r,
                       detail::rewrite_x_support(outer.hx.row(r), out.layout, n_inner));
  }
  for (size_t r = 0; r < outer.hz.rows(); r++) {
    out.css.hz.set_row(out.n_blocks + r,
                       detail::rewrite_z_support(outer.hz.row(r), out.layout, n_inner));
  }

  for (const auto &l : outer.logical_x) {
    out.css.logical_x.emplace_back(detail::rewrite_x_support(l.x(), out.layout, n_inner),
                                   BitVector(n_inner));
  }
  for (const auto &l : outer.logical_z) {
    out.css.logical_z.emplace_back(BitVector(n_inner),
                                   detail::rewrite_z_support(l.z(), out.layout, n_inner));
  }
  return out;
}

/// The Appendix seed non-CSS codes with their printed parity checks.
inline StabilizerCode seed_library(const std::string &name) {
  auto make = [](std::vector<std::string> xs, std::vector<std::string> zs) {
    StabilizerCode c;
    c.n = xs[0].size();
    for (size_t r = 0; r < xs.size(); r++) {
      c.checks.emplace_back(BitVector::from_string(xs[r]), BitVector::from_string(zs[r]));
    }
    return c;
  };

  if (name == "c422") {
    StabilizerCode c = make({"1001", "0110"}, {"0110", "1001"});
    c.logical_x = {PauliOperator::from_string("IZZI"), PauliOperator::from_string("ZIIZ")};
    c.logical_z = {PauliOperator::from_string("ZIXI"), PauliOperator::from_string("IZIX")};
    return compute_logicals(c);
  }
  if (name == "c513") {
    return compute_logicals(make({"10010", "01001", "10100", "01010"},
                                 {"01100", "00110", "00011", "10001"}));
  }
  if (name == "c833") {
    return compute_logicals(make(
        {"11111111", "00000000", "01011010", "01010101", "01101001"},
        {"00000000", "11111111", "00001111", "00110011", "01010101"}));
  }
  if (name == "c1244") {
    return compute_logicals(make({"100101010100", "010101010001", "001100000101",
                                  "000011000101", "000000110000", "000000001100",
                                  "000000000011", "000000000000"},
                                 {"010101011101", "001100001010", "101010010111",
                                  "010110010111", "110011001100", "111100000011",
                                  "001111001111", "000000111111"}));
  }
  throw std::invalid_argument("unknown seed code: " + name);
}

inline std::vector<std::string> seed_names() { return {"c422", "c513", "c833", "c1244"}; }

/// The [[4,2,2]] C4 code with the logical convention fixed to
/// X1=XXII, Z1=ZIZI, X2=XIXI, Z2=ZZII.
inline StabilizerCode c4_code() {
  StabilizerCode c;
  c.n = 4;
  c.checks = {PauliOperator::from_string("XXXX"), PauliOperator::from_string("ZZZZ")};
  c.logical_x = {PauliOperator::from_string("XXII"), PauliOperator::from_string("XIXI")};
  c.logical_z = {PauliOperator::from_string("ZIZI"), PauliOperator::from_string("ZZII")};
  return c;
}

/// Full pipeline: seed -> symplectic double -> C4 concatenation.
inline CsdCode build_csd(const std::string &seed_name) {
  SymplecticDouble d = symplectic_double(seed_library(seed_name));
  return concatenate_c4(d.code, d.tau);
}

}  // namespace csd

#endif
