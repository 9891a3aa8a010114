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

#ifndef CSD_STABILIZER_CODE_HPP
#define CSD_STABILIZER_CODE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "csd/bits.hpp"
#include "csd/pauli.hpp"

namespace csd {

/// General (possibly non-CSS) stabilizer code: checks plus a symplectic basis
/// of logical representatives.
struct StabilizerCode {
  size_t n = 0;
  std::vector<PauliOperator> checks;
  std::vector<PauliOperator> logical_x;
  std::vector<PauliOperator> logical_z;

  size_t k() const { return logical_x.size(); }

  /// m x 2n matrix of (x|z) check rows.
  BitMatrix check_matrix() const {
    BitMatrix m(checks.size(), 2 * n);
    for (size_t r = 0; r < checks.size(); r++) {
      m.set_row(r, checks[r].xz());
    }
    return m;
  }
};

/// CSS code with pure-X / pure-Z check matrices and pure-type logicals.
struct CssCode {
  size_t n = 0;
  BitMatrix hx;
  BitMatrix hz;
  std::vector<PauliOperator> logical_x;
  std::vector<PauliOperator> logical_z;

  size_t k() const { return logical_x.size(); }

  /// Maximum stabilizer weight.
  size_t q_max() const {
    size_t q = 0;
    for (size_t r = 0; r < hx.rows(); r++) {
      q = std::max(q, hx.row(r).weight());
    }
    for (size_t r = 0; r < hz.rows(); r++) {
      q = std::max(q, hz.row(r).weight());
    }
    return q;
  }

  StabilizerCode to_stabilizer() const {
    StabilizerCode s;
    s.n = n;
    for (size_t r = 0; r < hx.rows(); r++) {
      s.checks.emplace_back(hx.row(r), BitVector(n));
    }
    for (size_t r = 0; r < hz.rows(); r++) {
      s.checks.emplace_back(BitVector(n), hz.row(r));
    }
    s.logical_x = logical_x;
    s.logical_z = logical_z;
    return s;
  }
};

/// Fixed-point-free involutory qubit permutation exchanging X and Z sectors.
struct ZXDuality {
  std::vector<uint32_t> perm;

  size_t n() const { return perm.size(); }
  uint32_t operator()(size_t i) const { return perm[i]; }

  bool valid() const {
    for (size_t i = 0; i < perm.size(); i++) {
      if (perm[i] >= perm.size() || perm[i] == i || perm[perm[i]] != i) {
        return false;
      }
    }
    return true;
  }

  /// The double-cover duality pairing i with i + half on 2*half qubits.
  static ZXDuality half_shift(size_t half) {
    ZXDuality tau;
    tau.perm.resize(2 * half);
    for (size_t i = 0; i < half; i++) {
      tau.perm[i] = uint32_t(i + half);
      tau.perm[i + half] = uint32_t(i);
    }
    return tau;
  }
};

/// Inner-code qubit assignment of a C4-concatenated code.
struct ConcatLayout {
  /// Physical qubit quadruple of each C4 block; block b owns 4b .. 4b+3.
  std::vector<std::array<uint32_t, 4>> blocks;
  /// Outer qubit -> (block index, logical slot 1 or 2).
  std::vector<std::pair<uint32_t, uint8_t>> pair_map;

  size_t num_blocks() const { return blocks.size(); }
};

namespace detail {

inline void swap_xz_on(PauliOperator &p, const BitVector &pattern) {
  for (size_t q = 0; q < p.num_qubits(); q++) {
    if (pattern.get(q)) {
      bool x = p.xbit(q);
      bool z = p.zbit(q);
      p.set_xbit(q, z);
      p.set_zbit(q, x);
    }
  }
}

/// Symplectic Gram-Schmidt: pairs up vectors with unit pairing, given a list
/// spanning a symplectically non-degenerate space mod nothing.
inline void symplectic_pairs(std::vector<BitVector> pool,
                             std::vector<BitVector> *xs,
                             std::vector<BitVector> *zs) {
  while (!pool.empty()) {
    BitVector u = pool.front();
    pool.erase(pool.begin());
    if (!u.any()) {
      continue;
    }
    size_t partner = pool.size();
    for (size_t i = 0; i < pool.size(); i++) {
      if (symplectic_product(u, pool[i])) {
        partner = i;
        break;
      }
    }
    if (partner == pool.size()) {
      throw std::logic_error("degenerate symplectic form in logical extraction");
    }
    BitVector v = pool[partner];
    pool.erase(pool.begin() + partner);
    for (auto &w : pool) {
      if (symplectic_product(w, v)) {
        w ^= u;
      }
      if (symplectic_product(w, u)) {
        w ^= v;
      }
    }
    xs->push_back(u);
    zs->push_back(v);
  }
}

}  // namespace detail

/// Produces (or validates) a symplectic logical basis: k anticommuting
/// (X_i, Z_i) pairs, each commuting with all checks and with other pairs.
inline StabilizerCode compute_logicals(StabilizerCode code) {
  for (size_t i = 0; i < code.checks.size(); i++) {
    if (code.checks[i].num_qubits() != code.n) {
      throw std::invalid_argument("check size mismatch");
    }
    for (size_t j = i + 1; j < code.checks.size(); j++) {
      if (symplectic_product(code.checks[i], code.checks[j])) {
        throw std::invalid_argument("checks " + std::to_string(i) + "," +
                                    std::to_string(j) + " anticommute");
      }
    }
  }

  BitMatrix h = code.check_matrix();
  size_t r = rank(h);
  size_t k = code.n - r;

  if (!code.logical_x.empty() || !code.logical_z.empty()) {
    // Declared logicals: validate instead of recomputing.
    if (code.logical_x.size() != k || code.logical_z.size() != k) {
      throw std::invalid_argument("declared logical count does not match n - rank");
    }
    for (size_t i = 0; i < k; i++) {
      for (const auto &chk : code.checks) {
        if (symplectic_product(code.logical_x[i], chk) ||
            symplectic_product(code.logical_z[i], chk)) {
          throw std::invalid_argument("declared logical anticommutes with a check");
        }
      }
      for (size_t j = 0; j < k; j++) {
        int want_xz = i == j ? 1 : 0;
        if (symplectic_product(code.logical_x[i], code.logical_z[j]) != want_xz ||
            symplectic_product(code.logical_x[i], code.logical_x[j]) != 0 ||
            symplectic_product(code.logical_z[i], code.logical_z[j]) != 0) {
          throw std::invalid_argument("declared logicals are not a symplectic basis");
        }
      }
    }
    return code;
  }

  if (k == 0) {
    return code;
  }

  // Centralizer: vectors v with sp(row, v) = 0 for every check row. Swapping
  // the halves of each check row turns that into a plain kernel computation.
  BitMatrix h_swapped(h.rows(), 2 * code.n);
  for (size_t row = 0; row < h.rows(); row++) {
    for (size_t c = 0; c < code.n; c++) {
      h_swapped.set(row, c, h.get(row, c + code.n));
      h_swapped.set(row, c + code.n, h.get(row, c));
    }
  }
  BitMatrix cent = kernel(h_swapped);

  // Quotient by the stabilizer row space, keeping reduced representatives.
  RowSpace stab(2 * code.n);
  for (size_t row = 0; row < h.rows(); row++) {
    stab.insert(h.row(row));
  }
  RowSpace seen(2 * code.n);
  for (size_t row = 0; row < h.rows(); row++) {
    seen.insert(h.row(row));
  }
  std::vector<BitVector> reps;
  for (size_t row = 0; row < cent.rows(); row++) {
    BitVector v = stab.reduce(cent.row(row));
    if (seen.insert(v)) {
      reps.push_back(v);
    }
  }
  if (reps.size() != 2 * k) {
    throw std::logic_error("logical space has unexpected dimension");
  }

  std::vector<BitVector> xs, zs;
  detail::symplectic_pairs(std::move(reps), &xs, &zs);
  for (size_t i = 0; i < k; i++) {
    code.logical_x.push_back(PauliOperator::from_xz(xs[i]));
    code.logical_z.push_back(PauliOperator::from_xz(zs[i]));
  }
  return code;
}

/// CSS variant: pure-type logical representatives, paired to the standard
/// symplectic pairing by a change of Z basis.
inline CssCode compute_logicals(CssCode code) {
  if (!code.logical_x.empty()) {
    return code;
  }
  size_t rx = rank(code.hx);
  size_t rz = rank(code.hz);
  size_t k = code.n - rx - rz;

  auto quotient_reps = [&](const BitMatrix &commute_with, const BitMatrix &mod_out) {
    BitMatrix cand = kernel(commute_with);
    RowSpace stab(code.n);
    RowSpace seen(code.n);
    for (size_t r = 0; r < mod_out.rows(); r++) {
      stab.insert(mod_out.row(r));
      seen.insert(mod_out.row(r));
    }
    std::vector<BitVector> reps;
    for (size_t r = 0; r < cand.rows(); r++) {
      BitVector v = stab.reduce(cand.row(r));
      if (seen.insert(v)) {
        reps.push_back(v);
      }
    }
    return reps;
  };

  std::vector<BitVector> lx = quotient_reps(code.hz, code.hx);
  std::vector<BitVector> lz = quotient_reps(code.hx, code.hz);
  if (lx.size() != k || lz.size() != k) {
    throw std::logic_error("CSS logical spaces have unexpected dimension");
  }
  if (k == 0) {
    return code;
  }

  // Pairing matrix P[i][j] = <lx_i, lz_j>; replace the Z basis by (P^-1)^T lz
  // so the pairing becomes the identity.
  BitMatrix p(k, k);
  for (size_t i = 0; i < k; i++) {
    for (size_t j = 0; j < k; j++) {
      p.set(i, j, lx[i].dot(lz[j]));
    }
  }
  // Invert via solve on each unit column.
  BitMatrix pinv(k, k);
  for (size_t j = 0; j < k; j++) {
    BitVector e(k);
    e.set(j, true);
    auto col = solve(p, e);
    if (!col.has_value()) {
      throw std::logic_error("degenerate X/Z logical pairing");
    }
    for (size_t i = 0; i < k; i++) {
      pinv.set(i, j, col->get(i));
    }
  }
  std::vector<BitVector> lz_fixed;
  for (size_t j = 0; j < k; j++) {
    BitVector acc(code.n);
    for (size_t l = 0; l < k; l++) {
      // Q = (P^-1)^T, so Q[j][l] = pinv[l][j].
      if (pinv.get(l, j)) {
        acc ^= lz[l];
      }
    }
    lz_fixed.push_back(acc);
  }

  for (size_t i = 0; i < k; i++) {
    code.logical_x.emplace_back(lx[i], BitVector(code.n));
    code.logical_z.emplace_back(BitVector(code.n), lz_fixed[i]);
  }
  return code;
}

/// Swaps X/Z components on flagged qubits; parameters are preserved and the
/// result is generally no longer CSS.
inline StabilizerCode hadamard_transform(const StabilizerCode &code,
                                         const BitVector &pattern) {
  if (pattern.size() != code.n) {
    throw std::invalid_argument("pattern length must equal qubit count");
  }
  StabilizerCode out = code;
  for (auto &chk : out.checks) {
    detail::swap_xz_on(chk, pattern);
  }
  for (auto &l : out.logical_x) {
    detail::swap_xz_on(l, pattern);
  }
  for (auto &l : out.logical_z) {
    detail::swap_xz_on(l, pattern);
  }
  return out;
}

inline StabilizerCode hadamard_transform(const CssCode &code, const BitVector &pattern) {
  return hadamard_transform(code.to_stabilizer(), pattern);
}

struct ValidationReport {
  size_t n = 0;
  size_t k = 0;
  std::vector<size_t> check_weights;
  bool self_dual = false;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks all type invariants; never throws, reports violations instead.
inline ValidationReport validate(const StabilizerCode &code) {
  ValidationReport rep;
  rep.n = code.n;
  for (const auto &chk : code.checks) {
    rep.check_weights.push_back(chk.weight());
  }
  for (size_t i = 0; i < code.checks.size(); i++) {
    for (size_t j = i + 1; j < code.checks.size(); j++) {
      if (symplectic_product(code.checks[i], code.checks[j])) {
        rep.violations.push_back("checks " + std::to_string(i) + "," +
                                 std::to_string(j) + " anticommute");
      }
    }
  }
  size_t r = rank(code.check_matrix());
  rep.k = code.n - r;
  if (code.logical_x.size() != code.logical_z.size()) {
    rep.violations.push_back("logical_x/logical_z count mismatch");
  } else if (!code.logical_x.empty()) {
    if (code.logical_x.size() != rep.k) {
      rep.violations.push_back("logical count != n - rank(checks)");
    }
    for (size_t i = 0; i < code.logical_x.size(); i++) {
      for (size_t c = 0; c < code.checks.size(); c++) {
        if (symplectic_product(code.logical_x[i], code.checks[c]) ||
            symplectic_product(code.logical_z[i], code.checks[c])) {
          rep.violations.push_back("logical pair " + std::to_string(i) +
                                   " anticommutes with check " + std::to_string(c));
        }
      }
      for (size_t j = 0; j < code.logical_x.size(); j++) {
        int want = i == j ? 1 : 0;
        if (symplectic_product(code.logical_x[i], code.logical_z[j]) != want ||
            symplectic_product(code.logical_x[i], code.logical_x[j]) != 0 ||
            symplectic_product(code.logical_z[i], code.logical_z[j]) != 0) {
          rep.violations.push_back("logical pairing matrix is not symplectic at (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
    }
  }
  return rep;
}

inline ValidationReport validate(const CssCode &code) {
  ValidationReport rep = validate(code.to_stabilizer());
  // hx * hz^T = 0 is implied by commuting checks; also record self-duality.
  RowSpace rx(code.n), rz(code.n);
  for (size_t r = 0; r < code.hx.rows(); r++) {
    rx.insert(code.hx.row(r));
  }
  for (size_t r = 0; r < code.hz.rows(); r++) {
    rz.insert(code.hz.row(r));
  }
  bool same = rx.rank() == rz.rank();
  if (same) {
    for (size_t r = 0; r < code.hz.rows() && same; r++) {
      same = rx.contains(code.hz.row(r));
    }
  }
  rep.self_dual = same;
  return rep;
}

}  // namespace csd

#endif
