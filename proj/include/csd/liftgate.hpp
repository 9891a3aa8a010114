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

#ifndef CSD_LIFTGATE_HPP
#define CSD_LIFTGATE_HPP

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "csd/clifford_circuit.hpp"
#include "csd/construct.hpp"
#include "csd/rng.hpp"
#include "csd/symplectic.hpp"

namespace csd {

struct NotALogicalGate : std::runtime_error {
  explicit NotALogicalGate(const std::string &what) : std::runtime_error(what) {}
};

/// 2x2 symplectic matrix in (x, z) row convention: row 0 is the image of X.
/// All six elements of Sp_2(F_2) are single-qubit phase-free Clifford classes.
struct Mat2 {
  // bit 0: r0x, bit 1: r0z, bit 2: r1x, bit 3: r1z
  uint8_t bits = 0b1001;

  static Mat2 identity() { return {0b1001}; }

  static Mat2 of_gate(Gate g) {
    switch (g) {
      case Gate::H:
        return {0b0110};  // X->Z, Z->X
      case Gate::S:
      case Gate::SDG:
        return {0b1011};  // X->Y, Z->Z
      case Gate::X:
      case Gate::Y:
      case Gate::Z:
        return identity();
      default:
        throw std::invalid_argument("not a single-qubit gate");
    }
  }

  bool r0x() const { return bits & 1; }
  bool r0z() const { return (bits >> 1) & 1; }
  bool r1x() const { return (bits >> 2) & 1; }
  bool r1z() const { return (bits >> 3) & 1; }

  Mat2 mul(Mat2 o) const {
    auto apply = [&](bool x, bool z) -> uint8_t {
      uint8_t rx = (x & o.r0x()) ^ (z & o.r1x());
      uint8_t rz = (x & o.r0z()) ^ (z & o.r1z());
      return uint8_t(rx | (rz << 1));
    };
    uint8_t top = apply(r0x(), r0z());
    uint8_t bot = apply(r1x(), r1z());
    return {uint8_t(top | (bot << 2))};
  }

  bool invertible() const {
    // det = r0x r1z + r0z r1x over F2
    return ((r0x() & r1z()) ^ (r0z() & r1x())) != 0;
  }

  bool operator==(Mat2 o) const { return bits == o.bits; }

  /// All six elements, identity first.
  static std::vector<Mat2> all() {
    std::vector<Mat2> out;
    for (int b = 0; b < 16; b++) {
      Mat2 m{uint8_t(b)};
      if (m.invertible()) {
        out.push_back(m);
      }
    }
    std::sort(out.begin(), out.end(), [](Mat2 a, Mat2 b) {
      if (a == identity()) return b != identity();
      if (b == identity()) return false;
      return a.bits < b.bits;
    });
    return out;
  }

  /// Canonical gate word (applied left to right) realizing this class.
  std::vector<Gate> gate_word() const {
    Mat2 h = of_gate(Gate::H), s = of_gate(Gate::S);
    if (*this == identity()) return {};
    if (*this == h) return {Gate::H};
    if (*this == s) return {Gate::S};
    if (*this == h.mul(s)) return {Gate::H, Gate::S};
    if (*this == s.mul(h)) return {Gate::S, Gate::H};
    if (*this == h.mul(s).mul(h)) return {Gate::H, Gate::S, Gate::H};
    throw std::invalid_argument("singular 2x2 matrix has no gate word");
  }
};

/// Extracts the symplectic action of a circuit on a code's logical qubits.
/// Conjugates each logical generator through the circuit, checks that checks
/// map into the stabilizer row space, and expresses logical images in the
/// (X_0..X_{K-1} | Z_0..Z_{K-1}) basis.
inline SymplecticMatrix logical_action(const CliffordCircuit &circuit,
                                       const StabilizerCode &code) {
  if (circuit.n != code.n) {
    throw std::invalid_argument("circuit/code qubit count mismatch");
  }
  size_t K = code.k();
  if (2 * K > SymplecticMatrix::kMaxDim) {
    throw std::invalid_argument("too many logical qubits for SymplecticMatrix");
  }

  RowSpace stab(2 * code.n);
  for (const auto &chk : code.checks) {
    stab.insert(chk.xz());
  }
  for (const auto &chk : code.checks) {
    PauliOperator img = conjugate_through(chk, circuit);
    if (!stab.contains(img.xz())) {
      throw NotALogicalGate("a check image leaves the stabilizer group");
    }
  }

  // Solve images in terms of (logicals, checks): columns of B^T are the
  // basis rows, so B^T y = image picks out logical coordinates y[0..2K).
  size_t basis_count = 2 * K + code.checks.size();
  BitMatrix bt(2 * code.n, basis_count);
  auto put_col = [&](size_t col, const BitVector &row) {
    for (size_t i = 0; i < 2 * code.n; i++) {
      bt.set(i, col, row.get(i));
    }
  };
  for (size_t i = 0; i < K; i++) {
    put_col(i, code.logical_x[i].xz());
    put_col(K + i, code.logical_z[i].xz());
  }
  for (size_t c = 0; c < code.checks.size(); c++) {
    put_col(2 * K + c, code.checks[c].xz());
  }

  SymplecticMatrix action(2 * K);
  for (size_t i = 0; i < 2 * K; i++) {
    const PauliOperator &gen = i < K ? code.logical_x[i] : code.logical_z[i - K];
    PauliOperator img = conjugate_through(gen, circuit);
    auto y = solve(bt, img.xz());
    if (!y.has_value()) {
      throw NotALogicalGate("a logical image leaves the centralizer");
    }
    uint32_t row = 0;
    for (size_t j = 0; j < 2 * K; j++) {
      if (y->get(j)) {
        row |= uint32_t{1} << j;
      }
    }
    action.set_row(i, row);
  }
  if (!action.is_symplectic()) {
    throw NotALogicalGate("extracted action is not symplectic");
  }
  return action;
}

inline SymplecticMatrix logical_action(const CliffordCircuit &circuit, const CssCode &code) {
  return logical_action(circuit, code.to_stabilizer());
}

/// Lifts a single-qubit symplectic class g on seed qubit i to the CNOT-type
/// circuit on the pair {i, tau(i)} of the double, with H mapping to SWAP.
inline CliffordCircuit lift_single_qubit(Mat2 g, size_t i, const ZXDuality &tau) {
  if (!g.invertible()) {
    throw std::invalid_argument("not a symplectic 2x2 matrix");
  }
  size_t j = tau(i);
  CliffordCircuit out(tau.n());
  // The x-part action of SWAP matches H and of CX(i, j) matches S; composite
  // words lift factor by factor.
  for (Gate gate : g.gate_word()) {
    if (gate == Gate::H) {
      out.swap(uint32_t(i), uint32_t(j));
    } else {
      out.cx(uint32_t(i), uint32_t(j));
    }
  }
  return out;
}

/// Lifted SWAP: SWAP(i,j) SWAP(tau(i),tau(j)).
inline CliffordCircuit lift_swap(size_t i, size_t j, const ZXDuality &tau) {
  if (i == j) {
    throw std::invalid_argument("lift_swap requires distinct qubits");
  }
  CliffordCircuit out(tau.n());
  out.swap(uint32_t(i), uint32_t(j));
  out.swap(uint32_t(tau(i)), uint32_t(tau(j)));
  return out;
}

/// Lifts a seed circuit of single-qubit gates and SWAPs through the duality.
inline CliffordCircuit lift_word(const CliffordCircuit &seed_word, const ZXDuality &tau) {
  CliffordCircuit out(tau.n());
  for (const auto &op : seed_word.ops) {
    if (op.g == Gate::SWAP) {
      out.append(lift_swap(op.a, op.b, tau));
    } else if (!is_two_qubit(op.g)) {
      out.append(lift_single_qubit(Mat2::of_gate(op.g), op.a, tau));
    } else {
      throw std::invalid_argument("only single-qubit gates and SWAPs lift");
    }
  }
  return out;
}

/// Rewrites a seed word of single-qubit gates and SWAPs into the
/// SWAP-transversal physical word on the concatenated code. Per block
/// {4b..4b+3}: seed H becomes the intra-block logical SWAP (4b+1, 4b+2),
/// seed S the logical CNOT_{1,2} = SWAP(4b+1, 4b+3), its transpose the
/// logical CNOT_{2,1} = SWAP(4b+2, 4b+3), and a seed SWAP exchanges whole
/// blocks qubit by qubit.
inline CliffordCircuit lift_to_csd(const CliffordCircuit &seed_word, const CsdCode &csd) {
  CliffordCircuit out(csd.css.n);
  auto block_of = [&](uint32_t seed_q) { return csd.layout.pair_map[seed_q].first; };
  for (const auto &op : seed_word.ops) {
    if (op.g == Gate::SWAP) {
      uint32_t b1 = block_of(op.a), b2 = block_of(op.b);
      if (b1 == b2) {
        throw std::invalid_argument("seed SWAP endpoints share a block");
      }
      for (uint32_t i = 0; i < 4; i++) {
        out.swap(4 * b1 + i, 4 * b2 + i);
      }
    } else if (!is_two_qubit(op.g)) {
      uint32_t b = block_of(op.a);
      for (Gate g : Mat2::of_gate(op.g).gate_word()) {
        if (g == Gate::H) {
          out.swap(4 * b + 1, 4 * b + 2);
        } else {
          out.swap(4 * b + 1, 4 * b + 3);
        }
      }
    } else {
      throw std::invalid_argument("only single-qubit gates and SWAPs lift");
    }
  }
  return out;
}

struct GateRecord {
  std::string label;
  CliffordCircuit circuit;
  SymplecticMatrix action;
  std::string transversality;
};

/// Fold Hadamard on the double: H everywhere followed by the orbit SWAPs.
inline GateRecord h_tau(const CssCode &double_code, const ZXDuality &tau) {
  CliffordCircuit c(double_code.n);
  for (uint32_t q = 0; q < double_code.n; q++) {
    c.h(q);
  }
  for (uint32_t q = 0; q < double_code.n; q++) {
    if (q < tau(q)) {
      c.swap(q, tau(q));
    }
  }
  return {"H_tau", c, logical_action(c, double_code), "fold-transversal"};
}

/// Fold phase gate on the double: CZ across each orbit.
inline GateRecord s_tau(const CssCode &double_code, const ZXDuality &tau) {
  CliffordCircuit c(double_code.n);
  for (uint32_t q = 0; q < double_code.n; q++) {
    if (q < tau(q)) {
      c.cz(q, tau(q));
    }
  }
  return {"S_tau", c, logical_action(c, double_code), "fold-transversal"};
}

/// On the concatenated code the fold Hadamard collapses to plain transversal
/// H: the per-block implementation of H1 H2 carries an implicit logical SWAP
/// that exactly cancels the orbit SWAPs.
inline GateRecord h_tau(const CsdCode &csd) {
  CliffordCircuit c(csd.css.n);
  for (uint32_t q = 0; q < csd.css.n; q++) {
    c.h(q);
  }
  return {"H_tau", c, logical_action(c, csd.css), "swap-transversal"};
}

/// On the concatenated code the fold CZ becomes the intra-block logical CZ,
/// S1^dg S2 S3 S4^dg on every block.
inline GateRecord s_tau(const CsdCode &csd) {
  CliffordCircuit c(csd.css.n);
  for (uint32_t b = 0; b < csd.n_blocks; b++) {
    c.sdg(4 * b);
    c.s(4 * b + 1);
    c.s(4 * b + 2);
    c.sdg(4 * b + 3);
  }
  return {"S_tau", c, logical_action(c, csd.css), "swap-transversal"};
}

/// A qubit permutation plus per-qubit single-qubit Clifford preserving the
/// stabilizer group.
struct SwapTransversalGate {
  std::vector<Mat2> per_qubit;
  std::vector<uint32_t> perm;  // operators on qubit q move to perm[q]
  CliffordCircuit circuit;     // single-qubit layer then SWAP realization
  SymplecticMatrix action;     // logical action on the seed code
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string &what) : std::runtime_error(what) {}
};

namespace detail {

/// Circuit realizing operator relabeling q -> perm[q] as SWAPs.
inline void append_permutation(CliffordCircuit *c, std::vector<uint32_t> perm) {
  size_t n = perm.size();
  std::vector<bool> done(n, false);
  for (size_t q = 0; q < n; q++) {
    if (done[q] || perm[q] == q) {
      done[q] = true;
      continue;
    }
    // Walk the cycle q -> perm[q] -> ...; (a0 a1), (a0 a2), ... realizes it.
    std::vector<uint32_t> cycle{uint32_t(q)};
    for (uint32_t r = perm[q]; r != q; r = perm[r]) {
      cycle.push_back(r);
    }
    for (size_t i = 1; i < cycle.size(); i++) {
      c->swap(cycle[0], cycle[i]);
    }
    for (uint32_t r : cycle) {
      done[r] = true;
    }
  }
}

}  // namespace detail

/// Brute-force enumeration of SWAP-transversal gates: (permutation, per-qubit
/// Clifford class) pairs mapping the stabilizer group to itself, deduplicated
/// by logical action. Exhaustive only for small seeds.
inline std::vector<SwapTransversalGate> find_swap_transversal_gates(
    const StabilizerCode &code, size_t max_qubits = 6) {
  if (code.n > max_qubits) {
    throw BudgetExceeded("brute-force automorphism search bounded at n = " +
                         std::to_string(max_qubits));
  }
  size_t n = code.n;
  std::vector<Mat2> classes = Mat2::all();

  RowSpace stab(2 * n);
  for (const auto &chk : code.checks) {
    stab.insert(chk.xz());
  }

  std::vector<uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<size_t> assign(n, 0);

  std::vector<SwapTransversalGate> out;
  std::unordered_set<SymplecticMatrix, SymplecticMatrixHash> seen_actions;

  do {
    std::fill(assign.begin(), assign.end(), 0);
    for (;;) {
      // Transform every check through (per-qubit class, then relabeling).
      bool preserved = true;
      for (const auto &chk : code.checks) {
        BitVector img(2 * n);
        for (size_t q = 0; q < n; q++) {
          bool x = chk.xbit(q), z = chk.zbit(q);
          if (!x && !z) {
            continue;
          }
          Mat2 m = classes[assign[q]];
          bool nx = (x & m.r0x()) ^ (z & m.r1x());
          bool nz = (x & m.r0z()) ^ (z & m.r1z());
          if (nx) {
            img.flip(perm[q]);
          }
          if (nz) {
            img.flip(perm[q] + n);
          }
        }
        if (!stab.contains(img)) {
          preserved = false;
          break;
        }
      }
      if (preserved) {
        CliffordCircuit c(n);
        for (size_t q = 0; q < n; q++) {
          for (Gate g : classes[assign[q]].gate_word()) {
            c.add(g, uint32_t(q));
          }
        }
        detail::append_permutation(&c, perm);
        SymplecticMatrix act = logical_action(c, code);
        if (seen_actions.insert(act).second) {
          out.push_back({std::vector<Mat2>{}, perm, c, act});
          for (size_t q = 0; q < n; q++) {
            out.back().per_qubit.push_back(classes[assign[q]]);
          }
        }
      }
      // Odometer over class assignments.
      size_t q = 0;
      while (q < n && ++assign[q] == classes.size()) {
        assign[q] = 0;
        q++;
      }
      if (q == n) {
        break;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

struct ClosureResult {
  bool capped = false;
  uint64_t order = 0;
  std::vector<SymplecticMatrix> elements;
};

/// BFS closure under multiplication; exact order when it fits under cap.
inline ClosureResult group_closure(const std::vector<SymplecticMatrix> &generators,
                                   uint64_t cap) {
  ClosureResult res;
  if (generators.empty()) {
    res.order = 1;
    return res;
  }
  size_t dim = generators[0].dim();
  for (const auto &g : generators) {
    if (g.dim() != dim || !g.is_symplectic()) {
      throw std::invalid_argument("generators must be symplectic of equal dimension");
    }
  }
  std::unordered_set<SymplecticMatrix, SymplecticMatrixHash> seen;
  std::deque<SymplecticMatrix> frontier;
  seen.insert(SymplecticMatrix::identity(dim));
  frontier.push_back(SymplecticMatrix::identity(dim));
  while (!frontier.empty()) {
    SymplecticMatrix cur = frontier.front();
    frontier.pop_front();
    for (const auto &g : generators) {
      SymplecticMatrix next = cur.mul(g);
      if (seen.insert(next).second) {
        if (seen.size() > cap) {
          res.capped = true;
          res.order = seen.size();
          return res;
        }
        frontier.push_back(next);
      }
    }
  }
  res.order = seen.size();
  res.elements.assign(seen.begin(), seen.end());
  std::sort(res.elements.begin(), res.elements.end(),
            [](const SymplecticMatrix &a, const SymplecticMatrix &b) {
              for (size_t i = 0; i < a.dim(); i++) {
                if (a.row(i) != b.row(i)) {
                  return a.row(i) < b.row(i);
                }
              }
              return false;
            });
  return res;
}

namespace detail {

/// Randomized Schreier-Sims order computation for matrix groups acting on
/// nonzero row vectors. Deterministic for a fixed seed; the consecutive-sift
/// threshold makes an undercount vanishingly unlikely.
class SchreierSims {
 public:
  explicit SchreierSims(const std::vector<SymplecticMatrix> &gens, uint64_t seed)
      : dim_(gens[0].dim()), rng_(seed, 0x5c43) {
    slots_ = gens;
    while (slots_.size() < 8) {
      slots_.push_back(gens[slots_.size() % gens.size()]);
    }
    for (int i = 0; i < 64; i++) {
      stir();
    }
    for (const auto &g : gens) {
      learn(g);
    }
    size_t consecutive = 0;
    while (consecutive < 64) {
      if (learn(random_element())) {
        consecutive = 0;
      } else {
        consecutive++;
      }
    }
  }

  BigCount order() const {
    BigCount t = 1;
    for (const auto &lvl : levels_) {
      t *= lvl.orbit.size();
    }
    return t;
  }

 private:
  struct Level {
    uint32_t base = 0;
    std::vector<SymplecticMatrix> gens;
    std::unordered_map<uint32_t, size_t> orbit;  // point -> transversal index
    std::vector<SymplecticMatrix> transversal;
    std::vector<SymplecticMatrix> transversal_inv;
  };

  void stir() {
    size_t i = rng_.below(slots_.size());
    size_t j = rng_.below(slots_.size());
    if (i == j) {
      return;
    }
    slots_[i] = slots_[i].mul(slots_[j]);
  }

  SymplecticMatrix random_element() {
    stir();
    stir();
    return slots_[rng_.below(slots_.size())];
  }

  void rebuild_orbit(Level &lvl) {
    lvl.orbit.clear();
    lvl.transversal.clear();
    lvl.transversal_inv.clear();
    SymplecticMatrix id = SymplecticMatrix::identity(dim_);
    lvl.orbit[lvl.base] = 0;
    lvl.transversal.push_back(id);
    lvl.transversal_inv.push_back(id);
    std::deque<uint32_t> queue{lvl.base};
    while (!queue.empty()) {
      uint32_t p = queue.front();
      queue.pop_front();
      const SymplecticMatrix rep = lvl.transversal[lvl.orbit[p]];
      for (const auto &g : lvl.gens) {
        uint32_t q = g.apply(p);
        if (!lvl.orbit.count(q)) {
          lvl.orbit[q] = lvl.transversal.size();
          SymplecticMatrix next = rep.mul(g);
          lvl.transversal.push_back(next);
          lvl.transversal_inv.push_back(next.inverse());
          queue.push_back(q);
        }
      }
    }
  }

  /// Sifts g; adds the residue as a strong generator when non-identity.
  /// Returns true when the structure changed.
  bool learn(SymplecticMatrix g) {
    for (size_t l = 0; l <= levels_.size(); l++) {
      if (g.is_identity()) {
        return false;
      }
      if (l == levels_.size()) {
        // New base point: first vector moved by g.
        uint32_t moved = 0;
        for (uint32_t v = 1; v < (uint32_t{1} << dim_); v++) {
          if (g.apply(v) != v) {
            moved = v;
            break;
          }
        }
        if (!moved) {
          return false;
        }
        levels_.push_back(Level{});
        levels_.back().base = moved;
        levels_.back().gens.push_back(g);
        rebuild_orbit(levels_.back());
        return true;
      }
      Level &lvl = levels_[l];
      uint32_t p = g.apply(lvl.base);
      auto it = lvl.orbit.find(p);
      if (it == lvl.orbit.end()) {
        lvl.gens.push_back(g);
        rebuild_orbit(lvl);
        return true;
      }
      g = g.mul(lvl.transversal_inv[it->second]);
    }
    return false;
  }

  size_t dim_;
  Rng rng_;
  std::vector<SymplecticMatrix> slots_;
  std::vector<Level> levels_;
};

}  // namespace detail

/// Exact group order: BFS enumeration when feasible, otherwise a randomized
/// Schreier-Sims stabilizer chain (deterministic for fixed seed).
inline BigCount group_order(const std::vector<SymplecticMatrix> &generators,
                            uint64_t enumeration_cap = 2000000, uint64_t seed = 1) {
  if (generators.empty()) {
    return 1;
  }
  ClosureResult c = group_closure(generators, enumeration_cap);
  if (!c.capped) {
    return c.order;
  }
  detail::SchreierSims chain(generators, seed);
  return chain.order();
}

/// True iff the generators produce the whole phase-free Clifford group
/// Sp_{2t}(F_2) on t = dim/2 logical qubits.
inline bool is_full_symplectic(const std::vector<SymplecticMatrix> &generators,
                               uint64_t seed = 1) {
  if (generators.empty()) {
    return false;
  }
  size_t t = generators[0].dim() / 2;
  return group_order(generators, 2000000, seed) == sp_order(t);
}

/// Logical action of an injected phase gate on logical qubit `which` of K.
inline SymplecticMatrix injected_s_action(size_t K, size_t which) {
  SymplecticMatrix m = SymplecticMatrix::identity(2 * K);
  m.set(which, K + which, true);  // X_i -> X_i Z_i
  return m;
}

/// Logical action of an injected sqrt(X) gate: Z_i -> Z_i X_i.
inline SymplecticMatrix injected_sqrtx_action(size_t K, size_t which) {
  SymplecticMatrix m = SymplecticMatrix::identity(2 * K);
  m.set(K + which, which, true);
  return m;
}

/// Global phase gate S on every logical qubit.
inline SymplecticMatrix global_s_action(size_t K) {
  SymplecticMatrix m = SymplecticMatrix::identity(2 * K);
  for (size_t i = 0; i < K; i++) {
    m.set(i, K + i, true);
  }
  return m;
}

/// The SWAP-transversal gate group generators of a CSD code (equivalently of
/// its double): lifted seed automorphisms plus the two fold gates.
inline std::vector<SymplecticMatrix> g_tau_generators(const StabilizerCode &seed,
                                                      const CssCode &double_code,
                                                      const ZXDuality &tau) {
  std::vector<SymplecticMatrix> gens;
  for (const auto &aut : find_swap_transversal_gates(seed)) {
    CliffordCircuit lifted = lift_word(aut.circuit, tau);
    gens.push_back(logical_action(lifted, double_code));
  }
  gens.push_back(h_tau(double_code, tau).action);
  gens.push_back(s_tau(double_code, tau).action);
  return gens;
}

}  // namespace csd

#endif
