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

#ifndef CSD_BUILDERS_HPP
#define CSD_BUILDERS_HPP

#include <map>
#include <set>
#include <vector>

#include "csd/circuit.hpp"
#include "csd/construct.hpp"
#include "csd/liftgate.hpp"

namespace csd {

struct PrepPolicy {
  Basis basis = Basis::Z;
  size_t allow_m = 0;        // accepted when at most this many prep detectors fire
  bool use_flagcilla = true; // combined verification rounds after the first measurement
};

/// Blocks whose C4 generators must be verified after measuring concatenated
/// generator `gen_index`: exactly those sharing support with it.
inline std::vector<uint32_t> c4_checks_to_verify(const CsdCode &csd, size_t gen_index) {
  BitVector row = csd.concat_x_row(gen_index);
  std::vector<uint32_t> out;
  for (uint32_t b = 0; b < csd.n_blocks; b++) {
    for (uint32_t j = 0; j < 4; j++) {
      if (row.get(4 * b + j)) {
        out.push_back(b);
        break;
      }
    }
  }
  return out;
}

namespace detail {

/// Support of a concatenated generator ordered so each touched block has one
/// contact in each half (hooks reduce, mod the generator, to single contacts
/// per block).
inline std::vector<uint32_t> midpoint_split_order(const BitVector &row, size_t n_blocks) {
  std::vector<uint32_t> firsts, seconds;
  for (uint32_t b = 0; b < n_blocks; b++) {
    std::vector<uint32_t> contacts;
    for (uint32_t j = 0; j < 4; j++) {
      if (row.get(4 * b + j)) {
        contacts.push_back(4 * b + j);
      }
    }
    if (contacts.size() > 2) {
      throw std::logic_error("concatenated generator touches a block more than twice");
    }
    if (!contacts.empty()) {
      firsts.push_back(contacts[0]);
    }
    if (contacts.size() == 2) {
      seconds.push_back(contacts[1]);
    }
  }
  firsts.insert(firsts.end(), seconds.begin(), seconds.end());
  return firsts;
}

}  // namespace detail

/// Bare-ancilla measurement of one concatenated generator as a standalone
/// fragment (ancilla is the last qubit). X-type generators use a |+> ancilla
/// fanning CX(anc, data); Z-type the mirror.
inline Circuit build_bare_measure(const CsdCode &csd, size_t gen_index, Basis gen_type) {
  if (gen_index >= csd.n_concat) {
    throw std::invalid_argument("generator index out of range");
  }
  BitVector row =
      gen_type == Basis::X ? csd.concat_x_row(gen_index) : csd.concat_z_row(gen_index);
  if (!row.any()) {
    throw std::invalid_argument("cannot measure a weight-0 generator");
  }
  Circuit c(csd.css.n + 1);
  uint32_t anc = uint32_t(csd.css.n);
  c.reset(anc, gen_type == Basis::X ? Basis::X : Basis::Z);
  c.tick();
  for (uint32_t q : detail::midpoint_split_order(row, csd.n_blocks)) {
    if (gen_type == Basis::X) {
      c.gate(Gate::CX, anc, q);
    } else {
      c.gate(Gate::CX, q, anc);
    }
    c.tick();
  }
  c.measure(anc, gen_type == Basis::X ? Basis::X : Basis::Z);
  return c;
}

namespace detail {

/// Builder context shared by the fault-tolerant gadget constructions.
struct GadgetState {
  const CsdCode *csd = nullptr;
  Circuit *c = nullptr;
  // Ancilla indices.
  uint32_t block_syn(uint32_t b) const { return uint32_t(csd->css.n + 2 * b); }
  uint32_t block_flag(uint32_t b) const { return uint32_t(csd->css.n + 2 * b + 1); }
  uint32_t concat_anc(uint32_t j) const {
    return uint32_t(csd->css.n + 2 * csd->n_blocks + j);
  }
  // Last syndrome record per block and sector, -1 when unmeasured.
  std::vector<int32_t> last_x, last_z;
  // Detector conventions: the prep basis decides which sector is
  // deterministic from the start (absolute detectors on first measurement).
  // After an ideal projection preamble both sectors are pinned to +1.
  Basis deterministic_sector = Basis::Z;
  bool ideal_prepared = false;
  bool postselect = true;
  std::vector<std::vector<uint32_t>> block_c4_detectors;  // per block

  void init(const CsdCode &code, Circuit *circuit, Basis det_sector) {
    csd = &code;
    c = circuit;
    last_x.assign(code.n_blocks, -1);
    last_z.assign(code.n_blocks, -1);
    deterministic_sector = det_sector;
    block_c4_detectors.assign(code.n_blocks, {});
  }

  void note_syndrome(uint32_t b, Basis sector, uint32_t record) {
    int32_t &last = sector == Basis::X ? last_x[b] : last_z[b];
    if (last >= 0) {
      uint32_t d = c->detector({uint32_t(last), record}, postselect);
      block_c4_detectors[b].push_back(d);
    } else if (ideal_prepared || sector == deterministic_sector) {
      uint32_t d = c->detector({record}, postselect);
      block_c4_detectors[b].push_back(d);
    }
    last = int32_t(record);
  }
};

/// Individual flag-qubit measurement of each listed block's generator of the
/// given sector, blocks in parallel layers. One syndrome ancilla plus one
/// flag per block; flags catch weight-2 hooks.
inline void emit_individual_round(GadgetState *st, const std::vector<uint32_t> &blocks,
                                  Basis sector) {
  if (blocks.empty()) {
    return;
  }
  Circuit &c = *st->c;
  for (uint32_t b : blocks) {
    // X sector: syndrome anc |+>, flag |0>; Z sector mirrored.
    c.reset(st->block_syn(b), sector);
    c.reset(st->block_flag(b), sector == Basis::X ? Basis::Z : Basis::X);
  }
  c.tick();
  auto couple = [&](uint32_t b, uint32_t data_q) {
    if (sector == Basis::X) {
      c.gate(Gate::CX, st->block_syn(b), data_q);
    } else {
      c.gate(Gate::CX, data_q, st->block_syn(b));
    }
  };
  auto flag_couple = [&](uint32_t b) {
    if (sector == Basis::X) {
      c.gate(Gate::CX, st->block_syn(b), st->block_flag(b));
    } else {
      c.gate(Gate::CX, st->block_flag(b), st->block_syn(b));
    }
  };
  for (uint32_t b : blocks) couple(b, 4 * b);
  c.tick();
  for (uint32_t b : blocks) flag_couple(b);
  c.tick();
  for (uint32_t b : blocks) couple(b, 4 * b + 1);
  c.tick();
  for (uint32_t b : blocks) couple(b, 4 * b + 2);
  c.tick();
  for (uint32_t b : blocks) flag_couple(b);
  c.tick();
  for (uint32_t b : blocks) couple(b, 4 * b + 3);
  c.tick();
  for (uint32_t b : blocks) {
    uint32_t syn = c.measure(st->block_syn(b), sector);
    uint32_t flg = c.measure(st->block_flag(b), sector == Basis::X ? Basis::Z : Basis::X);
    c.detector({flg}, st->postselect);
    st->note_syndrome(b, sector, syn);
  }
  c.tick();
}

/// Combined flagcilla round: both C4 generators of each listed block with two
/// cross-coupled ancillas; each syndrome ancilla flags the other's hooks.
/// Refuses to run before the block's nondeterministic sector was measured
/// individually once.
inline void emit_flagcilla_round(GadgetState *st, const std::vector<uint32_t> &blocks) {
  if (blocks.empty()) {
    return;
  }
  Circuit &c = *st->c;
  Basis random_sector = st->deterministic_sector == Basis::Z ? Basis::X : Basis::Z;
  for (uint32_t b : blocks) {
    int32_t first = random_sector == Basis::X ? st->last_x[b] : st->last_z[b];
    if (first < 0 && !st->ideal_prepared) {
      throw std::logic_error(
          "flagcilla requires an individual first measurement of the nondeterministic "
          "generator");
    }
  }
  for (uint32_t b : blocks) {
    c.reset(st->block_syn(b), Basis::X);   // ax: XXXX ancilla
    c.reset(st->block_flag(b), Basis::Z);  // az: ZZZZ ancilla
  }
  c.tick();
  auto cross = [&](uint32_t b) { c.gate(Gate::CX, st->block_syn(b), st->block_flag(b)); };
  for (uint32_t b : blocks) cross(b);
  c.tick();
  for (uint32_t b : blocks) c.gate(Gate::CX, st->block_syn(b), 4 * b);
  c.tick();
  for (int j = 0; j < 3; j++) {
    for (uint32_t b : blocks) {
      c.gate(Gate::CX, 4 * b + j, st->block_flag(b));
      c.gate(Gate::CX, st->block_syn(b), 4 * b + j + 1);
    }
    c.tick();
  }
  for (uint32_t b : blocks) c.gate(Gate::CX, 4 * b + 3, st->block_flag(b));
  c.tick();
  for (uint32_t b : blocks) cross(b);
  c.tick();
  for (uint32_t b : blocks) {
    uint32_t rx = c.measure(st->block_syn(b), Basis::X);
    uint32_t rz = c.measure(st->block_flag(b), Basis::Z);
    st->note_syndrome(b, Basis::X, rx);
    st->note_syndrome(b, Basis::Z, rz);
  }
  c.tick();
}

/// Greedy packing of concatenated generators into rounds of pairwise
/// disjoint support, in index order.
inline std::vector<std::vector<uint32_t>> disjoint_rounds(const CsdCode &csd, Basis sector) {
  std::vector<std::vector<uint32_t>> rounds;
  std::vector<bool> used(csd.n_concat, false);
  for (size_t start = 0; start < csd.n_concat; start++) {
    if (used[start]) {
      continue;
    }
    std::vector<uint32_t> round{uint32_t(start)};
    used[start] = true;
    BitVector support =
        sector == Basis::X ? csd.concat_x_row(start) : csd.concat_z_row(start);
    for (size_t j = start + 1; j < csd.n_concat; j++) {
      if (used[j]) {
        continue;
      }
      BitVector cand = sector == Basis::X ? csd.concat_x_row(j) : csd.concat_z_row(j);
      bool overlap = false;
      for (size_t w = 0; w < support.words().size(); w++) {
        if (support.words()[w] & cand.words()[w]) {
          overlap = true;
          break;
        }
      }
      if (!overlap) {
        round.push_back(uint32_t(j));
        used[j] = true;
        support ^= cand;
      }
    }
    rounds.push_back(std::move(round));
  }
  return rounds;
}

/// Bare-ancilla measurement of a round of disjoint concatenated generators,
/// fanned in midpoint-split order, one CX layer per contact index.
inline std::vector<uint32_t> emit_concat_round(GadgetState *st,
                                               const std::vector<uint32_t> &gens,
                                               Basis sector) {
  Circuit &c = *st->c;
  std::vector<std::vector<uint32_t>> fans;
  size_t max_len = 0;
  for (uint32_t j : gens) {
    BitVector row = sector == Basis::X ? st->csd->concat_x_row(j) : st->csd->concat_z_row(j);
    fans.push_back(midpoint_split_order(row, st->csd->n_blocks));
    max_len = std::max(max_len, fans.back().size());
    c.reset(st->concat_anc(j), sector);
  }
  c.tick();
  for (size_t layer = 0; layer < max_len; layer++) {
    for (size_t g = 0; g < gens.size(); g++) {
      if (layer >= fans[g].size()) {
        continue;
      }
      uint32_t anc = st->concat_anc(gens[g]);
      if (sector == Basis::X) {
        c.gate(Gate::CX, anc, fans[g][layer]);
      } else {
        c.gate(Gate::CX, fans[g][layer], anc);
      }
    }
    c.tick();
  }
  std::vector<uint32_t> records;
  for (uint32_t j : gens) {
    records.push_back(c.measure(st->concat_anc(j), sector));
  }
  c.tick();
  return records;
}

}  // namespace detail

/// Standalone fragments for the individual flag measurements; data block b
/// occupies its usual physical qubits.
inline Circuit build_flag_c4(const CsdCode &csd, uint32_t block, Basis sector) {
  Circuit c(csd.css.n + 2 * csd.n_blocks + csd.n_concat);
  detail::GadgetState st;
  st.init(csd, &c, sector == Basis::X ? Basis::X : Basis::Z);
  st.postselect = false;
  detail::emit_individual_round(&st, {block}, sector);
  return c;
}

inline Circuit build_flag_c4_x(const CsdCode &csd, uint32_t block) {
  return build_flag_c4(csd, block, Basis::X);
}
inline Circuit build_flag_c4_z(const CsdCode &csd, uint32_t block) {
  return build_flag_c4(csd, block, Basis::Z);
}

/// Standalone flagcilla fragment. Throws when the block has not had its
/// nondeterministic generator measured individually (first_round = true).
inline Circuit build_flagcilla_c4(const CsdCode &csd, uint32_t block, bool first_round,
                                  Basis deterministic_sector = Basis::Z) {
  Circuit c(csd.css.n + 2 * csd.n_blocks + csd.n_concat);
  detail::GadgetState st;
  st.init(csd, &c, deterministic_sector);
  st.postselect = false;
  if (first_round) {
    detail::emit_flagcilla_round(&st, {block});  // throws
  }
  Basis random_sector = deterministic_sector == Basis::Z ? Basis::X : Basis::Z;
  detail::emit_individual_round(&st, {block}, random_sector);
  detail::emit_flagcilla_round(&st, {block});
  return c;
}

struct PrepCircuit {
  Circuit circuit;
  size_t n_data = 0;
  PrepPolicy policy;
  std::vector<std::vector<uint32_t>> block_c4_detectors;
  std::vector<uint32_t> prep_detectors;
};

/// Fault-tolerant bare-ancilla preparation of |0...0> (basis Z) or |+...+>
/// (basis X): project the nondeterministic C4 generators with individual
/// flag circuits, then measure each concatenated generator with hook-safe
/// ordering, verifying touched blocks after every round. Ends with a
/// destructive data measurement in the preparation basis, whose
/// reconstructed checks and logical readouts feed the decoder.
inline PrepCircuit build_state_prep(const CsdCode &csd, const PrepPolicy &policy) {
  size_t n_data = csd.css.n;
  Circuit c(n_data + 2 * csd.n_blocks + csd.n_concat);
  detail::GadgetState st;
  st.init(csd, &c, policy.basis);
  st.postselect = true;

  Basis random_sector = policy.basis == Basis::Z ? Basis::X : Basis::Z;

  for (uint32_t q = 0; q < n_data; q++) {
    c.reset(q, policy.basis);
  }
  c.tick();

  // First round: individual flag measurements of the nondeterministic
  // sector's block generators.
  std::vector<uint32_t> all_blocks(csd.n_blocks);
  std::iota(all_blocks.begin(), all_blocks.end(), 0);
  detail::emit_individual_round(&st, all_blocks, random_sector);

  // Concatenated generators of the nondeterministic sector, serialized into
  // disjoint-support rounds, each followed by verification of the touched
  // blocks.
  for (const auto &round : detail::disjoint_rounds(csd, random_sector)) {
    detail::emit_concat_round(&st, round, random_sector);
    std::set<uint32_t> touched;
    for (uint32_t j : round) {
      for (uint32_t b : c4_checks_to_verify(csd, j)) {
        touched.insert(b);
      }
    }
    std::vector<uint32_t> blocks(touched.begin(), touched.end());
    if (policy.use_flagcilla) {
      detail::emit_flagcilla_round(&st, blocks);
    } else {
      detail::emit_individual_round(&st, blocks,
                                    policy.basis == Basis::Z ? Basis::Z : Basis::X);
    }
  }

  // Destructive readout in the preparation basis.
  st.postselect = false;
  std::vector<uint32_t> data_records(n_data);
  for (uint32_t q = 0; q < n_data; q++) {
    data_records[q] = c.measure(q, policy.basis);
  }

  PrepCircuit out;
  out.n_data = n_data;
  out.policy = policy;

  // Reconstructed block checks of the deterministic sector, paired with the
  // last measured syndrome when one exists.
  for (uint32_t b = 0; b < csd.n_blocks; b++) {
    std::vector<uint32_t> recs;
    for (uint32_t j = 0; j < 4; j++) {
      recs.push_back(data_records[4 * b + j]);
    }
    int32_t last = policy.basis == Basis::Z ? st.last_z[b] : st.last_x[b];
    if (last >= 0) {
      recs.push_back(uint32_t(last));
    }
    uint32_t d = c.detector(recs, false);
    st.block_c4_detectors[b].push_back(d);
  }
  // Reconstructed concatenated checks of the deterministic sector (absolute).
  for (size_t j = 0; j < csd.n_concat; j++) {
    BitVector row = policy.basis == Basis::Z ? csd.concat_z_row(j) : csd.concat_x_row(j);
    std::vector<uint32_t> recs;
    for (uint32_t q = 0; q < n_data; q++) {
      if (row.get(q)) {
        recs.push_back(data_records[q]);
      }
    }
    c.detector(recs, false);
  }
  // Logical observables of the preparation basis.
  const auto &logicals = policy.basis == Basis::Z ? csd.css.logical_z : csd.css.logical_x;
  for (size_t l = 0; l < logicals.size(); l++) {
    std::vector<uint32_t> recs;
    for (uint32_t q = 0; q < n_data; q++) {
      bool on = policy.basis == Basis::Z ? logicals[l].zbit(q) : logicals[l].xbit(q);
      if (on) {
        recs.push_back(data_records[q]);
      }
    }
    c.observable(uint32_t(l), recs);
  }

  out.block_c4_detectors = st.block_c4_detectors;
  out.circuit = std::move(c);
  out.prep_detectors = out.circuit.postselect_detectors();
  return out;
}

// ---------------------------------------------------------------------------
// Ideal (noiseless) preparation helpers for structural circuits.
// ---------------------------------------------------------------------------

namespace detail {

/// Pauli (of `corr_type`) anticommuting with exactly check row `j` of the
/// given sector and commuting with the other rows of that sector.
inline PauliOperator check_toggler(const CsdCode &csd, Basis check_sector, size_t j,
                                   size_t n_total) {
  const BitMatrix &h = check_sector == Basis::X ? csd.css.hx : csd.css.hz;
  BitVector e(h.rows());
  e.set(j, true);
  auto v = solve(h, e);
  if (!v.has_value()) {
    throw std::logic_error("check matrix rows are dependent");
  }
  PauliOperator p(n_total);
  for (uint32_t q = 0; q < csd.css.n; q++) {
    if (v->get(q)) {
      if (check_sector == Basis::X) {
        p.set_zbit(q, true);  // Z toggles X checks
      } else {
        p.set_xbit(q, true);
      }
    }
  }
  return p;
}

/// Projects freshly reset data onto the joint +1 eigenspace of the opposite
/// sector's stabilizers using noiseless Pauli-product measurements plus
/// conditional corrections. `offset` shifts the block's physical qubits.
inline void ideal_projection(Circuit *c, const CsdCode &csd, Basis prep_basis,
                             uint32_t offset = 0) {
  Basis sector = prep_basis == Basis::Z ? Basis::X : Basis::Z;
  const BitMatrix &h = sector == Basis::X ? csd.css.hx : csd.css.hz;
  for (size_t j = 0; j < h.rows(); j++) {
    PauliOperator gen(c->n_qubits);
    for (uint32_t q = 0; q < csd.css.n; q++) {
      if (h.get(j, q)) {
        gen.set_pauli(offset + q, sector == Basis::X ? 'X' : 'Z');
      }
    }
    uint32_t r = c->measure_pauli(gen, 0, true);
    PauliOperator toggler = check_toggler(csd, sector, j, c->n_qubits);
    // Shift the toggler to the offset block.
    PauliOperator shifted(c->n_qubits);
    for (uint32_t q = 0; q < csd.css.n; q++) {
      shifted.set_xbit(offset + q, toggler.xbit(q));
      shifted.set_zbit(offset + q, toggler.zbit(q));
    }
    c->cond_pauli(r, shifted);
  }
}

/// Ideal reset of a block to |0...0> or |+...+> logical states.
inline void ideal_codestate(Circuit *c, const CsdCode &csd, Basis basis,
                            uint32_t offset = 0) {
  for (uint32_t q = 0; q < csd.css.n; q++) {
    c->reset(offset + q, basis, true);
  }
  ideal_projection(c, csd, basis, offset);
}

/// Shifts a code-sized Pauli onto a block at the given qubit offset,
/// normalized to the +1 Hermitian representative.
inline PauliOperator shift_pauli(const PauliOperator &p, size_t n_total, uint32_t offset) {
  PauliOperator out(n_total);
  for (uint32_t q = 0; q < p.num_qubits(); q++) {
    out.set_xbit(offset + q, p.xbit(q));
    out.set_zbit(offset + q, p.zbit(q));
  }
  return out.hermitian();
}

}  // namespace detail

struct YMeasureCircuit {
  Circuit circuit;
  size_t logical_index = 0;
  uint32_t first_outcome_record = 0;
  std::vector<std::vector<uint32_t>> block_c4_detectors;
};

/// Fault-tolerant measurement of the logical Y on one logical qubit of a
/// code block prepared in |+...+>; the ancilla-controlled Pauli decomposition
/// applies at most one CX and one CZ per block between detection rounds, CY
/// gates run alone, and the whole measurement repeats once to catch
/// measurement errors. The conditional logical Z correction leaves the +1
/// eigenstate of logical Y deterministically.
inline YMeasureCircuit build_y_measurement(const CsdCode &csd, size_t logical_index) {
  size_t K = csd.css.k();
  if (logical_index >= K) {
    throw std::invalid_argument("logical index out of range");
  }
  size_t n_data = csd.css.n;
  size_t anc = n_data + 2 * csd.n_blocks + csd.n_concat;  // control ancilla
  Circuit c(anc + 1);
  detail::GadgetState st;
  st.init(csd, &c, Basis::X);  // on |+...+>, the X sector is deterministic
  st.postselect = true;

  // Upstream state: ideal |+...+> (the FT preparation is benchmarked
  // separately). The ideal projection pins every generator to +1, so both
  // sectors are deterministic and flagcilla rounds are allowed immediately.
  detail::ideal_codestate(&c, csd, Basis::X);
  st.ideal_prepared = true;
  c.tick();

  // The measured logical: Y_i = X_i * Z_i as a Hermitian Pauli string.
  PauliOperator y_i = csd.css.logical_x[logical_index];
  y_i *= csd.css.logical_z[logical_index];

  // Per block: list of (qubit, pauli) contacts.
  auto contacts_of = [&](uint32_t b) {
    std::vector<std::pair<uint32_t, char>> out;
    for (uint32_t j = 0; j < 4; j++) {
      uint32_t q = 4 * b + j;
      char pc = y_i.pauli_char(q);
      if (pc != 'I') {
        out.push_back({q, pc});
      }
    }
    return out;
  };

  auto run_measurement = [&]() -> uint32_t {
    c.reset(uint32_t(anc), Basis::X);
    c.tick();
    // Per block: bundles of at most one CX and one CZ, or a single CY alone.
    // A block's checks are dressed by the control ancilla while its contacts
    // are incomplete, so the detection round for a block runs only after its
    // last bundle; between detection rounds every block sees at most one CX
    // and one CZ, and a CY is the only gate touching its block in a segment.
    for (uint32_t b = 0; b < csd.n_blocks; b++) {
      auto contacts = contacts_of(b);
      if (contacts.empty()) {
        continue;
      }
      std::vector<std::pair<uint32_t, char>> xs, zs, ys;
      for (auto &ct : contacts) {
        (ct.second == 'X' ? xs : ct.second == 'Z' ? zs : ys).push_back(ct);
      }
      std::vector<std::vector<std::pair<uint32_t, char>>> bundles;
      while (!xs.empty() || !zs.empty()) {
        std::vector<std::pair<uint32_t, char>> bundle;
        if (!xs.empty()) {
          bundle.push_back(xs.back());
          xs.pop_back();
        }
        if (!zs.empty()) {
          bundle.push_back(zs.back());
          zs.pop_back();
        }
        bundles.push_back(bundle);
      }
      for (auto &y : ys) {
        bundles.push_back({y});
      }
      for (const auto &bundle : bundles) {
        for (auto &[q, pc] : bundle) {
          if (pc == 'X') {
            c.gate(Gate::CX, uint32_t(anc), q);
          } else if (pc == 'Z') {
            c.gate(Gate::CZ, uint32_t(anc), q);
          } else {
            c.gate(Gate::CY, uint32_t(anc), q);
          }
        }
        c.tick();
      }
      detail::emit_flagcilla_round(&st, {b});
    }
    uint32_t rec = c.measure(uint32_t(anc), Basis::X);
    c.tick();
    return rec;
  };

  uint32_t o1 = run_measurement();
  uint32_t o2 = run_measurement();
  c.detector({o1, o2}, true);

  // Final verification: control-ancilla hooks can leave partial products of
  // the measured logical behind; those pieces commute with every block check
  // but anticommute with concatenated generators, so one round of each
  // sector's concatenated syndromes pins them down. The concat rounds' own
  // hooks are caught by a flagcilla round, whose residual escape pairs are in
  // turn caught by a closing round of the individual flag circuits (which
  // have no unflagged weight-2 single faults of their own).
  for (Basis sector : {Basis::X, Basis::Z}) {
    for (const auto &round : detail::disjoint_rounds(csd, sector)) {
      std::vector<uint32_t> recs = detail::emit_concat_round(&st, round, sector);
      for (uint32_t r : recs) {
        c.detector({r}, true);
      }
    }
  }
  std::vector<uint32_t> all_blocks(csd.n_blocks);
  std::iota(all_blocks.begin(), all_blocks.end(), 0);
  detail::emit_flagcilla_round(&st, all_blocks);
  detail::emit_individual_round(&st, all_blocks, Basis::X);
  detail::emit_individual_round(&st, all_blocks, Basis::Z);

  // Conditional logical Z correction pins the +1 eigenstate.
  c.cond_pauli(o1, detail::shift_pauli(csd.css.logical_z[logical_index], c.n_qubits, 0));

  YMeasureCircuit out;
  out.logical_index = logical_index;
  out.first_outcome_record = o1;
  out.block_c4_detectors = st.block_c4_detectors;
  out.circuit = std::move(c);
  return out;
}

// ---------------------------------------------------------------------------
// Steane QEC memory experiment.
// ---------------------------------------------------------------------------

struct PrepNoiseProxy {
  double p_prime = 0.0;  // depolarizing strength on freshly prepared ancilla blocks
  double meas_flip = 0.0;  // flip probability on reconstructed concatenated syndromes
};

struct MemoryCircuit {
  Circuit circuit;
  size_t rounds = 0;
  // Per round: detector ids of the per-block C4 checks (Z sector), for the
  // concatenation-aware decoder heuristics.
  std::vector<std::vector<uint32_t>> round_block_detectors;
};

namespace detail {

/// One Steane extraction round: Z half (detect X errors) then X half (detect
/// Z errors). The ancilla block is ideal |0...0> in both halves — its random
/// logical X masks the data's logical X readout in the X half while all its
/// checks stay +1 — dressed with the proxy depolarizing noise. Ancilla
/// readout is noiseless; the reconstructed concatenated syndromes carry the
/// proxy's extra flip probability, the block syndromes none.
inline std::vector<uint32_t> emit_steane_round(Circuit *cp, const CsdCode &csd,
                                               const PrepNoiseProxy &proxy,
                                               std::vector<int32_t> *last_z,
                                               std::vector<int32_t> *last_x) {
  Circuit &c = *cp;
  size_t n = csd.css.n;
  std::vector<uint32_t> block_detectors;
  for (Basis half : {Basis::Z, Basis::X}) {
    detail::ideal_codestate(&c, csd, Basis::Z, uint32_t(n));
    for (uint32_t q = 0; q < n; q++) {
      if (proxy.p_prime > 0) {
        c.depolarize1(uint32_t(n + q), proxy.p_prime);
      }
    }
    c.tick();
    for (uint32_t q = 0; q < n; q++) {
      if (half == Basis::Z) {
        c.gate(Gate::CX, q, uint32_t(n + q));
      } else {
        c.gate(Gate::CX, uint32_t(n + q), q);
      }
    }
    c.tick();
    std::vector<uint32_t> anc_recs(n);
    for (uint32_t q = 0; q < n; q++) {
      anc_recs[q] = c.measure(uint32_t(n + q), half, 0, true);
    }
    c.tick();
    std::vector<int32_t> &last = half == Basis::Z ? *last_z : *last_x;
    for (uint32_t b = 0; b < csd.n_blocks; b++) {
      uint32_t par = c.derive_parity(
          {anc_recs[4 * b], anc_recs[4 * b + 1], anc_recs[4 * b + 2], anc_recs[4 * b + 3]},
          0.0);
      uint32_t d;
      if (last[b] >= 0) {
        d = c.detector({uint32_t(last[b]), par});
      } else {
        d = c.detector({par});
      }
      if (half == Basis::Z) {
        block_detectors.push_back(d);
      }
      last[b] = int32_t(par);
    }
    for (size_t j = 0; j < csd.n_concat; j++) {
      BitVector row = half == Basis::Z ? csd.concat_z_row(j) : csd.concat_x_row(j);
      std::vector<uint32_t> recs;
      for (uint32_t q = 0; q < n; q++) {
        if (row.get(q)) {
          recs.push_back(anc_recs[q]);
        }
      }
      uint32_t par = c.derive_parity(recs, proxy.meas_flip);
      if (last[csd.n_blocks + j] >= 0) {
        c.detector({uint32_t(last[csd.n_blocks + j]), par});
      } else {
        c.detector({par});
      }
      last[csd.n_blocks + j] = int32_t(par);
    }
  }
  return block_detectors;
}

}  // namespace detail

/// d rounds of Steane syndrome extraction on a noiselessly prepared |0...0>
/// block, ending with a noiseless destructive data measurement that
/// reconstructs the Z checks and logical Z observables.
inline MemoryCircuit build_memory_circuit(const CsdCode &csd, size_t rounds,
                                          const PrepNoiseProxy &proxy) {
  size_t n = csd.css.n;
  Circuit c(2 * n);
  MemoryCircuit out;
  out.rounds = rounds;

  // Noiseless |0...0> codestate: plain resets plus an ideal projection of the
  // X-sector generators.
  detail::ideal_codestate(&c, csd, Basis::Z, 0);
  c.tick();

  // Last reconstructed parity record per check, for round-difference
  // detectors. Z sector: blocks then concatenated; X sector likewise.
  std::vector<int32_t> last_z(csd.n_blocks + csd.n_concat, -1);
  std::vector<int32_t> last_x(csd.n_blocks + csd.n_concat, -1);

  for (size_t r = 0; r < rounds; r++) {
    out.round_block_detectors.push_back(
        detail::emit_steane_round(&c, csd, proxy, &last_z, &last_x));
  }

  // Final noiseless destructive data readout.
  std::vector<uint32_t> data_recs(n);
  for (uint32_t q = 0; q < n; q++) {
    data_recs[q] = c.measure(q, Basis::Z, 0, true);
  }
  for (uint32_t b = 0; b < csd.n_blocks; b++) {
    std::vector<uint32_t> recs{data_recs[4 * b], data_recs[4 * b + 1], data_recs[4 * b + 2],
                               data_recs[4 * b + 3]};
    if (last_z[b] >= 0) {
      recs.push_back(uint32_t(last_z[b]));
    }
    c.detector(recs);
  }
  for (size_t j = 0; j < csd.n_concat; j++) {
    BitVector row = csd.concat_z_row(j);
    std::vector<uint32_t> recs;
    for (uint32_t q = 0; q < n; q++) {
      if (row.get(q)) {
        recs.push_back(data_recs[q]);
      }
    }
    if (last_z[csd.n_blocks + j] >= 0) {
      recs.push_back(uint32_t(last_z[csd.n_blocks + j]));
    }
    c.detector(recs);
  }
  for (size_t l = 0; l < csd.css.logical_z.size(); l++) {
    std::vector<uint32_t> recs;
    for (uint32_t q = 0; q < n; q++) {
      if (csd.css.logical_z[l].zbit(q)) {
        recs.push_back(data_recs[q]);
      }
    }
    c.observable(uint32_t(l), recs);
  }

  out.circuit = std::move(c);
  return out;
}

/// One standalone Steane extraction round (both halves) on an ideally
/// prepared codestate, without the destructive readout; for structural tests.
inline Circuit build_steane_round(const CsdCode &csd, const PrepNoiseProxy &proxy) {
  size_t n = csd.css.n;
  Circuit c(2 * n);
  detail::ideal_codestate(&c, csd, Basis::Z, 0);
  c.tick();
  std::vector<int32_t> last_z(csd.n_blocks + csd.n_concat, -1);
  std::vector<int32_t> last_x(csd.n_blocks + csd.n_concat, -1);
  detail::emit_steane_round(&c, csd, proxy, &last_z, &last_x);
  return c;
}

// ---------------------------------------------------------------------------
// Gate-injection teleportation circuits (structural).
// ---------------------------------------------------------------------------

enum class InjectionKind { STeleport, KnillS, SqrtXTeleport };

/// Permutation of logical indices induced by the transversal-H gate: with the
/// induced basis, H_tau maps X_i to Z_{sigma(i)}; requires the pure
/// Hadamard+SWAP form.
inline std::vector<uint32_t> h_tau_logical_permutation(const CsdCode &csd) {
  SymplecticMatrix act = h_tau(csd).action;
  size_t K = csd.css.k();
  std::vector<uint32_t> sigma(K, 0);
  for (size_t i = 0; i < K; i++) {
    uint32_t row = act.row(i);
    // Must be a single Z-column bit; diagonal blocks must vanish.
    if (std::popcount(row) != 1 || (row & ((uint32_t{1} << K) - 1)) != 0) {
      throw std::runtime_error("H_tau is not pure Hadamard+SWAP in this basis");
    }
    sigma[i] = uint32_t(std::countr_zero(row)) - uint32_t(K);
  }
  return sigma;
}

/// Structural teleportation circuits: the data block starts in an ideally
/// prepared |0...0> followed by the caller's state-preparation word.
inline Circuit build_injection_circuit(InjectionKind kind, const CsdCode &csd,
                                       const CliffordCircuit &data_prep) {
  size_t n = csd.css.n;
  size_t K = csd.css.k();
  size_t blocks = kind == InjectionKind::KnillS ? 3 : 2;
  Circuit c(blocks * n);

  // Block offsets: data at 0, resource at n, (KnillS) zero block at 2n.
  uint32_t data_off = 0, res_off = uint32_t(n), zero_off = uint32_t(2 * n);

  detail::ideal_codestate(&c, csd, Basis::Z, data_off);
  for (const auto &op : data_prep.ops) {
    c.gate(op.g, data_off + op.a, is_two_qubit(op.g) ? data_off + op.b : 0);
  }
  c.tick();

  // Resource: |i...i> = S on every logical qubit of |+...+>, prepared by
  // ideal projection onto every logical Y.
  detail::ideal_codestate(&c, csd, Basis::X, res_off);
  for (size_t j = 0; j < K; j++) {
    PauliOperator y_j = csd.css.logical_x[j];
    y_j *= csd.css.logical_z[j];
    uint32_t r = c.measure_pauli(detail::shift_pauli(y_j, c.n_qubits, res_off), 0, true);
    c.cond_pauli(r, detail::shift_pauli(csd.css.logical_z[j], c.n_qubits, res_off));
  }
  c.tick();

  auto measure_block_z = [&](uint32_t off) {
    std::vector<uint32_t> recs(n);
    for (uint32_t q = 0; q < n; q++) {
      recs[q] = c.measure(off + q, Basis::Z, 0, true);
    }
    return recs;
  };
  auto logical_parity_record = [&](const std::vector<uint32_t> &recs,
                                   const PauliOperator &logical, Basis basis) {
    std::vector<uint32_t> sel;
    for (uint32_t q = 0; q < n; q++) {
      bool on = basis == Basis::Z ? logical.zbit(q) : logical.xbit(q);
      if (on) {
        sel.push_back(recs[q]);
      }
    }
    return c.derive_parity(sel, 0.0);
  };

  if (kind == InjectionKind::STeleport) {
    // CX(resource -> data) transversal, measure data in Z, conditional
    // logical Y on resource per logical outcome.
    for (uint32_t q = 0; q < n; q++) {
      c.gate(Gate::CX, res_off + q, data_off + q);
    }
    c.tick();
    auto recs = measure_block_z(data_off);
    for (size_t j = 0; j < K; j++) {
      uint32_t m = logical_parity_record(recs, csd.css.logical_z[j], Basis::Z);
      PauliOperator y_j = csd.css.logical_x[j];
      y_j *= csd.css.logical_z[j];
      c.cond_pauli(m, detail::shift_pauli(y_j, c.n_qubits, res_off));
    }
    return c;
  }

  if (kind == InjectionKind::SqrtXTeleport) {
    std::vector<uint32_t> sigma = h_tau_logical_permutation(csd);
    // H on the data block, CX(resource -> data), measure data in Z; then H on
    // the resource and conditional corrections with permuted indices.
    for (uint32_t q = 0; q < n; q++) {
      c.gate(Gate::H, data_off + q);
    }
    c.tick();
    for (uint32_t q = 0; q < n; q++) {
      c.gate(Gate::CX, res_off + q, data_off + q);
    }
    c.tick();
    auto recs = measure_block_z(data_off);
    std::vector<uint32_t> logical_ms(K);
    for (size_t j = 0; j < K; j++) {
      logical_ms[j] = logical_parity_record(recs, csd.css.logical_z[j], Basis::Z);
    }
    for (uint32_t q = 0; q < n; q++) {
      c.gate(Gate::H, res_off + q);
    }
    c.tick();
    for (size_t j = 0; j < K; j++) {
      // The data-block H turned logical j into sigma(j) before the Bell-type
      // measurement; the resource H permutes the correction target likewise.
      PauliOperator y_t = csd.css.logical_x[sigma[j]];
      y_t *= csd.css.logical_z[sigma[j]];
      c.cond_pauli(logical_ms[j], detail::shift_pauli(y_t, c.n_qubits, res_off));
    }
    return c;
  }

  // KnillS: Bell pair (resource, zero) via CX(res -> zero); Bell measurement
  // of (data, resource); corrections on the zero block.
  detail::ideal_codestate(&c, csd, Basis::Z, zero_off);
  c.tick();
  for (uint32_t q = 0; q < n; q++) {
    c.gate(Gate::CX, res_off + q, zero_off + q);
  }
  c.tick();
  for (uint32_t q = 0; q < n; q++) {
    c.gate(Gate::CX, data_off + q, res_off + q);
  }
  c.tick();
  for (uint32_t q = 0; q < n; q++) {
    c.gate(Gate::H, data_off + q);
  }
  c.tick();
  auto data_recs = measure_block_z(data_off);
  auto res_recs = measure_block_z(res_off);
  std::vector<uint32_t> sigma = h_tau_logical_permutation(csd);
  for (size_t j = 0; j < K; j++) {
    // Data measured in the X basis (H then Z): X readout of logical sigma(j)
    // appears at logical_x parity; resource Z readout gives the X correction.
    uint32_t mz = logical_parity_record(res_recs, csd.css.logical_z[j], Basis::Z);
    PauliOperator y_j = csd.css.logical_x[j];
    y_j *= csd.css.logical_z[j];
    c.cond_pauli(mz, detail::shift_pauli(y_j, c.n_qubits, zero_off));
  }
  for (size_t j = 0; j < K; j++) {
    uint32_t mx = logical_parity_record(data_recs, csd.css.logical_z[sigma[j]], Basis::Z);
    c.cond_pauli(mx, detail::shift_pauli(csd.css.logical_z[j], c.n_qubits, zero_off));
  }
  return c;
}

}  // namespace csd

#endif
