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

#ifndef CSD_TABLEAU_SIM_HPP
#define CSD_TABLEAU_SIM_HPP

#include <memory>
#include <optional>
#include <vector>

#include "csd/circuit.hpp"
#include "csd/rng.hpp"

namespace csd {

/// Stabilizer state as destabilizer/stabilizer generator rows with exact
/// signs. Measurements of arbitrary Pauli products are supported; random
/// outcomes draw from the supplied stream unless forced.
class Tableau {
 public:
  explicit Tableau(size_t n) : n_(n) {
    destab_.reserve(n);
    stab_.reserve(n);
    for (size_t q = 0; q < n; q++) {
      destab_.push_back(PauliOperator::single(n, q, 'X'));
      stab_.push_back(PauliOperator::single(n, q, 'Z'));
    }
  }

  size_t num_qubits() const { return n_; }
  const PauliOperator &stabilizer(size_t i) const { return stab_[i]; }
  const PauliOperator &destabilizer(size_t i) const { return destab_[i]; }

  void apply(Gate g, uint32_t a, uint32_t b = 0) {
    for (auto &row : destab_) {
      conjugate_inplace(row, g, a, b);
    }
    for (auto &row : stab_) {
      conjugate_inplace(row, g, a, b);
    }
  }

  void apply_pauli(const PauliOperator &p) {
    // Conjugating a generator g by Pauli p flips g's sign iff they anticommute.
    for (auto &row : destab_) {
      if (symplectic_product(row, p)) {
        row.set_internal_phase(row.internal_phase() + 2);
      }
    }
    for (auto &row : stab_) {
      if (symplectic_product(row, p)) {
        row.set_internal_phase(row.internal_phase() + 2);
      }
    }
  }

  /// Measures a Hermitian Pauli. Returns the outcome bit and whether it was
  /// random; `forced` pins random outcomes (fault analysis, determinism
  /// checks) and is ignored for deterministic ones.
  std::pair<int, bool> measure_pauli(const PauliOperator &p, Rng *rng,
                                     std::optional<int> forced = std::nullopt) {
    if (!p.is_hermitian()) {
      throw std::invalid_argument("measured Pauli must be Hermitian");
    }
    size_t pivot = n_;
    for (size_t i = 0; i < n_; i++) {
      if (symplectic_product(stab_[i], p)) {
        pivot = i;
        break;
      }
    }
    if (pivot < n_) {
      // Random outcome: update generators that anticommute with p.
      int outcome = forced.has_value() ? *forced : int(rng->next_u64() & 1);
      for (size_t i = 0; i < n_; i++) {
        if (i != pivot && symplectic_product(stab_[i], p)) {
          stab_[i] *= stab_[pivot];
        }
        if (symplectic_product(destab_[i], p)) {
          destab_[i] *= stab_[pivot];
        }
      }
      destab_[pivot] = stab_[pivot];
      PauliOperator signed_p = p;
      signed_p.set_internal_phase(p.internal_phase() + (outcome ? 2 : 0));
      stab_[pivot] = signed_p;
      return {outcome, true};
    }
    // Deterministic: p = +/- product of stabilizers selected by destabilizer
    // anticommutation.
    PauliOperator acc(n_);
    for (size_t i = 0; i < n_; i++) {
      if (symplectic_product(destab_[i], p)) {
        acc *= stab_[i];
      }
    }
    if (!acc.same_xz(p)) {
      throw std::logic_error("tableau inconsistency in deterministic measurement");
    }
    int outcome = ((acc.internal_phase() - p.internal_phase()) & 3) ? 1 : 0;
    return {outcome, false};
  }

  std::pair<int, bool> measure(uint32_t q, Basis basis, Rng *rng,
                               std::optional<int> forced = std::nullopt) {
    return measure_pauli(PauliOperator::single(n_, q, basis == Basis::Z ? 'Z' : 'X'), rng,
                         forced);
  }

  void reset(uint32_t q, Basis basis, Rng *rng) {
    auto [outcome, was_random] = measure(q, basis, rng);
    if (outcome) {
      apply_pauli(PauliOperator::single(n_, q, basis == Basis::Z ? 'X' : 'Z'));
    }
  }

  /// True iff p (with sign) stabilizes the current state.
  bool state_stabilized_by(const PauliOperator &p) {
    Rng dummy(0, 0);
    auto [outcome, was_random] = measure_pauli(p, &dummy, 0);
    return !was_random && outcome == 0;
  }

 private:
  size_t n_;
  std::vector<PauliOperator> destab_;
  std::vector<PauliOperator> stab_;
};

struct SimResult {
  std::vector<uint8_t> records;
  std::vector<uint8_t> detectors;
  std::vector<uint8_t> observables;
  std::vector<uint8_t> record_random;  // projective randomness flag per record

  bool any_postselect_failure(const Circuit &c, size_t allow_m = 0) const {
    size_t fired = 0;
    for (const auto &ins : c.instructions) {
      if (ins.kind == Instruction::Kind::Detector && ins.postselect && detectors[ins.id]) {
        fired++;
      }
    }
    return fired > allow_m;
  }
};

/// Reference stabilizer simulation of a full circuit, with optional extra
/// Pauli faults injected after chosen instruction indices.
struct FaultInjection {
  size_t after_instruction = 0;
  PauliOperator pauli;          // applied after that instruction executes
  int flip_record = -1;         // alternatively, flip this record when >= 0
};

class CircuitSimulator {
 public:
  explicit CircuitSimulator(const Circuit &circuit, uint64_t seed = 0, uint64_t stream = 0)
      : circuit_(circuit), rng_(seed, stream) {}

  /// Runs the whole circuit. Random measurement outcomes draw from the seeded
  /// stream; pass `force_random_zero` to pin them (determinism analysis).
  SimResult run(const std::vector<FaultInjection> &faults = {},
                bool force_random_zero = false) {
    Tableau tab(circuit_.n_qubits);
    SimResult res;
    res.records.assign(circuit_.num_records, 0);
    res.record_random.assign(circuit_.num_records, 0);
    res.detectors.assign(circuit_.num_detectors, 0);
    res.observables.assign(circuit_.num_observables, 0);

    for (size_t idx = 0; idx < circuit_.instructions.size(); idx++) {
      const Instruction &ins = circuit_.instructions[idx];
      using K = Instruction::Kind;
      switch (ins.kind) {
        case K::Gate:
          tab.apply(ins.g, ins.a, ins.b);
          break;
        case K::Reset:
          tab.reset(ins.a, ins.basis, &rng_);
          break;
        case K::Measure: {
          auto forced = force_random_zero ? std::optional<int>(0) : std::nullopt;
          auto [bit, was_random] = tab.measure(ins.a, ins.basis, &rng_, forced);
          if (ins.p > 0 && rng_.bernoulli(ins.p)) {
            bit ^= 1;
          }
          res.records[ins.record] = uint8_t(bit);
          res.record_random[ins.record] = uint8_t(was_random);
          break;
        }
        case K::MeasurePauli: {
          auto forced = force_random_zero ? std::optional<int>(0) : std::nullopt;
          auto [bit, was_random] = tab.measure_pauli(ins.pauli, &rng_, forced);
          if (ins.p > 0 && rng_.bernoulli(ins.p)) {
            bit ^= 1;
          }
          res.records[ins.record] = uint8_t(bit);
          res.record_random[ins.record] = uint8_t(was_random);
          break;
        }
        case K::Tick:
          break;
        case K::Depol1:
          if (rng_.bernoulli(ins.p)) {
            const char *paulis = "XYZ";
            tab.apply_pauli(
                PauliOperator::single(circuit_.n_qubits, ins.a, paulis[rng_.below(3)]));
          }
          break;
        case K::Depol2:
          if (rng_.bernoulli(ins.p)) {
            uint64_t which = rng_.below(15) + 1;  // skip II
            PauliOperator p(circuit_.n_qubits);
            const char *chars = "IXYZ";
            p.set_pauli(ins.a, chars[which & 3]);
            p.set_pauli(ins.b, chars[which >> 2]);
            tab.apply_pauli(p);
          }
          break;
        case K::DeriveParity: {
          uint8_t bit = 0;
          for (uint32_t r : ins.targets) {
            bit ^= res.records[r];
          }
          if (ins.p > 0 && rng_.bernoulli(ins.p)) {
            bit ^= 1;
          }
          res.records[ins.record] = bit;
          break;
        }
        case K::CondPauli:
          if (res.records[ins.record]) {
            tab.apply_pauli(ins.pauli);
          }
          break;
        case K::Detector: {
          uint8_t bit = 0;
          for (uint32_t r : ins.targets) {
            bit ^= res.records[r];
          }
          res.detectors[ins.id] = bit;
          break;
        }
        case K::Observable: {
          uint8_t bit = 0;
          for (uint32_t r : ins.targets) {
            bit ^= res.records[r];
          }
          res.observables[ins.id] ^= bit;
          break;
        }
      }
      for (const auto &f : faults) {
        if (f.after_instruction == idx) {
          if (f.flip_record >= 0) {
            res.records[f.flip_record] ^= 1;
          } else {
            tab.apply_pauli(f.pauli);
          }
        }
      }
    }
    final_tableau_ = std::make_unique<Tableau>(std::move(tab));
    return res;
  }

  Tableau &final_tableau() { return *final_tableau_; }

 private:
  const Circuit &circuit_;
  Rng rng_;
  std::unique_ptr<Tableau> final_tableau_;
};

}  // namespace csd

#endif
