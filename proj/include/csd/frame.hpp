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

#ifndef CSD_FRAME_HPP
#define CSD_FRAME_HPP

#include <vector>

#include "csd/circuit.hpp"

namespace csd {

/// An elementary circuit fault: a Pauli inserted after an instruction, or a
/// classical flip of the record an instruction produces.
struct ElementaryFault {
  size_t after_instruction = 0;
  PauliOperator pauli;   // empty support when record_flip
  bool record_flip = false;
  double probability = 0.0;
};

struct FrameOutcome {
  std::vector<uint32_t> flipped_detectors;
  std::vector<uint32_t> flipped_observables;
  PauliOperator residual;  // frame at the chosen evaluation point (or end)
};

/// Propagates a single fault's Pauli frame through the remainder of the
/// circuit, collecting flipped detectors and observables. Linear over faults:
/// symptom sets XOR. `residual_at` evaluates the data-error frame just before
/// that instruction index (default: end of circuit).
inline FrameOutcome propagate_fault(const Circuit &c, const ElementaryFault &fault,
                                    size_t residual_at = SIZE_MAX) {
  FrameOutcome out;
  out.residual = PauliOperator(c.n_qubits);
  PauliOperator frame(c.n_qubits);
  std::vector<uint8_t> record_flip(c.num_records, 0);
  bool residual_set = false;

  if (fault.record_flip) {
    const Instruction &ins = c.instructions[fault.after_instruction];
    if (ins.record < 0) {
      throw std::invalid_argument("record-flip fault on instruction without record");
    }
    record_flip[ins.record] ^= 1;
  } else {
    frame = fault.pauli;
  }

  for (size_t idx = fault.after_instruction + 1; idx < c.instructions.size(); idx++) {
    if (idx >= residual_at && !residual_set) {
      out.residual = frame;
      residual_set = true;
    }
    const Instruction &ins = c.instructions[idx];
    using K = Instruction::Kind;
    switch (ins.kind) {
      case K::Gate:
        conjugate_inplace(frame, ins.g, ins.a, ins.b);
        break;
      case K::Reset:
        frame.set_xbit(ins.a, false);
        frame.set_zbit(ins.a, false);
        break;
      case K::Measure: {
        bool anti = ins.basis == Basis::Z ? frame.xbit(ins.a) : frame.zbit(ins.a);
        if (anti) {
          record_flip[ins.record] ^= 1;
        }
        break;
      }
      case K::MeasurePauli: {
        if (symplectic_product(frame, ins.pauli)) {
          record_flip[ins.record] ^= 1;
        }
        break;
      }
      case K::DeriveParity: {
        uint8_t bit = 0;
        for (uint32_t r : ins.targets) {
          bit ^= record_flip[r];
        }
        record_flip[ins.record] = bit;
        break;
      }
      case K::CondPauli:
        if (record_flip[ins.record]) {
          // The correction differs between faulted and reference runs by the
          // conditioned Pauli itself.
          PauliOperator p = ins.pauli;
          frame.set_internal_phase(0);
          for (size_t q = 0; q < c.n_qubits; q++) {
            frame.set_xbit(q, frame.xbit(q) ^ p.xbit(q));
            frame.set_zbit(q, frame.zbit(q) ^ p.zbit(q));
          }
        }
        break;
      case K::Detector: {
        uint8_t bit = 0;
        for (uint32_t r : ins.targets) {
          bit ^= record_flip[r];
        }
        if (bit) {
          out.flipped_detectors.push_back(ins.id);
        }
        break;
      }
      case K::Observable: {
        uint8_t bit = 0;
        for (uint32_t r : ins.targets) {
          bit ^= record_flip[r];
        }
        if (bit) {
          out.flipped_observables.push_back(ins.id);
        }
        break;
      }
      case K::Tick:
      case K::Depol1:
      case K::Depol2:
        break;
    }
  }
  if (!residual_set) {
    out.residual = frame;
  }
  return out;
}

/// All elementary faults of a noisy circuit: depolarizing channels split into
/// their uniform Pauli components, measurement and parity flips as classical
/// record flips.
inline std::vector<ElementaryFault> enumerate_faults(const Circuit &c) {
  std::vector<ElementaryFault> out;
  for (size_t idx = 0; idx < c.instructions.size(); idx++) {
    const Instruction &ins = c.instructions[idx];
    using K = Instruction::Kind;
    if (ins.kind == K::Depol1 && ins.p > 0) {
      for (char pc : {'X', 'Y', 'Z'}) {
        ElementaryFault f;
        f.after_instruction = idx;
        f.pauli = PauliOperator::single(c.n_qubits, ins.a, pc);
        f.probability = ins.p / 3.0;
        out.push_back(std::move(f));
      }
    } else if (ins.kind == K::Depol2 && ins.p > 0) {
      const char *chars = "IXYZ";
      for (int which = 1; which < 16; which++) {
        ElementaryFault f;
        f.after_instruction = idx;
        f.pauli = PauliOperator(c.n_qubits);
        f.pauli.set_pauli(ins.a, chars[which & 3]);
        f.pauli.set_pauli(ins.b, chars[which >> 2]);
        f.probability = ins.p / 15.0;
        out.push_back(std::move(f));
      }
    } else if ((ins.kind == K::Measure || ins.kind == K::MeasurePauli ||
                ins.kind == K::DeriveParity) &&
               ins.p > 0) {
      ElementaryFault f;
      f.after_instruction = idx;
      f.record_flip = true;
      f.probability = ins.p;
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace csd

#endif
