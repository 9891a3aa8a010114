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

#ifndef CSD_NOISE_HPP
#define CSD_NOISE_HPP

#include <vector>

#include "csd/circuit.hpp"

namespace csd {

/// Circuit-level noise: two-qubit depolarizing p after two-qubit gates,
/// measurement flips p, single-qubit depolarizing p/10 after one-qubit gates,
/// idle depolarizing p/10 per tick segment.
struct NoiseModel {
  double p = 0.0;

  double two_qubit() const { return p; }
  double measure_flip() const { return p; }
  double single_qubit() const { return p / 10.0; }
  double idle() const { return p / 10.0; }
};

/// Inserts channel instructions per the noise model. Instructions flagged
/// no_noise keep their explicit noise (proxy channels, ideal operations).
/// A qubit is idle in a tick segment when it is live (between its most
/// recent reset and next measurement) but untouched by any operation.
inline Circuit annotate(const Circuit &in, const NoiseModel &model) {
  if (model.p == 0) {
    return in;
  }
  // Liveness: for each instruction index, which qubits are live afterwards.
  // live[q] toggles on at Reset and off after Measure of q.
  size_t n = in.n_qubits;

  // Pass 1: compute liveness interval events. A qubit measured and never
  // reset again stays dead; data qubits reset once stay live to their final
  // measurement.
  std::vector<std::vector<std::pair<size_t, int>>> events(n);  // (idx, +1 reset /-1 measure)
  for (size_t idx = 0; idx < in.instructions.size(); idx++) {
    const Instruction &ins = in.instructions[idx];
    if (ins.kind == Instruction::Kind::Reset) {
      events[ins.a].push_back({idx, +1});
    } else if (ins.kind == Instruction::Kind::Measure) {
      events[ins.a].push_back({idx, -1});
    }
  }

  auto live_at = [&](uint32_t q, size_t idx) {
    bool live = false;
    for (auto &[at, delta] : events[q]) {
      if (at > idx) {
        break;
      }
      live = delta > 0;
      // A measurement at `at` keeps the qubit live through that instruction.
      if (delta < 0 && at == idx) {
        live = true;
      }
    }
    return live;
  };

  Circuit out(in.n_qubits);
  std::vector<uint8_t> touched(n, 0);
  size_t segment_start = 0;

  auto flush_idle = [&](size_t segment_end) {
    for (uint32_t q = 0; q < n; q++) {
      if (!touched[q] && live_at(q, segment_end)) {
        // Idle only if live for the whole segment.
        if (live_at(q, segment_start)) {
          out.depolarize1(q, model.idle());
        }
      }
      touched[q] = 0;
    }
  };

  for (size_t idx = 0; idx < in.instructions.size(); idx++) {
    const Instruction &ins = in.instructions[idx];
    using K = Instruction::Kind;
    switch (ins.kind) {
      case K::Tick:
        flush_idle(idx);
        out.tick();
        segment_start = idx;
        break;
      case K::Gate:
        out.gate(ins.g, ins.a, ins.b);
        touched[ins.a] = 1;
        if (is_two_qubit(ins.g)) {
          touched[ins.b] = 1;
          out.depolarize2(ins.a, ins.b, model.two_qubit());
        } else {
          out.depolarize1(ins.a, model.single_qubit());
        }
        break;
      case K::Reset:
        out.reset(ins.a, ins.basis, ins.no_noise);
        touched[ins.a] = 1;
        break;
      case K::Measure: {
        double flip = ins.no_noise ? ins.p : model.measure_flip();
        out.measure(ins.a, ins.basis, flip, ins.no_noise);
        touched[ins.a] = 1;
        break;
      }
      case K::MeasurePauli: {
        double flip = ins.no_noise ? ins.p : model.measure_flip();
        out.measure_pauli(ins.pauli, flip, ins.no_noise);
        for (size_t q = 0; q < n; q++) {
          if (ins.pauli.xbit(q) || ins.pauli.zbit(q)) {
            touched[q] = 1;
          }
        }
        break;
      }
      case K::Depol1:
        out.depolarize1(ins.a, ins.p);
        break;
      case K::Depol2:
        out.depolarize2(ins.a, ins.b, ins.p);
        break;
      case K::DeriveParity:
        out.derive_parity(ins.targets, ins.p);
        break;
      case K::CondPauli:
        out.cond_pauli(uint32_t(ins.record), ins.pauli);
        break;
      case K::Detector:
        out.detector(ins.targets, ins.postselect);
        break;
      case K::Observable:
        out.observable(ins.id, ins.targets);
        break;
    }
  }
  flush_idle(in.instructions.size());
  return out;
}

}  // namespace csd

#endif
