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

#ifndef CSD_CLIFFORD_CIRCUIT_HPP
#define CSD_CLIFFORD_CIRCUIT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "csd/pauli.hpp"

namespace csd {

enum class Gate : uint8_t { H, S, SDG, X, Y, Z, CX, CZ, CY, SWAP };

inline bool is_two_qubit(Gate g) { return g >= Gate::CX; }

inline const char *gate_name(Gate g) {
  switch (g) {
    case Gate::H: return "H";
    case Gate::S: return "S";
    case Gate::SDG: return "SDG";
    case Gate::X: return "X";
    case Gate::Y: return "Y";
    case Gate::Z: return "Z";
    case Gate::CX: return "CX";
    case Gate::CZ: return "CZ";
    case Gate::CY: return "CY";
    case Gate::SWAP: return "SWAP";
  }
  return "?";
}

struct CliffordOp {
  Gate g;
  uint32_t a = 0;
  uint32_t b = 0;
};

/// Ordered list of Clifford gates on n qubits.
struct CliffordCircuit {
  size_t n = 0;
  std::vector<CliffordOp> ops;

  CliffordCircuit() = default;
  explicit CliffordCircuit(size_t n) : n(n) {}

  void add(Gate g, uint32_t a, uint32_t b = 0) {
    if (a >= n || (is_two_qubit(g) && (b >= n || a == b))) {
      throw std::invalid_argument("gate indices out of bounds");
    }
    ops.push_back({g, a, b});
  }
  void h(uint32_t q) { add(Gate::H, q); }
  void s(uint32_t q) { add(Gate::S, q); }
  void sdg(uint32_t q) { add(Gate::SDG, q); }
  void x(uint32_t q) { add(Gate::X, q); }
  void y(uint32_t q) { add(Gate::Y, q); }
  void z(uint32_t q) { add(Gate::Z, q); }
  void cx(uint32_t c, uint32_t t) { add(Gate::CX, c, t); }
  void cz(uint32_t a, uint32_t b) { add(Gate::CZ, a, b); }
  void cy(uint32_t c, uint32_t t) { add(Gate::CY, c, t); }
  void swap(uint32_t a, uint32_t b) { add(Gate::SWAP, a, b); }

  void append(const CliffordCircuit &o) {
    if (o.n != n) {
      throw std::invalid_argument("circuit size mismatch");
    }
    ops.insert(ops.end(), o.ops.begin(), o.ops.end());
  }

  std::string str() const {
    std::string out;
    for (const auto &op : ops) {
      out += gate_name(op.g);
      out += ' ' + std::to_string(op.a);
      if (is_two_qubit(op.g)) {
        out += ' ' + std::to_string(op.b);
      }
      out += '\n';
    }
    return out;
  }
};

/// In-place conjugation P -> U P U^dagger with exact phase tracking in the
/// i^s X^x Z^z normal form.
inline void conjugate_inplace(PauliOperator &p, Gate g, uint32_t a, uint32_t b = 0) {
  bool xa = p.xbit(a), za = p.zbit(a);
  switch (g) {
    case Gate::H:
      p.set_xbit(a, za);
      p.set_zbit(a, xa);
      if (xa && za) {
        p.set_internal_phase(p.internal_phase() + 2);
      }
      break;
    case Gate::S:
      if (xa) {
        p.set_internal_phase(p.internal_phase() + 1);
        p.set_zbit(a, !za);
      }
      break;
    case Gate::SDG:
      if (xa) {
        p.set_internal_phase(p.internal_phase() + 3);
        p.set_zbit(a, !za);
      }
      break;
    case Gate::X:
      if (za) {
        p.set_internal_phase(p.internal_phase() + 2);
      }
      break;
    case Gate::Y:
      if (xa != za) {
        p.set_internal_phase(p.internal_phase() + 2);
      }
      break;
    case Gate::Z:
      if (xa) {
        p.set_internal_phase(p.internal_phase() + 2);
      }
      break;
    case Gate::CX: {
      bool xb = p.xbit(b), zb = p.zbit(b);
      p.set_xbit(b, xb ^ xa);
      p.set_zbit(a, za ^ zb);
      break;
    }
    case Gate::CZ: {
      bool xb = p.xbit(b), zb = p.zbit(b);
      if (xa && xb) {
        p.set_internal_phase(p.internal_phase() + 2);
      }
      p.set_zbit(a, za ^ xb);
      p.set_zbit(b, zb ^ xa);
      break;
    }
    case Gate::CY: {
      bool xb = p.xbit(b), zb = p.zbit(b);
      p.set_internal_phase(p.internal_phase() + (xa ? 1 : 0) + (xa && xb ? 2 : 0));
      p.set_zbit(a, za ^ xb ^ zb);
      p.set_xbit(b, xb ^ xa);
      p.set_zbit(b, zb ^ xa);
      break;
    }
    case Gate::SWAP: {
      bool xb = p.xbit(b), zb = p.zbit(b);
      p.set_xbit(a, xb);
      p.set_zbit(a, zb);
      p.set_xbit(b, xa);
      p.set_zbit(b, za);
      break;
    }
  }
}

inline void conjugate_inplace(PauliOperator &p, const CliffordOp &op) {
  conjugate_inplace(p, op.g, op.a, op.b);
}

inline PauliOperator conjugate_through(PauliOperator p, const CliffordCircuit &c) {
  for (const auto &op : c.ops) {
    conjugate_inplace(p, op);
  }
  return p;
}

}  // namespace csd

#endif
