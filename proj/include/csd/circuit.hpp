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

#ifndef CSD_CIRCUIT_HPP
#define CSD_CIRCUIT_HPP

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "csd/clifford_circuit.hpp"
#include "csd/pauli.hpp"

namespace csd {

enum class Basis : uint8_t { Z, X };

inline char basis_char(Basis b) { return b == Basis::Z ? 'Z' : 'X'; }

/// One instruction of an executable detector circuit.
struct Instruction {
  enum class Kind : uint8_t {
    Gate,
    Reset,
    Measure,
    MeasurePauli,  // direct Pauli-product measurement
    Tick,
    Depol1,
    Depol2,
    DeriveParity,  // classical parity of records, with optional flip noise
    CondPauli,     // Pauli applied when a record reads 1
    Detector,
    Observable,
  };

  Kind kind;
  Gate g = Gate::H;
  Basis basis = Basis::Z;
  uint32_t a = 0;
  uint32_t b = 0;
  double p = 0.0;         // flip / channel probability
  bool no_noise = false;  // annotate() must not touch this instruction
  int32_t record = -1;    // produced record (Measure/MeasurePauli/DeriveParity),
                          // or control record (CondPauli)
  std::vector<uint32_t> targets;  // record ids (DeriveParity/Detector/Observable)
  uint32_t id = 0;                // detector or observable id
  bool postselect = false;        // prep-verification detector
  PauliOperator pauli;            // MeasurePauli / CondPauli
};

/// Executable circuit: Clifford gates, resets, measurements, noise channels,
/// classical parity derivations, and detector/observable declarations.
/// Detectors are engineered so the noiseless parity of their records is 0.
struct Circuit {
  size_t n_qubits = 0;
  std::vector<Instruction> instructions;
  size_t num_records = 0;
  size_t num_detectors = 0;
  size_t num_observables = 0;

  explicit Circuit(size_t n = 0) : n_qubits(n) {}

  void gate(Gate g, uint32_t a, uint32_t b = 0) {
    Instruction ins;
    ins.kind = Instruction::Kind::Gate;
    ins.g = g;
    ins.a = a;
    ins.b = b;
    check_qubit(a);
    if (is_two_qubit(g)) {
      check_qubit(b);
      if (a == b) {
        throw std::invalid_argument("two-qubit gate needs distinct qubits");
      }
    }
    instructions.push_back(std::move(ins));
  }

  void append_clifford(const CliffordCircuit &c) {
    for (const auto &op : c.ops) {
      gate(op.g, op.a, op.b);
    }
  }

  void reset(uint32_t q, Basis basis, bool no_noise = false) {
    check_qubit(q);
    Instruction ins;
    ins.kind = Instruction::Kind::Reset;
    ins.basis = basis;
    ins.a = q;
    ins.no_noise = no_noise;
    instructions.push_back(std::move(ins));
  }

  uint32_t measure(uint32_t q, Basis basis, double flip_p = 0.0, bool no_noise = false) {
    check_qubit(q);
    Instruction ins;
    ins.kind = Instruction::Kind::Measure;
    ins.basis = basis;
    ins.a = q;
    ins.p = flip_p;
    ins.no_noise = no_noise;
    ins.record = int32_t(num_records++);
    instructions.push_back(std::move(ins));
    return uint32_t(num_records - 1);
  }

  uint32_t measure_pauli(PauliOperator p, double flip_p = 0.0, bool no_noise = false) {
    if (p.num_qubits() != n_qubits) {
      throw std::invalid_argument("Pauli size mismatch");
    }
    Instruction ins;
    ins.kind = Instruction::Kind::MeasurePauli;
    ins.pauli = std::move(p);
    ins.p = flip_p;
    ins.no_noise = no_noise;
    ins.record = int32_t(num_records++);
    instructions.push_back(std::move(ins));
    return uint32_t(num_records - 1);
  }

  void tick() {
    Instruction ins;
    ins.kind = Instruction::Kind::Tick;
    instructions.push_back(std::move(ins));
  }

  void depolarize1(uint32_t q, double p) {
    check_qubit(q);
    Instruction ins;
    ins.kind = Instruction::Kind::Depol1;
    ins.a = q;
    ins.p = p;
    instructions.push_back(std::move(ins));
  }

  void depolarize2(uint32_t a, uint32_t b, double p) {
    check_qubit(a);
    check_qubit(b);
    Instruction ins;
    ins.kind = Instruction::Kind::Depol2;
    ins.a = a;
    ins.b = b;
    ins.p = p;
    instructions.push_back(std::move(ins));
  }

  uint32_t derive_parity(std::vector<uint32_t> records, double flip_p = 0.0) {
    check_records(records);
    Instruction ins;
    ins.kind = Instruction::Kind::DeriveParity;
    ins.targets = std::move(records);
    ins.p = flip_p;
    ins.record = int32_t(num_records++);
    instructions.push_back(std::move(ins));
    return uint32_t(num_records - 1);
  }

  void cond_pauli(uint32_t record, PauliOperator p) {
    check_records({record});
    if (p.num_qubits() != n_qubits) {
      throw std::invalid_argument("Pauli size mismatch");
    }
    Instruction ins;
    ins.kind = Instruction::Kind::CondPauli;
    ins.record = int32_t(record);
    ins.pauli = std::move(p);
    instructions.push_back(std::move(ins));
  }

  uint32_t detector(std::vector<uint32_t> records, bool postselect = false) {
    if (records.empty()) {
      throw std::invalid_argument("detector needs at least one record");
    }
    check_records(records);
    Instruction ins;
    ins.kind = Instruction::Kind::Detector;
    ins.targets = std::move(records);
    ins.id = uint32_t(num_detectors++);
    ins.postselect = postselect;
    instructions.push_back(std::move(ins));
    return uint32_t(num_detectors - 1);
  }

  void observable(uint32_t obs_id, std::vector<uint32_t> records) {
    check_records(records);
    Instruction ins;
    ins.kind = Instruction::Kind::Observable;
    ins.targets = std::move(records);
    ins.id = obs_id;
    instructions.push_back(std::move(ins));
    num_observables = std::max(num_observables, size_t(obs_id) + 1);
  }

  std::vector<uint32_t> postselect_detectors() const {
    std::vector<uint32_t> out;
    for (const auto &ins : instructions) {
      if (ins.kind == Instruction::Kind::Detector && ins.postselect) {
        out.push_back(ins.id);
      }
    }
    return out;
  }

  size_t tick_count() const {
    size_t t = 0;
    for (const auto &ins : instructions) {
      if (ins.kind == Instruction::Kind::Tick) {
        t++;
      }
    }
    return t;
  }

 private:
  void check_qubit(uint32_t q) const {
    if (q >= n_qubits) {
      throw std::invalid_argument("qubit index out of range");
    }
  }
  void check_records(const std::vector<uint32_t> &records) const {
    for (uint32_t r : records) {
      if (r >= num_records) {
        throw std::invalid_argument("record index must reference an earlier measurement");
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Line-oriented text format, bit-exact round-trippable.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string prob_str(double p) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", p);
  return buf;
}

inline std::string pauli_tokens(const PauliOperator &p) {
  std::string out;
  for (size_t q = 0; q < p.num_qubits(); q++) {
    char c = p.pauli_char(q);
    if (c != 'I') {
      if (!out.empty()) {
        out += ' ';
      }
      out += c;
      out += std::to_string(q);
    }
  }
  return out;
}

}  // namespace detail

inline std::string circuit_to_text(const Circuit &c) {
  std::ostringstream out;
  out << "QUBITS " << c.n_qubits << "\n";
  for (const auto &ins : c.instructions) {
    using K = Instruction::Kind;
    switch (ins.kind) {
      case K::Gate:
        out << gate_name(ins.g) << ' ' << ins.a;
        if (is_two_qubit(ins.g)) {
          out << ' ' << ins.b;
        }
        out << "\n";
        break;
      case K::Reset:
        out << (ins.no_noise ? "R!" : "R") << ' ' << basis_char(ins.basis) << ' ' << ins.a
            << "\n";
        break;
      case K::Measure:
        out << (ins.no_noise ? "M!" : "M") << ' ' << basis_char(ins.basis) << ' ' << ins.a;
        if (ins.p != 0) {
          out << " p" << detail::prob_str(ins.p);
        }
        out << " -> r" << ins.record << "\n";
        break;
      case K::MeasurePauli:
        out << (ins.no_noise ? "MPP!" : "MPP") << ' ' << detail::pauli_tokens(ins.pauli);
        if (ins.p != 0) {
          out << " p" << detail::prob_str(ins.p);
        }
        out << " -> r" << ins.record << "\n";
        break;
      case K::Tick:
        out << "TICK\n";
        break;
      case K::Depol1:
        out << "DEPOL1 " << detail::prob_str(ins.p) << ' ' << ins.a << "\n";
        break;
      case K::Depol2:
        out << "DEPOL2 " << detail::prob_str(ins.p) << ' ' << ins.a << ' ' << ins.b << "\n";
        break;
      case K::DeriveParity:
        out << "DPAR";
        if (ins.p != 0) {
          out << " p" << detail::prob_str(ins.p);
        }
        for (uint32_t r : ins.targets) {
          out << " r" << r;
        }
        out << " -> r" << ins.record << "\n";
        break;
      case K::CondPauli:
        out << "CPAULI r" << ins.record << ' ' << detail::pauli_tokens(ins.pauli) << "\n";
        break;
      case K::Detector:
        out << (ins.postselect ? "DETECTOR*" : "DETECTOR");
        for (uint32_t r : ins.targets) {
          out << " r" << r;
        }
        out << "\n";
        break;
      case K::Observable:
        out << "OBSERVABLE " << ins.id;
        for (uint32_t r : ins.targets) {
          out << " r" << r;
        }
        out << "\n";
        break;
    }
  }
  return out.str();
}

inline Circuit circuit_from_text(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  Circuit c;
  bool have_header = false;
  auto parse_record = [](const std::string &tok) {
    if (tok.size() < 2 || tok[0] != 'r') {
      throw std::invalid_argument("expected record token: " + tok);
    }
    return uint32_t(std::stoul(tok.substr(1)));
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    if (op == "QUBITS") {
      size_t n;
      ls >> n;
      c = Circuit(n);
      have_header = true;
      continue;
    }
    if (!have_header) {
      throw std::invalid_argument("circuit text must start with QUBITS");
    }
    if (op == "TICK") {
      c.tick();
    } else if (op == "R" || op == "R!") {
      std::string b;
      uint32_t q;
      ls >> b >> q;
      c.reset(q, b == "Z" ? Basis::Z : Basis::X, op == "R!");
    } else if (op == "M" || op == "M!") {
      std::string b, tok;
      uint32_t q;
      ls >> b >> q;
      double p = 0;
      std::string arrow;
      ls >> tok;
      if (tok[0] == 'p') {
        p = std::stod(tok.substr(1));
        ls >> arrow;
      } else {
        arrow = tok;
      }
      std::string rec;
      ls >> rec;
      c.measure(q, b == "Z" ? Basis::Z : Basis::X, p, op == "M!");
    } else if (op == "MPP" || op == "MPP!") {
      PauliOperator pp(c.n_qubits);
      double p = 0;
      std::string tok;
      while (ls >> tok) {
        if (tok == "->") {
          ls >> tok;  // consume record name
          break;
        }
        if (tok[0] == 'p' && tok.size() > 1 && (isdigit(tok[1]) || tok[1] == '.')) {
          p = std::stod(tok.substr(1));
        } else {
          char pc = tok[0];
          uint32_t q = uint32_t(std::stoul(tok.substr(1)));
          pp.set_pauli(q, pc);
        }
      }
      c.measure_pauli(pp, p, op == "MPP!");
    } else if (op == "DEPOL1") {
      double p;
      uint32_t q;
      ls >> p >> q;
      c.depolarize1(q, p);
    } else if (op == "DEPOL2") {
      double p;
      uint32_t qa, qb;
      ls >> p >> qa >> qb;
      c.depolarize2(qa, qb, p);
    } else if (op == "DPAR") {
      std::vector<uint32_t> recs;
      double p = 0;
      std::string tok;
      while (ls >> tok) {
        if (tok == "->") {
          ls >> tok;
          break;
        }
        if (tok[0] == 'p') {
          p = std::stod(tok.substr(1));
        } else {
          recs.push_back(parse_record(tok));
        }
      }
      c.derive_parity(recs, p);
    } else if (op == "CPAULI") {
      std::string rec;
      ls >> rec;
      PauliOperator pp(c.n_qubits);
      std::string tok;
      while (ls >> tok) {
        pp.set_pauli(uint32_t(std::stoul(tok.substr(1))), tok[0]);
      }
      c.cond_pauli(parse_record(rec), pp);
    } else if (op == "DETECTOR" || op == "DETECTOR*") {
      std::vector<uint32_t> recs;
      std::string tok;
      while (ls >> tok) {
        recs.push_back(parse_record(tok));
      }
      c.detector(recs, op == "DETECTOR*");
    } else if (op == "OBSERVABLE") {
      uint32_t id;
      ls >> id;
      std::vector<uint32_t> recs;
      std::string tok;
      while (ls >> tok) {
        recs.push_back(parse_record(tok));
      }
      c.observable(id, recs);
    } else {
      // Plain Clifford gate.
      Gate g;
      if (op == "H") g = Gate::H;
      else if (op == "S") g = Gate::S;
      else if (op == "SDG") g = Gate::SDG;
      else if (op == "X") g = Gate::X;
      else if (op == "Y") g = Gate::Y;
      else if (op == "Z") g = Gate::Z;
      else if (op == "CX") g = Gate::CX;
      else if (op == "CZ") g = Gate::CZ;
      else if (op == "CY") g = Gate::CY;
      else if (op == "SWAP") g = Gate::SWAP;
      else throw std::invalid_argument("unknown instruction: " + op);
      uint32_t qa, qb = 0;
      ls >> qa;
      if (is_two_qubit(g)) {
        ls >> qb;
      }
      c.gate(g, qa, qb);
    }
  }
  return c;
}

}  // namespace csd

#endif
