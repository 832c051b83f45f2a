#pragma once

#include <string>
#include <vector>

#include "qet/gates.hpp"

namespace qet {

// Index into the circuit's qubit register.
struct QubitRef {
  int index = 0;
  friend bool operator==(QubitRef a, QubitRef b) { return a.index == b.index; }
  friend bool operator!=(QubitRef a, QubitRef b) { return !(a == b); }
};

struct GateOp {
  GateKind kind;
  int param = 0;  // rotation k / GEO numerator, 0 for plain gates
  std::vector<QubitRef> operands;
  int source_line = 0;

  int arity() const { return static_cast<int>(operands.size()); }

  // Equality is semantic; the source line does not participate.
  friend bool operator==(const GateOp& a, const GateOp& b) {
    return a.kind == b.kind && a.param == b.param && a.operands == b.operands;
  }
};

struct Circuit {
  int num_qubits = 0;
  std::vector<GateOp> ops;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.num_qubits == b.num_qubits && a.ops == b.ops;
  }
};

// Parses the line-oriented circuit format:
//   qubit <N>            register declaration (optional; sizes the register)
//   <gate> q<i>[,q<j>]   gate application, lowercase mnemonics
//   # ...                comment (also allowed after a statement)
// Throws UnknownGate / ArityMismatch / BadQubitIndex / EmptyCircuit.
Circuit parse_qasm(const std::string& text);

// Inverse of parse_qasm up to comments and whitespace.
std::string serialize(const Circuit& circuit);

inline long long gate_count(const Circuit& circuit) {
  return static_cast<long long>(circuit.ops.size());
}

}  // namespace qet
