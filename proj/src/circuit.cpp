#include "qet/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qet/errors.hpp"

namespace qet {

namespace {

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Accepts only a full non-negative decimal integer.
std::optional<long long> parse_int(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  long long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

QubitRef parse_operand(std::string_view tok, int line) {
  tok = trim(tok);
  if (tok.size() < 2 || tok[0] != 'q')
    throw BadQubitIndex("malformed qubit operand '" + std::string(tok) + "'", line);
  auto idx = parse_int(tok.substr(1));
  if (!idx) throw BadQubitIndex("malformed qubit operand '" + std::string(tok) + "'", line);
  return QubitRef{static_cast<int>(*idx)};
}

}  // namespace

Circuit parse_qasm(const std::string& text) {
  Circuit circuit;
  std::optional<int> declared;
  int max_index = -1;
  bool saw_statement = false;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view sv = raw;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;
    saw_statement = true;

    size_t sp = sv.find_first_of(" \t");
    std::string_view head = sv.substr(0, sp);
    std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(sv.substr(sp));

    if (head == "qubit") {
      auto n = parse_int(rest);
      if (!n) throw BadQubitIndex("malformed register declaration", line);
      declared = std::max(declared.value_or(0), static_cast<int>(*n));
      continue;
    }

    auto gate = gate_from_mnemonic(head);
    if (!gate) throw UnknownGate("unknown gate '" + std::string(head) + "'", line);
    auto [kind, param] = *gate;

    GateOp op;
    op.kind = kind;
    op.param = param;
    op.source_line = line;

    if (!rest.empty()) {
      size_t pos = 0;
      while (true) {
        size_t comma = rest.find(',', pos);
        std::string_view tok =
            comma == std::string_view::npos ? rest.substr(pos) : rest.substr(pos, comma - pos);
        op.operands.push_back(parse_operand(tok, line));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }

    if (op.arity() != arity(kind))
      throw ArityMismatch("gate '" + std::string(head) + "' expects " +
                              std::to_string(arity(kind)) + " operand(s), got " +
                              std::to_string(op.arity()),
                          line);
    if (op.arity() == 2 && op.operands[0] == op.operands[1])
      throw ArityMismatch("two-qubit gate operands must be distinct", line);

    for (QubitRef q : op.operands) max_index = std::max(max_index, q.index);
    circuit.ops.push_back(std::move(op));
  }

  if (!saw_statement) throw EmptyCircuit();

  circuit.num_qubits = std::max(declared.value_or(0), max_index + 1);
  if (declared && max_index >= *declared) {
    for (const GateOp& op : circuit.ops)
      for (QubitRef q : op.operands)
        if (q.index >= *declared)
          throw BadQubitIndex("qubit q" + std::to_string(q.index) +
                                  " outside declared register of size " +
                                  std::to_string(*declared),
                              op.source_line);
  }
  return circuit;
}

std::string serialize(const Circuit& circuit) {
  std::string out = "qubit " + std::to_string(circuit.num_qubits) + "\n";
  for (const GateOp& op : circuit.ops) {
    out += gate_mnemonic(op.kind, op.param);
    for (int i = 0; i < op.arity(); ++i) {
      out += i == 0 ? " q" : ",q";
      out += std::to_string(op.operands[i].index);
    }
    out += '\n';
  }
  return out;
}

}  // namespace qet
