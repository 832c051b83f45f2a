#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace qet {

// Physical machine descriptions (technologies) supported by the tables.
enum class Tech { QD, NA, LP, NP, SC, IT };

inline constexpr std::array<Tech, 6> kAllTechs = {Tech::QD, Tech::NA, Tech::LP,
                                                  Tech::NP, Tech::SC, Tech::IT};

std::string_view tech_name(Tech t);
std::optional<Tech> tech_from_name(std::string_view name);

// Error-correcting code whose tile layout drives the logical-level formulas.
enum class Code { BaconShor, Steane, Knill };

inline constexpr std::array<Code, 3> kAllCodes = {Code::BaconShor, Code::Steane,
                                                  Code::Knill};

std::string_view code_name(Code c);
std::optional<Code> code_from_name(std::string_view name);

// Gate library: rotations by multiples of pi/4 plus H, the Clifford+T gates,
// the two-qubit set {CNOT, CZ, SWAP, ZENO, GEO(theta)} and measurements.
enum class GateKind {
  Rx, Ry, Rz,        // param = k, angle k*pi/4, k in 1..7
  X, Y, Z, H, S, Sdag, T, Tdag,
  Cnot, Cz, Swap, Zeno,
  Geo,               // param = numerator of theta/(pi/4), one of 2..6
  Mx, Mz             // measurements in the X / Z basis
};

constexpr int arity(GateKind k) {
  switch (k) {
    case GateKind::Cnot:
    case GateKind::Cz:
    case GateKind::Swap:
    case GateKind::Zeno:
    case GateKind::Geo:
      return 2;
    default:
      return 1;
  }
}

constexpr bool is_rotation(GateKind k) {
  return k == GateKind::Rx || k == GateKind::Ry || k == GateKind::Rz;
}

constexpr bool is_measurement(GateKind k) {
  return k == GateKind::Mx || k == GateKind::Mz;
}

constexpr bool has_param(GateKind k) { return is_rotation(k) || k == GateKind::Geo; }

// Valid param range: k in 1..7 for rotations, 2..6 for GEO, 0 otherwise.
bool valid_param(GateKind k, int param);

// Mnemonic as written in circuit files: "rx3", "geo5", "cnot", "sdg", ...
std::string gate_mnemonic(GateKind k, int param = 0);
std::optional<std::pair<GateKind, int>> gate_from_mnemonic(std::string_view s);

// Key into the gate-error exponent table and the logical-formula table.
// Rotations share one row per axis; GEO entries are per angle.
std::string exponent_key(GateKind k, int param = 0);

// Key into the latency table. Rotations are priced per angle, so the
// mnemonic itself is the key.
std::string latency_key(GateKind k, int param = 0);

}  // namespace qet
