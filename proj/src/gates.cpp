#include "qet/gates.hpp"

#include <utility>

namespace qet {

std::string_view tech_name(Tech t) {
  switch (t) {
    case Tech::QD: return "qd";
    case Tech::NA: return "na";
    case Tech::LP: return "lp";
    case Tech::NP: return "np";
    case Tech::SC: return "sc";
    case Tech::IT: return "it";
  }
  return "?";
}

std::optional<Tech> tech_from_name(std::string_view name) {
  for (Tech t : kAllTechs)
    if (name == tech_name(t)) return t;
  return std::nullopt;
}

std::string_view code_name(Code c) {
  switch (c) {
    case Code::BaconShor: return "bs";
    case Code::Steane: return "steane";
    case Code::Knill: return "knill";
  }
  return "?";
}

std::optional<Code> code_from_name(std::string_view name) {
  for (Code c : kAllCodes)
    if (name == code_name(c)) return c;
  return std::nullopt;
}

bool valid_param(GateKind k, int param) {
  if (is_rotation(k)) return param >= 1 && param <= 7;
  if (k == GateKind::Geo) return param >= 2 && param <= 6;
  return param == 0;
}

namespace {

std::string_view base_mnemonic(GateKind k) {
  switch (k) {
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdag: return "sdg";
    case GateKind::T: return "t";
    case GateKind::Tdag: return "tdg";
    case GateKind::Cnot: return "cnot";
    case GateKind::Cz: return "cz";
    case GateKind::Swap: return "swap";
    case GateKind::Zeno: return "zeno";
    case GateKind::Geo: return "geo";
    case GateKind::Mx: return "mx";
    case GateKind::Mz: return "mz";
  }
  return "?";
}

}  // namespace

std::string gate_mnemonic(GateKind k, int param) {
  std::string s{base_mnemonic(k)};
  if (has_param(k)) s += std::to_string(param);
  return s;
}

std::optional<std::pair<GateKind, int>> gate_from_mnemonic(std::string_view s) {
  static constexpr GateKind kinds[] = {
      GateKind::Rx,   GateKind::Ry,  GateKind::Rz,   GateKind::X,
      GateKind::Y,    GateKind::Z,   GateKind::H,    GateKind::S,
      GateKind::Sdag, GateKind::T,   GateKind::Tdag, GateKind::Cnot,
      GateKind::Cz,   GateKind::Swap, GateKind::Zeno, GateKind::Geo,
      GateKind::Mx,   GateKind::Mz};
  for (GateKind k : kinds) {
    std::string_view base = base_mnemonic(k);
    if (!has_param(k)) {
      if (s == base) return std::make_pair(k, 0);
      continue;
    }
    if (s.size() == base.size() + 1 && s.substr(0, base.size()) == base) {
      char c = s[base.size()];
      if (c < '0' || c > '9') continue;
      int param = c - '0';
      if (valid_param(k, param)) return std::make_pair(k, param);
    }
  }
  return std::nullopt;
}

std::string exponent_key(GateKind k, int param) {
  // One exponent row per rotation axis; GEO rows are per angle.
  if (is_rotation(k)) return std::string{base_mnemonic(k)};
  return gate_mnemonic(k, param);
}

std::string latency_key(GateKind k, int param) { return gate_mnemonic(k, param); }

}  // namespace qet
