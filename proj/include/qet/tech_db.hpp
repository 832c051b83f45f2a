#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qet/circuit.hpp"
#include "qet/gates.hpp"

namespace qet {

// Worst-gate error probability w and per-ns memory error rate m.
struct RateProfile {
  double w = 0.0;
  double m = 0.0;
};

// All per-technology constants, loaded from a JSON document with sections
// `exponents`, `latencies_ns`, `rates`, `primitives`, `ctl_words` and
// `decompositions`. Immutable after load; replacing a profile is a whole
// object swap.
class TechDb {
 public:
  // Shipped defaults (same content as data/tech_defaults.json).
  static TechDb defaults();
  static TechDb from_json_text(const std::string& text);
  static TechDb load_file(const std::string& path);

  // Exponent k of the gate's fault-tolerant model: g0 = 1 - (1-w)^k.
  int primitive_exponent(Tech tech, const GateOp& op) const;
  int primitive_exponent(Tech tech, const std::string& exponent_key) const;

  // Gate operation time in ns.
  long long gate_time(Tech tech, const GateOp& op) const;
  long long gate_time(Tech tech, const std::string& latency_key) const;

  RateProfile default_rates(Tech tech) const;

  // Whether the gate is in the technology's native set.
  bool is_primitive(Tech tech, const GateOp& op) const;

  // Clifford+T word for a non-native rotation, e.g. rz1 -> [t].
  // Empty optional when the table has no entry.
  std::optional<std::vector<GateOp>> ctl_word(GateKind kind, int param) const;

  // Technology-specific rewrite (e.g. swap -> 3 cnot on lp).
  std::optional<std::vector<GateOp>> tech_rewrite(Tech tech, const GateOp& op) const;

  // Keys present in a technology's latency table (used by the whole-PMD
  // slice option).
  std::vector<long long> all_latencies(Tech tech) const;

  const std::string& source_text() const { return source_text_; }

 private:
  std::map<std::string, int> exponents_[6];
  std::map<std::string, long long> latencies_[6];
  RateProfile rates_[6];
  std::set<std::string> primitives_[6];
  std::map<std::string, std::vector<GateOp>> ctl_words_;
  std::map<std::string, std::vector<GateOp>> rewrites_[6];
  std::string source_text_;
};

// Rewrites every gate the technology does not implement natively using the
// shipped conversion entries (technology-specific rewrites first, then the
// Clifford+T words for rotations). Gates with no conversion path raise
// NoDecomposition. Idempotent on circuits that are already native.
Circuit decompose_to_fts(const Circuit& circuit, Tech tech, const TechDb& db);

}  // namespace qet
