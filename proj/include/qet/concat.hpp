#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qet/circuit.hpp"
#include "qet/tech_db.hpp"
#include "qet/trace.hpp"

namespace qet {

// One group of exchangeable constituent gates inside a logical-gate formula:
// `count` independent failure sites with probability drawn from slot, of
// which `survivable` may fail alone without failing the block.
struct FormulaTerm {
  std::string slot;
  int count = 0;
  int survivable = 0;
};

struct GateFormula {
  std::vector<FormulaTerm> terms;
  bool has_memory = false;   // block-wide memory event M_{n,A}
  bool same_level = false;   // slots read the current level's table
  std::optional<std::string> alias;
};

// Formula table for the three codes, block factors and the delay-scaled
// memory-model coefficients, loaded from concat_formulas.json.
class FormulaSet {
 public:
  static FormulaSet defaults();
  static FormulaSet from_json_text(const std::string& text);
  static FormulaSet load_file(const std::string& path);

  const GateFormula& formula(Code code, const std::string& gate_key) const;
  bool has_formula(Code code, const std::string& gate_key) const;

  long long block_factor(Code code) const;
  double memory_coeff(Code code, const std::string& gate_key) const;

  // Gate keys with a formula (aliases resolved), in deterministic order.
  std::vector<std::string> covered_gates(Code code) const;

 private:
  std::map<std::string, GateFormula> formulas_[3];
  long long block_factors_[3] = {9, 7, 4};
  std::map<std::string, double> memory_coeffs_[3];
};

// Per-gate logical error probabilities g_n (and the memory terms M_n that
// entered them) at one concatenation level.
struct ConcatTable {
  Code code = Code::BaconShor;
  int level = 0;
  std::map<std::string, double> g;
  std::map<std::string, double> M;
};

// How the block-wide memory event of a logical gate is priced.
// `zero` keeps every M_{n,A} at 0. `delay-scaled` uses
// M_{n,A} = 1 - (1-m)^(coeff(code,A) * t_swap_ns * b^(n-1)).
struct MemoryModel {
  enum class Kind { Zero, DelayScaled };
  Kind kind = Kind::Zero;
  double m = 0.0;
  long long t_swap_ns = 0;

  static MemoryModel zero() { return {}; }
  static MemoryModel delay_scaled(double m, long long t_swap_ns) {
    return {Kind::DelayScaled, m, t_swap_ns};
  }

  double logical_memory(const FormulaSet& formulas, Code code,
                        const std::string& gate_key, int level) const;
};

// Event-model view of one logical gate at level n: the resolved failure
// probabilities per group plus the optional memory event. Both the closed
// form and the enumeration oracle consume this structure.
struct ResolvedFormula {
  struct Group {
    double p = 0.0;
    int count = 0;
    int survivable = 0;
  };
  std::vector<Group> groups;
  std::optional<double> memory;
};

ResolvedFormula resolve_formula(const FormulaSet& formulas, Code code,
                                const std::string& gate_key, const ConcatTable& prev,
                                const MemoryModel& mem);

// 1 - P(no constituent fails) - P(exactly one survivable constituent fails),
// with the memory event folded in when present.
double closed_form(const ResolvedFormula& f);

// g_n for one gate from the level-(n-1) table.
double logical_gate_error(const FormulaSet& formulas, Code code,
                          const std::string& gate_key, const ConcatTable& prev,
                          const MemoryModel& mem);

// Level-0 table from the technology's exponents at the active w.
ConcatTable base_table(const TechDb& db, Tech tech, const RateProfile& rates,
                       Code code);

// Applies logical_gate_error level times over every covered gate.
ConcatTable concat_table(const FormulaSet& formulas, Code code, const ConcatTable& base,
                         int level, const MemoryModel& mem);

long long block_factor(Code code);  // 9 / 7 / 4

// count0 * b^level: the baseline block count at a concatenation level.
long long orig_blocks(long long count0, Code code, int level);

// The linear-tracer walk with per-gate error probabilities drawn from the
// level-n table; level 0 is exactly trace_linear.
TraceResult trace_concat(const TechDb& db, const FormulaSet& formulas,
                         const Circuit& circuit, Tech tech, const RateProfile& rates,
                         Code code, int level, const EcPolicy& policy,
                         const MemoryModel& mem, bool record_steps = false);

}  // namespace qet
