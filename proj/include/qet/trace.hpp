#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qet/circuit.hpp"
#include "qet/schedule.hpp"
#include "qet/tech_db.hpp"

namespace qet {

// Running no-error probability of one qubit, optionally mirrored as the
// monomial (1-w)^gate_exp * w0^idle_exp with w0 the per-slice no-memory-error
// factor. The monomial is tracked only in symbolic mode at concatenation
// level 0.
struct Monomial {
  long long gate_exp = 0;
  long long idle_exp = 0;
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.gate_exp == b.gate_exp && a.idle_exp == b.idle_exp;
  }
};

struct ErrorState {
  double p_noerr = 1.0;
  std::optional<Monomial> monomial;
};

// EC blocks are inserted when the traced error probability exceeds the
// threshold; afterwards the qubits carry p_after_ec.
struct EcPolicy {
  double threshold = 1.0;
  double p_after_ec = 0.0;
};

struct EcInsertion {
  long long op_index = 0;
  std::vector<int> qubits;
};

struct TraceStep {
  long long op_index = 0;
  int qubit = 0;
  double p_noerr_before = 1.0;
  double p_noerr_after = 1.0;
  bool ec_inserted = false;
};

struct TraceResult {
  std::vector<ErrorState> final_states;  // per qubit
  std::vector<EcInsertion> ec_insertions;
  long long ec_count = 0;
  long long orig_count = 0;
  long long slice_ns = 1;
  std::vector<TraceStep> steps;  // filled when requested
};

// (1-w)^k for the gate's fault-tolerant model.
double gate_noerr_factor(const TechDb& db, Tech tech, const GateOp& op, double w);

// (1-m)^idle_ns; the no-decoherence probability over an idle stretch.
double memory_noerr_factor(double m, long long idle_ns);

// Two-qubit synchronisation: both operands continue with the state of larger
// error (smaller p_noerr); ties keep the first operand's state. Comparison is
// numeric at the active rates even when monomials are being tracked.
ErrorState merge_two_qubit(const ErrorState& first, const ErrorState& second);

struct TraceOptions {
  bool symbolic = false;
  bool record_steps = false;
  bool slice_over_whole_pmd = false;
};

// Walks the scheduled circuit in program order. Before each gate the idle
// memory factors of its operands are charged; two-qubit gates first merge
// their operand states (both continue with the larger error). The threshold
// check at each gate covers the full error incurred through it. A one-qubit
// gate's factor joins the carried state at the gate; a two-qubit gate's own
// factor is either absorbed by an EC block inserted at its position or stays
// pending until the walk next advances past it on each wire. A trailing
// synchronising gate therefore contributes its merge but no factor of its
// own, which reproduces the worked-example accounting. Measurements
// re-initialise their qubit after the check.
TraceResult trace_linear(const TechDb& db, const Circuit& circuit, Tech tech,
                         const RateProfile& rates, const EcPolicy& policy,
                         const TraceOptions& options = {});

// Shared walk used by both the linear and the concatenated tracer. The
// factor callback returns the per-gate no-error probability; the exponent
// callback feeds monomials (null when not in symbolic mode).
TraceResult trace_walk(const Circuit& circuit, const Schedule& schedule,
                       double w0_per_slice, const EcPolicy& policy,
                       const std::function<double(const GateOp&)>& noerr_factor,
                       const std::function<long long(const GateOp&)>* gate_exponent,
                       long long orig_count, bool record_steps);

// JSON dump of per-operand trace steps.
std::string trace_json(const TraceResult& result);

}  // namespace qet
