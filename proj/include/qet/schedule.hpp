#pragma once

#include <string>
#include <vector>

#include "qet/circuit.hpp"
#include "qet/tech_db.hpp"

namespace qet {

// One contiguous run of levels on a qubit lane, either occupied by a gate or idle.
struct Slice {
  int qubit = 0;
  long long start_level = 0;  // 1-based, inclusive
  long long end_level = 0;    // inclusive
  bool busy = false;
  int op_index = -1;  // index into Circuit::ops when busy
};

// Placement data the tracer consumes per op: where the gate sits on the grid
// and how many idle slices each operand accumulated right before it.
struct OpPlacement {
  long long start_level = 0;
  long long end_level = 0;
  long long idle_before[2] = {0, 0};  // per operand, in slices
};

struct Schedule {
  long long slice_ns = 1;
  std::vector<std::vector<Slice>> lanes;   // per qubit
  std::vector<long long> final_level;      // per qubit
  std::vector<OpPlacement> placements;     // per op, program order
};

// Common time quantum: GCD of the latencies of the gates appearing in the
// circuit, or of the technology's whole latency table when over_whole_pmd
// is set. Empty circuits quantise to 1 ns.
long long compute_slice(const TechDb& db, Tech tech, const Circuit& circuit,
                        bool over_whole_pmd = false);

// ASAP placement on the common grid: a one-qubit gate starts right after its
// qubit's current level; a two-qubit gate aligns both operands at the later
// of the two levels, charging idle slices to the earlier-finishing qubit.
Schedule build_schedule(const TechDb& db, Tech tech, const Circuit& circuit,
                        bool slice_over_whole_pmd = false);

// Total idle slices on one lane. Throws BadQubitIndex for lanes outside the schedule.
long long idle_slices(const Schedule& schedule, QubitRef qubit);

// CSV dump: qubit,start_level,end_level,label
std::string schedule_csv(const Schedule& schedule, const Circuit& circuit);

}  // namespace qet
