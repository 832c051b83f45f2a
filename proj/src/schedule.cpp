#include "qet/schedule.hpp"

#include <numeric>
#include <set>

#include "qet/errors.hpp"

namespace qet {

long long compute_slice(const TechDb& db, Tech tech, const Circuit& circuit,
                        bool over_whole_pmd) {
  long long g = 0;
  if (over_whole_pmd) {
    for (long long ns : db.all_latencies(tech)) g = std::gcd(g, ns);
  } else {
    std::set<std::string> seen;
    for (const GateOp& op : circuit.ops) {
      std::string key = latency_key(op.kind, op.param);
      if (!seen.insert(key).second) continue;
      g = std::gcd(g, db.gate_time(tech, key));
    }
  }
  return g == 0 ? 1 : g;
}

Schedule build_schedule(const TechDb& db, Tech tech, const Circuit& circuit,
                        bool slice_over_whole_pmd) {
  Schedule sched;
  sched.slice_ns = compute_slice(db, tech, circuit, slice_over_whole_pmd);
  sched.lanes.resize(circuit.num_qubits);
  sched.final_level.assign(circuit.num_qubits, 0);
  sched.placements.resize(circuit.ops.size());

  std::vector<long long>& level = sched.final_level;
  for (size_t i = 0; i < circuit.ops.size(); ++i) {
    const GateOp& op = circuit.ops[i];
    long long sn = db.gate_time(tech, op) / sched.slice_ns;

    long long l = 0;
    for (QubitRef q : op.operands) l = std::max(l, level[q.index]);

    OpPlacement& place = sched.placements[i];
    place.start_level = l + 1;
    place.end_level = l + sn;

    for (int j = 0; j < op.arity(); ++j) {
      int q = op.operands[j].index;
      long long idle = l - level[q];
      place.idle_before[j] = idle;
      if (idle > 0)
        sched.lanes[q].push_back({q, level[q] + 1, l, /*busy=*/false, -1});
      sched.lanes[q].push_back({q, l + 1, l + sn, /*busy=*/true, static_cast<int>(i)});
      level[q] = l + sn;
    }
  }
  return sched;
}

long long idle_slices(const Schedule& schedule, QubitRef qubit) {
  if (qubit.index < 0 || qubit.index >= static_cast<int>(schedule.lanes.size()))
    throw BadQubitIndex("qubit q" + std::to_string(qubit.index) + " not in schedule", 0);
  long long total = 0;
  for (const Slice& s : schedule.lanes[qubit.index])
    if (!s.busy) total += s.end_level - s.start_level + 1;
  return total;
}

std::string schedule_csv(const Schedule& schedule, const Circuit& circuit) {
  std::string out = "qubit,start_level,end_level,label\n";
  for (const auto& lane : schedule.lanes) {
    for (const Slice& s : lane) {
      out += std::to_string(s.qubit) + ',' + std::to_string(s.start_level) + ',' +
             std::to_string(s.end_level) + ',';
      if (s.busy) {
        const GateOp& op = circuit.ops[s.op_index];
        out += gate_mnemonic(op.kind, op.param) + '@' + std::to_string(s.op_index);
      } else {
        out += "idle";
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace qet
