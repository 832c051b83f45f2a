#include "qet/trace.hpp"

#include <cmath>

#include "json.hpp"
#include "qet/errors.hpp"

namespace qet {

double gate_noerr_factor(const TechDb& db, Tech tech, const GateOp& op, double w) {
  return std::pow(1.0 - w, db.primitive_exponent(tech, op));
}

double memory_noerr_factor(double m, long long idle_ns) {
  return std::pow(1.0 - m, static_cast<double>(idle_ns));
}

ErrorState merge_two_qubit(const ErrorState& first, const ErrorState& second) {
  return second.p_noerr < first.p_noerr ? second : first;
}

namespace {

void validate(const EcPolicy& policy) {
  if (!(policy.threshold > 0.0) || policy.threshold > 1.0)
    throw InvalidPolicy("threshold must lie in (0, 1]");
  if (policy.p_after_ec < 0.0 || policy.p_after_ec >= policy.threshold)
    throw InvalidPolicy("p_after_ec must lie in [0, threshold)");
}

struct Lane {
  ErrorState state;
  double pending_factor = 1.0;   // two-qubit factor not yet charged
  long long pending_exp = 0;
};

}  // namespace

TraceResult trace_walk(const Circuit& circuit, const Schedule& schedule,
                       double w0_per_slice, const EcPolicy& policy,
                       const std::function<double(const GateOp&)>& noerr_factor,
                       const std::function<long long(const GateOp&)>* gate_exponent,
                       long long orig_count, bool record_steps) {
  validate(policy);

  const bool symbolic = gate_exponent != nullptr;
  std::vector<Lane> lanes(circuit.num_qubits);
  if (symbolic)
    for (Lane& lane : lanes) lane.state.monomial = Monomial{};

  TraceResult result;
  result.orig_count = orig_count;
  result.slice_ns = schedule.slice_ns;

  auto reset_state = [&](Lane& lane) {
    lane.state.p_noerr = 1.0 - policy.p_after_ec;
    if (symbolic)
      lane.state.monomial =
          policy.p_after_ec == 0.0 ? std::optional<Monomial>(Monomial{}) : std::nullopt;
  };

  for (size_t i = 0; i < circuit.ops.size(); ++i) {
    const GateOp& op = circuit.ops[i];
    const OpPlacement& place = schedule.placements[i];

    double before[2];
    for (int j = 0; j < op.arity(); ++j) {
      Lane& lane = lanes[op.operands[j].index];
      before[j] = lane.state.p_noerr;

      if (lane.pending_factor != 1.0 || lane.pending_exp != 0) {
        lane.state.p_noerr *= lane.pending_factor;
        if (lane.state.monomial) lane.state.monomial->gate_exp += lane.pending_exp;
      }
      lane.pending_factor = 1.0;
      lane.pending_exp = 0;

      if (place.idle_before[j] > 0) {
        lane.state.p_noerr *=
            std::pow(w0_per_slice, static_cast<double>(place.idle_before[j]));
        if (lane.state.monomial) lane.state.monomial->idle_exp += place.idle_before[j];
      }
    }

    if (op.arity() == 2) {
      ErrorState merged = merge_two_qubit(lanes[op.operands[0].index].state,
                                          lanes[op.operands[1].index].state);
      lanes[op.operands[0].index].state = merged;
      lanes[op.operands[1].index].state = merged;
    }

    double factor = noerr_factor(op);
    long long exponent = symbolic ? (*gate_exponent)(op) : 0;
    if (op.arity() == 1) {
      Lane& lane = lanes[op.operands[0].index];
      lane.state.p_noerr *= factor;
      if (lane.state.monomial) lane.state.monomial->gate_exp += exponent;
    }

    // The check covers the full error incurred through this gate. For a
    // two-qubit gate the factor enters tentatively: an EC block here absorbs
    // it, otherwise it stays pending for the next event on each wire.
    std::vector<int> crossed;
    for (int j = 0; j < op.arity(); ++j) {
      int q = op.operands[j].index;
      double through = lanes[q].state.p_noerr;
      if (op.arity() == 2) through *= factor;
      if (1.0 - through > policy.threshold) crossed.push_back(q);
    }
    if (!crossed.empty()) {
      result.ec_insertions.push_back({static_cast<long long>(i), crossed});
      for (int q : crossed) reset_state(lanes[q]);
    }

    if (op.arity() == 2 && crossed.empty()) {
      for (QubitRef q : op.operands) {
        lanes[q.index].pending_factor = factor;
        lanes[q.index].pending_exp = exponent;
      }
    }

    if (is_measurement(op.kind)) {
      Lane& lane = lanes[op.operands[0].index];
      lane.state.p_noerr = 1.0;
      if (symbolic) lane.state.monomial = Monomial{};
    }

    if (record_steps) {
      for (int j = 0; j < op.arity(); ++j) {
        int q = op.operands[j].index;
        bool ec = false;
        for (int c : crossed) ec = ec || c == q;
        result.steps.push_back({static_cast<long long>(i), q, before[j],
                                lanes[q].state.p_noerr, ec});
      }
    }
  }

  result.final_states.reserve(lanes.size());
  for (const Lane& lane : lanes) result.final_states.push_back(lane.state);
  result.ec_count = static_cast<long long>(result.ec_insertions.size());
  return result;
}

TraceResult trace_linear(const TechDb& db, const Circuit& circuit, Tech tech,
                         const RateProfile& rates, const EcPolicy& policy,
                         const TraceOptions& options) {
  Schedule schedule = build_schedule(db, tech, circuit, options.slice_over_whole_pmd);
  double w0 = memory_noerr_factor(rates.m, schedule.slice_ns);

  auto factor = [&](const GateOp& op) {
    return gate_noerr_factor(db, tech, op, rates.w);
  };
  std::function<long long(const GateOp&)> exponent = [&](const GateOp& op) {
    return static_cast<long long>(db.primitive_exponent(tech, op));
  };

  return trace_walk(circuit, schedule, w0, policy, factor,
                    options.symbolic ? &exponent : nullptr, gate_count(circuit),
                    options.record_steps);
}

std::string trace_json(const TraceResult& result) {
  nlohmann::json steps = nlohmann::json::array();
  for (const TraceStep& s : result.steps) {
    steps.push_back({{"op_index", s.op_index},
                     {"qubit", s.qubit},
                     {"p_noerr_before", s.p_noerr_before},
                     {"p_noerr_after", s.p_noerr_after},
                     {"ec_inserted", s.ec_inserted}});
  }
  return steps.dump(2) + "\n";
}

}  // namespace qet
