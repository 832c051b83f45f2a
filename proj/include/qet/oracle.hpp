#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qet/concat.hpp"

namespace qet {

// One independent failure site. A block survives the empty outcome and any
// single failure flagged survivable; everything else fails it.
struct FailureEvent {
  std::string label;
  double p = 0.0;
  bool survivable_single = false;
};

struct FailureEventSet {
  std::vector<FailureEvent> events;
};

// Expands a resolved formula into its event list (memory event last).
FailureEventSet events_from(const ResolvedFormula& formula);

// Exact failure probability by enumeration over event subsets, each weighted
// by prod(p_i) * prod(1-p_j). Limited to 30 events; throws TooManyEvents.
double exact_probability(const FailureEventSet& set);

// Exact failure probability by enumeration over joint per-group failure
// counts. Equivalent to the subset enumeration but closed under the large
// formulas (no event-count limit).
double exact_probability_grouped(const ResolvedFormula& formula);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  long long trials = 0;
};

// Seeded mt19937_64 sampler over the same predicate; deterministic for a
// fixed (seed, trials) pair.
MonteCarloEstimate monte_carlo(const FailureEventSet& set, long long trials,
                               std::uint64_t seed);

}  // namespace qet
