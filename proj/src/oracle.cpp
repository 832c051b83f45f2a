#include "qet/oracle.hpp"

#include <cmath>
#include <random>

#include "qet/errors.hpp"

namespace qet {

FailureEventSet events_from(const ResolvedFormula& formula) {
  FailureEventSet set;
  for (size_t i = 0; i < formula.groups.size(); ++i) {
    const auto& g = formula.groups[i];
    for (int j = 0; j < g.count; ++j)
      set.events.push_back(
          {"g" + std::to_string(i) + "." + std::to_string(j), g.p, j < g.survivable});
  }
  if (formula.memory) set.events.push_back({"M", *formula.memory, true});
  return set;
}

namespace {

// Compensated accumulator; the subset sums run to 2^30 terms.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

struct Enumerator {
  const std::vector<FailureEvent>& events;
  KahanSum fail;

  // Walks every subset. `fails` saturates at 2; a prefix that already fails
  // stays failed in every extension, so its subtree marginalises to `weight`.
  void walk(size_t i, double weight, int fails, bool single_survivable) {
    if (fails >= 2 || (fails == 1 && !single_survivable)) {
      fail.add(weight);
      return;
    }
    if (i == events.size()) return;  // surviving outcome
    const FailureEvent& e = events[i];
    walk(i + 1, weight * (1.0 - e.p), fails, single_survivable);
    walk(i + 1, weight * e.p, fails + 1, fails == 0 ? e.survivable_single : false);
  }
};

}  // namespace

double exact_probability(const FailureEventSet& set) {
  if (set.events.size() > 30)
    throw TooManyEvents("subset enumeration limited to 30 events, got " +
                        std::to_string(set.events.size()));
  Enumerator e{set.events, {}};
  e.walk(0, 1.0, 0, false);
  return e.fail.sum;
}

double exact_probability_grouped(const ResolvedFormula& formula) {
  // Joint distribution over per-group failure counts. For a cell with one
  // total failure in group i, the survivable share is a_i of the n_i
  // equally likely positions.
  struct Cell {
    double weight;
    int total_fails;
    double survivable_share;  // meaningful when total_fails == 1
  };
  std::vector<Cell> cells = {{1.0, 0, 0.0}};

  auto extend = [&cells](double p, int count, int survivable) {
    std::vector<Cell> next;
    // binomial weights for f failures among `count` sites
    std::vector<double> binom(count + 1);
    for (int f = 0; f <= count; ++f) {
      double w = 1.0;
      for (int j = 0; j < f; ++j) w = w * (count - j) / (j + 1);
      binom[f] = w * std::pow(p, f) * std::pow(1.0 - p, count - f);
    }
    for (const Cell& c : cells) {
      for (int f = 0; f <= count; ++f) {
        if (c.total_fails + f > 2) {
          // classification is already decided; collapse the tail mass
          double tail = 0.0;
          for (int g = f; g <= count; ++g) tail += binom[g];
          next.push_back({c.weight * tail, 3, 0.0});
          break;
        }
        Cell n = c;
        n.weight *= binom[f];
        n.total_fails += f;
        if (c.total_fails == 0 && f == 1)
          n.survivable_share = count > 0 ? static_cast<double>(survivable) / count : 0.0;
        if (n.weight != 0.0) next.push_back(n);
      }
    }
    cells = std::move(next);
  };

  for (const auto& g : formula.groups) extend(g.p, g.count, g.survivable);
  if (formula.memory) extend(*formula.memory, 1, 1);

  KahanSum fail;
  for (const Cell& c : cells) {
    if (c.total_fails >= 2) {
      fail.add(c.weight);
    } else if (c.total_fails == 1) {
      fail.add(c.weight * (1.0 - c.survivable_share));
    }
  }
  return fail.sum;
}

MonteCarloEstimate monte_carlo(const FailureEventSet& set, long long trials,
                               std::uint64_t seed) {
  if (trials < 1) throw Error("monte_carlo needs at least one trial");
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  };

  long long failures = 0;
  for (long long t = 0; t < trials; ++t) {
    int fails = 0;
    bool single_survivable = false;
    for (const FailureEvent& e : set.events) {
      if (unit() < e.p) {
        single_survivable = fails == 0 ? e.survivable_single : false;
        if (++fails >= 2) break;
      }
    }
    if (fails >= 2 || (fails == 1 && !single_survivable)) ++failures;
  }

  MonteCarloEstimate out;
  out.trials = trials;
  out.estimate = static_cast<double>(failures) / static_cast<double>(trials);
  out.stderr_ =
      std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

}  // namespace qet
