#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "qet/errors.hpp"
#include "qet/oracle.hpp"

using namespace qet;

namespace {

const FormulaSet& formulas() {
  static FormulaSet instance = FormulaSet::defaults();
  return instance;
}

// Plain 2^n enumeration with no marginalisation shortcuts; cross-checks the
// production enumerator for small sets.
double literal_enumeration(const FailureEventSet& set) {
  size_t n = set.events.size();
  double fail = 0.0;
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    double weight = 1.0;
    int fails = 0;
    bool survivable = false;
    for (size_t i = 0; i < n; ++i) {
      if (mask & (size_t{1} << i)) {
        weight *= set.events[i].p;
        survivable = fails == 0 ? set.events[i].survivable_single : false;
        ++fails;
      } else {
        weight *= 1.0 - set.events[i].p;
      }
    }
    if (fails >= 2 || (fails == 1 && !survivable)) fail += weight;
  }
  return fail;
}

double binom_tail_ge2(int n, double p) {
  return 1.0 - std::pow(1 - p, n) - n * p * std::pow(1 - p, n - 1);
}

ConcatTable random_prev(std::mt19937_64& rng, double hi) {
  ConcatTable t;
  t.level = 0;
  std::uniform_real_distribution<double> u(0.0, hi);
  for (const char* key : {"x", "y", "z", "h", "s", "sdg", "t", "tdg", "cnot", "cz",
                          "swap", "zeno", "mx", "mz", "geo"})
    t.g[key] = u(rng);
  return t;
}

}  // namespace

TEST_CASE("exact: single event") {
  FailureEventSet any{{{"e", 0.37, false}}};
  CHECK(exact_probability(any) == doctest::Approx(0.37).epsilon(1e-15));
  FailureEventSet survivable{{{"e", 0.37, true}}};
  CHECK(exact_probability(survivable) == 0.0);
}

TEST_CASE("exact: nine uniform events vs the binomial tail") {
  FailureEventSet set;
  for (int i = 0; i < 9; ++i) set.events.push_back({"x", 0.01, true});
  CHECK(exact_probability(set) == doctest::Approx(binom_tail_ge2(9, 0.01)).epsilon(1e-15));
}

TEST_CASE("exact: permutation invariance") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 0.9);
  FailureEventSet set;
  for (int i = 0; i < 12; ++i)
    set.events.push_back({"e", u(rng), i % 3 == 0});
  double base = exact_probability(set);
  for (int shuffle = 0; shuffle < 5; ++shuffle) {
    std::shuffle(set.events.begin(), set.events.end(), rng);
    CHECK(exact_probability(set) == doctest::Approx(base).epsilon(1e-13));
  }
}

TEST_CASE("exact: matches a literal subset sum") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    FailureEventSet set;
    int n = std::uniform_int_distribution<int>(0, 14)(rng);
    for (int i = 0; i < n; ++i)
      set.events.push_back({"e", u(rng), u(rng) < 0.5});
    CHECK(exact_probability(set) ==
          doctest::Approx(literal_enumeration(set)).epsilon(1e-12));
  }
}

TEST_CASE("exact: event limit") {
  FailureEventSet set;
  for (int i = 0; i < 31; ++i) set.events.push_back({"e", 0.1, true});
  CHECK_THROWS_AS(exact_probability(set), TooManyEvents);
}

TEST_CASE("grouped enumeration equals the subset enumeration") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 0.8);
  for (int trial = 0; trial < 40; ++trial) {
    ResolvedFormula f;
    int groups = std::uniform_int_distribution<int>(1, 3)(rng);
    int total = 0;
    for (int gidx = 0; gidx < groups; ++gidx) {
      int count = std::uniform_int_distribution<int>(1, 7)(rng);
      int survivable = std::uniform_int_distribution<int>(0, count)(rng);
      f.groups.push_back({u(rng), count, survivable});
      total += count;
    }
    if (u(rng) < 0.5) f.memory = u(rng);
    CHECK(exact_probability_grouped(f) ==
          doctest::Approx(exact_probability(events_from(f))).epsilon(1e-12));
  }
}

TEST_CASE("every shipped formula agrees with its event-set enumeration") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    ConcatTable prev = random_prev(rng, 0.5);
    for (Code code : kAllCodes) {
      for (const std::string& key : formulas().covered_gates(code)) {
        ResolvedFormula f =
            resolve_formula(formulas(), code, key, prev, MemoryModel::zero());
        double closed = closed_form(f);
        double grouped = exact_probability_grouped(f);
        CHECK(closed == doctest::Approx(grouped).epsilon(1e-12));
        FailureEventSet events = events_from(f);
        if (events.events.size() <= 22)
          CHECK(closed == doctest::Approx(exact_probability(events)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("monte carlo: degenerate probabilities") {
  FailureEventSet none;
  MonteCarloEstimate e0 = monte_carlo(none, 1000, 1);
  CHECK(e0.estimate == 0.0);
  CHECK(e0.stderr_ == 0.0);

  FailureEventSet certain{{{"e", 1.0, false}}};
  MonteCarloEstimate e1 = monte_carlo(certain, 1000, 1);
  CHECK(e1.estimate == 1.0);
  CHECK(e1.stderr_ == 0.0);

  FailureEventSet zero{{{"e", 0.0, false}}};
  CHECK(monte_carlo(zero, 1000, 1).estimate == 0.0);
}

TEST_CASE("monte carlo: deterministic for a fixed seed") {
  FailureEventSet set;
  for (int i = 0; i < 9; ++i) set.events.push_back({"x", 0.01, true});
  MonteCarloEstimate a = monte_carlo(set, 100000, 12345);
  MonteCarloEstimate b = monte_carlo(set, 100000, 12345);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
  MonteCarloEstimate c = monte_carlo(set, 100000, 54321);
  CHECK(a.estimate != c.estimate);  // different stream
}

TEST_CASE("monte carlo: calibrated against the exact value") {
  FailureEventSet set;
  for (int i = 0; i < 9; ++i) set.events.push_back({"x", 0.01, true});
  double exact = exact_probability(set);
  MonteCarloEstimate mc = monte_carlo(set, 1000000, 777);
  CHECK(std::abs(mc.estimate - exact) <= 4.0 * mc.stderr_ + 1e-12);
}

TEST_CASE("monte carlo: stderr shrinks like 1/sqrt(trials)") {
  FailureEventSet set;
  for (int i = 0; i < 5; ++i) set.events.push_back({"e", 0.2, false});
  double prev = monte_carlo(set, 4000, 9).stderr_;
  for (long long trials : {16000LL, 64000LL, 256000LL}) {
    double cur = monte_carlo(set, trials, 9).stderr_;
    CHECK(cur == doctest::Approx(prev / 2.0).epsilon(0.2));
    prev = cur;
  }
}
