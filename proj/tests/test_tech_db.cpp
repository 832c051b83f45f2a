#include <cmath>

#include "doctest.h"
#include "qet/errors.hpp"
#include "qet/tech_db.hpp"

using namespace qet;

namespace {

const TechDb& db() {
  static TechDb instance = TechDb::defaults();
  return instance;
}

GateOp op_of(const char* mnemonic) {
  auto g = gate_from_mnemonic(mnemonic);
  REQUIRE(g.has_value());
  GateOp op;
  op.kind = g->first;
  op.param = g->second;
  op.operands.resize(arity(op.kind));
  if (op.arity() == 2) op.operands[1].index = 1;
  return op;
}

const char* kExponentKeys[] = {"rx",   "ry",   "rz",   "x",    "y",    "z",
                               "h",    "s",    "sdg",  "t",    "tdg",  "cnot",
                               "cz",   "swap", "zeno", "geo2", "geo3", "geo4",
                               "geo5", "geo6", "mx",   "mz"};

const char* kLatencyKeys[] = {
    "rx1", "rx2", "rx3", "rx4", "rx5", "rx6", "rx7", "ry1", "ry2", "ry3",
    "ry4", "ry5", "ry6", "ry7", "rz1", "rz2", "rz3", "rz4", "rz5", "rz6",
    "rz7", "x",   "y",   "z",   "h",   "s",   "sdg", "t",   "tdg", "cnot",
    "cz",  "swap", "zeno", "geo2", "geo3", "geo4", "geo5", "geo6", "mx", "mz"};

}  // namespace

TEST_CASE("exponents: golden entries") {
  CHECK(db().primitive_exponent(Tech::IT, op_of("ry4")) == 2);
  CHECK(db().primitive_exponent(Tech::QD, op_of("zeno")) == 16);
  CHECK(db().primitive_exponent(Tech::NP, op_of("cz")) == 5);
  CHECK(db().primitive_exponent(Tech::SC, op_of("swap")) == 13);
  CHECK(db().primitive_exponent(Tech::IT, op_of("cnot")) == 5);
  CHECK(db().primitive_exponent(Tech::LP, op_of("swap")) == 3);
  CHECK(db().primitive_exponent(Tech::NA, op_of("zeno")) == 12);
  CHECK(db().primitive_exponent(Tech::QD, op_of("y")) == 3);
  CHECK(db().primitive_exponent(Tech::IT, op_of("geo2")) == 1);
  CHECK(db().primitive_exponent(Tech::SC, op_of("geo3")) == 7);
  // H costs 7 across the board
  for (Tech t : kAllTechs) CHECK(db().primitive_exponent(t, op_of("h")) == 7);
}

TEST_CASE("latencies: golden entries") {
  CHECK(db().gate_time(Tech::QD, op_of("h")) == 12);
  CHECK(db().gate_time(Tech::QD, op_of("cnot")) == 27);
  CHECK(db().gate_time(Tech::QD, op_of("x")) == 10);
  CHECK(db().gate_time(Tech::IT, op_of("cnot")) == 120000);
  CHECK(db().gate_time(Tech::LP, op_of("swap")) == 10);
  CHECK(db().gate_time(Tech::NA, op_of("mx")) == 80457);
  CHECK(db().gate_time(Tech::SC, op_of("mz")) == 26);
  // derived: cz = h + cnot, geo = 2s + h + cnot, zeno = 2s + swap + cz
  for (Tech t : kAllTechs) {
    long long h = db().gate_time(t, op_of("h"));
    long long cnot = db().gate_time(t, op_of("cnot"));
    long long s = db().gate_time(t, op_of("s"));
    long long swap = db().gate_time(t, op_of("swap"));
    CHECK(db().gate_time(t, op_of("cz")) == h + cnot);
    CHECK(db().gate_time(t, op_of("geo4")) == 2 * s + h + cnot);
    CHECK(db().gate_time(t, op_of("zeno")) == 2 * s + swap + h + cnot);
  }
  // derived rotations follow their conversion words
  CHECK(db().gate_time(Tech::QD, op_of("rz3")) == 2);    // tdg + z
  CHECK(db().gate_time(Tech::QD, op_of("rx1")) == 25);   // h t h
  CHECK(db().gate_time(Tech::IT, op_of("ry3")) == 20000);
}

TEST_CASE("rates: golden entries") {
  RateProfile qd = db().default_rates(Tech::QD);
  CHECK(qd.w == doctest::Approx(9.89e-1).epsilon(1e-12));
  CHECK(qd.m == doctest::Approx(3.47e-2).epsilon(1e-12));
  RateProfile na = db().default_rates(Tech::NA);
  CHECK(na.w == doctest::Approx(8.12e-3).epsilon(1e-12));
  CHECK(na.m == 0.0);
  RateProfile it = db().default_rates(Tech::IT);
  CHECK(it.w == doctest::Approx(3.19e-9).epsilon(1e-12));
  CHECK(it.m == doctest::Approx(2.52e-12).epsilon(1e-12));
}

TEST_CASE("tables are total over the gate domain") {
  for (Tech t : kAllTechs) {
    for (const char* key : kExponentKeys) CHECK(db().primitive_exponent(t, key) >= 1);
    for (const char* key : kLatencyKeys) CHECK(db().gate_time(t, key) >= 1);
  }
  CHECK_THROWS_AS(db().primitive_exponent(Tech::QD, "nope"), MissingEntry);
  CHECK_THROWS_AS(db().gate_time(Tech::QD, "nope"), MissingEntry);
}

TEST_CASE("g0 is monotone in k and w, and zero at w=0") {
  auto g0 = [](int k, double w) { return 1.0 - std::pow(1.0 - w, k); };
  for (int k = 1; k <= 16; ++k) {
    CHECK(g0(k, 0.0) == 0.0);
    for (double w : {1e-9, 1e-4, 0.1, 0.5, 0.9}) {
      CHECK(g0(k + 1, w) >= g0(k, w));
      CHECK(g0(k, w * 1.5 > 1.0 ? 1.0 : w * 1.5) >= g0(k, w));
    }
  }
}

TEST_CASE("native gates cost a single primitive where the tables agree") {
  // Every technology runs the plain 1q Clifford+T set at cost w.
  for (Tech t : kAllTechs)
    for (const char* key : {"rx", "rz", "x", "z", "s", "t", "sdg", "tdg"})
      CHECK(db().primitive_exponent(t, key) == 1);
  // Native two-qubit gates.
  CHECK(db().primitive_exponent(Tech::QD, "cz") == 1);
  CHECK(db().primitive_exponent(Tech::NA, "cz") == 1);
  CHECK(db().primitive_exponent(Tech::LP, "cnot") == 1);
  CHECK(db().primitive_exponent(Tech::LP, "cz") == 1);
  CHECK(db().primitive_exponent(Tech::NP, "cnot") == 1);
  CHECK(db().primitive_exponent(Tech::SC, "cz") == 1);
  CHECK(db().primitive_exponent(Tech::IT, "geo2") == 1);
  // Printed exceptions: gates listed as supported whose fault-tolerant
  // model still costs several primitives. Guard the transcription.
  CHECK(db().primitive_exponent(Tech::LP, "ry") == 2);
  CHECK(db().primitive_exponent(Tech::LP, "h") == 7);
  CHECK(db().primitive_exponent(Tech::LP, "zeno") == 6);
  CHECK(db().primitive_exponent(Tech::NP, "h") == 7);
  CHECK(db().primitive_exponent(Tech::SC, "ry") == 2);
  CHECK(db().primitive_exponent(Tech::IT, "geo6") == 3);
}

TEST_CASE("shipped data file matches the embedded defaults") {
  TechDb from_file = TechDb::load_file(std::string(QET_SOURCE_DIR) +
                                       "/data/tech_defaults.json");
  CHECK(from_file.source_text() == db().source_text());
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(TechDb::from_json_text("not json"), ConfigError);
  CHECK_THROWS_AS(TechDb::from_json_text("{}"), ConfigError);
  CHECK_THROWS_AS(TechDb::load_file("/nonexistent/path.json"), ConfigError);
}
