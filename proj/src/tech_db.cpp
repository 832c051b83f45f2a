#include "qet/tech_db.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "qet/embedded_configs.hpp"
#include "qet/errors.hpp"

namespace qet {

namespace {

using nlohmann::json;

Tech tech_or_throw(const std::string& name) {
  auto t = tech_from_name(name);
  if (!t) throw ConfigError("unknown technology '" + name + "' in tech db");
  return *t;
}

GateOp op_from_key(const std::string& key) {
  auto g = gate_from_mnemonic(key);
  if (!g) throw ConfigError("unknown gate mnemonic '" + key + "' in tech db");
  GateOp op;
  op.kind = g->first;
  op.param = g->second;
  return op;
}

std::vector<GateOp> word_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ConfigError("expected array for " + where);
  std::vector<GateOp> word;
  for (const auto& item : arr) word.push_back(op_from_key(item.get<std::string>()));
  return word;
}

}  // namespace

TechDb TechDb::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("tech db is not valid JSON: ") + e.what());
  }

  TechDb db;
  db.source_text_ = text;
  try {
    for (const auto& [name, gates] : doc.at("exponents").items()) {
      Tech t = tech_or_throw(name);
      for (const auto& [key, v] : gates.items()) {
        int k = v.get<int>();
        if (k < 1) throw ConfigError("exponent for " + key + " must be >= 1");
        db.exponents_[static_cast<int>(t)][key] = k;
      }
    }
    for (const auto& [name, gates] : doc.at("latencies_ns").items()) {
      Tech t = tech_or_throw(name);
      for (const auto& [key, v] : gates.items()) {
        long long ns = v.get<long long>();
        if (ns < 1) throw ConfigError("latency for " + key + " must be >= 1 ns");
        db.latencies_[static_cast<int>(t)][key] = ns;
      }
    }
    for (const auto& [name, rv] : doc.at("rates").items()) {
      Tech t = tech_or_throw(name);
      RateProfile r{rv.at("w").get<double>(), rv.at("m").get<double>()};
      if (r.w < 0.0 || r.w > 1.0 || r.m < 0.0 || r.m > 1.0)
        throw ConfigError("rates for " + name + " must lie in [0,1]");
      db.rates_[static_cast<int>(t)] = r;
    }
    for (const auto& [name, arr] : doc.at("primitives").items()) {
      Tech t = tech_or_throw(name);
      for (const auto& item : arr)
        db.primitives_[static_cast<int>(t)].insert(item.get<std::string>());
    }
    for (const auto& [key, arr] : doc.at("ctl_words").items())
      db.ctl_words_[key] = word_from_json(arr, "ctl_words." + key);
    if (doc.contains("decompositions")) {
      for (const auto& [name, entries] : doc.at("decompositions").items()) {
        Tech t = tech_or_throw(name);
        for (const auto& [key, arr] : entries.items())
          db.rewrites_[static_cast<int>(t)][key] =
              word_from_json(arr, "decompositions." + name + "." + key);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("tech db structure invalid: ") + e.what());
  }
  return db;
}

TechDb TechDb::defaults() { return from_json_text(embedded::tech_defaults_json); }

TechDb TechDb::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tech db file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

int TechDb::primitive_exponent(Tech tech, const std::string& key) const {
  const auto& table = exponents_[static_cast<int>(tech)];
  auto it = table.find(key);
  if (it == table.end())
    throw MissingEntry("no gate-error exponent for (" + std::string(tech_name(tech)) +
                       ", " + key + ")");
  return it->second;
}

int TechDb::primitive_exponent(Tech tech, const GateOp& op) const {
  return primitive_exponent(tech, exponent_key(op.kind, op.param));
}

long long TechDb::gate_time(Tech tech, const std::string& key) const {
  const auto& table = latencies_[static_cast<int>(tech)];
  auto it = table.find(key);
  if (it == table.end())
    throw MissingEntry("no latency for (" + std::string(tech_name(tech)) + ", " + key +
                       ")");
  return it->second;
}

long long TechDb::gate_time(Tech tech, const GateOp& op) const {
  return gate_time(tech, latency_key(op.kind, op.param));
}

RateProfile TechDb::default_rates(Tech tech) const {
  return rates_[static_cast<int>(tech)];
}

bool TechDb::is_primitive(Tech tech, const GateOp& op) const {
  const auto& set = primitives_[static_cast<int>(tech)];
  if (set.count(exponent_key(op.kind, op.param))) return true;
  // Rotation sets are listed per axis and cover every angle.
  if (is_rotation(op.kind) && set.count(exponent_key(op.kind))) return true;
  return false;
}

std::optional<std::vector<GateOp>> TechDb::ctl_word(GateKind kind, int param) const {
  auto it = ctl_words_.find(gate_mnemonic(kind, param));
  if (it == ctl_words_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::vector<GateOp>> TechDb::tech_rewrite(Tech tech, const GateOp& op) const {
  const auto& table = rewrites_[static_cast<int>(tech)];
  auto it = table.find(gate_mnemonic(op.kind, op.param));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::vector<long long> TechDb::all_latencies(Tech tech) const {
  std::vector<long long> out;
  for (const auto& [key, ns] : latencies_[static_cast<int>(tech)]) out.push_back(ns);
  return out;
}

Circuit decompose_to_fts(const Circuit& circuit, Tech tech, const TechDb& db) {
  Circuit out;
  out.num_qubits = circuit.num_qubits;

  std::function<void(const GateOp&, int)> expand = [&](const GateOp& op, int depth) {
    if (depth > 16)
      throw NoDecomposition("decomposition of '" + gate_mnemonic(op.kind, op.param) +
                            "' does not terminate");
    // Technology-specific rewrites take precedence: they exist because the
    // native realisation of the gate is the listed sequence.
    auto rewrite = db.tech_rewrite(tech, op);
    if (!rewrite && !db.is_primitive(tech, op)) rewrite = db.ctl_word(op.kind, op.param);
    if (!rewrite) {
      if (!db.is_primitive(tech, op))
        throw NoDecomposition("no decomposition of '" + gate_mnemonic(op.kind, op.param) +
                              "' for technology " + std::string(tech_name(tech)));
      out.ops.push_back(op);
      return;
    }
    for (GateOp g : *rewrite) {
      if (arity(g.kind) > op.arity())
        throw ConfigError("decomposition of '" + gate_mnemonic(op.kind, op.param) +
                          "' uses a wider gate than the source");
      // One-qubit replacement gates inside a wider entry act on the first operand.
      g.operands.assign(op.operands.begin(), op.operands.begin() + arity(g.kind));
      g.source_line = op.source_line;
      expand(g, depth + 1);
    }
  };

  for (const GateOp& op : circuit.ops) expand(op, 0);
  return out;
}

}  // namespace qet
