#include "qet/concat.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qet/embedded_configs.hpp"
#include "qet/errors.hpp"

namespace qet {

namespace {

using nlohmann::json;

int code_slot(Code c) { return static_cast<int>(c); }

Code code_or_throw(const std::string& name) {
  auto c = code_from_name(name);
  if (!c) throw ConfigError("unknown code '" + name + "' in formula config");
  return *c;
}

// GEO circuit keys are per angle (geo2..geo6); the logical table carries one
// row for the whole family.
std::string formula_lookup_key(const std::string& gate_key) {
  if (gate_key.size() == 4 && gate_key.compare(0, 3, "geo") == 0) return "geo";
  return gate_key;
}

}  // namespace

FormulaSet FormulaSet::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("formula config is not valid JSON: ") + e.what());
  }

  FormulaSet fs;
  try {
    for (const auto& [name, v] : doc.at("block_factors").items())
      fs.block_factors_[code_slot(code_or_throw(name))] = v.get<long long>();
    for (const auto& [name, gates] : doc.at("formulas").items()) {
      Code code = code_or_throw(name);
      for (const auto& [key, fv] : gates.items()) {
        GateFormula f;
        if (fv.contains("alias")) {
          f.alias = fv.at("alias").get<std::string>();
        } else {
          f.same_level = fv.value("same_level", false);
          f.has_memory = fv.value("memory", false);
          for (const auto& tv : fv.at("terms")) {
            FormulaTerm term;
            term.slot = tv.at("slot").get<std::string>();
            term.count = tv.at("count").get<int>();
            term.survivable = tv.value("survivable", 0);
            if (term.count < 1 || term.survivable < 0 || term.survivable > term.count)
              throw ConfigError("formula term for " + key + " has invalid counts");
            f.terms.push_back(term);
          }
        }
        fs.formulas_[code_slot(code)][key] = std::move(f);
      }
    }
    if (doc.contains("memory_coeffs")) {
      for (const auto& [name, gates] : doc.at("memory_coeffs").items()) {
        Code code = code_or_throw(name);
        for (const auto& [key, v] : gates.items())
          fs.memory_coeffs_[code_slot(code)][key] = v.get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("formula config structure invalid: ") + e.what());
  }
  return fs;
}

FormulaSet FormulaSet::defaults() {
  return from_json_text(embedded::concat_formulas_json);
}

FormulaSet FormulaSet::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open formula config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

const GateFormula& FormulaSet::formula(Code code, const std::string& gate_key) const {
  const auto& table = formulas_[code_slot(code)];
  auto it = table.find(formula_lookup_key(gate_key));
  if (it == table.end())
    throw MissingFormula("no logical-level formula for (" +
                         std::string(code_name(code)) + ", " + gate_key + ")");
  if (it->second.alias) {
    auto target = table.find(*it->second.alias);
    if (target == table.end())
      throw ConfigError("formula alias '" + gate_key + "' -> '" + *it->second.alias +
                        "' is dangling");
    return target->second;
  }
  return it->second;
}

bool FormulaSet::has_formula(Code code, const std::string& gate_key) const {
  return formulas_[code_slot(code)].count(formula_lookup_key(gate_key)) > 0;
}

long long FormulaSet::block_factor(Code code) const {
  return block_factors_[code_slot(code)];
}

double FormulaSet::memory_coeff(Code code, const std::string& gate_key) const {
  const auto& table = memory_coeffs_[code_slot(code)];
  auto it = table.find(formula_lookup_key(gate_key));
  return it == table.end() ? 0.0 : it->second;
}

std::vector<std::string> FormulaSet::covered_gates(Code code) const {
  std::vector<std::string> keys;
  for (const auto& [key, f] : formulas_[code_slot(code)]) keys.push_back(key);
  return keys;
}

double MemoryModel::logical_memory(const FormulaSet& formulas, Code code,
                                   const std::string& gate_key, int level) const {
  if (kind == Kind::Zero || level < 1) return 0.0;
  double coeff = formulas.memory_coeff(code, gate_key);
  if (coeff == 0.0 || m == 0.0) return 0.0;
  double idle_ns = coeff * static_cast<double>(t_swap_ns) *
                   std::pow(static_cast<double>(formulas.block_factor(code)), level - 1);
  return 1.0 - std::pow(1.0 - m, idle_ns);
}

ResolvedFormula resolve_formula(const FormulaSet& formulas, Code code,
                                const std::string& gate_key, const ConcatTable& prev,
                                const MemoryModel& mem) {
  const GateFormula& f = formulas.formula(code, gate_key);
  const int level = prev.level + 1;

  ResolvedFormula out;
  for (const FormulaTerm& term : f.terms) {
    double p;
    if (f.same_level) {
      p = logical_gate_error(formulas, code, term.slot, prev, mem);
    } else {
      auto it = prev.g.find(term.slot);
      if (it == prev.g.end())
        throw MissingFormula("formula for (" + std::string(code_name(code)) + ", " +
                             gate_key + ") needs level-" + std::to_string(prev.level) +
                             " value of '" + term.slot + "'");
      p = it->second;
    }
    out.groups.push_back({p, term.count, term.survivable});
  }
  if (f.has_memory)
    out.memory = mem.logical_memory(formulas, code, gate_key, level);
  return out;
}

double closed_form(const ResolvedFormula& f) {
  // P0: no constituent fails. S1: exactly one fails and the block survives.
  double p0 = 1.0;
  for (const auto& g : f.groups) p0 *= std::pow(1.0 - g.p, g.count);
  double s1 = 0.0;
  for (size_t i = 0; i < f.groups.size(); ++i) {
    const auto& g = f.groups[i];
    if (g.survivable == 0 || g.p == 0.0) continue;
    double term = g.survivable * g.p * std::pow(1.0 - g.p, g.count - 1);
    for (size_t j = 0; j < f.groups.size(); ++j)
      if (j != i) term *= std::pow(1.0 - f.groups[j].p, f.groups[j].count);
    s1 += term;
  }
  if (!f.memory) return 1.0 - p0 - s1;
  double M = *f.memory;
  return 1.0 - (p0 + s1) * (1.0 - M) - M * p0;
}

double logical_gate_error(const FormulaSet& formulas, Code code,
                          const std::string& gate_key, const ConcatTable& prev,
                          const MemoryModel& mem) {
  return closed_form(resolve_formula(formulas, code, gate_key, prev, mem));
}

ConcatTable base_table(const TechDb& db, Tech tech, const RateProfile& rates,
                       Code code) {
  ConcatTable table;
  table.code = code;
  table.level = 0;
  for (GateKind kind :
       {GateKind::Rx, GateKind::Ry, GateKind::Rz, GateKind::X, GateKind::Y,
        GateKind::Z, GateKind::H, GateKind::S, GateKind::Sdag, GateKind::T,
        GateKind::Tdag, GateKind::Cnot, GateKind::Cz, GateKind::Swap, GateKind::Zeno,
        GateKind::Geo, GateKind::Mx, GateKind::Mz}) {
    if (kind == GateKind::Geo) {
      for (int a = 2; a <= 6; ++a) {
        std::string key = exponent_key(kind, a);
        table.g[key] = 1.0 - std::pow(1.0 - rates.w, db.primitive_exponent(tech, key));
      }
      continue;
    }
    std::string key = exponent_key(kind);
    table.g[key] = 1.0 - std::pow(1.0 - rates.w, db.primitive_exponent(tech, key));
  }
  return table;
}

ConcatTable concat_table(const FormulaSet& formulas, Code code, const ConcatTable& base,
                         int level, const MemoryModel& mem) {
  if (base.level != 0) throw ConfigError("concat_table expects a level-0 base table");
  if (level < 0) throw ConfigError("concatenation level must be >= 0");

  ConcatTable current = base;
  current.code = code;
  for (int n = 1; n <= level; ++n) {
    ConcatTable next;
    next.code = code;
    next.level = n;
    for (const std::string& key : formulas.covered_gates(code)) {
      next.g[key] = logical_gate_error(formulas, code, key, current, mem);
      const GateFormula& f = formulas.formula(code, key);
      if (f.has_memory) next.M[key] = mem.logical_memory(formulas, code, key, n);
    }
    // GEO circuit keys share the family row.
    double geo = next.g.at("geo");
    for (int a = 2; a <= 6; ++a) next.g["geo" + std::to_string(a)] = geo;
    current = std::move(next);
  }
  return current;
}

long long block_factor(Code code) {
  switch (code) {
    case Code::BaconShor: return 9;
    case Code::Steane: return 7;
    case Code::Knill: return 4;
  }
  return 1;
}

long long orig_blocks(long long count0, Code code, int level) {
  if (count0 < 0 || level < 0)
    throw ConfigError("orig_blocks expects a non-negative count and level");
  long long out = count0;
  for (int i = 0; i < level; ++i) out *= block_factor(code);
  return out;
}

TraceResult trace_concat(const TechDb& db, const FormulaSet& formulas,
                         const Circuit& circuit, Tech tech, const RateProfile& rates,
                         Code code, int level, const EcPolicy& policy,
                         const MemoryModel& mem, bool record_steps) {
  if (level == 0) {
    TraceOptions options;
    options.record_steps = record_steps;
    TraceResult result = trace_linear(db, circuit, tech, rates, policy, options);
    result.orig_count = orig_blocks(gate_count(circuit), code, 0);
    return result;
  }

  ConcatTable table =
      concat_table(formulas, code, base_table(db, tech, rates, code), level, mem);

  Schedule schedule = build_schedule(db, tech, circuit);
  double w0 = memory_noerr_factor(rates.m, schedule.slice_ns);
  auto factor = [&](const GateOp& op) {
    std::string key = exponent_key(op.kind, op.param);
    auto it = table.g.find(key);
    if (it == table.g.end())
      throw MissingFormula("gate '" + key + "' has no logical-level error at level " +
                           std::to_string(level) + "; re-express the circuit in the " +
                           "tabled gate set");
    return 1.0 - it->second;
  };

  return trace_walk(circuit, schedule, w0, policy, factor, nullptr,
                    orig_blocks(gate_count(circuit), code, level), record_steps);
}

}  // namespace qet
