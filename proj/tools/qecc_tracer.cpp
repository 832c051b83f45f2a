#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qet/errors.hpp"
#include "qet/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;  // bad arguments, unreadable circuit, bad policy
constexpr int kExitData = 2;    // table/formula lookups and config files

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qet::Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw qet::Error("cannot write '" + path + "'");
  out << content;
}

struct Options {
  std::string circuit_path;
  std::vector<std::string> techs;
  std::vector<std::string> codes;
  std::string level = "0";
  std::vector<double> thresholds;
  double w = -1.0;
  double mem = -1.0;
  std::string mem_model = "zero";
  double p_after_ec = 0.0;
  bool symbolic = false;
  bool slice_pmd = false;
  std::string format = "table";
  std::string dump_schedule;
  std::string dump_trace;
  std::string tech_db_path;
  std::string formulas_path;
  int jobs = 0;
};

std::pair<int, int> parse_level_range(const std::string& s) {
  auto dash = s.find('-');
  try {
    if (dash == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1))};
  } catch (const std::exception&) {
    throw qet::InvalidPolicy("cannot parse level range '" + s + "'");
  }
}

int run_trace(const Options& opt) {
  qet::TechDb db = opt.tech_db_path.empty() ? qet::TechDb::defaults()
                                            : qet::TechDb::load_file(opt.tech_db_path);
  qet::FormulaSet formulas = opt.formulas_path.empty()
                                 ? qet::FormulaSet::defaults()
                                 : qet::FormulaSet::load_file(opt.formulas_path);

  qet::SweepConfig cfg;
  cfg.circuit = qet::parse_qasm(read_file(opt.circuit_path));
  for (const std::string& name : opt.techs) {
    auto t = qet::tech_from_name(name);
    if (!t) throw qet::InvalidPolicy("unknown technology '" + name + "'");
    cfg.techs.push_back(*t);
  }
  for (const std::string& name : opt.codes) {
    auto c = qet::code_from_name(name);
    if (!c) throw qet::InvalidPolicy("unknown code '" + name + "'");
    cfg.codes.push_back(*c);
  }
  std::tie(cfg.level_min, cfg.level_max) = parse_level_range(opt.level);
  if (!opt.thresholds.empty()) cfg.thresholds = opt.thresholds;
  if (opt.w >= 0.0) cfg.w_override = opt.w;
  if (opt.mem >= 0.0) cfg.m_override = opt.mem;
  cfg.p_after_ec = opt.p_after_ec;
  if (opt.mem_model == "delay")
    cfg.memory_model = qet::MemoryModel::Kind::DelayScaled;
  else if (opt.mem_model != "zero")
    throw qet::InvalidPolicy("unknown memory model '" + opt.mem_model + "'");
  cfg.slice_over_whole_pmd = opt.slice_pmd;
  cfg.max_workers = opt.jobs;

  if (opt.symbolic && cfg.level_max > 0)
    throw qet::InvalidPolicy("symbolic tracing is defined only at level 0");
  if (cfg.codes.empty() && cfg.level_max > 0)
    throw qet::InvalidPolicy("concatenation levels above 0 need a code");
  if ((!opt.dump_schedule.empty() || !opt.dump_trace.empty()) && cfg.techs.size() != 1)
    throw qet::InvalidPolicy("schedule/trace dumps need exactly one technology");
  if (!opt.dump_trace.empty() &&
      (cfg.thresholds.size() != 1 || cfg.level_min != cfg.level_max ||
       cfg.codes.size() > 1))
    throw qet::InvalidPolicy(
        "the trace dump needs a single threshold, level and at most one code");

  if (!opt.dump_schedule.empty()) {
    qet::Schedule sched =
        qet::build_schedule(db, cfg.techs[0], cfg.circuit, cfg.slice_over_whole_pmd);
    write_file(opt.dump_schedule, qet::schedule_csv(sched, cfg.circuit));
  }

  if (!opt.dump_trace.empty()) {
    qet::Tech tech = cfg.techs[0];
    qet::RateProfile rates = db.default_rates(tech);
    if (cfg.w_override) rates.w = *cfg.w_override;
    if (cfg.m_override) rates.m = *cfg.m_override;
    qet::EcPolicy policy{cfg.thresholds[0], cfg.p_after_ec};
    qet::TraceResult trace;
    if (cfg.codes.empty() || cfg.level_min == 0) {
      qet::TraceOptions topt;
      topt.symbolic = opt.symbolic;
      topt.record_steps = true;
      trace = qet::trace_linear(db, cfg.circuit, tech, rates, policy, topt);
    } else {
      qet::MemoryModel mem =
          cfg.memory_model == qet::MemoryModel::Kind::DelayScaled
              ? qet::MemoryModel::delay_scaled(rates.m, db.gate_time(tech, "swap"))
              : qet::MemoryModel::zero();
      trace = qet::trace_concat(db, formulas, cfg.circuit, tech, rates, cfg.codes[0],
                                cfg.level_min, policy, mem, /*record_steps=*/true);
    }
    write_file(opt.dump_trace, qet::trace_json(trace));
  }

  if (opt.symbolic) {
    if (cfg.techs.size() != 1)
      throw qet::InvalidPolicy("symbolic tracing needs exactly one technology");
    qet::Tech tech = cfg.techs[0];
    qet::RateProfile rates = db.default_rates(tech);
    if (cfg.w_override) rates.w = *cfg.w_override;
    if (cfg.m_override) rates.m = *cfg.m_override;
    qet::TraceOptions topt;
    topt.symbolic = true;
    topt.slice_over_whole_pmd = cfg.slice_over_whole_pmd;
    qet::TraceResult r = qet::trace_linear(db, cfg.circuit, tech, rates,
                                           qet::EcPolicy{cfg.thresholds[0],
                                                         cfg.p_after_ec},
                                           topt);
    std::cerr << "final no-error monomials at theta " << cfg.thresholds[0]
              << " (w0 per " << r.slice_ns << " ns slice):\n";
    for (size_t q = 0; q < r.final_states.size(); ++q) {
      const auto& s = r.final_states[q];
      std::cerr << "  q" << q << ": p_noerr = " << s.p_noerr;
      if (s.monomial)
        std::cerr << " = (1-w)^" << s.monomial->gate_exp << " * w0^"
                  << s.monomial->idle_exp;
      std::cerr << '\n';
    }
  }

  qet::SweepResult result = qet::run_sweep(db, formulas, cfg);
  for (const std::string& warning : result.warnings)
    std::cerr << "warning: " << warning << '\n';

  if (opt.format == "table")
    std::cout << qet::render_table(result);
  else if (opt.format == "csv")
    std::cout << qet::render_csv(result);
  else if (opt.format == "json")
    std::cout << qet::render_json(result);
  else
    throw qet::InvalidPolicy("unknown output format '" + opt.format + "'");
  return kExitOk;
}

int run_decompose(const std::string& circuit_path, const std::string& tech_name_,
                  const std::string& tech_db_path) {
  qet::TechDb db =
      tech_db_path.empty() ? qet::TechDb::defaults() : qet::TechDb::load_file(tech_db_path);
  auto tech = qet::tech_from_name(tech_name_);
  if (!tech) throw qet::InvalidPolicy("unknown technology '" + tech_name_ + "'");
  qet::Circuit circuit = qet::parse_qasm(read_file(circuit_path));
  std::cout << qet::serialize(qet::decompose_to_fts(circuit, *tech, db));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qecc-tracer: gate/decoherence error tracing and EC-block budgeting"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* trace = app.add_subcommand(
      "trace", "Trace error probability and report EC-block savings");
  trace->add_option("--circuit", opt.circuit_path, "circuit file")->required();
  trace->add_option("--tech", opt.techs, "technology: qd|na|lp|np|sc|it")
      ->required()
      ->delimiter(',');
  trace->add_option("--code", opt.codes, "code: bs|steane|knill")->delimiter(',');
  trace->add_option("--level", opt.level, "concatenation level N or range A-B");
  trace->add_option("--threshold", opt.thresholds,
                    "EC threshold(s), default 0.001 0.01 0.1");
  trace->add_option("--w", opt.w, "override worst-gate error probability");
  trace->add_option("--mem", opt.mem, "override memory error rate per ns");
  trace->add_option("--mem-model", opt.mem_model, "zero|delay (default zero)");
  trace->add_option("--p-after-ec", opt.p_after_ec,
                    "error probability carried after an EC block");
  trace->add_flag("--symbolic", opt.symbolic,
                  "track (1-w)^a * w0^b monomials; summary goes to stderr");
  trace->add_flag("--slice-pmd", opt.slice_pmd,
                  "quantise on the PMD's whole latency table, not the circuit's gates");
  trace->add_option("--format", opt.format, "table|csv|json");
  trace->add_option("--dump-schedule", opt.dump_schedule, "write schedule CSV");
  trace->add_option("--dump-trace", opt.dump_trace, "write per-step trace JSON");
  trace->add_option("--tech-db", opt.tech_db_path, "technology table JSON");
  trace->add_option("--formulas", opt.formulas_path, "logical formula JSON");
  trace->add_option("--jobs", opt.jobs, "sweep worker cap (0 = hardware)");

  std::string dec_circuit, dec_tech, dec_db;
  CLI::App* dec = app.add_subcommand(
      "decompose", "Rewrite a circuit into a technology's native gates");
  dec->add_option("--circuit", dec_circuit, "circuit file")->required();
  dec->add_option("--tech", dec_tech, "technology: qd|na|lp|np|sc|it")->required();
  dec->add_option("--tech-db", dec_db, "technology table JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (trace->parsed()) return run_trace(opt);
    if (dec->parsed()) return run_decompose(dec_circuit, dec_tech, dec_db);
  } catch (const qet::MissingEntry& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const qet::MissingFormula& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const qet::NoDecomposition& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const qet::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const qet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
