#include "qet/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>
#include <thread>

#include "json.hpp"
#include "qet/errors.hpp"

namespace qet {

double savings(long long orig, long long used) {
  if (orig <= 0) throw ZeroOrig();
  if (used < 0 || used > orig)
    throw Error("used blocks must lie in [0, orig]");
  double pct = 100.0 * static_cast<double>(orig - used) / static_cast<double>(orig);
  return std::round(pct * 100.0) / 100.0;
}

namespace {

std::string format_pct(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", pct);
  return buf;
}

std::string format_theta(double theta) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", theta);
  return buf;
}

struct CellTask {
  Tech tech;
  std::optional<Code> code;
  int level;
};

}  // namespace

SweepResult run_sweep(const TechDb& db, const FormulaSet& formulas,
                      const SweepConfig& config) {
  if (config.level_min < 0 || config.level_max < config.level_min)
    throw InvalidPolicy("level range must satisfy 0 <= min <= max");
  for (double theta : config.thresholds)
    if (!(theta > 0.0) || theta > 1.0)
      throw InvalidPolicy("thresholds must lie in (0, 1]");
  if (config.codes.empty() && config.level_max > 0)
    throw InvalidPolicy("concatenation levels above 0 need a code");

  std::vector<CellTask> tasks;
  for (Tech tech : config.techs) {
    if (config.codes.empty()) {
      for (int level = config.level_min; level <= config.level_max; ++level)
        tasks.push_back({tech, std::nullopt, level});
    } else {
      for (Code code : config.codes)
        for (int level = config.level_min; level <= config.level_max; ++level)
          tasks.push_back({tech, code, level});
    }
  }

  auto run_cell = [&](const CellTask& task) {
    RateProfile rates = db.default_rates(task.tech);
    if (config.w_override) rates.w = *config.w_override;
    if (config.m_override) rates.m = *config.m_override;

    MemoryModel mem = MemoryModel::zero();
    if (config.memory_model == MemoryModel::Kind::DelayScaled)
      mem = MemoryModel::delay_scaled(rates.m, db.gate_time(task.tech, "swap"));

    ReportRow row;
    row.tech = task.tech;
    row.code = task.code;
    row.level = task.level;
    Code code = task.code.value_or(Code::BaconShor);
    row.orig = task.code ? orig_blocks(gate_count(config.circuit), code, task.level)
                         : gate_count(config.circuit);
    for (double theta : config.thresholds) {
      EcPolicy policy{theta, config.p_after_ec};
      TraceOptions options;
      options.slice_over_whole_pmd = config.slice_over_whole_pmd;
      TraceResult trace =
          task.code && task.level > 0
              ? trace_concat(db, formulas, config.circuit, task.tech, rates, code,
                             task.level, policy, mem)
              : trace_linear(db, config.circuit, task.tech, rates, policy, options);
      row.cells.push_back({theta, trace.ec_count, savings(row.orig, trace.ec_count)});
    }
    return row;
  };

  SweepResult result;
  result.rows.resize(tasks.size());

  unsigned workers = config.max_workers > 0
                         ? static_cast<unsigned>(config.max_workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, tasks.size() == 0 ? 1 : tasks.size());

  std::vector<std::string> skipped(tasks.size());
  std::vector<std::exception_ptr> fatal(tasks.size());
  std::atomic<size_t> next{0};

  auto cell_context = [&](size_t i) {
    return "tech=" + std::string(tech_name(tasks[i].tech)) +
           (tasks[i].code ? " code=" + std::string(code_name(*tasks[i].code))
                          : std::string()) +
           " level=" + std::to_string(tasks[i].level);
  };
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      auto ctx = [&] { return "(" + cell_context(i) + ") "; };
      try {
        result.rows[i] = run_cell(tasks[i]);
      } catch (const ZeroOrig&) {
        skipped[i] = "skipped (" + cell_context(i) + "): baseline block count is zero";
      } catch (const MissingEntry& e) {
        fatal[i] = std::make_exception_ptr(MissingEntry(ctx() + e.what()));
      } catch (const MissingFormula& e) {
        fatal[i] = std::make_exception_ptr(MissingFormula(ctx() + e.what()));
      } catch (const InvalidPolicy& e) {
        fatal[i] = std::make_exception_ptr(InvalidPolicy(ctx() + e.what()));
      } catch (const Error& e) {
        fatal[i] = std::make_exception_ptr(Error(ctx() + e.what()));
      }
    }
  };

  if (workers <= 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::future<void>> futures;
    for (unsigned i = 0; i < workers; ++i)
      futures.push_back(std::async(std::launch::async, worker));
    for (auto& f : futures) f.get();
  }

  // first failure in task order wins, keeping diagnostics run-to-run stable
  for (const std::exception_ptr& e : fatal)
    if (e) std::rethrow_exception(e);

  std::vector<ReportRow> rows;
  for (size_t i = 0; i < tasks.size(); ++i) {
    if (!skipped[i].empty()) {
      result.warnings.push_back(skipped[i]);
      continue;
    }
    rows.push_back(std::move(result.rows[i]));
  }
  result.rows = std::move(rows);
  return result;
}

std::string render_table(const SweepResult& result) {
  std::string out;
  out += "tech  code    level        orig";
  if (!result.rows.empty())
    for (const ThresholdCell& c : result.rows.front().cells)
      out += "   th=" + format_theta(c.theta) + "  used    save%";
  out += '\n';
  for (const ReportRow& row : result.rows) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%-4s  %-6s  %5d  %10lld", tech_name(row.tech).data(),
                  row.code ? code_name(*row.code).data() : "-", row.level, row.orig);
    out += buf;
    for (const ThresholdCell& c : row.cells) {
      std::snprintf(buf, sizeof(buf), "  %10lld  %7s", c.used,
                    (format_pct(c.save_pct) + "%").c_str());
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string render_csv(const SweepResult& result) {
  std::string out = "tech,code,level,orig,theta,used,save_pct\n";
  for (const ReportRow& row : result.rows)
    for (const ThresholdCell& c : row.cells)
      out += std::string(tech_name(row.tech)) + ',' +
             (row.code ? std::string(code_name(*row.code)) : std::string()) + ',' +
             std::to_string(row.level) + ',' + std::to_string(row.orig) + ',' +
             format_theta(c.theta) + ',' + std::to_string(c.used) + ',' +
             format_pct(c.save_pct) + '\n';
  return out;
}

std::string render_json(const SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& row : result.rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (const ThresholdCell& c : row.cells)
      cells.push_back({{"theta", c.theta}, {"used", c.used}, {"save_pct", c.save_pct}});
    nlohmann::json jrow = {{"tech", std::string(tech_name(row.tech))},
                           {"level", row.level},
                           {"orig", row.orig},
                           {"thresholds", cells}};
    jrow["code"] = row.code ? nlohmann::json(std::string(code_name(*row.code)))
                            : nlohmann::json(nullptr);
    rows.push_back(jrow);
  }
  nlohmann::json doc = {{"rows", rows}};
  return doc.dump(2) + "\n";
}

}  // namespace qet
