#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qet/concat.hpp"

namespace qet {

enum class OutputFormat { Table, Csv, Json };

struct SweepConfig {
  Circuit circuit;
  std::vector<Tech> techs;
  std::vector<Code> codes;       // empty: linear rows only (level 0)
  int level_min = 0;
  int level_max = 0;
  std::vector<double> thresholds = {0.001, 0.01, 0.1};
  std::optional<double> w_override;
  std::optional<double> m_override;
  double p_after_ec = 0.0;
  MemoryModel::Kind memory_model = MemoryModel::Kind::Zero;
  bool slice_over_whole_pmd = false;  // quantise on the PMD's full latency table
  int max_workers = 0;                // 0: hardware concurrency
};

struct ThresholdCell {
  double theta = 0.0;
  long long used = 0;
  double save_pct = 0.0;
};

struct ReportRow {
  Tech tech = Tech::QD;
  std::optional<Code> code;
  int level = 0;
  long long orig = 0;
  std::vector<ThresholdCell> cells;
};

struct SweepResult {
  std::vector<ReportRow> rows;
  std::vector<std::string> warnings;  // skipped rows etc.
};

// 100 * (orig - used) / orig, rounded to two decimals. Throws ZeroOrig.
double savings(long long orig, long long used);

// One row per (tech, code, level), cells per threshold, sorted and stable.
SweepResult run_sweep(const TechDb& db, const FormulaSet& formulas,
                      const SweepConfig& config);

std::string render_table(const SweepResult& result);
std::string render_csv(const SweepResult& result);
std::string render_json(const SweepResult& result);

}  // namespace qet
