/*
 * Copyright 2026 The mqmkit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef MQM_REPORT_H_
#define MQM_REPORT_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mqm/analysis.h"
#include "mqm/budget.h"
#include "mqm/campaign.h"
#include "mqm/corpus.h"
#include "mqm/scoring.h"

namespace mqm {

// Empty cells (monostate) print as "" in TSV and null in JSON lines.
using Cell = std::variant<std::monostate, std::string, std::int64_t, double>;

class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  // Error: InvalidArgument when the width differs from the header.
  void AddRow(std::vector<Cell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

enum class ReportFormat { kTsv, kJsonl };
ReportFormat ParseReportFormat(std::string_view text);  // "tsv", "jsonl"

struct FormatOptions {
  int decimals = 4;  // fixed-point digits for doubles
};

// Doubles use fixed notation; non-finite values print as nan, inf, -inf
// (strings in JSON lines). Output is byte-stable for equal tables.
std::string FormatNumber(double value, int decimals);
void WriteTable(const Table& table, ReportFormat format, std::ostream& out,
                const FormatOptions& options = {});

// Report tables with fixed column names.
Table ScoreTableOf(const ScoreReport& report);
Table BreakdownTableOf(const CategoryBreakdown& breakdown);
Table RankTableOf(const RankTable& ranks);
Table RaterTableOf(const RaterReport& report);
Table SweepTableOf(const SweepReport& report);
// Long format: one row per (weight, system).
Table SweepPlotData(const SweepReport& report);
Table CorrelationTableOf(const CorrelationReport& report);
Table DocumentProfileTableOf(const DocumentProfile& profile);
Table TauSummaryOf(const TauDistribution& dist);
Table TauSamplesOf(const TauDistribution& dist);  // one tau per row
Table MinBudgetTableOf(const MinBudgetResult& result);
Table ViolationTableOf(const ValidationReport& report);
Table AssignmentTableOf(const AssignmentPlan& plan);
Table ProgressTableOf(const std::vector<RaterProgress>& progress);

}  // namespace mqm

#endif  // MQM_REPORT_H_
