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
#include "mqm/report.h"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "mqm/error.h"
#include "mqm/text.h"

namespace mqm {

void Table::AddRow(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("row of {} cells for {} columns", row.size(),
                            columns_.size()));
  }
  rows_.push_back(std::move(row));
}

ReportFormat ParseReportFormat(std::string_view text) {
  const std::string t = text::AsciiLower(text::Trim(text));
  if (t == "tsv") return ReportFormat::kTsv;
  if (t == "jsonl") return ReportFormat::kJsonl;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown format '" + std::string(text) + "' (tsv, jsonl)");
}

std::string FormatNumber(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::string s = fmt::format("{:.{}f}", value, decimals);
  if (s.size() > 1 && s[0] == '-' &&
      s.find_first_not_of("0.", 1) == std::string::npos) {
    s.erase(0, 1);  // no "-0.0000"
  }
  return s;
}

namespace {

std::string TsvCell(const Cell& c, int decimals) {
  struct Visitor {
    int decimals;
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const {
      return text::EscapeField(s);
    }
    std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
    std::string operator()(double v) const { return FormatNumber(v, decimals); }
  };
  return std::visit(Visitor{decimals}, c);
}

// Doubles are emitted with the same fixed digits as TSV, as raw JSON
// numbers, so both formats agree to the last printed digit.
std::string JsonCell(const Cell& c, int decimals) {
  struct Visitor {
    int decimals;
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(const std::string& s) const {
      return nlohmann::json(s).dump();
    }
    std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
    std::string operator()(double v) const {
      if (!std::isfinite(v)) return "\"" + FormatNumber(v, decimals) + "\"";
      return FormatNumber(v, decimals);
    }
  };
  return std::visit(Visitor{decimals}, c);
}

Cell I(std::int64_t v) { return v; }
Cell D(double v) { return v; }
Cell S(std::string v) { return v; }
Cell Opt(const std::optional<double>& v) {
  return v ? Cell(*v) : Cell(std::monostate{});
}

std::string Join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace

void WriteTable(const Table& table, ReportFormat format, std::ostream& out,
                const FormatOptions& options) {
  const auto& cols = table.columns();
  if (format == ReportFormat::kTsv) {
    out << Join(cols, "\t") << '\n';
    for (const auto& row : table.rows()) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << '\t';
        out << TsvCell(row[i], options.decimals);
      }
      out << '\n';
    }
    return;
  }
  for (const auto& row : table.rows()) {
    out << '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << nlohmann::json(cols[i]).dump() << ':'
          << JsonCell(row[i], options.decimals);
    }
    out << "}\n";
  }
}

Table ScoreTableOf(const ScoreReport& r) {
  Table t;
  switch (r.level) {
    case ReportLevel::kSystem:
      t = Table({"system", "score", "segments"});
      for (const auto& e : r.entries) {
        t.AddRow({S(e.system), D(e.score), I(e.n_items)});
      }
      break;
    case ReportLevel::kDocument:
      t = Table({"system", "doc_id", "score", "segments"});
      for (const auto& e : r.entries) {
        t.AddRow({S(e.system), S(e.doc_id), D(e.score), I(e.n_items)});
      }
      break;
    case ReportLevel::kSegment:
      t = Table({"system", "doc_id", "seg_index", "score", "raters"});
      for (const auto& e : r.entries) {
        t.AddRow({S(e.system), S(e.doc_id), I(e.seg_index), D(e.score),
                  I(e.n_items)});
      }
      break;
    case ReportLevel::kRating:
      t = Table({"system", "doc_id", "seg_index", "rater", "score"});
      for (const auto& e : r.entries) {
        t.AddRow({S(e.system), S(e.doc_id), I(e.seg_index), S(e.rater),
                  D(e.score)});
      }
      break;
  }
  return t;
}

Table BreakdownTableOf(const CategoryBreakdown& b) {
  std::vector<std::string> cols = {"category", "group", "errors", "error_pct",
                                   "major_pct"};
  for (const auto& c : b.columns) cols.push_back("mqm:" + c);
  for (std::size_t i = 1; i < b.columns.size(); ++i) {
    cols.push_back("ratio:" + b.columns[i]);
  }
  Table t(cols);
  auto add = [&](const BreakdownRow& row) {
    std::vector<Cell> cells = {S(row.label), I(row.is_group ? 1 : 0),
                               I(row.errors), D(row.error_pct),
                               D(row.major_pct)};
    for (double v : row.mqm) cells.push_back(D(v));
    for (std::size_t i = 1; i < row.ratio.size(); ++i) {
      cells.push_back(D(row.ratio[i]));
    }
    t.AddRow(std::move(cells));
  };
  for (const auto& row : b.categories) add(row);
  for (const auto& row : b.groups) add(row);
  return t;
}

Table RankTableOf(const RankTable& ranks) {
  Table t({"rank", "system", "score"});
  for (const auto& e : ranks.entries) {
    t.AddRow({I(e.rank), S(e.system), D(e.score)});
  }
  return t;
}

Table RaterTableOf(const RaterReport& r) {
  std::vector<std::string> cols = {"rater", "ratings"};
  for (const auto& g : r.groups) {
    cols.push_back("mqm:" + g);
    cols.push_back("ratio:" + g);
  }
  Table t(cols);
  for (std::size_t i = 0; i < r.raters.size(); ++i) {
    std::vector<Cell> cells = {S(r.raters[i]), I(r.ratings[i])};
    for (std::size_t gi = 0; gi < r.groups.size(); ++gi) {
      cells.push_back(D(r.cells[gi][i].mqm));
      cells.push_back(D(r.cells[gi][i].ratio));
    }
    t.AddRow(std::move(cells));
  }
  return t;
}

Table SweepTableOf(const SweepReport& r) {
  Table t({"major_weight", "stability", "discrimination", "selected",
           "ranking"});
  for (const auto& row : r.rows) {
    t.AddRow({D(row.major_weight), D(row.stability), I(row.discrimination),
              I(row.selected ? 1 : 0), S(Join(row.ranking, ","))});
  }
  return t;
}

Table SweepPlotData(const SweepReport& r) {
  Table t({"major_weight", "system", "rank", "score"});
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.ranking.size(); ++i) {
      t.AddRow({D(row.major_weight), S(row.ranking[i]),
                I(static_cast<std::int64_t>(i + 1)), D(row.scores[i])});
    }
  }
  return t;
}

Table CorrelationTableOf(const CorrelationReport& r) {
  std::vector<std::string> cols = {"candidate", "kind"};
  for (Statistic s : r.statistics) {
    const std::string name(StatisticName(s));
    cols.push_back(name);
    cols.push_back(name + ":p");
    cols.push_back(name + ":n");
  }
  Table t(cols);
  for (const auto& row : r.rows) {
    std::vector<Cell> cells = {S(row.candidate),
                               S(row.is_metric ? "metric" : "rating")};
    for (const auto& res : row.results) {
      cells.push_back(D(res.value));
      cells.push_back(Opt(res.p_value));
      cells.push_back(I(res.n));
    }
    t.AddRow(std::move(cells));
  }
  for (const auto& avg : r.averages) {
    std::vector<Cell> cells = {S("avg:" + avg.subset), S("average")};
    for (std::size_t i = 0; i < avg.value.size(); ++i) {
      cells.push_back(D(avg.value[i]));
      cells.push_back(Opt(avg.p_value[i]));
      cells.push_back(I(avg.members));
    }
    t.AddRow(std::move(cells));
  }
  return t;
}

Table DocumentProfileTableOf(const DocumentProfile& p) {
  std::vector<std::string> cols = {"doc_id", "segments", "ht", "mt"};
  std::vector<std::string> systems = p.human;
  systems.insert(systems.end(), p.mt.begin(), p.mt.end());
  for (const auto& s : systems) cols.push_back(s);
  Table t(cols);
  for (const auto& row : p.rows) {
    std::vector<Cell> cells = {S(row.doc_id), I(row.segments), D(row.ht),
                               D(row.mt)};
    for (const auto& s : systems) {
      auto it = row.system.find(s);
      cells.push_back(it == row.system.end() ? Cell() : D(it->second));
    }
    t.AddRow(std::move(cells));
  }
  return t;
}

Table TauSummaryOf(const TauDistribution& d) {
  Table t({"ratings_per_system", "raters_per_item", "consecutive_per_doc",
           "iterations", "mean", "variance", "q05", "q25", "median", "q75",
           "q95"});
  t.AddRow({I(d.config.ratings_per_system), I(d.config.raters_per_item),
            I(d.config.consecutive_per_doc), I(d.config.iterations), D(d.mean),
            D(d.variance), D(d.q05), D(d.q25), D(d.median), D(d.q75),
            D(d.q95)});
  return t;
}

Table TauSamplesOf(const TauDistribution& d) {
  Table t({"iteration", "tau"});
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    t.AddRow({I(static_cast<std::int64_t>(i)), D(d.samples[i])});
  }
  return t;
}

Table MinBudgetTableOf(const MinBudgetResult& r) {
  Table t({"probe", "ratings", "mean_tau", "selected"});
  for (std::size_t i = 0; i < r.probes.size(); ++i) {
    const auto& p = r.probes[i];
    t.AddRow({I(static_cast<std::int64_t>(i)), I(p.ratings), D(p.mean_tau),
              I(p.ratings == r.ratings ? 1 : 0)});
  }
  return t;
}

Table ViolationTableOf(const ValidationReport& report) {
  Table t({"rule", "location", "message"});
  for (const auto& v : report.violations) {
    t.AddRow({S(std::string(ViolationKindName(v.kind))), S(v.location),
              S(v.message)});
  }
  return t;
}

Table AssignmentTableOf(const AssignmentPlan& plan) {
  Table t({"rater", "position", "doc_id", "alias", "system"});
  for (const auto& [rater, items] : plan.queue) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      t.AddRow({S(rater), I(static_cast<std::int64_t>(i)), S(items[i].doc_id),
                S(items[i].alias), S(items[i].system)});
    }
  }
  return t;
}

Table ProgressTableOf(const std::vector<RaterProgress>& progress) {
  Table t({"rater", "assigned", "done"});
  for (const auto& p : progress) {
    t.AddRow({S(p.rater_id), I(p.assigned), I(p.done)});
  }
  return t;
}

}  // namespace mqm
