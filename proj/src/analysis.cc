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
#include "mqm/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mqm/error.h"
#include "mqm/text.h"

namespace mqm {

std::string_view MethodKey(GoldSource source) {
  switch (source) {
    case GoldSource::kMqm: return "mqm";
    case GoldSource::kWmtZ: return "wmt-z";
    case GoldSource::kWmtRaw: return "wmt-raw";
    case GoldSource::kPsqm: return "psqm";
    case GoldSource::kCsqm: return "csqm";
  }
  return "?";
}

GoldSource ParseGoldSource(std::string_view text) {
  std::string t = text::AsciiLower(text::Trim(text));
  std::replace(t.begin(), t.end(), '_', '-');
  if (t == "mqm") return GoldSource::kMqm;
  if (t == "wmt-z" || t == "wmt" || t == "z") return GoldSource::kWmtZ;
  if (t == "wmt-raw" || t == "raw") return GoldSource::kWmtRaw;
  if (t == "psqm") return GoldSource::kPsqm;
  if (t == "csqm") return GoldSource::kCsqm;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown gold source: " + std::string(text));
}

GoldConfig GoldConfig::For(GoldSource source, MetricLevel level) {
  GoldConfig g;
  g.source = source;
  g.orientation = source == GoldSource::kMqm ? Orientation::kLowerBetter
                                             : Orientation::kHigherBetter;
  g.seg_threshold =
      source == GoldSource::kWmtRaw && level == MetricLevel::kSegment ? 25.0
                                                                      : 0.0;
  return g;
}

namespace {

void SystemMeansFromSegments(ScoreTable* table) {
  std::map<std::string, std::pair<double, int>> acc;
  for (const auto& [key, s] : table->segment) {
    auto& [sum, n] = acc[key.system];
    sum += s;
    ++n;
  }
  for (const auto& [sys, v] : acc) table->system[sys] = v.first / v.second;
}

const std::vector<ScalarRating>* FindScalar(const Corpus& corpus,
                                            const std::string& name) {
  const auto& all = corpus.scalar_ratings();
  if (auto it = all.find(name); it != all.end()) return &it->second;
  const std::string lower = text::AsciiLower(name);
  for (const auto& [method, ratings] : all) {
    if (text::AsciiLower(method) == lower) return &ratings;
  }
  return nullptr;
}

}  // namespace

ScoreTable MethodScores(const Corpus& corpus, const std::string& name,
                        const MethodOptions& options) {
  ScoreTable table;
  table.name = name;
  if (text::AsciiLower(name) == "mqm") {
    if (corpus.mqm_ratings().empty()) {
      throw Error(ErrorCode::kMissingScores, "no MQM ratings in the corpus");
    }
    const WeightScheme& scheme =
        options.scheme ? *options.scheme : WeightScheme::Default();
    table.orientation = Orientation::kLowerBetter;
    table.segment = ComputeSegmentScores(corpus, scheme).score;
    SystemMeansFromSegments(&table);
    return table;
  }
  if (const auto* ratings = FindScalar(corpus, name)) {
    std::map<SegmentKey, std::pair<double, int>> acc;
    for (const auto& r : *ratings) {
      if (r.key.seg_index < 0) continue;
      auto& [sum, n] = acc[r.key];
      sum += r.value;
      ++n;
    }
    for (const auto& [key, v] : acc) table.segment[key] = v.first / v.second;
    table.orientation = Orientation::kHigherBetter;
    SystemMeansFromSegments(&table);
    return table;
  }
  const auto& metrics = corpus.metric_scores();
  const auto names = metrics.Metrics();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw Error(ErrorCode::kMissingScores,
                "no rating method or metric named " + name);
  }
  table.orientation = options.lower_better_metrics.count(name)
                          ? Orientation::kLowerBetter
                          : Orientation::kHigherBetter;
  for (const auto& [key, v] : metrics.system_scores()) {
    if (key.first == name) table.system[key.second] = v;
  }
  for (const auto& [key, v] : metrics.segment_scores()) {
    const auto& [metric, system, doc, raw] = key;
    if (metric != name) continue;
    // Rows that do not resolve against the corpus are dropped here.
    if (auto idx = corpus.ResolveSegIndex(doc, raw)) {
      table.segment[SegmentKey{system, doc, *idx}] = v;
    }
  }
  return table;
}

PositionSet WmtRatedPositions(const Corpus& corpus) {
  PositionSet out;
  for (const auto& [method, ratings] : corpus.scalar_ratings()) {
    const std::string m = text::AsciiLower(method);
    if (m != "wmt-raw" && m != "wmt-z") continue;
    for (const auto& r : ratings) {
      if (r.key.seg_index >= 0) out.insert({r.key.doc_id, r.key.seg_index});
    }
  }
  return out;
}

namespace {

double Oriented(const ScoreTable& t, double v) {
  return t.orientation == Orientation::kLowerBetter ? -v : v;
}

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

CorrelationRow SystemRow(const ScoreTable& gold,
                         const std::vector<std::string>& systems,
                         const ScoreTable& cand) {
  std::vector<double> g, c;
  for (const auto& sys : systems) {
    auto gi = gold.system.find(sys);
    if (gi == gold.system.end()) {
      throw Error(ErrorCode::kMissingScores,
                  "gold " + gold.name + " has no score for " + sys);
    }
    auto ci = cand.system.find(sys);
    if (ci == cand.system.end()) {
      throw Error(ErrorCode::kMissingScores,
                  "candidate " + cand.name + " has no score for " + sys);
    }
    g.push_back(Oriented(gold, gi->second));
    c.push_back(Oriented(cand, ci->second));
  }
  CorrelationRow row;
  row.candidate = cand.name;
  row.results.push_back(Pearson(g, c));
  row.results.push_back(KendallTau(g, c));
  return row;
}

CorrelationRow SegmentRow(const ScoreTable& gold, double threshold,
                          const std::vector<std::string>& systems,
                          const std::vector<std::pair<std::string, int>>& pos,
                          const ScoreTable& cand) {
  std::vector<std::vector<double>> g(pos.size()), c(pos.size());
  std::vector<double> flat_g, flat_c;
  for (std::size_t p = 0; p < pos.size(); ++p) {
    for (const auto& sys : systems) {
      const SegmentKey key{sys, pos[p].first, pos[p].second};
      auto gi = gold.segment.find(key);
      auto ci = cand.segment.find(key);
      const double gv = gi == gold.segment.end() ? kMissing
                                                 : Oriented(gold, gi->second);
      const double cv = ci == cand.segment.end() ? kMissing
                                                 : Oriented(cand, ci->second);
      g[p].push_back(gv);
      c[p].push_back(cv);
      if (!std::isnan(gv) && !std::isnan(cv)) {
        flat_g.push_back(gv);
        flat_c.push_back(cv);
      }
    }
  }
  if (flat_g.empty()) {
    throw Error(ErrorCode::kMissingScores,
                "candidate " + cand.name + " has no segment scores on the grid");
  }
  CorrelationRow row;
  row.candidate = cand.name;
  // Both sides are already oriented higher-better.
  row.results.push_back(KendallLike(g, c, threshold, Orientation::kHigherBetter));
  row.results.push_back(KendallTau(flat_g, flat_c));
  return row;
}

}  // namespace

CorrelationReport CorrelateTables(const ScoreTable& gold, double seg_threshold,
                                  MetricLevel level,
                                  const std::vector<std::string>& systems,
                                  const std::vector<ScoreTable>& candidates,
                                  const PositionSet* positions,
                                  const std::set<std::string>& metric_names) {
  CorrelationReport report;
  report.level = level;
  report.gold = gold.name;
  report.systems = systems;
  std::vector<std::pair<std::string, int>> pos;
  if (level == MetricLevel::kSystem) {
    report.statistics = {Statistic::kPearson, Statistic::kKendallTauB};
  } else {
    report.statistics = {Statistic::kKendallLike, Statistic::kKendallTauB};
    PositionSet all;
    for (const auto& [key, v] : gold.segment) {
      if (std::find(systems.begin(), systems.end(), key.system) ==
          systems.end()) {
        continue;
      }
      const std::pair<std::string, int> p{key.doc_id, key.seg_index};
      if (!positions || positions->count(p)) all.insert(p);
    }
    pos.assign(all.begin(), all.end());
    report.segments = static_cast<int>(pos.size());
  }
  for (const auto& cand : candidates) {
    auto row = level == MetricLevel::kSystem
                   ? SystemRow(gold, systems, cand)
                   : SegmentRow(gold, seg_threshold, systems, pos, cand);
    row.is_metric = metric_names.count(cand.name) > 0;
    report.rows.push_back(std::move(row));
  }

  auto average = [&](const std::string& label, auto member) {
    SubsetAverage avg;
    avg.subset = label;
    const std::size_t k = report.statistics.size();
    avg.value.assign(k, 0.0);
    std::vector<double> p_sum(k, 0.0);
    std::vector<bool> p_ok(k, true);
    for (const auto& row : report.rows) {
      if (!row.is_metric || !member(row.candidate)) continue;
      ++avg.members;
      for (std::size_t s = 0; s < k; ++s) {
        avg.value[s] += row.results[s].value;
        if (row.results[s].p_value) {
          p_sum[s] += *row.results[s].p_value;
        } else {
          p_ok[s] = false;
        }
      }
    }
    if (avg.members == 0) return;
    for (std::size_t s = 0; s < k; ++s) {
      avg.value[s] /= avg.members;
      avg.p_value.push_back(p_ok[s] ? std::optional(p_sum[s] / avg.members)
                                    : std::nullopt);
    }
    report.averages.push_back(std::move(avg));
  };
  average("all", [](const std::string&) { return true; });
  average("baseline",
          [](const std::string& n) { return BaselineMetrics().count(n) > 0; });
  return report;
}

CorrelationReport BuildCorrelationReport(const Corpus& corpus,
                                         const CorrelationOptions& options) {
  ScoreTable gold =
      MethodScores(corpus, std::string(MethodKey(options.gold.source)),
                   options.methods);
  gold.orientation = options.gold.orientation;

  std::vector<std::string> systems = options.systems;
  if (systems.empty()) {
    for (const auto& sys : corpus.systems()) {
      if (!gold.system.count(sys)) continue;
      if (!options.include_human && options.human_systems.count(sys)) continue;
      systems.push_back(sys);
    }
    // Human outputs are scored only on request, but then from the same gold.
    if (options.include_human) {
      for (const auto& h : options.human_systems) {
        if (std::find(systems.begin(), systems.end(), h) == systems.end()) {
          systems.push_back(h);
        }
      }
    }
  }

  std::vector<std::string> names = options.candidates;
  const auto metric_list = corpus.metric_scores().Metrics();
  const std::set<std::string> metric_names(metric_list.begin(),
                                           metric_list.end());
  if (names.empty()) {
    if (!corpus.mqm_ratings().empty()) names.push_back("mqm");
    for (const auto& [method, r] : corpus.scalar_ratings()) {
      names.push_back(method);
    }
    names.erase(std::remove_if(names.begin(), names.end(),
                               [&](const std::string& n) {
                                 return text::AsciiLower(n) ==
                                        MethodKey(options.gold.source);
                               }),
                names.end());
    // Only metrics that have scores at the requested level.
    std::set<std::string> at_level;
    if (options.level == MetricLevel::kSystem) {
      for (const auto& [k, v] : corpus.metric_scores().system_scores()) {
        at_level.insert(k.first);
      }
    } else {
      for (const auto& [k, v] : corpus.metric_scores().segment_scores()) {
        at_level.insert(std::get<0>(k));
      }
    }
    for (const auto& m : metric_list) {
      if (at_level.count(m)) names.push_back(m);
    }
  }
  std::vector<ScoreTable> candidates;
  for (const auto& n : names) {
    candidates.push_back(MethodScores(corpus, n, options.methods));
  }

  PositionSet wmt;
  const PositionSet* positions = nullptr;
  if (options.level == MetricLevel::kSegment &&
      options.gold.segment_filter == SegmentFilter::kWmtRatedOnly) {
    wmt = WmtRatedPositions(corpus);
    positions = &wmt;
  }
  auto report =
      CorrelateTables(gold, options.gold.seg_threshold, options.level, systems,
                      candidates, positions, metric_names);
  report.gold = std::string(MethodKey(options.gold.source));
  return report;
}

DocumentProfile BuildDocumentProfile(const Corpus& corpus,
                                     const WeightScheme& scheme,
                                     const std::set<std::string>& human,
                                     const std::set<std::string>& mt) {
  const auto report = Aggregate(corpus, scheme, ReportLevel::kDocument);
  std::map<std::string, std::map<std::string, const ScoreEntry*>> by_doc;
  for (const auto& e : report.entries) by_doc[e.doc_id][e.system] = &e;

  DocumentProfile profile;
  for (const auto& s : corpus.systems()) {
    if (human.count(s)) profile.human.push_back(s);
    if (mt.count(s)) profile.mt.push_back(s);
  }
  std::vector<double> ht_values, mt_values;
  for (const auto& doc : corpus.doc_ids()) {
    auto it = by_doc.find(doc);
    if (it == by_doc.end()) continue;
    DocumentProfileRow row;
    row.doc_id = doc;
    row.segments = corpus.DocumentLength(doc);
    double hs = 0.0, ms = 0.0;
    int hn = 0, mn = 0;
    for (const auto& [sys, e] : it->second) {
      row.system[sys] = e->score;
      if (human.count(sys)) {
        hs += e->score;
        ++hn;
      }
      if (mt.count(sys)) {
        ms += e->score;
        ++mn;
      }
    }
    row.ht = hn ? hs / hn : kMissing;
    row.mt = mn ? ms / mn : kMissing;
    if (hn) ht_values.push_back(row.ht);
    if (mn) mt_values.push_back(row.mt);
    profile.rows.push_back(std::move(row));
  }
  if (ht_values.empty() || mt_values.empty()) {
    throw Error(ErrorCode::kNoRatings,
                "document profile needs scores for both groups");
  }
  auto summarize = [](const std::vector<double>& v, double* mean,
                      double* var) {
    double s = 0.0;
    for (double x : v) s += x;
    *mean = s / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - *mean) * (x - *mean);
    *var = v.size() > 1 ? ss / (v.size() - 1) : 0.0;
  };
  summarize(ht_values, &profile.ht_mean, &profile.ht_variance);
  summarize(mt_values, &profile.mt_mean, &profile.mt_variance);
  return profile;
}

}  // namespace mqm
