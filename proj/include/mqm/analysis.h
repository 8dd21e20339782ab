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
#ifndef MQM_ANALYSIS_H_
#define MQM_ANALYSIS_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mqm/corpus.h"
#include "mqm/scoring.h"
#include "mqm/stats.h"
#include "mqm/taxonomy.h"

namespace mqm {

// Rating methods that can act as gold. Scalar methods are looked up in
// Corpus::scalar_ratings() under MethodKey().
enum class GoldSource { kMqm, kWmtZ, kWmtRaw, kPsqm, kCsqm };
std::string_view MethodKey(GoldSource source);  // "mqm", "wmt-z", ...
// Accepts the method keys and the display names (MQM, WMT_Z, pSQM, ...).
GoldSource ParseGoldSource(std::string_view text);

enum class SegmentFilter { kWmtRatedOnly, kAll };

struct GoldConfig {
  GoldSource source = GoldSource::kMqm;
  Orientation orientation = Orientation::kLowerBetter;
  SegmentFilter segment_filter = SegmentFilter::kWmtRatedOnly;
  double seg_threshold = 0.0;

  // MQM is lower-better, everything else higher-better; the segment
  // threshold is 25 for raw WMT scores and 0 otherwise.
  static GoldConfig For(GoldSource source, MetricLevel level);
};

// Scores of one rating method or metric, before any orientation flip.
struct ScoreTable {
  std::string name;
  Orientation orientation = Orientation::kHigherBetter;
  std::map<std::string, double> system;
  std::map<SegmentKey, double> segment;
};

struct MethodOptions {
  const WeightScheme* scheme = nullptr;  // default scheme when null
  std::set<std::string> lower_better_metrics = {"TER"};
};

// "mqm", a scalar method name or a metric name. Scalar segment scores are
// means over raters; system scores are means over the system's rated
// segments, except for metrics whose system scores are taken as given.
// Error: MissingScores when the name is unknown.
ScoreTable MethodScores(const Corpus& corpus, const std::string& name,
                        const MethodOptions& options = {});

inline const std::set<std::string>& BaselineMetrics() {
  static const std::set<std::string> kBaseline = {"BLEU", "sentBLEU", "TER",
                                                  "chrF", "chrF++"};
  return kBaseline;
}

struct CorrelationRow {
  std::string candidate;
  bool is_metric = false;
  // System level: Pearson, Kendall tau-b. Segment level: Kendall-like,
  // tau-b over the pooled (segment, system) cells.
  std::vector<CorrelationResult> results;
};

struct SubsetAverage {
  std::string subset;  // "all", "baseline"
  int members = 0;
  std::vector<double> value;  // aligned with CorrelationReport::statistics
  std::vector<std::optional<double>> p_value;
};

struct CorrelationReport {
  MetricLevel level = MetricLevel::kSystem;
  std::string gold;
  std::vector<std::string> systems;
  std::vector<Statistic> statistics;
  int segments = 0;  // segment level: positions after filtering
  std::vector<CorrelationRow> rows;
  std::vector<SubsetAverage> averages;  // over metric rows only
};

struct CorrelationOptions {
  GoldConfig gold;
  MetricLevel level = MetricLevel::kSystem;
  // Empty: every rating method other than the gold plus every metric with
  // scores at `level`.
  std::vector<std::string> candidates;
  // Systems scored; empty means every system with gold scores, minus
  // `human_systems` unless include_human is set.
  std::vector<std::string> systems;
  std::set<std::string> human_systems;
  bool include_human = false;
  MethodOptions methods;
};

// Correlates every candidate with the gold. Lower-better sides are negated
// before correlating. Error: MissingScores naming the candidate and system.
CorrelationReport BuildCorrelationReport(const Corpus& corpus,
                                         const CorrelationOptions& options);

using PositionSet = std::set<std::pair<std::string, int>>;  // doc, index

// Same, over prepared tables. At segment level `positions` restricts the
// (doc_id, seg_index) positions; null means every position of the gold.
CorrelationReport CorrelateTables(const ScoreTable& gold, double seg_threshold,
                                  MetricLevel level,
                                  const std::vector<std::string>& systems,
                                  const std::vector<ScoreTable>& candidates,
                                  const PositionSet* positions = nullptr,
                                  const std::set<std::string>& metric_names = {});

// Positions with at least one WMT (raw or z) rating.
PositionSet WmtRatedPositions(const Corpus& corpus);

struct DocumentProfileRow {
  std::string doc_id;
  int segments = 0;
  double ht = 0.0;  // mean of the human systems' document scores
  double mt = 0.0;
  std::map<std::string, double> system;
};

struct DocumentProfile {
  std::vector<DocumentProfileRow> rows;  // corpus document order
  std::vector<std::string> human;
  std::vector<std::string> mt;
  double ht_mean = 0.0, ht_variance = 0.0;  // across documents, unbiased
  double mt_mean = 0.0, mt_variance = 0.0;
};

// Error: NoRatings when a group has no document score.
DocumentProfile BuildDocumentProfile(const Corpus& corpus,
                                     const WeightScheme& scheme,
                                     const std::set<std::string>& human,
                                     const std::set<std::string>& mt);

}  // namespace mqm

#endif  // MQM_ANALYSIS_H_
