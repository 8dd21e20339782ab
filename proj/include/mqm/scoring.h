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
#ifndef MQM_SCORING_H_
#define MQM_SCORING_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mqm/corpus.h"
#include "mqm/taxonomy.h"

namespace mqm {

enum class Orientation { kLowerBetter, kHigherBetter };
std::string_view OrientationName(Orientation o);

// Selects the annotations allowed to contribute weight. An empty filter
// accepts everything; `include` patterns are OR-ed, `exclude` patterns veto.
struct AnnotationFilter {
  std::optional<Severity> severity;
  std::vector<CategoryPattern> include;
  std::vector<CategoryPattern> exclude;

  static AnnotationFilter All() { return {}; }
  static AnnotationFilter BySeverity(Severity s);
  static AnnotationFilter ByPattern(CategoryPattern p);
  static AnnotationFilter ByTop(TopCategory top);
  // Everything outside Accuracy and Fluency, Non-translation included.
  static AnnotationFilter OtherThanAccuracyFluency();

  bool Accepts(const ErrorAnnotation& a) const;
  std::string Describe() const;
};

// Sum of weights over the accepted annotations of one rating.
double ScoreRating(const SegmentRating& rating, const WeightScheme& scheme,
                   const AnnotationFilter& filter = {});

// Mean of ScoreRating over the raters of one segment. Error(kNoRatings) when
// `ratings` is empty.
double ScoreSegment(const std::vector<SegmentRating>& ratings,
                    const WeightScheme& scheme,
                    const AnnotationFilter& filter = {});

// Segment scores of every rated segment: mean over raters.
struct SegmentScores {
  std::map<SegmentKey, double> score;
  std::map<SegmentKey, int> raters;
};
SegmentScores ComputeSegmentScores(const Corpus& corpus,
                                   const WeightScheme& scheme,
                                   const AnnotationFilter& filter = {});

enum class ReportLevel { kRating, kSegment, kDocument, kSystem };
std::string_view ReportLevelName(ReportLevel level);

struct ScoreEntry {
  std::string system;
  std::string doc_id;  // empty at system level
  int seg_index = -1;  // segment and rating levels only
  std::string rater;   // rating level only
  double score = 0.0;
  int n_items = 0;     // segments (system/document) or raters (segment)
};

struct ScoreReport {
  ReportLevel level = ReportLevel::kSystem;
  std::vector<ScoreEntry> entries;
  std::string scheme_name;
  std::string filter;

  // System-level lookup; nullptr when absent.
  const ScoreEntry* FindSystem(const std::string& system) const;
  const ScoreEntry* FindDocument(const std::string& system,
                                 const std::string& doc_id) const;
  std::map<std::string, double> SystemScores() const;
};

// Document score: unweighted mean of its segment scores. System score:
// unweighted mean over all of the system's segment scores (not a mean of
// document means). Unrated segments are skipped, never imputed.
// Error(kNoRatings) when the corpus has no MQM ratings.
ScoreReport Aggregate(const Corpus& corpus, const WeightScheme& scheme,
                      ReportLevel level, const AnnotationFilter& filter = {});

struct BreakdownGroups {
  std::set<std::string> human;
  // Defaults to every rated system outside `human`.
  std::set<std::string> mt;
  // Reported individually after the Human and All-MT groups.
  std::vector<std::string> focus;
};

struct BreakdownRow {
  std::string label;
  bool is_group = false;
  int errors = 0;             // annotation count over human + MT systems
  double error_pct = 0.0;     // share of all counted errors
  double major_pct = 0.0;     // share of Major within the row
  std::vector<double> mqm;    // per column group, mean weighted contribution
  std::vector<double> ratio;  // mqm over the human column
};

struct CategoryBreakdown {
  std::vector<std::string> columns;  // "Human", "All MT", focus systems...
  std::vector<BreakdownRow> categories;
  // All accuracy, All fluency, All except accuracy & fluency, All categories.
  std::vector<BreakdownRow> groups;
  std::string scheme_name;
};

// Per-category share of error counts, share of Major errors and per-segment
// mean weighted contribution per column group, with ratios over the human
// group. Source errors are not listed as a category row.
// Errors: EmptyGroup; InvalidArgument when human and focus/MT overlap.
CategoryBreakdown BreakdownByCategory(const Corpus& corpus,
                                      const WeightScheme& scheme,
                                      const BreakdownGroups& groups);

struct RankEntry {
  std::string system;
  double score = 0.0;
  int rank = 0;
};

struct RankTable {
  Orientation orientation = Orientation::kLowerBetter;
  std::vector<RankEntry> entries;  // best first
};

// Competition ranking ("1224"): tied scores share the smallest rank and the
// next rank skips the tie block. With `tie_decimals`, scores are compared
// after rounding to that many decimals.
RankTable RankSystems(const std::map<std::string, double>& scores,
                      Orientation orientation,
                      std::optional<int> tie_decimals = std::nullopt);

struct RaterGroupScore {
  double mqm = 0.0;
  double ratio = 0.0;  // over the unweighted mean across raters
};

struct RaterReport {
  std::vector<std::string> groups;  // Accuracy, Fluency, Others, All
  std::vector<std::string> raters;
  std::vector<int> ratings;  // rated segments per rater
  // cells[g][r]
  std::vector<std::vector<RaterGroupScore>> cells;
};

// Error(kNoRatings) when fewer than two raters are present.
RaterReport BuildRaterReport(const Corpus& corpus, const WeightScheme& scheme);

struct SweepOptions {
  std::vector<double> major_weights;
  int resamples = 1000;
  std::uint64_t seed = 1;
  double stability_slack = 0.05;
  double separation_level = 0.95;
};

struct SweepRow {
  double major_weight = 0.0;
  std::vector<std::string> ranking;  // best first on the full data
  std::vector<double> scores;        // aligned with ranking
  double stability = 0.0;  // resamples reproducing the ranking exactly
  int discrimination = 0;  // pairs ordered consistently in >= 95% resamples
  bool selected = false;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  int n_systems = 0;
  int n_positions = 0;
  int resamples = 0;
  const SweepRow* Selected() const;
};

// Major-weight stability sweep. Segment positions are resampled with
// replacement (same size, paired across systems); each resample derives its
// random stream from (seed, resample index). Selection: the largest weight
// whose stability is within `stability_slack` of the best and whose
// discrimination is maximal among those.
SweepReport WeightSweep(const Corpus& corpus, const SweepOptions& options);

}  // namespace mqm

#endif  // MQM_SCORING_H_
