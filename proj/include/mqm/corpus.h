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
#ifndef MQM_CORPUS_H_
#define MQM_CORPUS_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mqm/taxonomy.h"

namespace mqm {

// (system, doc_id, seg_index) identifies one translated segment. seg_index is
// the 0-based position of the segment inside its document.
struct SegmentKey {
  std::string system;
  std::string doc_id;
  int seg_index = -1;

  auto operator<=>(const SegmentKey&) const = default;
};

std::string ToString(const SegmentKey& key);

enum class Side { kSource, kTarget };
std::string_view SideName(Side side);

struct Span {
  Side side = Side::kTarget;
  std::size_t start = 0;  // Unicode scalar offsets, end exclusive
  std::size_t end = 0;

  bool operator==(const Span&) const = default;
};

struct ErrorAnnotation {
  ErrorCategory category;
  Severity severity = Severity::kMinor;
  // Absent when the source row carried no <v> markup.
  std::optional<Span> span;
  std::string note;
};

struct SegmentRating {
  SegmentKey key;
  std::string rater_id;
  std::vector<ErrorAnnotation> annotations;

  // Annotations that count toward the five-error cap (all but source errors).
  int ScoringErrorCount() const;
  bool HasNonTranslation() const;
};

enum class ScalarScale { kWmtRaw, kWmtZ, kSqm };
std::string_view ScalarScaleName(ScalarScale scale);
ScalarScale ParseScalarScale(std::string_view text);
// Throws Error(kRangeError) when `value` is outside the scale.
void CheckScalarRange(ScalarScale scale, double value);

struct ScalarRating {
  SegmentKey key;          // seg_index is -1 until resolved against a corpus
  std::string raw_seg_id;  // seg id as written in the input file
  std::string rater_id;
  double value = 0.0;
  ScalarScale scale = ScalarScale::kSqm;
};

enum class MetricLevel { kSystem, kSegment };

// Automatic metric scores, keyed by metric name. Segment-level entries keep
// the raw seg id; rows that do not resolve against a corpus are tolerated here
// and dropped when correlations are computed.
class MetricScores {
 public:
  using SystemKey = std::pair<std::string, std::string>;  // metric, system
  using SegmentEntryKey =
      std::tuple<std::string, std::string, std::string, std::string>;

  // Throws Error(kDuplicateKey).
  void AddSystemScore(const std::string& metric, const std::string& system,
                      double score);
  void AddSegmentScore(const std::string& metric, const std::string& system,
                       const std::string& doc_id,
                       const std::string& raw_seg_id, double score);
  void Merge(const MetricScores& other);

  std::optional<double> SystemScore(const std::string& metric,
                                    const std::string& system) const;
  std::optional<double> SegmentScore(const std::string& metric,
                                     const std::string& system,
                                     const std::string& doc_id,
                                     const std::string& raw_seg_id) const;

  std::vector<std::string> Metrics() const;
  const std::map<SystemKey, double>& system_scores() const {
    return system_;
  }
  const std::map<SegmentEntryKey, double>& segment_scores() const {
    return segment_;
  }
  bool empty() const { return system_.empty() && segment_.empty(); }

 private:
  std::map<SystemKey, double> system_;
  std::map<SegmentEntryKey, double> segment_;
};

struct SegmentText {
  std::string source;
  std::string target;
};

// Segments grouped by system and document plus every kind of rating attached
// to them. Built by the importers; treated as immutable afterwards and shared
// by const reference.
class Corpus {
 public:
  // Declares the ordered raw seg ids of a document. Positions become the
  // seg_index values 0..n-1. Re-registering must give the same list.
  void RegisterDocument(const std::string& doc_id,
                        std::vector<std::string> raw_seg_ids);
  // Throws Error(kTextMismatch) when the key already holds different text.
  void AddSegment(const SegmentKey& key, SegmentText text);

  const SegmentText* FindSegment(const SegmentKey& key) const;
  const std::map<SegmentKey, SegmentText>& segments() const {
    return segments_;
  }
  const std::vector<std::string>& doc_ids() const { return doc_order_; }
  int DocumentLength(const std::string& doc_id) const;
  std::optional<int> ResolveSegIndex(const std::string& doc_id,
                                     const std::string& raw_seg_id) const;
  // Raw id of a position; falls back to the decimal index when unknown.
  std::string RawSegId(const std::string& doc_id, int seg_index) const;
  // Systems with at least one segment, in first-appearance order.
  const std::vector<std::string>& systems() const { return system_order_; }

  void AddMqmRating(SegmentRating rating) {
    mqm_ratings_.push_back(std::move(rating));
  }
  const std::vector<SegmentRating>& mqm_ratings() const {
    return mqm_ratings_;
  }
  std::vector<SegmentRating>& mutable_mqm_ratings() { return mqm_ratings_; }

  // Resolves raw seg ids of `ratings` against registered documents; ratings
  // whose document or segment is unknown keep seg_index -1 (reported by
  // ValidateCorpus).
  void AddScalarRatings(const std::string& method,
                        std::vector<ScalarRating> ratings);
  const std::map<std::string, std::vector<ScalarRating>>& scalar_ratings()
      const {
    return scalar_ratings_;
  }

  void AddMetricScores(const MetricScores& scores) {
    metric_scores_.Merge(scores);
  }
  const MetricScores& metric_scores() const { return metric_scores_; }

 private:
  struct DocIndex {
    std::vector<std::string> raw_ids;
    std::map<std::string, int> index_of;
  };

  std::map<SegmentKey, SegmentText> segments_;
  std::map<std::string, DocIndex> docs_;
  std::vector<std::string> doc_order_;
  std::vector<std::string> system_order_;
  std::vector<SegmentRating> mqm_ratings_;
  std::map<std::string, std::vector<ScalarRating>> scalar_ratings_;
  MetricScores metric_scores_;
};

enum class ViolationKind {
  kSpanOutOfBounds,
  kErrorCapExceeded,
  kNonTranslationExclusivity,
  kNonTranslationSpan,
  kSourceSideCategory,
  kDanglingReference,
  kNonContiguousDocument,
  kScalarRange,
  kPayloadMismatch,  // MQM payload in an SQM project or vice versa
  kUnknownLabel,     // category or severity outside the taxonomy
};
std::string_view ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t Count(ViolationKind kind) const;
};

// Rules a single MQM rating must satisfy, independent of any corpus: the
// five-error cap, Non-translation exclusivity and full-segment span, span
// bounds, and source-side spans only for source errors and omissions.
// `text` may be null when the segment is unknown; bounds are then unchecked.
std::vector<Violation> CheckRating(const SegmentRating& rating,
                                   const SegmentText* text);

// Every invariant violation in the corpus, with its location.
ValidationReport ValidateCorpus(const Corpus& corpus);

}  // namespace mqm

#endif  // MQM_CORPUS_H_
