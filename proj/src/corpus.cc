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
#include "mqm/corpus.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "mqm/error.h"
#include "mqm/text.h"

namespace mqm {

namespace {

constexpr int kMaxScoringErrors = 5;

std::string RatingLocation(const SegmentRating& r) {
  return ToString(r.key) + " rater=" + r.rater_id;
}

}  // namespace

std::string ToString(const SegmentKey& key) {
  return key.system + "/" + key.doc_id + "/" + std::to_string(key.seg_index);
}

std::string_view SideName(Side side) {
  return side == Side::kSource ? "source" : "target";
}

int SegmentRating::ScoringErrorCount() const {
  return static_cast<int>(std::count_if(
      annotations.begin(), annotations.end(),
      [](const ErrorAnnotation& a) { return a.category.counts_toward_cap(); }));
}

bool SegmentRating::HasNonTranslation() const {
  return std::any_of(annotations.begin(), annotations.end(),
                     [](const ErrorAnnotation& a) {
                       return a.category.is_non_translation();
                     });
}

std::string_view ScalarScaleName(ScalarScale scale) {
  switch (scale) {
    case ScalarScale::kWmtRaw:
      return "wmt-raw";
    case ScalarScale::kWmtZ:
      return "wmt-z";
    case ScalarScale::kSqm:
      return "sqm";
  }
  return "";
}

ScalarScale ParseScalarScale(std::string_view text) {
  const std::string key = text::AsciiLower(text::Trim(text));
  if (key == "wmt-raw" || key == "wmt_raw" || key == "raw") {
    return ScalarScale::kWmtRaw;
  }
  if (key == "wmt-z" || key == "wmt_z" || key == "z") return ScalarScale::kWmtZ;
  if (key == "sqm") return ScalarScale::kSqm;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scale '" + std::string(text) +
                  "' (expected sqm, wmt-raw or wmt-z)");
}

void CheckScalarRange(ScalarScale scale, double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kRangeError, "non-finite score");
  }
  switch (scale) {
    case ScalarScale::kWmtRaw:
      if (value < 0.0 || value > 100.0) {
        throw Error(ErrorCode::kRangeError, "WMT raw score outside [0, 100]");
      }
      break;
    case ScalarScale::kSqm:
      if (value < 0.0 || value > 6.0 || value != std::floor(value)) {
        throw Error(ErrorCode::kRangeError,
                    "SQM score must be an integer in 0..6");
      }
      break;
    case ScalarScale::kWmtZ:
      break;
  }
}

void MetricScores::AddSystemScore(const std::string& metric,
                                  const std::string& system, double score) {
  auto [it, inserted] = system_.emplace(SystemKey{metric, system}, score);
  if (!inserted) {
    throw Error(ErrorCode::kDuplicateKey, "(" + metric + ", " + system + ")");
  }
}

void MetricScores::AddSegmentScore(const std::string& metric,
                                   const std::string& system,
                                   const std::string& doc_id,
                                   const std::string& raw_seg_id,
                                   double score) {
  auto [it, inserted] = segment_.emplace(
      SegmentEntryKey{metric, system, doc_id, raw_seg_id}, score);
  if (!inserted) {
    throw Error(ErrorCode::kDuplicateKey, "(" + metric + ", " + system + ", " +
                                              doc_id + ", " + raw_seg_id + ")");
  }
}

void MetricScores::Merge(const MetricScores& other) {
  for (const auto& [k, v] : other.system_) AddSystemScore(k.first, k.second, v);
  for (const auto& [k, v] : other.segment_) {
    AddSegmentScore(std::get<0>(k), std::get<1>(k), std::get<2>(k),
                    std::get<3>(k), v);
  }
}

std::optional<double> MetricScores::SystemScore(
    const std::string& metric, const std::string& system) const {
  auto it = system_.find({metric, system});
  if (it == system_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> MetricScores::SegmentScore(
    const std::string& metric, const std::string& system,
    const std::string& doc_id, const std::string& raw_seg_id) const {
  auto it = segment_.find({metric, system, doc_id, raw_seg_id});
  if (it == segment_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> MetricScores::Metrics() const {
  std::set<std::string> names;
  for (const auto& [k, v] : system_) names.insert(k.first);
  for (const auto& [k, v] : segment_) names.insert(std::get<0>(k));
  return {names.begin(), names.end()};
}

void Corpus::RegisterDocument(const std::string& doc_id,
                              std::vector<std::string> raw_seg_ids) {
  auto it = docs_.find(doc_id);
  if (it != docs_.end()) {
    if (it->second.raw_ids != raw_seg_ids) {
      throw Error(ErrorCode::kInvalidArgument,
                  "document " + doc_id + " registered with different segments");
    }
    return;
  }
  DocIndex index;
  for (std::size_t i = 0; i < raw_seg_ids.size(); ++i) {
    auto [pos, inserted] =
        index.index_of.emplace(raw_seg_ids[i], static_cast<int>(i));
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateKey,
                  "segment " + raw_seg_ids[i] + " repeated in " + doc_id);
    }
  }
  index.raw_ids = std::move(raw_seg_ids);
  docs_.emplace(doc_id, std::move(index));
  doc_order_.push_back(doc_id);
}

void Corpus::AddSegment(const SegmentKey& key, SegmentText text) {
  auto it = segments_.find(key);
  if (it != segments_.end()) {
    if (it->second.source != text.source || it->second.target != text.target) {
      throw Error(ErrorCode::kTextMismatch, ToString(key));
    }
    return;
  }
  if (std::find(system_order_.begin(), system_order_.end(), key.system) ==
      system_order_.end()) {
    system_order_.push_back(key.system);
  }
  segments_.emplace(key, std::move(text));
}

const SegmentText* Corpus::FindSegment(const SegmentKey& key) const {
  auto it = segments_.find(key);
  return it == segments_.end() ? nullptr : &it->second;
}

int Corpus::DocumentLength(const std::string& doc_id) const {
  auto it = docs_.find(doc_id);
  return it == docs_.end() ? 0 : static_cast<int>(it->second.raw_ids.size());
}

std::optional<int> Corpus::ResolveSegIndex(
    const std::string& doc_id, const std::string& raw_seg_id) const {
  auto it = docs_.find(doc_id);
  if (it == docs_.end()) return std::nullopt;
  auto pos = it->second.index_of.find(raw_seg_id);
  if (pos == it->second.index_of.end()) return std::nullopt;
  return pos->second;
}

std::string Corpus::RawSegId(const std::string& doc_id, int seg_index) const {
  auto it = docs_.find(doc_id);
  if (it == docs_.end() || seg_index < 0 ||
      seg_index >= static_cast<int>(it->second.raw_ids.size())) {
    return std::to_string(seg_index);
  }
  return it->second.raw_ids[seg_index];
}

void Corpus::AddScalarRatings(const std::string& method,
                              std::vector<ScalarRating> ratings) {
  auto& dest = scalar_ratings_[method];
  dest.reserve(dest.size() + ratings.size());
  for (auto& r : ratings) {
    if (auto idx = ResolveSegIndex(r.key.doc_id, r.raw_seg_id)) {
      r.key.seg_index = *idx;
    } else {
      r.key.seg_index = -1;
    }
    dest.push_back(std::move(r));
  }
}

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kSpanOutOfBounds:
      return "span-out-of-bounds";
    case ViolationKind::kErrorCapExceeded:
      return "error-cap";
    case ViolationKind::kNonTranslationExclusivity:
      return "non-translation-exclusive";
    case ViolationKind::kNonTranslationSpan:
      return "non-translation-span";
    case ViolationKind::kSourceSideCategory:
      return "source-side-category";
    case ViolationKind::kDanglingReference:
      return "dangling-reference";
    case ViolationKind::kNonContiguousDocument:
      return "non-contiguous-document";
    case ViolationKind::kScalarRange:
      return "scalar-range";
    case ViolationKind::kPayloadMismatch:
      return "payload-mismatch";
    case ViolationKind::kUnknownLabel:
      return "unknown-label";
  }
  return "";
}

std::size_t ValidationReport::Count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(),
                    [kind](const Violation& v) { return v.kind == kind; }));
}

std::vector<Violation> CheckRating(const SegmentRating& rating,
                                   const SegmentText* text) {
  std::vector<Violation> out;
  const std::string loc = RatingLocation(rating);
  const int scoring = rating.ScoringErrorCount();
  if (scoring > kMaxScoringErrors) {
    out.push_back({ViolationKind::kErrorCapExceeded, loc,
                   std::to_string(scoring) +
                       " scoring errors; at most 5 are allowed"});
  }
  if (rating.HasNonTranslation() && scoring > 1) {
    out.push_back({ViolationKind::kNonTranslationExclusivity, loc,
                   "Non-translation must be the only error in the segment"});
  }
  for (std::size_t i = 0; i < rating.annotations.size(); ++i) {
    const auto& a = rating.annotations[i];
    const std::string aloc = loc + " error#" + std::to_string(i);
    if (!a.span) continue;
    const Span& s = *a.span;
    if (s.side == Side::kSource && !a.category.is_source_error() &&
        !(a.category.top() == TopCategory::kAccuracy &&
          a.category.sub() == SubCategory::kOmission)) {
      out.push_back({ViolationKind::kSourceSideCategory, aloc,
                     "source-side span used for " + a.category.canonical()});
    }
    if (text != nullptr) {
      const std::size_t len = text::CodePointCount(
          s.side == Side::kSource ? text->source : text->target);
      if (s.start > s.end || s.end > len) {
        out.push_back({ViolationKind::kSpanOutOfBounds, aloc,
                       "span [" + std::to_string(s.start) + "," +
                           std::to_string(s.end) + ") outside " +
                           std::string(SideName(s.side)) + " of length " +
                           std::to_string(len)});
      }
      if (a.category.is_non_translation() &&
          (s.side != Side::kTarget || s.start != 0 ||
           s.end != text::CodePointCount(text->target))) {
        out.push_back({ViolationKind::kNonTranslationSpan, aloc,
                       "Non-translation must span the entire target"});
      }
    } else if (s.start > s.end) {
      out.push_back({ViolationKind::kSpanOutOfBounds, aloc,
                     "span start after end"});
    }
  }
  return out;
}

ValidationReport ValidateCorpus(const Corpus& corpus) {
  ValidationReport report;
  for (const auto& r : corpus.mqm_ratings()) {
    const SegmentText* text = corpus.FindSegment(r.key);
    if (text == nullptr) {
      report.violations.push_back({ViolationKind::kDanglingReference,
                                   RatingLocation(r),
                                   "rating references an unknown segment"});
    }
    auto v = CheckRating(r, text);
    report.violations.insert(report.violations.end(), v.begin(), v.end());
  }
  for (const auto& [method, ratings] : corpus.scalar_ratings()) {
    for (const auto& r : ratings) {
      const std::string loc = method + " " + r.key.system + "/" +
                              r.key.doc_id + "/" + r.raw_seg_id +
                              " rater=" + r.rater_id;
      if (r.key.seg_index < 0 || corpus.FindSegment(r.key) == nullptr) {
        report.violations.push_back({ViolationKind::kDanglingReference, loc,
                                     "scalar rating references an unknown "
                                     "segment"});
      }
      try {
        CheckScalarRange(r.scale, r.value);
      } catch (const Error& e) {
        report.violations.push_back(
            {ViolationKind::kScalarRange, loc, e.detail()});
      }
    }
  }
  // Every system's positions inside a document must form a prefix 0..m-1.
  std::map<std::pair<std::string, std::string>, std::vector<int>> present;
  for (const auto& [key, text] : corpus.segments()) {
    present[{key.system, key.doc_id}].push_back(key.seg_index);
  }
  for (const auto& [sd, indices] : present) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] != static_cast<int>(i)) {
        report.violations.push_back(
            {ViolationKind::kNonContiguousDocument, sd.first + "/" + sd.second,
             "segment indices are not contiguous from 0"});
        break;
      }
    }
  }
  return report;
}

}  // namespace mqm
