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
#include <algorithm>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "mqm/corpus.h"
#include "mqm/corpus_io.h"
#include "mqm/error.h"
#include "mqm/text.h"
#include "support/synthetic.h"

namespace mqm {
namespace {

const char kHeader[] =
    "system\tdoc_id\tseg_id\trater\tsource\ttarget\tcategory\tseverity\n";

Corpus Import(const std::string& body, ParseMode mode = ParseMode::kStrict,
              std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(kHeader + body);
  return ImportMqmTsv(in, {mode}, warnings);
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

TEST(ImportMqm, OneErrorRow) {
  const Corpus c = Import(
      "sysA\td1\t0\tr1\tsrc\tGuten <v>Tag</v>\tAccuracy/Mistranslation\tMajor\n");
  ASSERT_EQ(c.mqm_ratings().size(), 1u);
  const auto& r = c.mqm_ratings()[0];
  EXPECT_EQ(r.key.system, "sysA");
  EXPECT_EQ(r.key.doc_id, "d1");
  EXPECT_EQ(r.key.seg_index, 0);
  EXPECT_EQ(r.rater_id, "r1");
  ASSERT_EQ(r.annotations.size(), 1u);
  const auto& a = r.annotations[0];
  EXPECT_EQ(a.category, ErrorCategory(TopCategory::kAccuracy,
                                      SubCategory::kMistranslation));
  EXPECT_EQ(a.severity, Severity::kMajor);
  ASSERT_TRUE(a.span.has_value());
  EXPECT_EQ(*a.span, (Span{Side::kTarget, 6, 9}));
  EXPECT_EQ(c.FindSegment(r.key)->target, "Guten Tag");
}

TEST(ImportMqm, NoErrorRowGivesEmptyRating) {
  const Corpus c = Import("sysA\td1\t0\tr1\tsrc\tGuten Tag\tNo-error\tNo-error\n");
  ASSERT_EQ(c.mqm_ratings().size(), 1u);
  EXPECT_TRUE(c.mqm_ratings()[0].annotations.empty());
}

TEST(ImportMqm, SixErrorsStrictIsLimitExceeded) {
  std::string body;
  for (int i = 0; i < 6; ++i) {
    body += "sysA\td1\t0\tr1\tsrc\t<v>Guten</v> Tag\tFluency/Grammar\tMinor\n";
  }
  EXPECT_EQ(CodeOf([&] { Import(body); }), ErrorCode::kLimitExceeded);
  std::vector<std::string> warnings;
  const Corpus lenient = Import(body, ParseMode::kLenient, &warnings);
  EXPECT_EQ(lenient.mqm_ratings()[0].annotations.size(), 6u);
  EXPECT_FALSE(warnings.empty());
}

TEST(ImportMqm, SourceErrorsDoNotCountTowardCap) {
  std::string body;
  for (int i = 0; i < 5; ++i) {
    body += "sysA\td1\t0\tr1\tsrc\t<v>Guten</v> Tag\tFluency/Grammar\tMinor\n";
  }
  body += "sysA\td1\t0\tr1\t<v>src</v>\tGuten Tag\tSource error\tMajor\n";
  const Corpus c = Import(body);
  EXPECT_EQ(c.mqm_ratings()[0].annotations.size(), 6u);
  EXPECT_EQ(c.mqm_ratings()[0].ScoringErrorCount(), 5);
}

TEST(ImportMqm, Errors) {
  EXPECT_EQ(CodeOf([] { Import("sysA\td1\t0\tr1\tsrc\tGuten Tag\tNo-error\n"); }),
            ErrorCode::kMalformedRow);
  EXPECT_EQ(CodeOf([] {
              Import("sysA\td1\t0\tr1\tsrc\tGuten <v>Tag\tStyle\tMinor\n");
            }),
            ErrorCode::kSpanMarkupError);
  EXPECT_EQ(CodeOf([] {
              Import(
                  "sysA\td1\t0\tr1\tsrc\t<v>Guten</v> <v>Tag</v>\tStyle\tMinor\n");
            }),
            ErrorCode::kSpanMarkupError);
  EXPECT_EQ(CodeOf([] {
              Import("sysA\td1\t0\tr1\tsrc\tGuten <v>Tag</v>\tStyle\tMinor\n"
                     "sysA\td1\t0\tr2\tsrc\tGuten Abend\tNo-error\tNo-error\n");
            }),
            ErrorCode::kTextMismatch);
  EXPECT_EQ(CodeOf([] {
              Import("sysA\td1\t0\tr1\tsrc\t<v>Tag</v>\tAccuracy/Banana\tMinor\n");
            }),
            ErrorCode::kUnknownCategory);
  EXPECT_EQ(CodeOf([] { LoadMqmFile("/nonexistent/missing.tsv"); }),
            ErrorCode::kIo);
}

TEST(ImportMqm, GroupingIsPartitionTrue) {
  const auto rows = testing::RandomRatings(300, 11);
  const Corpus c = testing::ImportRows(rows);
  std::size_t error_rows = 0;
  for (const auto& r : rows) error_rows += r.category != "No-error";
  std::size_t annotations = 0;
  std::set<std::tuple<std::string, std::string, int, std::string>> keys;
  for (const auto& r : c.mqm_ratings()) {
    annotations += r.annotations.size();
    EXPECT_TRUE(keys.insert({r.key.system, r.key.doc_id, r.key.seg_index,
                             r.rater_id})
                    .second);
  }
  EXPECT_EQ(annotations, error_rows);
  EXPECT_EQ(c.mqm_ratings().size(), 300u);
}

TEST(ImportMqm, SegIdsRenumberedContiguously) {
  const Corpus c = Import(
      "s\td\t17\tr\tb\tB\tNo-error\tNo-error\n"
      "s\td\t3\tr\ta\tA\tNo-error\tNo-error\n"
      "s\td\t100\tr\tc\tC\tNo-error\tNo-error\n");
  EXPECT_EQ(c.DocumentLength("d"), 3);
  EXPECT_EQ(c.ResolveSegIndex("d", "3"), 0);
  EXPECT_EQ(c.ResolveSegIndex("d", "17"), 1);
  EXPECT_EQ(c.ResolveSegIndex("d", "100"), 2);
  EXPECT_EQ(c.RawSegId("d", 2), "100");
}

TEST(ImportMqm, MarkerStrippingPreservesRowText) {
  const auto rows = testing::RandomRatings(200, 5);
  const Corpus c = testing::ImportRows(rows);
  std::ostringstream out;
  WriteMqmTsv(c, out);
  // Every exported row is byte-identical to some input row (modulo label
  // spelling, which the exporter canonicalizes).
  std::multiset<std::string> in_texts, out_texts;
  for (const auto& r : rows) {
    in_texts.insert(text::EscapeField(r.source) + "\t" +
                    text::EscapeField(r.target));
  }
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    const auto f = text::SplitTabs(line);
    out_texts.insert(std::string(f[4]) + "\t" + std::string(f[5]));
  }
  EXPECT_EQ(in_texts, out_texts);
}

TEST(ImportMqm, ExportImportFixpoint) {
  const Corpus a = testing::ImportRows(testing::RandomRatings(150, 9));
  std::stringstream first;
  WriteMqmTsv(a, first);
  const Corpus b = ImportMqmTsv(first);
  std::ostringstream second;
  WriteMqmTsv(b, second);
  EXPECT_EQ(first.str(), second.str());
}

TEST(ImportScalar, Examples) {
  std::istringstream ok(
      "system\tdoc_id\tseg_id\trater\tscore\ns\td\t1\tp\t6\n");
  const auto v = ImportScalarTsv(ok, ScalarScale::kSqm);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].value, 6);
  EXPECT_EQ(v[0].raw_seg_id, "1");

  std::istringstream bad(
      "system\tdoc_id\tseg_id\trater\tscore\ns\td\t1\tp\t6\ns\td\t2\tp\t7\n");
  try {
    ImportScalarTsv(bad, ScalarScale::kSqm);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRangeError);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos)
        << "row number expected: " << e.what();
  }

  std::istringstream raw(
      "system\tdoc_id\tseg_id\trater\tscore\nHuman-P\td\t1\tw\t84.2\n");
  EXPECT_DOUBLE_EQ(ImportScalarTsv(raw, ScalarScale::kWmtRaw)[0].value, 84.2);

  std::istringstream frac(
      "system\tdoc_id\tseg_id\trater\tscore\ns\td\t1\tp\t4.5\n");
  EXPECT_THROW(ImportScalarTsv(frac, ScalarScale::kSqm), Error);
  std::istringstream z(
      "system\tdoc_id\tseg_id\trater\tscore\ns\td\t1\tp\t-3.7\n");
  EXPECT_EQ(ImportScalarTsv(z, ScalarScale::kWmtZ)[0].value, -3.7);
  std::istringstream malformed("system\tdoc_id\tseg_id\trater\tscore\ns\td\t1\n");
  EXPECT_EQ(CodeOf([&] { ImportScalarTsv(malformed, ScalarScale::kSqm); }),
            ErrorCode::kMalformedRow);
}

TEST(ImportMetrics, SystemLevel) {
  std::istringstream in("chrF\tsysA\t0.61\n");
  const MetricScores m = ImportMetricScores(in, MetricLevel::kSystem);
  EXPECT_EQ(m.system_scores().size(), 1u);
  EXPECT_EQ(m.SystemScore("chrF", "sysA"), 0.61);
  std::istringstream dup("metric\tsystem\tscore\nchrF\tsysA\t0.61\nchrF\tsysA\t0.6\n");
  EXPECT_EQ(CodeOf([&] { ImportMetricScores(dup, MetricLevel::kSystem); }),
            ErrorCode::kDuplicateKey);
  std::istringstream bad("chrF\tsysA\n");
  EXPECT_EQ(CodeOf([&] { ImportMetricScores(bad, MetricLevel::kSystem); }),
            ErrorCode::kMalformedRow);
}

TEST(ImportMetrics, SegmentRowsForUnknownSegmentsAreTolerated) {
  std::istringstream in(
      "metric\tsystem\tdoc_id\tseg_id\tscore\n"
      "m\ts\td\t1\t0.1\nm\ts\td\t2\t0.2\nm\ts\td\t9\t0.9\n");
  const MetricScores m = ImportMetricScores(in, MetricLevel::kSegment);
  EXPECT_EQ(m.segment_scores().size(), 3u);
}

TEST(Validate, CleanFixtureIsValid) {
  const Corpus c = LoadMqmFile(std::string(MQM_TESTDATA_DIR) + "/mini/mqm.tsv");
  EXPECT_TRUE(ValidateCorpus(c).ok());
}

TEST(Validate, NonTranslationPlusMajor) {
  const Corpus c = Import(
      "s\td\t1\tr\tsrc\t<v>Guten Tag</v>\tNon-translation!\tMajor\n"
      "s\td\t1\tr\tsrc\t<v>Guten</v> Tag\tAccuracy/Mistranslation\tMajor\n",
      ParseMode::kLenient);
  const auto report = ValidateCorpus(c);
  EXPECT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.Count(ViolationKind::kNonTranslationExclusivity), 1u);
}

TEST(Validate, SpanBeyondText) {
  Corpus c = Import("s\td\t1\tr\tsrc\tGuten <v>Tag</v>\tStyle\tMinor\n");
  c.mutable_mqm_ratings()[0].annotations[0].span->end = 42;
  const auto report = ValidateCorpus(c);
  EXPECT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.Count(ViolationKind::kSpanOutOfBounds), 1u);
}

TEST(Validate, DanglingAndSourceSide) {
  Corpus c = Import("s\td\t1\tr\tsrc\tGuten <v>Tag</v>\tStyle\tMinor\n");
  SegmentRating dangling = c.mqm_ratings()[0];
  dangling.key.doc_id = "nowhere";
  c.AddMqmRating(dangling);
  c.mutable_mqm_ratings()[0].annotations[0].span->side = Side::kSource;
  const auto report = ValidateCorpus(c);
  EXPECT_EQ(report.Count(ViolationKind::kDanglingReference), 1u);
  EXPECT_EQ(report.Count(ViolationKind::kSourceSideCategory), 1u);
}

TEST(Validate, ScalarRatingsOutsideCorpusAreDangling) {
  Corpus c = Import("s\td\t1\tr\tsrc\tGuten Tag\tNo-error\tNo-error\n");
  ScalarRating r;
  r.key = {"s", "d", -1};
  r.raw_seg_id = "5";
  r.rater_id = "p";
  r.value = 3;
  c.AddScalarRatings("psqm", {r});
  EXPECT_EQ(ValidateCorpus(c).Count(ViolationKind::kDanglingReference), 1u);
}

TEST(CheckRating, CapAndExclusivity) {
  SegmentRating r;
  r.key = {"s", "d", 0};
  const SegmentText text{"src", "Guten Tag"};
  ErrorAnnotation major{ErrorCategory(TopCategory::kAccuracy,
                                      SubCategory::kMistranslation),
                        Severity::kMajor, Span{Side::kTarget, 0, 5}, ""};
  r.annotations.assign(5, major);
  EXPECT_TRUE(CheckRating(r, &text).empty());
  r.annotations.push_back(major);
  const auto six = CheckRating(r, &text);
  ASSERT_EQ(six.size(), 1u);
  EXPECT_EQ(six[0].kind, ViolationKind::kErrorCapExceeded);

  SegmentRating nt;
  nt.key = r.key;
  nt.annotations.push_back({ErrorCategory(TopCategory::kNonTranslation),
                            Severity::kMajor, Span{Side::kTarget, 0, 3}, ""});
  const auto partial = CheckRating(nt, &text);
  ASSERT_EQ(partial.size(), 1u);
  EXPECT_EQ(partial[0].kind, ViolationKind::kNonTranslationSpan);
}

TEST(Corpus, RegisterDocumentMustAgree) {
  Corpus c;
  c.RegisterDocument("d", {"1", "2"});
  c.RegisterDocument("d", {"1", "2"});
  EXPECT_THROW(c.RegisterDocument("d", {"1", "3"}), Error);
  c.AddSegment({"s", "d", 0}, {"a", "b"});
  EXPECT_EQ(CodeOf([&] { c.AddSegment({"s", "d", 0}, {"a", "c"}); }),
            ErrorCode::kTextMismatch);
}

TEST(SegmentsTsv, RoundTrip) {
  const Corpus a = testing::MakeSegments(testing::EnDeShape());
  EXPECT_EQ(a.segments().size(), 14180u);
  std::stringstream buf;
  WriteSegmentsTsv(a, buf);
  const Corpus b = ImportSegmentsTsv(buf);
  EXPECT_EQ(a.segments().size(), b.segments().size());
  for (const auto& [key, t] : a.segments()) {
    const SegmentText* other = b.FindSegment(key);
    ASSERT_NE(other, nullptr);
    EXPECT_EQ(other->source, t.source);
    EXPECT_EQ(other->target, t.target);
  }
}

}  // namespace
}  // namespace mqm
