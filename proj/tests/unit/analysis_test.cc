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

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "mqm/corpus_io.h"
#include "mqm/error.h"
#include "support/synthetic.h"

namespace mqm {
namespace {

std::string Path(const std::string& rel) {
  return std::string(MQM_TESTDATA_DIR) + "/" + rel;
}

Corpus MiniWithEverything() {
  Corpus c = LoadMqmFile(Path("mini/mqm.tsv"));
  c.AddScalarRatings("psqm", LoadScalarFile(Path("mini/psqm.tsv"), ScalarScale::kSqm));
  c.AddScalarRatings("wmt-raw",
                     LoadScalarFile(Path("mini/wmt-raw.tsv"), ScalarScale::kWmtRaw));
  c.AddMetricScores(LoadMetricFile(Path("mini/metrics_system.tsv"),
                                   MetricLevel::kSystem));
  c.AddMetricScores(LoadMetricFile(Path("mini/metrics_segment.tsv"),
                                   MetricLevel::kSegment));
  return c;
}

// Synthetic EnDe-shaped corpus plus a scalar method and two metrics derived
// from the MQM segment scores with noise.
const Corpus& Rich() {
  static const Corpus c = [] {
    Corpus corpus = testing::MakeCorpus(testing::EnDeShape());
    const auto seg = MethodScores(corpus, "mqm");
    std::mt19937_64 rng(31);
    std::normal_distribution<double> noise(0, 1.0);
    std::vector<ScalarRating> sqm;
    MetricScores metrics;
    for (const auto& [key, score] : seg.segment) {
      ScalarRating r;
      r.key = key;
      r.raw_seg_id = corpus.RawSegId(key.doc_id, key.seg_index);
      r.rater_id = "p1";
      r.value = std::clamp(std::round(6 - score / 2 + noise(rng)), 0.0, 6.0);
      r.scale = ScalarScale::kSqm;
      sqm.push_back(r);
      metrics.AddSegmentScore("sentBLEU", key.system, key.doc_id, r.raw_seg_id,
                              -score + 3 * noise(rng));
    }
    for (const auto& [sys, score] : seg.system) {
      metrics.AddSystemScore("BLEU", sys, 40 - 3 * score + noise(rng));
      metrics.AddSystemScore("TER", sys, 0.4 + 0.05 * score + 0.01 * noise(rng));
    }
    corpus.AddScalarRatings("psqm", std::move(sqm));
    corpus.AddMetricScores(metrics);
    return corpus;
  }();
  return c;
}

TEST(MethodScores, MiniScalarAndMetric) {
  const Corpus c = MiniWithEverything();
  const auto psqm = MethodScores(c, "psqm");
  EXPECT_EQ(psqm.orientation, Orientation::kHigherBetter);
  EXPECT_NEAR(psqm.system.at("Human-A"), 5.4, 1e-12);
  EXPECT_NEAR(psqm.system.at("MT-1"), 2.8, 1e-12);
  EXPECT_NEAR(psqm.system.at("MT-2"), 4.6, 1e-12);
  const auto mqm = MethodScores(c, "mqm");
  EXPECT_EQ(mqm.orientation, Orientation::kLowerBetter);
  EXPECT_NEAR(mqm.system.at("MT-1"), 7.32, 1e-12);
  EXPECT_EQ(MethodScores(c, "TER").orientation, Orientation::kLowerBetter);
  EXPECT_EQ(MethodScores(c, "BLEU").system.at("MT-2"), 30.0);
  try {
    MethodScores(c, "COMET");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingScores);
  }
}

TEST(GoldConfig, Defaults) {
  const auto raw = GoldConfig::For(GoldSource::kWmtRaw, MetricLevel::kSegment);
  EXPECT_EQ(raw.seg_threshold, 25.0);
  EXPECT_EQ(raw.orientation, Orientation::kHigherBetter);
  const auto mqm = GoldConfig::For(GoldSource::kMqm, MetricLevel::kSegment);
  EXPECT_EQ(mqm.seg_threshold, 0.0);
  EXPECT_EQ(mqm.orientation, Orientation::kLowerBetter);
  EXPECT_EQ(GoldConfig::For(GoldSource::kWmtRaw, MetricLevel::kSystem).seg_threshold,
            0.0);
  EXPECT_EQ(ParseGoldSource("pSQM"), GoldSource::kPsqm);
  EXPECT_EQ(ParseGoldSource("wmt-z"), GoldSource::kWmtZ);
  EXPECT_THROW(ParseGoldSource("bleu"), Error);
}

TEST(CorrelationReport, SelfCorrelationIsOneAtEveryLevel) {
  for (MetricLevel level : {MetricLevel::kSystem, MetricLevel::kSegment}) {
    CorrelationOptions o;
    o.gold = GoldConfig::For(GoldSource::kMqm, level);
    o.gold.segment_filter = SegmentFilter::kAll;
    o.level = level;
    o.candidates = {"mqm"};
    const auto r = BuildCorrelationReport(Rich(), o);
    ASSERT_EQ(r.rows.size(), 1u);
    for (const auto& res : r.rows[0].results) {
      EXPECT_NEAR(res.value, 1.0, 1e-12) << StatisticName(res.statistic);
    }
  }
}

TEST(CorrelationReport, DefaultCandidatesAndAverages) {
  CorrelationOptions o;
  o.gold = GoldConfig::For(GoldSource::kMqm, MetricLevel::kSystem);
  o.human_systems = {"Human-A", "Human-B", "Human-P"};
  const auto r = BuildCorrelationReport(Rich(), o);
  EXPECT_EQ(r.systems.size(), 7u);
  std::vector<std::string> names;
  for (const auto& row : r.rows) names.push_back(row.candidate);
  EXPECT_EQ(names, (std::vector<std::string>{"psqm", "BLEU", "TER"}));
  ASSERT_EQ(r.averages.size(), 2u);
  EXPECT_EQ(r.averages[0].subset, "all");
  EXPECT_EQ(r.averages[0].members, 2);
  EXPECT_NEAR(r.averages[0].value[0],
              (r.rows[1].results[0].value + r.rows[2].results[0].value) / 2,
              1e-15);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.results[0].statistic, Statistic::kPearson);
    EXPECT_EQ(row.results[1].statistic, Statistic::kKendallTauB);
    EXPECT_TRUE(row.results[0].p_value.has_value());
  }

  o.include_human = true;
  EXPECT_EQ(BuildCorrelationReport(Rich(), o).systems.size(), 10u);
}

TEST(CorrelationReport, MissingSystemNamed) {
  Corpus c = Rich();
  MetricScores partial;
  partial.AddSystemScore("chrF", "OPPO", 0.5);
  c.AddMetricScores(partial);
  CorrelationOptions o;
  o.gold = GoldConfig::For(GoldSource::kMqm, MetricLevel::kSystem);
  o.candidates = {"chrF"};
  try {
    BuildCorrelationReport(c, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingScores);
    EXPECT_NE(std::string(e.what()).find("chrF"), std::string::npos);
  }
}

TEST(CorrelateTables, LowerBetterGoldEqualsNegatedHigherBetter) {
  const auto gold = MethodScores(Rich(), "mqm");
  ScoreTable negated = gold;
  negated.orientation = Orientation::kHigherBetter;
  for (auto& [k, v] : negated.system) v = -v;
  for (auto& [k, v] : negated.segment) v = -v;
  const std::vector<ScoreTable> cands = {MethodScores(Rich(), "psqm"),
                                         MethodScores(Rich(), "sentBLEU")};
  std::vector<std::string> systems = Rich().systems();
  for (MetricLevel level : {MetricLevel::kSystem, MetricLevel::kSegment}) {
    const std::vector<ScoreTable> use =
        level == MetricLevel::kSystem
            ? std::vector<ScoreTable>{cands[0]}
            : cands;
    const auto a = CorrelateTables(gold, 0, level, systems, use);
    const auto b = CorrelateTables(negated, 0, level, systems, use);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      for (std::size_t s = 0; s < a.rows[i].results.size(); ++s) {
        EXPECT_EQ(a.rows[i].results[s].value, b.rows[i].results[s].value);
        EXPECT_EQ(a.rows[i].results[s].p_value, b.rows[i].results[s].p_value);
      }
    }
  }
}

// Three segments for two systems; the metric file also scores a segment the
// corpus does not have. That row is kept at import and ignored here.
TEST(CorrelationReport, SegmentRowsOutsideCorpusExcluded) {
  std::istringstream mqm(
      "system\tdoc_id\tseg_id\trater\tsource\ttarget\tcategory\tseverity\n"
      "A\td\t1\tr\tx\t<v>y</v>\tStyle\tMinor\n"
      "A\td\t2\tr\tx\ty\tNo-error\tNo-error\n"
      "A\td\t3\tr\tx\t<v>y</v>\tStyle\tMajor\n"
      "B\td\t1\tr\tx\ty\tNo-error\tNo-error\n"
      "B\td\t2\tr\tx\t<v>y</v>\tAccuracy\tMajor\n"
      "B\td\t3\tr\tx\t<v>y</v>\tStyle\tMinor\n");
  Corpus c = ImportMqmTsv(mqm);
  std::istringstream m(
      "metric\tsystem\tdoc_id\tseg_id\tscore\n"
      "M\tA\td\t1\t0.2\nM\tA\td\t2\t0.9\nM\tA\td\t3\t0.1\n"
      "M\tB\td\t1\t0.8\nM\tB\td\t2\t0.3\nM\tB\td\t3\t0.4\n"
      "M\tB\td\t9\t0.5\n");
  c.AddMetricScores(ImportMetricScores(m, MetricLevel::kSegment));
  CorrelationOptions o;
  o.gold = GoldConfig::For(GoldSource::kMqm, MetricLevel::kSegment);
  o.gold.segment_filter = SegmentFilter::kAll;
  o.level = MetricLevel::kSegment;
  const auto r = BuildCorrelationReport(c, o);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.segments, 3);
  EXPECT_EQ(r.rows[0].results[1].n, 6);  // pooled cells, segment 9 excluded
  // Gold prefers B, A, B on the three segments; the metric agrees each time.
  EXPECT_EQ(r.rows[0].results[0].n, 3);
  EXPECT_EQ(r.rows[0].results[0].value, 1.0);
}

TEST(CorrelationReport, WmtRatedOnlyFilter) {
  const Corpus c = MiniWithEverything();
  EXPECT_EQ(WmtRatedPositions(c).size(), 5u);
  CorrelationOptions o;
  o.gold = GoldConfig::For(GoldSource::kMqm, MetricLevel::kSegment);
  o.level = MetricLevel::kSegment;
  o.candidates = {"psqm"};
  const auto r = BuildCorrelationReport(c, o);
  EXPECT_EQ(r.segments, 5);
}

TEST(DocumentProfile, MiniHandValues) {
  const auto p = BuildDocumentProfile(LoadMqmFile(Path("mini/mqm.tsv")),
                                      WeightScheme::Default(), {"Human-A"},
                                      {"MT-1", "MT-2"});
  ASSERT_EQ(p.rows.size(), 3u);
  EXPECT_NEAR(p.rows[0].ht, 0.05, 1e-12);
  EXPECT_NEAR(p.rows[0].mt, (15.25 + 3.0) / 2, 1e-12);
  EXPECT_NEAR(p.rows[1].ht, 1.0, 1e-12);
  EXPECT_NEAR(p.rows[1].mt, (1.1 + 1.0) / 2, 1e-12);
  EXPECT_NEAR(p.rows[2].ht, 0.5, 1e-12);
  EXPECT_NEAR(p.rows[2].mt, 2.5, 1e-12);
  EXPECT_EQ(p.rows[0].segments, 2);
  const double m = (0.05 + 1.0 + 0.5) / 3;
  EXPECT_NEAR(p.ht_mean, m, 1e-12);
  EXPECT_NEAR(p.ht_variance,
              ((0.05 - m) * (0.05 - m) + (1 - m) * (1 - m) + (0.5 - m) * (0.5 - m)) / 2,
              1e-12);
}

TEST(DocumentProfile, EmptyRatingsGiveZeros) {
  std::istringstream in(
      "system\tdoc_id\tseg_id\trater\tsource\ttarget\tcategory\tseverity\n"
      "H\td1\t1\tr\tx\ty\tNo-error\tNo-error\n"
      "M\td1\t1\tr\tx\tz\tNo-error\tNo-error\n"
      "H\td2\t1\tr\tx\ty\tNo-error\tNo-error\n"
      "M\td2\t1\tr\tx\tz\tNo-error\tNo-error\n");
  const auto p =
      BuildDocumentProfile(ImportMqmTsv(in), WeightScheme::Default(), {"H"}, {"M"});
  for (const auto& row : p.rows) {
    EXPECT_EQ(row.ht, 0.0);
    EXPECT_EQ(row.mt, 0.0);
  }
  EXPECT_THROW(BuildDocumentProfile(LoadMqmFile(Path("mini/mqm.tsv")),
                                    WeightScheme::Default(), {"Nobody"}, {"MT-1"}),
               Error);
}

TEST(DocumentProfile, SyntheticHumanProfileIsFlatter) {
  const auto p = BuildDocumentProfile(
      Rich(), WeightScheme::Default(), {"Human-A", "Human-B", "Human-P"},
      {"Tohoku-AIP-NTT", "OPPO", "eTranslation", "Tencent_Translation",
       "Huoshan_Translate", "Online-B", "Online-A"});
  EXPECT_EQ(p.rows.size(), 130u);
  EXPECT_LT(p.ht_mean, p.mt_mean);
  EXPECT_LT(p.ht_variance, p.mt_variance);
}

}  // namespace
}  // namespace mqm
