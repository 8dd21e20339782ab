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
#include "synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "mqm/campaign.h"
#include "mqm/corpus_io.h"
#include "mqm/text.h"

namespace mqm::testing {

namespace {

using Rng = std::mt19937_64;

std::string Marked(const std::string& text, std::size_t start,
                   std::size_t end) {
  return text::InsertSpanMarkers(text, {start, end});
}

// Random non-empty span [start, end) inside a text of `len` scalars.
std::pair<std::size_t, std::size_t> RandomSpan(std::size_t len, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, len - 1);
  std::size_t a = pick(rng), b = pick(rng);
  if (a > b) std::swap(a, b);
  return {a, b + 1};
}

const std::vector<std::string>& MinorCategories() {
  static const std::vector<std::string> kList = {
      "Accuracy/Mistranslation", "Accuracy/Mistranslation",
      "Fluency/Grammar",         "Fluency/Punctuation",
      "Fluency/Spelling",        "Style/Awkward",
      "Style/Awkward",           "Terminology/Inappropriate for context",
      "Accuracy/Addition",       "Locale convention/Date format",
      "Fluency/Register",        "Other"};
  return kList;
}

const std::vector<std::string>& MajorCategories() {
  static const std::vector<std::string> kList = {
      "Accuracy/Mistranslation", "Accuracy/Mistranslation",
      "Accuracy/Mistranslation", "Accuracy/Omission",
      "Fluency/Grammar",         "Terminology/Inappropriate for context",
      "Style/Awkward",           "Accuracy/Addition",
      "Fluency/Punctuation",     "Terminology/Inconsistent use"};
  return kList;
}

// Every leaf and bare top-level category except the two special ones.
const std::vector<std::string>& AllPlainCategories() {
  static const std::vector<std::string> kList = {
      "Accuracy",
      "Accuracy/Addition",
      "Accuracy/Omission",
      "Accuracy/Mistranslation",
      "Accuracy/Untranslated text",
      "Fluency",
      "Fluency/Punctuation",
      "Fluency/Spelling",
      "Fluency/Grammar",
      "Fluency/Register",
      "Fluency/Inconsistency",
      "Fluency/Character encoding",
      "Terminology",
      "Terminology/Inappropriate for context",
      "Terminology/Inconsistent use",
      "Style",
      "Style/Awkward",
      "Locale convention",
      "Locale convention/Address format",
      "Locale convention/Currency format",
      "Locale convention/Date format",
      "Locale convention/Name format",
      "Locale convention/Telephone format",
      "Locale convention/Time format",
      "Other"};
  return kList;
}

struct SegmentTexts {
  std::string source;
  std::string target;
};

SegmentTexts TextsFor(const std::string& system, const std::string& doc,
                      const std::string& seg) {
  return {fmt::format("Quellsatz {} im Dokument {}: Grüße aus Köln.", seg, doc),
          fmt::format("Segment {} of {} by {}: greetings from Cologne — ok.",
                      seg, doc, system)};
}

// Appends one error row; the span goes to the source for omissions and
// source errors, covers the whole target for Non-translation.
void AddErrorRow(std::vector<RawRow>& rows, const RawRow& base,
                 const SegmentTexts& t, const std::string& category,
                 const std::string& severity, Rng& rng) {
  RawRow row = base;
  row.source = t.source;
  row.target = t.target;
  row.category = category;
  row.severity = severity;
  const bool source_side =
      category == "Accuracy/Omission" || category == "Source error";
  if (category == "Non-translation") {
    row.target = Marked(t.target, 0, text::CodePointCount(t.target));
  } else if (source_side) {
    auto [a, b] = RandomSpan(text::CodePointCount(t.source), rng);
    row.source = Marked(t.source, a, b);
  } else {
    auto [a, b] = RandomSpan(text::CodePointCount(t.target), rng);
    row.target = Marked(t.target, a, b);
  }
  rows.push_back(std::move(row));
}

void AddNoErrorRow(std::vector<RawRow>& rows, const RawRow& base,
                   const SegmentTexts& t) {
  RawRow row = base;
  row.source = t.source;
  row.target = t.target;
  row.category = "No-error";
  row.severity = "No-error";
  rows.push_back(std::move(row));
}

}  // namespace

std::string RowsToTsv(const std::vector<RawRow>& rows) {
  std::string out =
      "system\tdoc_id\tseg_id\trater\tsource\ttarget\tcategory\tseverity\n";
  for (const auto& r : rows) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", r.system, r.doc_id,
                       r.seg_id, r.rater, text::EscapeField(r.source),
                       text::EscapeField(r.target), r.category, r.severity);
  }
  return out;
}

Corpus ImportRows(const std::vector<RawRow>& rows) {
  std::istringstream in(RowsToTsv(rows));
  return ImportMqmTsv(in);
}

CorpusShape EnDeShape() {
  CorpusShape s;
  s.name = "ende";
  s.systems = {"Human-B",     "Human-A",  "Human-P",
               "Tohoku-AIP-NTT", "OPPO", "eTranslation",
               "Tencent_Translation", "Huoshan_Translate", "Online-B",
               "Online-A"};
  s.expected_mqm = {0.75, 0.91, 1.41, 2.02, 2.25,
                    2.33, 2.35, 2.45, 2.48, 2.99};
  s.human = {true, true, true, false, false, false, false, false, false, false};
  s.docs = 130;
  s.segments = 1418;
  s.seed = 20201;
  return s;
}

CorpusShape ZhEnShape() {
  CorpusShape s;
  s.name = "zhen";
  s.systems = {"Human-A",  "Human-B", "VolcTrans", "WeChat_AI",
               "Tencent_Translation", "OPPO", "THUNLP", "DeepMind",
               "DiDi_NLP", "Online-B"};
  s.expected_mqm = {3.43, 3.62, 5.03, 5.13, 5.19,
                    5.20, 5.34, 5.41, 5.48, 5.85};
  s.human = {true, true, false, false, false, false, false, false, false, false};
  s.docs = 155;
  s.segments = 2000;
  s.seed = 20202;
  return s;
}

std::vector<int> DocumentLengths(const CorpusShape& shape) {
  // Lengths 1 + weight share of the remainder, weights uniform in [1, 3).
  Rng rng(shape.seed);
  std::uniform_real_distribution<double> u(1.0, 3.0);
  std::vector<double> w(shape.docs);
  for (auto& x : w) x = u(rng);
  double total = 0;
  for (double x : w) total += x;
  const int spare = shape.segments - shape.docs;
  std::vector<int> lengths(shape.docs, 1);
  int used = 0;
  for (int i = 0; i < shape.docs; ++i) {
    const int extra = static_cast<int>(std::floor(w[i] / total * spare));
    lengths[i] += extra;
    used += extra;
  }
  for (int i = 0; used < spare; i = (i + 1) % shape.docs, ++used) {
    ++lengths[i];
  }
  return lengths;
}

Corpus MakeSegments(const CorpusShape& shape) {
  const auto lengths = DocumentLengths(shape);
  std::ostringstream tsv;
  tsv << "system\tdoc_id\tseg_id\tsource\ttarget\n";
  for (const auto& system : shape.systems) {
    for (int d = 0; d < shape.docs; ++d) {
      const std::string doc = fmt::format("doc{:03}", d + 1);
      for (int s = 0; s < lengths[d]; ++s) {
        const std::string seg = std::to_string(s + 1);
        const auto t = TextsFor(system, doc, seg);
        tsv << system << '\t' << doc << '\t' << seg << '\t'
            << text::EscapeField(t.source) << '\t'
            << text::EscapeField(t.target) << '\n';
      }
    }
  }
  std::istringstream in(tsv.str());
  return ImportSegmentsTsv(in);
}

std::vector<RawRow> MakeRows(const CorpusShape& shape) {
  const auto lengths = DocumentLengths(shape);
  std::vector<std::string> raters;
  for (int i = 0; i < shape.raters; ++i) {
    raters.push_back(fmt::format("rater{}", i + 1));
  }
  const auto subsets = KSubsets(raters, shape.raters_per_doc);
  // Mild per-rater strictness, mean 1.
  std::vector<double> strictness(shape.raters);
  for (int i = 0; i < shape.raters; ++i) {
    strictness[i] = 0.8 + 0.4 * i / std::max(1, shape.raters - 1);
  }

  Rng rng(shape.seed * 7919 + 1);
  std::gamma_distribution<double> doc_difficulty(2.0, 0.5);   // mean 1
  std::gamma_distribution<double> seg_difficulty(1.5, 1 / 1.5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  std::vector<RawRow> rows;
  for (int d = 0; d < shape.docs; ++d) {
    const std::string doc = fmt::format("doc{:03}", d + 1);
    const double dd = doc_difficulty(rng);
    const auto& subset = subsets[d % subsets.size()];
    for (int s = 0; s < lengths[d]; ++s) {
      const std::string seg = std::to_string(s + 1);
      const double sd = seg_difficulty(rng);
      for (std::size_t k = 0; k < shape.systems.size(); ++k) {
        const std::string& system = shape.systems[k];
        const auto t = TextsFor(system, doc, seg);
        // Human translations depend much less on document difficulty.
        const double doc_factor =
            shape.human[k] ? 1.0 + 0.25 * (dd - 1.0) : dd;
        const double lambda = shape.expected_mqm[k] * doc_factor * sd;
        for (const auto& rater : subset) {
          const int ri = std::stoi(rater.substr(5)) - 1;
          const double l = lambda * strictness[ri];
          RawRow base{system, doc, seg, rater, "", "", "", ""};
          int errors = 0;
          if (!shape.human[k] && u01(rng) < 0.0015 * l) {
            AddErrorRow(rows, base, t, "Non-translation", "Major", rng);
            errors = 1;
          } else {
            std::poisson_distribution<int> majors(0.1 * l);
            std::poisson_distribution<int> minors(0.5 * l);
            const int n_major = std::min(5, majors(rng));
            const int n_minor = std::min(5 - n_major, minors(rng));
            for (int i = 0; i < n_major; ++i) {
              const auto& cats = MajorCategories();
              AddErrorRow(rows, base, t, cats[rng() % cats.size()], "Major",
                          rng);
            }
            for (int i = 0; i < n_minor; ++i) {
              const auto& cats = MinorCategories();
              AddErrorRow(rows, base, t, cats[rng() % cats.size()], "Minor",
                          rng);
            }
            errors = n_major + n_minor;
            if (errors < 5 && u01(rng) < 0.03) {
              AddErrorRow(rows, base, t, "Style/Awkward", "Neutral", rng);
              ++errors;
            }
          }
          if (u01(rng) < 0.01) {
            AddErrorRow(rows, base, t, "Source error", "Minor", rng);
            ++errors;
          }
          if (errors == 0) AddNoErrorRow(rows, base, t);
        }
      }
    }
  }
  return rows;
}

Corpus MakeCorpus(const CorpusShape& shape) { return ImportRows(MakeRows(shape)); }

std::vector<RawRow> RandomRatings(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::vector<std::string> severities = {"Major", "Minor", "Neutral",
                                               "major", "MINOR"};
  std::vector<RawRow> rows;
  for (int i = 0; i < n; ++i) {
    const std::string system = fmt::format("sys{}", i % 7);
    const std::string doc = fmt::format("d{}", i);
    const auto t = TextsFor(system, doc, "1");
    RawRow base{system, doc, "1", fmt::format("r{}", i % 5), "", "", "", ""};
    int written = 0;
    if (u01(rng) < 0.08) {
      AddErrorRow(rows, base, t, "Non-translation", "Major", rng);
      ++written;
    } else {
      const int k = static_cast<int>(rng() % 6);
      for (int e = 0; e < k; ++e) {
        const auto& cats = AllPlainCategories();
        std::string cat = cats[rng() % cats.size()];
        // Exercise the label normalizer as well.
        if (u01(rng) < 0.2) {
          std::transform(cat.begin(), cat.end(), cat.begin(), [](char c) {
            return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
          });
        }
        AddErrorRow(rows, base, t, cat, severities[rng() % severities.size()],
                    rng);
        ++written;
      }
    }
    const int source_errors = static_cast<int>(rng() % 3) == 0 ? 1 : 0;
    for (int e = 0; e < source_errors; ++e) {
      AddErrorRow(rows, base, t, "Source error",
                  u01(rng) < 0.5 ? "Major" : "Minor", rng);
      ++written;
    }
    if (written == 0) AddNoErrorRow(rows, base, t);
  }
  return rows;
}

}  // namespace mqm::testing
