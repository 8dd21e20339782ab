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
#ifndef MQM_TESTS_SUPPORT_SYNTHETIC_H_
#define MQM_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mqm/corpus.h"

// Deterministic synthetic corpora for tests. Rows are produced in the raw
// TSV shape (inline <v> markup, string labels) so that oracles can work on
// the rows directly while the library works on the imported corpus.
namespace mqm::testing {

struct RawRow {
  std::string system;
  std::string doc_id;
  std::string seg_id;
  std::string rater;
  std::string source;  // marked when the span is on the source side
  std::string target;  // marked when the span is on the target side
  std::string category;
  std::string severity;
};

std::string RowsToTsv(const std::vector<RawRow>& rows);
Corpus ImportRows(const std::vector<RawRow>& rows);

// Corpus shape: documents of varying length, every document rated by one
// subset of `raters_per_doc` raters for every system. System quality is set
// through the expected per-segment MQM score; documents and segments carry
// shared difficulty so that system scores covary as in real data.
struct CorpusShape {
  std::string name;
  std::vector<std::string> systems;
  std::vector<double> expected_mqm;  // per system
  std::vector<bool> human;           // per system
  int docs = 0;
  int segments = 0;
  int raters = 6;
  int raters_per_doc = 3;
  std::uint64_t seed = 7;
};

// 130 documents, 1418 segments, ten systems named and scaled after the
// English-German study (three human references).
CorpusShape EnDeShape();
// 155 documents, 2000 segments, ten systems after the Chinese-English study.
CorpusShape ZhEnShape();

// Segment counts per document, summing to shape.segments, each >= 1.
std::vector<int> DocumentLengths(const CorpusShape& shape);

// Texts only (system doc_id seg_id source target), for seeding campaigns.
Corpus MakeSegments(const CorpusShape& shape);
std::vector<RawRow> MakeRows(const CorpusShape& shape);
Corpus MakeCorpus(const CorpusShape& shape);

// `n` independent ratings with random labels drawn from the whole taxonomy,
// 0-5 scoring errors, occasional Non-translation, source errors and Neutral
// notes, spans on either side. Each rating has its own segment.
std::vector<RawRow> RandomRatings(int n, std::uint64_t seed);

}  // namespace mqm::testing

#endif  // MQM_TESTS_SUPPORT_SYNTHETIC_H_
