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
#ifndef MQM_CORPUS_IO_H_
#define MQM_CORPUS_IO_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "mqm/corpus.h"
#include "mqm/taxonomy.h"

// TSV importers and exporters. All formats are UTF-8, tab separated, one
// record per line, no quoting; tabs/newlines inside text are written as the
// literals \t and \n. Columns are located by header name and unknown columns
// are ignored, so files with extra columns (e.g. a `doc` name column) load as
// they are.
namespace mqm {

struct ImportOptions {
  // Lenient mode demotes LimitExceeded and UnknownCategory (mapped to Other)
  // to warnings and merges several <v> pairs of one row into a single span.
  ParseMode mode = ParseMode::kStrict;
};

// Header: system doc_id seg_id rater source target category severity. One row
// per error with the span marked inline by <v>...</v> in target (or source);
// a zero-error rating is one row with category `No-error`.
//
// Errors: MalformedRow, SpanMarkupError, TextMismatch, LimitExceeded (strict),
// UnknownCategory (strict).
Corpus ImportMqmTsv(std::istream& in, const ImportOptions& options = {},
                    std::vector<std::string>* warnings = nullptr);

// Header: system doc_id seg_id rater score. Errors: RangeError (with row
// number), MalformedRow.
std::vector<ScalarRating> ImportScalarTsv(std::istream& in, ScalarScale scale);

// `metric system score` (system level) or `metric system doc_id seg_id score`
// (segment level); the header line is optional. Errors: DuplicateKey,
// MalformedRow.
MetricScores ImportMetricScores(std::istream& in, MetricLevel level);

// Texts only: system doc_id seg_id source target. Used to seed campaigns.
Corpus ImportSegmentsTsv(std::istream& in);

void WriteSegmentsTsv(const Corpus& corpus, std::ostream& out);

// Inverse of ImportMqmTsv for the ratings held by `corpus`.
void WriteMqmTsv(const Corpus& corpus, std::ostream& out);
std::string MqmTsvRow(const Corpus& corpus, const SegmentRating& rating,
                      const ErrorAnnotation* annotation);
void WriteScalarTsv(const Corpus& corpus,
                    const std::vector<ScalarRating>& ratings,
                    std::ostream& out);

// File-path wrappers; Error(kIo) names the path when it cannot be opened.
Corpus LoadMqmFile(const std::string& path, const ImportOptions& options = {},
                   std::vector<std::string>* warnings = nullptr);
std::vector<ScalarRating> LoadScalarFile(const std::string& path,
                                         ScalarScale scale);
MetricScores LoadMetricFile(const std::string& path, MetricLevel level);

}  // namespace mqm

#endif  // MQM_CORPUS_IO_H_
