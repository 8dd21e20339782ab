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
#include "mqm/corpus_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "mqm/error.h"
#include "mqm/text.h"

namespace mqm {

namespace {

constexpr int kMaxScoringErrors = 5;

class TsvReader {
 public:
  explicit TsvReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. Blank lines are skipped.
  bool Next(std::vector<std::string_view>* fields) {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      if (text::Trim(line_).empty()) continue;
      *fields = text::SplitTabs(line_);
      return true;
    }
    return false;
  }

  int line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string line_;
  int line_no_ = 0;
};

std::string RowTag(int line_no) { return "row " + std::to_string(line_no); }

[[noreturn]] void Malformed(int line_no, const std::string& what) {
  throw Error(ErrorCode::kMalformedRow, RowTag(line_no) + ": " + what);
}

// Maps header names to column positions.
class Header {
 public:
  Header(const std::vector<std::string_view>& fields, int line_no)
      : line_no_(line_no), width_(fields.size()) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      index_.emplace(text::AsciiLower(text::Trim(fields[i])), i);
    }
  }

  std::optional<std::size_t> Find(
      std::initializer_list<std::string_view> names) const {
    for (auto n : names) {
      if (auto it = index_.find(std::string(n)); it != index_.end()) {
        return it->second;
      }
    }
    return std::nullopt;
  }

  std::size_t Require(std::initializer_list<std::string_view> names) const {
    if (auto i = Find(names)) return *i;
    Malformed(line_no_, "header lacks column '" +
                            std::string(*names.begin()) + "'");
  }

  std::size_t width() const { return width_; }

 private:
  int line_no_;
  std::size_t width_;
  std::map<std::string, std::size_t> index_;
};

double ParseNumber(std::string_view s, int line_no) {
  const std::string v(text::Trim(s));
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) {
    Malformed(line_no, "not a number: '" + v + "'");
  }
  return d;
}

std::string Field(std::string_view s) { return std::string(text::Trim(s)); }

bool IsUnsignedInteger(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

// Raw ids in order: numerically when every id is a non-negative integer,
// first appearance otherwise.
std::vector<std::string> OrderSegIds(std::vector<std::string> ids) {
  const bool numeric = std::all_of(ids.begin(), ids.end(), IsUnsignedInteger);
  if (numeric) {
    std::stable_sort(ids.begin(), ids.end(),
                     [](const std::string& a, const std::string& b) {
                       if (a.size() != b.size()) return a.size() < b.size();
                       return a < b;
                     });
  }
  return ids;
}

struct DocCollector {
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::string>> ids;
  std::map<std::string, std::set<std::string>> seen;

  void Add(const std::string& doc, const std::string& raw) {
    if (!ids.count(doc)) order.push_back(doc);
    if (seen[doc].insert(raw).second) ids[doc].push_back(raw);
  }

  void RegisterInto(Corpus* corpus) {
    for (const auto& doc : order) {
      corpus->RegisterDocument(doc, OrderSegIds(ids[doc]));
    }
  }
};

bool IsNoError(std::string_view category) {
  return NormalizeCategoryText(category) == "no error";
}

std::string CheckedText(std::string_view raw, int line_no) {
  std::string t = text::UnescapeField(raw);
  if (!text::IsValidUtf8(t)) Malformed(line_no, "invalid UTF-8");
  return t;
}

}  // namespace

Corpus ImportMqmTsv(std::istream& in, const ImportOptions& options,
                    std::vector<std::string>* warnings) {
  const bool lenient = options.mode == ParseMode::kLenient;
  auto warn = [warnings](std::string msg) {
    if (warnings != nullptr) warnings->push_back(std::move(msg));
  };

  TsvReader reader(in);
  std::vector<std::string_view> f;
  if (!reader.Next(&f)) Malformed(0, "missing header");
  const Header header(f, reader.line_no());
  const std::size_t c_system = header.Require({"system"});
  const std::size_t c_doc = header.Require({"doc_id", "doc"});
  const std::size_t c_seg = header.Require({"seg_id", "segment_id"});
  const std::size_t c_rater = header.Require({"rater", "rater_id"});
  const std::size_t c_source = header.Require({"source"});
  const std::size_t c_target = header.Require({"target"});
  const std::size_t c_category = header.Require({"category"});
  const std::size_t c_severity = header.Require({"severity"});

  using RawSegKey = std::tuple<std::string, std::string, std::string>;
  using RawRatingKey =
      std::tuple<std::string, std::string, std::string, std::string>;
  std::map<RawSegKey, SegmentText> texts;
  std::vector<RawSegKey> text_order;
  std::map<RawRatingKey, std::size_t> rating_index;
  struct Pending {
    RawSegKey seg;
    std::string rater;
    std::vector<ErrorAnnotation> annotations;
    int first_row = 0;
  };
  std::vector<Pending> pending;
  DocCollector docs;

  while (reader.Next(&f)) {
    const int row = reader.line_no();
    if (f.size() != header.width()) {
      Malformed(row, "expected " + std::to_string(header.width()) +
                         " columns, found " + std::to_string(f.size()));
    }
    const std::string system = Field(f[c_system]);
    const std::string doc = Field(f[c_doc]);
    const std::string seg = Field(f[c_seg]);
    const std::string rater = Field(f[c_rater]);
    if (system.empty() || doc.empty() || seg.empty() || rater.empty()) {
      Malformed(row, "empty key field");
    }

    text::MarkupError src_err = text::MarkupError::kNone;
    text::MarkupError tgt_err = text::MarkupError::kNone;
    auto src = text::StripSpanMarkers(CheckedText(f[c_source], row), lenient,
                                      &src_err);
    auto tgt = text::StripSpanMarkers(CheckedText(f[c_target], row), lenient,
                                      &tgt_err);
    if (src_err != text::MarkupError::kNone ||
        tgt_err != text::MarkupError::kNone) {
      const bool multiple = src_err == text::MarkupError::kMultiple ||
                            tgt_err == text::MarkupError::kMultiple;
      throw Error(ErrorCode::kSpanMarkupError,
                  RowTag(row) + (multiple ? ": more than one <v> pair"
                                          : ": unbalanced <v> markers"));
    }
    if (src.pairs > 1 || tgt.pairs > 1) {
      warn(RowTag(row) + ": several <v> pairs merged into one span");
    }
    if (src.span && tgt.span) {
      throw Error(ErrorCode::kSpanMarkupError,
                  RowTag(row) + ": <v> markers in both source and target");
    }

    RawSegKey seg_key{system, doc, seg};
    auto [tit, inserted] =
        texts.emplace(seg_key, SegmentText{src.text, tgt.text});
    if (inserted) {
      text_order.push_back(seg_key);
      docs.Add(doc, seg);
    } else if (tit->second.source != src.text ||
               tit->second.target != tgt.text) {
      throw Error(ErrorCode::kTextMismatch,
                  RowTag(row) + ": " + system + "/" + doc + "/" + seg +
                      " differs from an earlier row after markup removal");
    }

    RawRatingKey rkey{system, doc, seg, rater};
    auto [rit, new_rating] = rating_index.emplace(rkey, pending.size());
    if (new_rating) pending.push_back({seg_key, rater, {}, row});
    Pending& rating = pending[rit->second];

    const std::string_view category_text = f[c_category];
    if (IsNoError(category_text)) continue;

    ErrorAnnotation a;
    try {
      a.category = ParseCategory(category_text, ParseMode::kStrict);
    } catch (const Error&) {
      if (!lenient) {
        throw Error(ErrorCode::kUnknownCategory,
                    std::string(text::Trim(category_text)) + " (" +
                        RowTag(row) + ")");
      }
      warn(RowTag(row) + ": unknown category '" +
           std::string(text::Trim(category_text)) + "' mapped to Other");
      a.category = ErrorCategory(TopCategory::kOther);
    }
    try {
      a.severity = ParseSeverity(f[c_severity]);
    } catch (const Error&) {
      if (!lenient) {
        Malformed(row, "unknown severity '" + Field(f[c_severity]) + "'");
      }
      warn(RowTag(row) + ": unknown severity '" + Field(f[c_severity]) +
           "'; row ignored");
      continue;
    }
    if (tgt.span) {
      a.span = Span{Side::kTarget, tgt.span->start, tgt.span->end};
    } else if (src.span) {
      a.span = Span{Side::kSource, src.span->start, src.span->end};
    }
    rating.annotations.push_back(std::move(a));
  }

  Corpus corpus;
  docs.RegisterInto(&corpus);
  for (const auto& k : text_order) {
    const auto& [system, doc, seg] = k;
    corpus.AddSegment({system, doc, *corpus.ResolveSegIndex(doc, seg)},
                      texts.at(k));
  }
  for (auto& p : pending) {
    const auto& [system, doc, seg] = p.seg;
    SegmentRating r;
    r.key = {system, doc, *corpus.ResolveSegIndex(doc, seg)};
    r.rater_id = p.rater;
    r.annotations = std::move(p.annotations);
    const int n = r.ScoringErrorCount();
    if (n > kMaxScoringErrors) {
      const std::string msg = ToString(r.key) + " rater=" + r.rater_id +
                              " has " + std::to_string(n) +
                              " scoring errors (" + RowTag(p.first_row) + ")";
      if (!lenient) throw Error(ErrorCode::kLimitExceeded, msg);
      warn(msg);
    }
    corpus.AddMqmRating(std::move(r));
  }
  return corpus;
}

std::vector<ScalarRating> ImportScalarTsv(std::istream& in, ScalarScale scale) {
  TsvReader reader(in);
  std::vector<std::string_view> f;
  if (!reader.Next(&f)) return {};
  std::size_t c_system = 0, c_doc = 1, c_seg = 2, c_rater = 3, c_score = 4;
  std::size_t width = 5;
  std::vector<ScalarRating> out;
  const bool has_header = text::AsciiLower(text::Trim(f[0])) == "system";
  if (has_header) {
    const Header header(f, reader.line_no());
    c_system = header.Require({"system"});
    c_doc = header.Require({"doc_id", "doc"});
    c_seg = header.Require({"seg_id", "segment_id"});
    c_rater = header.Require({"rater", "rater_id"});
    c_score = header.Require({"score", "value"});
    width = header.width();
  }
  bool have_row = !has_header;
  while (have_row || reader.Next(&f)) {
    have_row = false;
    const int row = reader.line_no();
    if (f.size() != width) {
      Malformed(row, "expected " + std::to_string(width) + " columns, found " +
                         std::to_string(f.size()));
    }
    ScalarRating r;
    r.key.system = Field(f[c_system]);
    r.key.doc_id = Field(f[c_doc]);
    r.raw_seg_id = Field(f[c_seg]);
    r.rater_id = Field(f[c_rater]);
    r.value = ParseNumber(f[c_score], row);
    r.scale = scale;
    try {
      CheckScalarRange(scale, r.value);
    } catch (const Error& e) {
      throw Error(ErrorCode::kRangeError, RowTag(row) + ": " + e.detail());
    }
    out.push_back(std::move(r));
  }
  return out;
}

MetricScores ImportMetricScores(std::istream& in, MetricLevel level) {
  TsvReader reader(in);
  std::vector<std::string_view> f;
  MetricScores scores;
  const std::size_t width = level == MetricLevel::kSystem ? 3 : 5;
  bool first = true;
  while (reader.Next(&f)) {
    const int row = reader.line_no();
    if (first) {
      first = false;
      if (text::AsciiLower(text::Trim(f[0])) == "metric") continue;
    }
    if (f.size() != width) {
      Malformed(row, "expected " + std::to_string(width) + " columns, found " +
                         std::to_string(f.size()));
    }
    try {
      if (level == MetricLevel::kSystem) {
        scores.AddSystemScore(Field(f[0]), Field(f[1]), ParseNumber(f[2], row));
      } else {
        scores.AddSegmentScore(Field(f[0]), Field(f[1]), Field(f[2]),
                               Field(f[3]), ParseNumber(f[4], row));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDuplicateKey) throw;
      throw Error(ErrorCode::kDuplicateKey, RowTag(row) + ": " + e.detail());
    }
  }
  return scores;
}

Corpus ImportSegmentsTsv(std::istream& in) {
  TsvReader reader(in);
  std::vector<std::string_view> f;
  if (!reader.Next(&f)) Malformed(0, "missing header");
  const Header header(f, reader.line_no());
  const std::size_t c_system = header.Require({"system"});
  const std::size_t c_doc = header.Require({"doc_id", "doc"});
  const std::size_t c_seg = header.Require({"seg_id", "segment_id"});
  const std::size_t c_source = header.Require({"source"});
  const std::size_t c_target = header.Require({"target"});

  using RawSegKey = std::tuple<std::string, std::string, std::string>;
  std::map<RawSegKey, SegmentText> texts;
  std::vector<RawSegKey> order;
  DocCollector docs;
  while (reader.Next(&f)) {
    const int row = reader.line_no();
    if (f.size() != header.width()) {
      Malformed(row, "expected " + std::to_string(header.width()) +
                         " columns, found " + std::to_string(f.size()));
    }
    text::MarkupError e1, e2;
    auto src = text::StripSpanMarkers(CheckedText(f[c_source], row), true, &e1);
    auto tgt = text::StripSpanMarkers(CheckedText(f[c_target], row), true, &e2);
    if (e1 != text::MarkupError::kNone || e2 != text::MarkupError::kNone) {
      throw Error(ErrorCode::kSpanMarkupError, RowTag(row));
    }
    RawSegKey k{Field(f[c_system]), Field(f[c_doc]), Field(f[c_seg])};
    auto [it, inserted] = texts.emplace(k, SegmentText{src.text, tgt.text});
    if (inserted) {
      order.push_back(k);
      docs.Add(std::get<1>(k), std::get<2>(k));
    } else if (it->second.source != src.text ||
               it->second.target != tgt.text) {
      throw Error(ErrorCode::kTextMismatch, RowTag(row));
    }
  }
  Corpus corpus;
  docs.RegisterInto(&corpus);
  for (const auto& k : order) {
    const auto& [system, doc, seg] = k;
    corpus.AddSegment({system, doc, *corpus.ResolveSegIndex(doc, seg)},
                      texts.at(k));
  }
  return corpus;
}

void WriteSegmentsTsv(const Corpus& corpus, std::ostream& out) {
  out << "system\tdoc_id\tseg_id\tsource\ttarget\n";
  for (const auto& doc : corpus.doc_ids()) {
    for (const auto& system : corpus.systems()) {
      for (int i = 0; i < corpus.DocumentLength(doc); ++i) {
        const SegmentText* t = corpus.FindSegment({system, doc, i});
        if (t == nullptr) continue;
        out << system << '\t' << doc << '\t' << corpus.RawSegId(doc, i) << '\t'
            << text::EscapeField(t->source) << '\t'
            << text::EscapeField(t->target) << '\n';
      }
    }
  }
}

std::string MqmTsvRow(const Corpus& corpus, const SegmentRating& rating,
                      const ErrorAnnotation* annotation) {
  const SegmentText* text = corpus.FindSegment(rating.key);
  std::string source = text ? text->source : std::string();
  std::string target = text ? text->target : std::string();
  std::string category = "No-error";
  std::string severity = "No-error";
  if (annotation != nullptr) {
    category = annotation->category.canonical();
    severity = std::string(SeverityName(annotation->severity));
    if (annotation->span) {
      const auto& s = *annotation->span;
      std::string& side = s.side == Side::kSource ? source : target;
      side = text::InsertSpanMarkers(side, {s.start, s.end});
    }
  }
  std::string row;
  row += rating.key.system;
  row += '\t';
  row += rating.key.doc_id;
  row += '\t';
  row += corpus.RawSegId(rating.key.doc_id, rating.key.seg_index);
  row += '\t';
  row += rating.rater_id;
  row += '\t';
  row += text::EscapeField(source);
  row += '\t';
  row += text::EscapeField(target);
  row += '\t';
  row += category;
  row += '\t';
  row += severity;
  return row;
}

void WriteMqmTsv(const Corpus& corpus, std::ostream& out) {
  out << "system\tdoc_id\tseg_id\trater\tsource\ttarget\tcategory\tseverity\n";
  for (const auto& r : corpus.mqm_ratings()) {
    if (r.annotations.empty()) {
      out << MqmTsvRow(corpus, r, nullptr) << '\n';
      continue;
    }
    for (const auto& a : r.annotations) {
      out << MqmTsvRow(corpus, r, &a) << '\n';
    }
  }
}

void WriteScalarTsv(const Corpus& corpus,
                    const std::vector<ScalarRating>& ratings,
                    std::ostream& out) {
  out << "system\tdoc_id\tseg_id\trater\tscore\n";
  for (const auto& r : ratings) {
    const std::string seg = r.key.seg_index >= 0
                                ? corpus.RawSegId(r.key.doc_id, r.key.seg_index)
                                : r.raw_seg_id;
    std::ostringstream v;
    v.precision(17);
    v << r.value;
    out << r.key.system << '\t' << r.key.doc_id << '\t' << seg << '\t'
        << r.rater_id << '\t' << v.str() << '\n';
  }
}

Corpus LoadMqmFile(const std::string& path, const ImportOptions& options,
                   std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ImportMqmTsv(in, options, warnings);
}

std::vector<ScalarRating> LoadScalarFile(const std::string& path,
                                         ScalarScale scale) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ImportScalarTsv(in, scale);
}

MetricScores LoadMetricFile(const std::string& path, MetricLevel level) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ImportMetricScores(in, level);
}

}  // namespace mqm
