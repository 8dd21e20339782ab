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
#ifndef MQM_TAXONOMY_H_
#define MQM_TAXONOMY_H_

#include <compare>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mqm {

enum class TopCategory {
  kAccuracy,
  kFluency,
  kTerminology,
  kStyle,
  kLocaleConvention,
  kOther,
  kSourceError,
  kNonTranslation,
};

enum class SubCategory {
  kNone,
  // Accuracy
  kAddition,
  kOmission,
  kMistranslation,
  kUntranslatedText,
  // Fluency
  kPunctuation,
  kSpelling,
  kGrammar,
  kRegister,
  kInconsistency,
  kCharacterEncoding,
  // Terminology
  kInappropriateForContext,
  kInconsistentUse,
  // Style
  kAwkward,
  // Locale convention
  kAddressFormat,
  kCurrencyFormat,
  kDateFormat,
  kNameFormat,
  kTelephoneFormat,
  kTimeFormat,
};

// One node of the error hierarchy. A category is either a bare top-level
// category or a (top, sub) pair where sub belongs to top.
class ErrorCategory {
 public:
  constexpr ErrorCategory() = default;
  // Throws Error(kInvalidArgument) when sub does not belong to top.
  ErrorCategory(TopCategory top, SubCategory sub = SubCategory::kNone);

  TopCategory top() const { return top_; }
  SubCategory sub() const { return sub_; }
  bool has_sub() const { return sub_ != SubCategory::kNone; }

  bool is_source_error() const { return top_ == TopCategory::kSourceError; }
  bool is_non_translation() const {
    return top_ == TopCategory::kNonTranslation;
  }
  // Everything except source errors counts toward the per-segment cap.
  bool counts_toward_cap() const { return !is_source_error(); }

  // "Top/Sub" or "Top" using the display names of the hierarchy table.
  std::string canonical() const;

  auto operator<=>(const ErrorCategory&) const = default;

 private:
  TopCategory top_ = TopCategory::kOther;
  SubCategory sub_ = SubCategory::kNone;
};

enum class Severity { kMajor, kMinor, kNeutral };

std::string_view SeverityName(Severity s);
// Case-insensitive. Throws Error(kUnknownSeverity).
Severity ParseSeverity(std::string_view text);

std::string_view TopCategoryName(TopCategory top);
std::string_view SubCategoryName(SubCategory sub);
// Sub-categories of a top-level category, in hierarchy order.
std::vector<SubCategory> SubCategoriesOf(TopCategory top);
// Every category, bare top-levels included, in hierarchy order.
const std::vector<ErrorCategory>& AllCategories();

enum class ParseMode { kStrict, kLenient };

// Case-folding, trimming and separator normalization ("/", "-", "_" and
// whitespace runs are equivalent); trailing punctuation is dropped. Strict
// mode throws Error(kUnknownCategory) carrying the text; lenient mode maps
// unknown text to Other.
ErrorCategory ParseCategory(std::string_view text,
                            ParseMode mode = ParseMode::kStrict);

// Key used by ParseCategory for lookups; exposed for tests and importers.
std::string NormalizeCategoryText(std::string_view text);

// Category side of a weight rule: "*", a top-level name (matches the whole
// subtree) or an exact "Top/Sub".
class CategoryPattern {
 public:
  static CategoryPattern Any() { return CategoryPattern(); }
  static CategoryPattern Subtree(TopCategory top);
  static CategoryPattern Exact(ErrorCategory c);
  // "*" or any string accepted by ParseCategory in strict mode. A bare
  // top-level name denotes the subtree.
  static CategoryPattern Parse(std::string_view text);

  bool Matches(const ErrorCategory& c) const;
  bool is_wildcard() const { return kind_ == Kind::kAny; }
  std::string ToString() const;

  bool operator==(const CategoryPattern&) const = default;

 private:
  enum class Kind { kAny, kSubtree, kExact };
  Kind kind_ = Kind::kAny;
  ErrorCategory category_;
};

struct WeightRule {
  std::optional<Severity> severity;  // nullopt matches every severity
  CategoryPattern pattern;
  double weight = 0.0;

  bool Matches(Severity s, const ErrorCategory& c) const {
    return (!severity || *severity == s) && pattern.Matches(c);
  }
};

// Ordered (severity, category pattern) -> weight rules; the first matching
// rule wins. Construction validates that every severity has a catch-all and
// that weights are finite and non-negative.
class WeightScheme {
 public:
  WeightScheme(std::string name, std::vector<WeightRule> rules);

  // Major 5 / Non-translation 25 / Minor 1 / Minor Fluency/Punctuation 0.1 /
  // Neutral 0 / source errors 0.
  static const WeightScheme& Default();

  // The default scheme with Major set to `major` and Non-translation to
  // 5 * `major`. Used by the Major-weight sweep.
  static WeightScheme WithMajorWeight(double major);

  // TSV with header `severity  category_pattern  weight`; `*` is the
  // wildcard in either of the first two columns; `#` starts a comment line.
  static WeightScheme FromTsv(std::istream& in, std::string name);
  static WeightScheme FromFile(const std::string& path);
  void WriteTsv(std::ostream& out) const;

  double WeightOf(Severity s, const ErrorCategory& c) const;

  const std::string& name() const { return name_; }
  const std::vector<WeightRule>& rules() const { return rules_; }
  // Largest weight any single annotation can receive.
  double MaxWeight() const;

 private:
  std::string name_;
  std::vector<WeightRule> rules_;
};

}  // namespace mqm

#endif  // MQM_TAXONOMY_H_
