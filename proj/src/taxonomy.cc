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
#include "mqm/taxonomy.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mqm/error.h"
#include "mqm/text.h"

namespace mqm {

namespace {

struct TopInfo {
  TopCategory top;
  std::string_view name;
  std::vector<std::string_view> aliases;
};

struct SubInfo {
  SubCategory sub;
  TopCategory parent;
  std::string_view name;
  std::vector<std::string_view> aliases;
};

const std::vector<TopInfo>& Tops() {
  static const std::vector<TopInfo> tops = {
      {TopCategory::kAccuracy, "Accuracy", {}},
      {TopCategory::kFluency, "Fluency", {}},
      {TopCategory::kTerminology, "Terminology", {}},
      {TopCategory::kStyle, "Style", {}},
      {TopCategory::kLocaleConvention, "Locale convention", {"locale"}},
      {TopCategory::kOther, "Other", {}},
      {TopCategory::kSourceError, "Source error", {"source"}},
      {TopCategory::kNonTranslation, "Non-translation", {"nontranslation"}},
  };
  return tops;
}

const std::vector<SubInfo>& Subs() {
  static const std::vector<SubInfo> subs = {
      {SubCategory::kAddition, TopCategory::kAccuracy, "Addition", {}},
      {SubCategory::kOmission, TopCategory::kAccuracy, "Omission", {}},
      {SubCategory::kMistranslation, TopCategory::kAccuracy, "Mistranslation",
       {}},
      {SubCategory::kUntranslatedText, TopCategory::kAccuracy,
       "Untranslated text", {"untranslated", "untranslated tex"}},
      {SubCategory::kPunctuation, TopCategory::kFluency, "Punctuation", {}},
      {SubCategory::kSpelling, TopCategory::kFluency, "Spelling", {}},
      {SubCategory::kGrammar, TopCategory::kFluency, "Grammar", {}},
      {SubCategory::kRegister, TopCategory::kFluency, "Register", {}},
      {SubCategory::kInconsistency, TopCategory::kFluency, "Inconsistency", {}},
      {SubCategory::kCharacterEncoding, TopCategory::kFluency,
       "Character encoding", {"character enc", "encoding"}},
      {SubCategory::kInappropriateForContext, TopCategory::kTerminology,
       "Inappropriate for context", {"inappropriate"}},
      {SubCategory::kInconsistentUse, TopCategory::kTerminology,
       "Inconsistent use", {"inconsistent"}},
      {SubCategory::kAwkward, TopCategory::kStyle, "Awkward", {}},
      {SubCategory::kAddressFormat, TopCategory::kLocaleConvention,
       "Address format", {"address"}},
      {SubCategory::kCurrencyFormat, TopCategory::kLocaleConvention,
       "Currency format", {"currency"}},
      {SubCategory::kDateFormat, TopCategory::kLocaleConvention, "Date format",
       {"date"}},
      {SubCategory::kNameFormat, TopCategory::kLocaleConvention, "Name format",
       {"name"}},
      {SubCategory::kTelephoneFormat, TopCategory::kLocaleConvention,
       "Telephone format", {"telephone"}},
      {SubCategory::kTimeFormat, TopCategory::kLocaleConvention, "Time format",
       {"time"}},
  };
  return subs;
}

const TopInfo& InfoOf(TopCategory top) {
  for (const auto& t : Tops()) {
    if (t.top == top) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown top-level category");
}

const SubInfo* InfoOf(SubCategory sub) {
  for (const auto& s : Subs()) {
    if (s.sub == sub) return &s;
  }
  return nullptr;
}

const std::map<std::string, ErrorCategory>& LookupTable() {
  static const std::map<std::string, ErrorCategory> table = [] {
    std::map<std::string, ErrorCategory> t;
    auto add = [&t](std::string_view key, ErrorCategory c) {
      auto [it, inserted] = t.emplace(NormalizeCategoryText(key), c);
      if (!inserted && it->second != c) {
        throw Error(ErrorCode::kInvalidArgument,
                    "ambiguous category key: " + std::string(key));
      }
    };
    for (const auto& top : Tops()) {
      std::vector<std::string_view> top_names = {top.name};
      top_names.insert(top_names.end(), top.aliases.begin(),
                       top.aliases.end());
      for (auto tn : top_names) {
        add(tn, ErrorCategory(top.top));
        for (const auto& sub : Subs()) {
          if (sub.parent != top.top) continue;
          std::vector<std::string_view> sub_names = {sub.name};
          sub_names.insert(sub_names.end(), sub.aliases.begin(),
                           sub.aliases.end());
          for (auto sn : sub_names) {
            add(std::string(tn) + "/" + std::string(sn),
                ErrorCategory(top.top, sub.sub));
          }
        }
      }
    }
    return t;
  }();
  return table;
}

bool IsSeparator(char c) {
  return c == '/' || c == '-' || c == '_' ||
         std::isspace(static_cast<unsigned char>(c));
}

bool IsTrailingPunct(char c) {
  return c == '!' || c == '?' || c == '.' || c == ';' || c == ':';
}

}  // namespace

ErrorCategory::ErrorCategory(TopCategory top, SubCategory sub)
    : top_(top), sub_(sub) {
  if (sub == SubCategory::kNone) return;
  const SubInfo* info = InfoOf(sub);
  if (info == nullptr || info->parent != top) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(SubCategoryName(sub)) + " is not a sub-category of " +
                    std::string(TopCategoryName(top)));
  }
}

std::string ErrorCategory::canonical() const {
  std::string out(TopCategoryName(top_));
  if (has_sub()) {
    out += '/';
    out += SubCategoryName(sub_);
  }
  return out;
}

std::string_view TopCategoryName(TopCategory top) { return InfoOf(top).name; }

std::string_view SubCategoryName(SubCategory sub) {
  const SubInfo* info = InfoOf(sub);
  return info == nullptr ? std::string_view() : info->name;
}

std::vector<SubCategory> SubCategoriesOf(TopCategory top) {
  std::vector<SubCategory> out;
  for (const auto& s : Subs()) {
    if (s.parent == top) out.push_back(s.sub);
  }
  return out;
}

const std::vector<ErrorCategory>& AllCategories() {
  static const std::vector<ErrorCategory> all = [] {
    std::vector<ErrorCategory> v;
    for (const auto& t : Tops()) {
      v.emplace_back(t.top);
      for (SubCategory s : SubCategoriesOf(t.top)) v.emplace_back(t.top, s);
    }
    return v;
  }();
  return all;
}

std::string_view SeverityName(Severity s) {
  switch (s) {
    case Severity::kMajor:
      return "Major";
    case Severity::kMinor:
      return "Minor";
    case Severity::kNeutral:
      return "Neutral";
  }
  return "";
}

Severity ParseSeverity(std::string_view text) {
  const std::string key = text::AsciiLower(text::Trim(text));
  if (key == "major") return Severity::kMajor;
  if (key == "minor") return Severity::kMinor;
  if (key == "neutral") return Severity::kNeutral;
  throw Error(ErrorCode::kUnknownSeverity, std::string(text));
}

std::string NormalizeCategoryText(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_sep = false;
  for (char c : text) {
    if (IsSeparator(c)) {
      pending_sep = !out.empty();
      continue;
    }
    if (pending_sep) out.push_back(' ');
    pending_sep = false;
    out.push_back(
        static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  while (!out.empty() && (IsTrailingPunct(out.back()) || out.back() == ' ')) {
    out.pop_back();
  }
  return out;
}

ErrorCategory ParseCategory(std::string_view text, ParseMode mode) {
  const std::string key = NormalizeCategoryText(text);
  const auto& table = LookupTable();
  if (auto it = table.find(key); it != table.end()) return it->second;
  if (mode == ParseMode::kLenient) return ErrorCategory(TopCategory::kOther);
  throw Error(ErrorCode::kUnknownCategory, std::string(text));
}

CategoryPattern CategoryPattern::Subtree(TopCategory top) {
  CategoryPattern p;
  p.kind_ = Kind::kSubtree;
  p.category_ = ErrorCategory(top);
  return p;
}

CategoryPattern CategoryPattern::Exact(ErrorCategory c) {
  CategoryPattern p;
  p.kind_ = Kind::kExact;
  p.category_ = c;
  return p;
}

CategoryPattern CategoryPattern::Parse(std::string_view text) {
  const auto trimmed = text::Trim(text);
  if (trimmed == "*") return Any();
  ErrorCategory c = ParseCategory(trimmed, ParseMode::kStrict);
  return c.has_sub() ? Exact(c) : Subtree(c.top());
}

bool CategoryPattern::Matches(const ErrorCategory& c) const {
  switch (kind_) {
    case Kind::kAny:
      return true;
    case Kind::kSubtree:
      return c.top() == category_.top();
    case Kind::kExact:
      return c == category_;
  }
  return false;
}

std::string CategoryPattern::ToString() const {
  return kind_ == Kind::kAny ? std::string("*") : category_.canonical();
}

WeightScheme::WeightScheme(std::string name, std::vector<WeightRule> rules)
    : name_(std::move(name)), rules_(std::move(rules)) {
  for (const auto& r : rules_) {
    if (!std::isfinite(r.weight) || r.weight < 0.0) {
      throw Error(ErrorCode::kInvalidScheme,
                  "weight must be finite and non-negative in scheme " + name_);
    }
  }
  for (Severity s : {Severity::kMajor, Severity::kMinor, Severity::kNeutral}) {
    const bool has_catch_all =
        std::any_of(rules_.begin(), rules_.end(), [s](const WeightRule& r) {
          return (!r.severity || *r.severity == s) && r.pattern.is_wildcard();
        });
    if (!has_catch_all) {
      throw Error(ErrorCode::kInvalidScheme,
                  "no catch-all rule for severity " +
                      std::string(SeverityName(s)) + " in scheme " + name_);
    }
  }
}

const WeightScheme& WeightScheme::Default() {
  static const WeightScheme scheme = WithMajorWeight(5.0);
  return scheme;
}

WeightScheme WeightScheme::WithMajorWeight(double major) {
  using C = CategoryPattern;
  std::vector<WeightRule> rules = {
      {std::nullopt, C::Subtree(TopCategory::kSourceError), 0.0},
      {Severity::kMajor, C::Subtree(TopCategory::kNonTranslation), 5.0 * major},
      {Severity::kMajor, C::Any(), major},
      {Severity::kMinor,
       C::Exact(ErrorCategory(TopCategory::kFluency, SubCategory::kPunctuation)),
       0.1},
      {Severity::kMinor, C::Any(), 1.0},
      {Severity::kNeutral, C::Any(), 0.0},
  };
  std::ostringstream name;
  if (major == 5.0) {
    name << "default";
  } else {
    name << "major=" << major;
  }
  return WeightScheme(name.str(), std::move(rules));
}

WeightScheme WeightScheme::FromTsv(std::istream& in, std::string name) {
  std::vector<WeightRule> rules;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto trimmed = text::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto fields = text::SplitTabs(line);
    if (fields.size() != 3) {
      throw Error(ErrorCode::kInvalidScheme,
                  "line " + std::to_string(line_no) + ": expected 3 columns");
    }
    if (!header_seen) {
      header_seen = true;
      if (text::AsciiLower(text::Trim(fields[0])) == "severity") continue;
    }
    WeightRule rule;
    const auto sev = text::Trim(fields[0]);
    if (sev != "*") rule.severity = ParseSeverity(sev);
    try {
      rule.pattern = CategoryPattern::Parse(fields[1]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidScheme,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string w(text::Trim(fields[2]));
    char* end = nullptr;
    rule.weight = std::strtod(w.c_str(), &end);
    if (w.empty() || end != w.c_str() + w.size()) {
      throw Error(ErrorCode::kInvalidScheme,
                  "line " + std::to_string(line_no) + ": bad weight '" + w +
                      "'");
    }
    rules.push_back(rule);
  }
  return WeightScheme(std::move(name), std::move(rules));
}

WeightScheme WeightScheme::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open weight scheme " + path);
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) {
    name = name.substr(slash + 1);
  }
  if (auto dot = name.rfind(".tsv"); dot != std::string::npos) {
    name.resize(dot);
  }
  return FromTsv(in, name);
}

void WeightScheme::WriteTsv(std::ostream& out) const {
  out << "severity\tcategory_pattern\tweight\n";
  for (const auto& r : rules_) {
    out << (r.severity ? SeverityName(*r.severity) : "*") << '\t'
        << r.pattern.ToString() << '\t' << r.weight << '\n';
  }
}

double WeightScheme::WeightOf(Severity s, const ErrorCategory& c) const {
  for (const auto& r : rules_) {
    if (r.Matches(s, c)) return r.weight;
  }
  // Unreachable: the constructor guarantees a catch-all per severity.
  throw Error(ErrorCode::kInvalidScheme, "no rule matched in " + name_);
}

double WeightScheme::MaxWeight() const {
  double m = 0.0;
  for (const auto& r : rules_) m = std::max(m, r.weight);
  return m;
}

}  // namespace mqm
