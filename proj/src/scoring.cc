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
#include "mqm/scoring.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mqm/error.h"
#include "mqm/kernels.h"

namespace mqm {

std::string_view OrientationName(Orientation o) {
  return o == Orientation::kLowerBetter ? "lower-better" : "higher-better";
}

AnnotationFilter AnnotationFilter::BySeverity(Severity s) {
  AnnotationFilter f;
  f.severity = s;
  return f;
}

AnnotationFilter AnnotationFilter::ByPattern(CategoryPattern p) {
  AnnotationFilter f;
  f.include.push_back(std::move(p));
  return f;
}

AnnotationFilter AnnotationFilter::ByTop(TopCategory top) {
  return ByPattern(CategoryPattern::Subtree(top));
}

AnnotationFilter AnnotationFilter::OtherThanAccuracyFluency() {
  AnnotationFilter f;
  f.exclude.push_back(CategoryPattern::Subtree(TopCategory::kAccuracy));
  f.exclude.push_back(CategoryPattern::Subtree(TopCategory::kFluency));
  return f;
}

bool AnnotationFilter::Accepts(const ErrorAnnotation& a) const {
  if (severity && *severity != a.severity) return false;
  if (!include.empty() &&
      std::none_of(include.begin(), include.end(),
                   [&](const auto& p) { return p.Matches(a.category); })) {
    return false;
  }
  return std::none_of(exclude.begin(), exclude.end(),
                      [&](const auto& p) { return p.Matches(a.category); });
}

std::string AnnotationFilter::Describe() const {
  std::string out;
  auto add = [&](const std::string& part) {
    if (!out.empty()) out += ';';
    out += part;
  };
  if (severity) add("severity=" + std::string(SeverityName(*severity)));
  for (const auto& p : include) add("category=" + p.ToString());
  for (const auto& p : exclude) add("exclude=" + p.ToString());
  return out.empty() ? "all" : out;
}

double ScoreRating(const SegmentRating& rating, const WeightScheme& scheme,
                   const AnnotationFilter& filter) {
  double s = 0.0;
  for (const auto& a : rating.annotations) {
    if (filter.Accepts(a)) s += scheme.WeightOf(a.severity, a.category);
  }
  return s;
}

double ScoreSegment(const std::vector<SegmentRating>& ratings,
                    const WeightScheme& scheme,
                    const AnnotationFilter& filter) {
  if (ratings.empty()) throw Error(ErrorCode::kNoRatings, "segment has no ratings");
  double s = 0.0;
  for (const auto& r : ratings) s += ScoreRating(r, scheme, filter);
  return s / static_cast<double>(ratings.size());
}

namespace {

std::vector<double> ScoreAllRatings(const Corpus& corpus,
                                    const WeightScheme& scheme,
                                    const AnnotationFilter& filter) {
  const auto& ratings = corpus.mqm_ratings();
  kernels::RatingWeights flat;
  flat.offsets.reserve(ratings.size() + 1);
  for (const auto& r : ratings) {
    for (const auto& a : r.annotations) {
      if (filter.Accepts(a)) {
        flat.weights.push_back(scheme.WeightOf(a.severity, a.category));
      }
    }
    flat.offsets.push_back(flat.weights.size());
  }
  std::vector<double> out(ratings.size());
  kernels::omp::ScoreRatings(flat, out);
  return out;
}

}  // namespace

SegmentScores ComputeSegmentScores(const Corpus& corpus,
                                   const WeightScheme& scheme,
                                   const AnnotationFilter& filter) {
  const auto per_rating = ScoreAllRatings(corpus, scheme, filter);
  SegmentScores out;
  const auto& ratings = corpus.mqm_ratings();
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    out.score[ratings[i].key] += per_rating[i];
    out.raters[ratings[i].key] += 1;
  }
  for (auto& [key, s] : out.score) s /= out.raters[key];
  return out;
}

std::string_view ReportLevelName(ReportLevel level) {
  switch (level) {
    case ReportLevel::kRating: return "rating";
    case ReportLevel::kSegment: return "segment";
    case ReportLevel::kDocument: return "document";
    case ReportLevel::kSystem: return "system";
  }
  return "?";
}

const ScoreEntry* ScoreReport::FindSystem(const std::string& system) const {
  for (const auto& e : entries) {
    if (e.system == system && e.doc_id.empty()) return &e;
  }
  return nullptr;
}

const ScoreEntry* ScoreReport::FindDocument(const std::string& system,
                                            const std::string& doc_id) const {
  for (const auto& e : entries) {
    if (e.system == system && e.doc_id == doc_id && e.seg_index < 0) return &e;
  }
  return nullptr;
}

std::map<std::string, double> ScoreReport::SystemScores() const {
  std::map<std::string, double> out;
  for (const auto& e : entries) {
    if (e.doc_id.empty()) out[e.system] = e.score;
  }
  return out;
}

ScoreReport Aggregate(const Corpus& corpus, const WeightScheme& scheme,
                      ReportLevel level, const AnnotationFilter& filter) {
  if (corpus.mqm_ratings().empty()) {
    throw Error(ErrorCode::kNoRatings, "corpus has no MQM ratings");
  }
  ScoreReport report;
  report.level = level;
  report.scheme_name = scheme.name();
  report.filter = filter.Describe();

  if (level == ReportLevel::kRating) {
    const auto scores = ScoreAllRatings(corpus, scheme, filter);
    const auto& ratings = corpus.mqm_ratings();
    std::vector<std::size_t> order(ratings.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
      return std::tie(ratings[x].key, ratings[x].rater_id) <
             std::tie(ratings[y].key, ratings[y].rater_id);
    });
    for (auto i : order) {
      const auto& r = ratings[i];
      report.entries.push_back({r.key.system, r.key.doc_id, r.key.seg_index,
                                r.rater_id, scores[i], 1});
    }
    return report;
  }

  const auto seg = ComputeSegmentScores(corpus, scheme, filter);
  if (level == ReportLevel::kSegment) {
    for (const auto& [key, s] : seg.score) {
      report.entries.push_back(
          {key.system, key.doc_id, key.seg_index, "", s, seg.raters.at(key)});
    }
    return report;
  }

  // Sums in segment order, so a document or system mean does not depend on
  // how ratings were ordered in the input.
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> acc;
  for (const auto& [key, s] : seg.score) {
    const std::string doc =
        level == ReportLevel::kDocument ? key.doc_id : std::string();
    auto& [sum, n] = acc[{key.system, doc}];
    sum += s;
    ++n;
  }
  for (const auto& [k, v] : acc) {
    report.entries.push_back(
        {k.first, k.second, -1, "", v.first / v.second, v.second});
  }
  return report;
}

namespace {

struct GroupMean {
  double sum = 0.0;
  int n = 0;
  double mean() const { return n > 0 ? sum / n : 0.0; }
};

// Mean segment score per column group; a system may sit in several groups.
std::vector<double> ColumnMeans(
    const SegmentScores& seg,
    const std::vector<std::set<std::string>>& columns) {
  std::vector<GroupMean> acc(columns.size());
  for (const auto& [key, s] : seg.score) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].count(key.system)) {
        acc[c].sum += s;
        ++acc[c].n;
      }
    }
  }
  std::vector<double> out;
  for (const auto& g : acc) out.push_back(g.mean());
  return out;
}

double Ratio(double value, double human) {
  if (human == 0.0) {
    return value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return value / human;
}

}  // namespace

CategoryBreakdown BreakdownByCategory(const Corpus& corpus,
                                      const WeightScheme& scheme,
                                      const BreakdownGroups& groups) {
  if (groups.human.empty()) {
    throw Error(ErrorCode::kEmptyGroup, "no human systems given");
  }
  std::set<std::string> rated;
  for (const auto& r : corpus.mqm_ratings()) rated.insert(r.key.system);
  for (const auto& h : groups.human) {
    if (!rated.count(h)) {
      throw Error(ErrorCode::kEmptyGroup, "human system has no ratings: " + h);
    }
  }
  std::set<std::string> mt = groups.mt;
  if (mt.empty()) {
    for (const auto& s : rated) {
      if (!groups.human.count(s)) mt.insert(s);
    }
  }
  if (mt.empty()) throw Error(ErrorCode::kEmptyGroup, "no MT systems rated");
  for (const auto& s : mt) {
    if (groups.human.count(s)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "system is both human and MT: " + s);
    }
    if (!rated.count(s)) {
      throw Error(ErrorCode::kEmptyGroup, "MT system has no ratings: " + s);
    }
  }
  for (const auto& s : groups.focus) {
    if (groups.human.count(s)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "focus system is also human: " + s);
    }
    if (!rated.count(s)) {
      throw Error(ErrorCode::kEmptyGroup, "focus system has no ratings: " + s);
    }
  }

  CategoryBreakdown out;
  out.scheme_name = scheme.name();
  out.columns = {"Human", "All MT"};
  std::vector<std::set<std::string>> columns = {groups.human, mt};
  for (const auto& f : groups.focus) {
    out.columns.push_back(f);
    columns.push_back({f});
  }

  // Error and Major counts per category over human + MT outputs.
  std::map<ErrorCategory, std::pair<int, int>> counts;
  int total = 0;
  for (const auto& r : corpus.mqm_ratings()) {
    if (!groups.human.count(r.key.system) && !mt.count(r.key.system)) continue;
    for (const auto& a : r.annotations) {
      if (a.category.is_source_error()) continue;
      auto& [n, major] = counts[a.category];
      ++n;
      if (a.severity == Severity::kMajor) ++major;
      ++total;
    }
  }

  auto make_row = [&](std::string label, bool is_group,
                      const AnnotationFilter& filter, int errors, int major) {
    BreakdownRow row;
    row.label = std::move(label);
    row.is_group = is_group;
    row.errors = errors;
    row.error_pct = total > 0 ? 100.0 * errors / total : 0.0;
    row.major_pct = errors > 0 ? 100.0 * major / errors : 0.0;
    row.mqm = ColumnMeans(ComputeSegmentScores(corpus, scheme, filter), columns);
    for (double v : row.mqm) row.ratio.push_back(Ratio(v, row.mqm[0]));
    return row;
  };

  for (const auto& [cat, c] : counts) {
    out.categories.push_back(
        make_row(cat.canonical(), false,
                 AnnotationFilter::ByPattern(CategoryPattern::Exact(cat)),
                 c.first, c.second));
  }
  std::stable_sort(out.categories.begin(), out.categories.end(),
                   [](const BreakdownRow& x, const BreakdownRow& y) {
                     return x.mqm[0] > y.mqm[0];
                   });

  auto group_counts = [&](auto pred) {
    int n = 0, major = 0;
    for (const auto& [cat, c] : counts) {
      if (pred(cat)) {
        n += c.first;
        major += c.second;
      }
    }
    return std::pair(n, major);
  };
  auto is_top = [](TopCategory t) {
    return [t](const ErrorCategory& c) { return c.top() == t; };
  };
  auto acc = group_counts(is_top(TopCategory::kAccuracy));
  auto flu = group_counts(is_top(TopCategory::kFluency));
  auto rest = group_counts([](const ErrorCategory& c) {
    return c.top() != TopCategory::kAccuracy && c.top() != TopCategory::kFluency;
  });
  auto all = group_counts([](const ErrorCategory&) { return true; });
  out.groups.push_back(make_row("All accuracy", true,
                                AnnotationFilter::ByTop(TopCategory::kAccuracy),
                                acc.first, acc.second));
  out.groups.push_back(make_row("All fluency", true,
                                AnnotationFilter::ByTop(TopCategory::kFluency),
                                flu.first, flu.second));
  out.groups.push_back(make_row("All except accuracy & fluency", true,
                                AnnotationFilter::OtherThanAccuracyFluency(),
                                rest.first, rest.second));
  out.groups.push_back(make_row("All categories", true, AnnotationFilter::All(),
                                all.first, all.second));
  return out;
}

RankTable RankSystems(const std::map<std::string, double>& scores,
                      Orientation orientation,
                      std::optional<int> tie_decimals) {
  auto key = [&](double v) {
    if (!tie_decimals) return v;
    const double scale = std::pow(10.0, *tie_decimals);
    return std::round(v * scale) / scale;
  };
  RankTable table;
  table.orientation = orientation;
  for (const auto& [system, score] : scores) {
    table.entries.push_back({system, score, 0});
  }
  const bool lower = orientation == Orientation::kLowerBetter;
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [&](const RankEntry& x, const RankEntry& y) {
                     const double kx = key(x.score), ky = key(y.score);
                     return lower ? kx < ky : kx > ky;
                   });
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    auto& e = table.entries[i];
    if (i > 0 && key(e.score) == key(table.entries[i - 1].score)) {
      e.rank = table.entries[i - 1].rank;
    } else {
      e.rank = static_cast<int>(i) + 1;
    }
  }
  return table;
}

RaterReport BuildRaterReport(const Corpus& corpus, const WeightScheme& scheme) {
  const auto& ratings = corpus.mqm_ratings();
  std::map<std::string, int> rater_index;
  for (const auto& r : ratings) rater_index.emplace(r.rater_id, 0);
  if (rater_index.size() < 2) {
    throw Error(ErrorCode::kNoRatings, "rater report needs at least two raters");
  }
  RaterReport report;
  for (auto& [id, idx] : rater_index) {
    idx = static_cast<int>(report.raters.size());
    report.raters.push_back(id);
  }
  report.groups = {"Accuracy", "Fluency", "Others", "All"};
  const std::vector<AnnotationFilter> filters = {
      AnnotationFilter::ByTop(TopCategory::kAccuracy),
      AnnotationFilter::ByTop(TopCategory::kFluency),
      AnnotationFilter::OtherThanAccuracyFluency(), AnnotationFilter::All()};

  const std::size_t n_raters = report.raters.size();
  report.ratings.assign(n_raters, 0);
  for (const auto& r : ratings) ++report.ratings[rater_index[r.rater_id]];

  for (const auto& filter : filters) {
    const auto scores = ScoreAllRatings(corpus, scheme, filter);
    std::vector<double> sums(n_raters, 0.0);
    for (std::size_t i = 0; i < ratings.size(); ++i) {
      sums[rater_index[ratings[i].rater_id]] += scores[i];
    }
    std::vector<RaterGroupScore> row(n_raters);
    double mean = 0.0;
    for (std::size_t k = 0; k < n_raters; ++k) {
      row[k].mqm = sums[k] / report.ratings[k];
      mean += row[k].mqm;
    }
    mean /= static_cast<double>(n_raters);
    for (auto& cell : row) cell.ratio = Ratio(cell.mqm, mean);
    report.cells.push_back(std::move(row));
  }
  return report;
}

const SweepRow* SweepReport::Selected() const {
  for (const auto& r : rows) {
    if (r.selected) return &r;
  }
  return nullptr;
}

namespace {

// Order of systems (indices) by score, best first; ties by name.
std::vector<int> RankOrder(const std::vector<double>& scores,
                           const std::vector<std::string>& names) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (scores[x] != scores[y]) return scores[x] < scores[y];
    return names[x] < names[y];
  });
  return order;
}

}  // namespace

SweepReport WeightSweep(const Corpus& corpus, const SweepOptions& options) {
  if (options.major_weights.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no Major weights to sweep");
  }
  if (options.resamples < 100) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 100 resamples");
  }
  for (double w : options.major_weights) {
    if (!std::isfinite(w) || w < 0) {
      throw Error(ErrorCode::kInvalidArgument, "invalid Major weight");
    }
  }
  // Scores are affine in the Major weight: s(w) = base + w * slope.
  const auto base_scores =
      ComputeSegmentScores(corpus, WeightScheme::WithMajorWeight(0.0));
  const auto unit_scores =
      ComputeSegmentScores(corpus, WeightScheme::WithMajorWeight(1.0));

  std::vector<std::string> systems;
  std::map<std::pair<std::string, int>, std::vector<double>> cells;
  {
    std::set<std::string> seen;
    for (const auto& [key, s] : base_scores.score) seen.insert(key.system);
    systems.assign(seen.begin(), seen.end());
  }
  if (systems.empty()) throw Error(ErrorCode::kNoRatings, "no MQM ratings");
  std::map<std::string, int> sys_index;
  for (std::size_t i = 0; i < systems.size(); ++i) sys_index[systems[i]] = i;

  // Positions rated for every system, paired across systems.
  std::map<std::pair<std::string, int>, int> coverage;
  for (const auto& [key, s] : base_scores.score) {
    ++coverage[{key.doc_id, key.seg_index}];
  }
  std::vector<std::pair<std::string, int>> positions;
  for (const auto& [pos, n] : coverage) {
    if (n == static_cast<int>(systems.size())) positions.push_back(pos);
  }
  if (positions.empty()) {
    throw Error(ErrorCode::kNoRatings, "no segment is rated for every system");
  }
  const int n_sys = static_cast<int>(systems.size());
  const int n_pos = static_cast<int>(positions.size());
  kernels::PositionGrid a{n_pos, n_sys, {}}, b{n_pos, n_sys, {}};
  a.values.resize(static_cast<std::size_t>(n_pos) * n_sys);
  b.values.resize(a.values.size());
  for (int p = 0; p < n_pos; ++p) {
    for (int s = 0; s < n_sys; ++s) {
      const SegmentKey key{systems[s], positions[p].first, positions[p].second};
      const double base = base_scores.score.at(key);
      a.values[p * n_sys + s] = base;
      b.values[p * n_sys + s] = unit_scores.score.at(key) - base;
    }
  }
  std::vector<double> full_a(n_sys, 0.0), full_b(n_sys, 0.0);
  for (int p = 0; p < n_pos; ++p) {
    for (int s = 0; s < n_sys; ++s) {
      full_a[s] += a.at(p, s);
      full_b[s] += b.at(p, s);
    }
  }
  const auto sums =
      kernels::omp::Resample(a, b, options.resamples, options.seed);

  SweepReport report;
  report.n_systems = n_sys;
  report.n_positions = n_pos;
  report.resamples = options.resamples;
  for (double w : options.major_weights) {
    SweepRow row;
    row.major_weight = w;
    std::vector<double> full(n_sys);
    for (int s = 0; s < n_sys; ++s) full[s] = (full_a[s] + w * full_b[s]) / n_pos;
    const auto order = RankOrder(full, systems);
    for (int s : order) {
      row.ranking.push_back(systems[s]);
      row.scores.push_back(full[s]);
    }
    int exact = 0;
    // consistent[i][j]: resamples with system i strictly ahead of j.
    std::vector<int> ahead(static_cast<std::size_t>(n_sys) * n_sys, 0);
    std::vector<double> sample(n_sys);
    for (int r = 0; r < options.resamples; ++r) {
      const std::size_t off = static_cast<std::size_t>(r) * n_sys;
      for (int s = 0; s < n_sys; ++s) {
        sample[s] = (sums.a[off + s] + w * sums.b[off + s]) / n_pos;
      }
      if (RankOrder(sample, systems) == order) ++exact;
      for (int i = 0; i < n_sys; ++i) {
        for (int j = 0; j < n_sys; ++j) {
          if (sample[i] < sample[j]) ++ahead[i * n_sys + j];
        }
      }
    }
    row.stability = static_cast<double>(exact) / options.resamples;
    for (int x = 0; x < n_sys; ++x) {
      for (int y = x + 1; y < n_sys; ++y) {
        const int i = order[x], j = order[y];  // i ranked ahead on full data
        const double frac =
            static_cast<double>(ahead[i * n_sys + j]) / options.resamples;
        if (frac >= options.separation_level) ++row.discrimination;
      }
    }
    report.rows.push_back(std::move(row));
  }

  double best = 0.0;
  for (const auto& r : report.rows) best = std::max(best, r.stability);
  int best_disc = -1;
  for (const auto& r : report.rows) {
    if (r.stability >= best - options.stability_slack) {
      best_disc = std::max(best_disc, r.discrimination);
    }
  }
  SweepRow* chosen = nullptr;
  for (auto& r : report.rows) {
    if (r.stability >= best - options.stability_slack &&
        r.discrimination == best_disc &&
        (!chosen || r.major_weight > chosen->major_weight)) {
      chosen = &r;
    }
  }
  if (chosen) chosen->selected = true;
  return report;
}

}  // namespace mqm
