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
#include "mqm/stats.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "mqm/error.h"
#include "mqm/kernels.h"

namespace mqm {

std::string_view StatisticName(Statistic s) {
  switch (s) {
    case Statistic::kPearson: return "pearson";
    case Statistic::kKendallTauB: return "kendall-tau-b";
    case Statistic::kKendallLike: return "kendall-like";
  }
  return "?";
}

namespace {

void CheckPaired(std::span<const double> xs, std::span<const double> ys,
                 std::size_t min_n, const char* what) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kDegenerateInput,
                std::string(what) + ": length mismatch");
  }
  if (xs.size() < min_n) {
    throw Error(ErrorCode::kDegenerateInput,
                std::string(what) + ": needs at least " +
                    std::to_string(min_n) + " items");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw Error(ErrorCode::kDegenerateInput,
                  std::string(what) + ": non-finite value");
    }
  }
}

bool IsConstant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
}

double TwoSidedNormal(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

// Sizes of runs of equal values.
std::vector<std::int64_t> TieGroups(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  std::vector<std::int64_t> groups;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    if (j - i > 1) groups.push_back(static_cast<std::int64_t>(j - i));
    i = j;
  }
  return groups;
}

}  // namespace

double PearsonValue(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationResult Pearson(std::span<const double> xs,
                          std::span<const double> ys) {
  CheckPaired(xs, ys, 3, "pearson");
  if (IsConstant(xs) || IsConstant(ys)) {
    throw Error(ErrorCode::kDegenerateInput, "pearson: constant vector");
  }
  CorrelationResult out;
  out.statistic = Statistic::kPearson;
  out.n = static_cast<int>(xs.size());
  out.value = PearsonValue(xs, ys);
  if (out.n <= kExactPermutationMaxN) {
    const auto t = kernels::omp::PearsonPermutations(xs, ys);
    out.p_value = static_cast<double>(t.extreme) / static_cast<double>(t.total);
  } else if (std::abs(out.value) >= 1.0) {
    out.p_value = 0.0;
  } else {
    const double df = out.n - 2;
    const double t =
        out.value * std::sqrt(df / (1.0 - out.value * out.value));
    boost::math::students_t dist(df);
    out.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  }
  return out;
}

double KendallTauBValue(std::span<const double> xs,
                        std::span<const double> ys) {
  const auto c = kernels::omp::CountPairs(xs, ys);
  const auto n = static_cast<std::int64_t>(xs.size());
  const double n0 = static_cast<double>(n * (n - 1) / 2);
  const double denom = std::sqrt((n0 - static_cast<double>(c.tied_x)) *
                                 (n0 - static_cast<double>(c.tied_y)));
  if (denom == 0.0) return std::nan("");
  return std::clamp(static_cast<double>(c.concordant - c.discordant) / denom,
                    -1.0, 1.0);
}

CorrelationResult KendallTau(std::span<const double> xs,
                             std::span<const double> ys) {
  CheckPaired(xs, ys, 2, "kendall");
  if (IsConstant(xs) || IsConstant(ys)) {
    throw Error(ErrorCode::kDegenerateInput, "kendall: all values tied");
  }
  const auto c = kernels::omp::CountPairs(xs, ys);
  const auto n = static_cast<std::int64_t>(xs.size());
  const double n0 = static_cast<double>(n * (n - 1) / 2);
  const double s = static_cast<double>(c.concordant - c.discordant);
  CorrelationResult out;
  out.statistic = Statistic::kKendallTauB;
  out.n = static_cast<int>(n);
  out.value = std::clamp(
      s / std::sqrt((n0 - static_cast<double>(c.tied_x)) *
                    (n0 - static_cast<double>(c.tied_y))),
      -1.0, 1.0);
  if (out.n <= kExactPermutationMaxN) {
    const auto t = kernels::omp::KendallPermutations(xs, ys);
    out.p_value = static_cast<double>(t.extreme) / static_cast<double>(t.total);
    return out;
  }
  // Normal approximation with the tie-corrected variance of S.
  const double nn = static_cast<double>(n);
  double vt = 0, vu = 0, t1 = 0, u1 = 0, t2 = 0, u2 = 0;
  for (auto t : TieGroups(xs)) {
    const double d = static_cast<double>(t);
    vt += d * (d - 1) * (2 * d + 5);
    t1 += d * (d - 1);
    t2 += d * (d - 1) * (d - 2);
  }
  for (auto u : TieGroups(ys)) {
    const double d = static_cast<double>(u);
    vu += d * (d - 1) * (2 * d + 5);
    u1 += d * (d - 1);
    u2 += d * (d - 1) * (d - 2);
  }
  const double v0 = nn * (nn - 1) * (2 * nn + 5);
  const double var = (v0 - vt - vu) / 18.0 + t1 * u1 / (2 * nn * (nn - 1)) +
                     t2 * u2 / (9 * nn * (nn - 1) * (nn - 2));
  out.p_value = var > 0 ? TwoSidedNormal(s / std::sqrt(var)) : 1.0;
  return out;
}

KendallLikeCounts CountKendallLike(
    const std::vector<std::vector<double>>& gold,
    const std::vector<std::vector<double>>& candidate, double threshold,
    Orientation gold_orientation) {
  if (gold.size() != candidate.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "kendall-like: gold and candidate cover different segments");
  }
  if (!(threshold >= 0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "kendall-like: threshold must be >= 0");
  }
  const double sign =
      gold_orientation == Orientation::kLowerBetter ? -1.0 : 1.0;
  KendallLikeCounts out;
  for (std::size_t seg = 0; seg < gold.size(); ++seg) {
    const auto& g = gold[seg];
    const auto& c = candidate[seg];
    if (g.size() != c.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "kendall-like: row " + std::to_string(seg) +
                      " has mismatched system counts");
    }
    for (std::size_t a = 0; a < g.size(); ++a) {
      if (std::isnan(g[a]) || std::isnan(c[a])) continue;
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        if (std::isnan(g[b]) || std::isnan(c[b])) continue;
        const double dg = sign * (g[a] - g[b]);
        if (dg == 0.0 || std::abs(dg) < threshold) continue;
        const double dc = c[a] - c[b];
        if ((dg > 0 && dc > 0) || (dg < 0 && dc < 0)) {
          ++out.concordant;
        } else {
          ++out.discordant;
        }
      }
    }
  }
  return out;
}

CorrelationResult KendallLike(const std::vector<std::vector<double>>& gold,
                              const std::vector<std::vector<double>>& candidate,
                              double threshold, Orientation gold_orientation) {
  const auto c = CountKendallLike(gold, candidate, threshold, gold_orientation);
  const auto total = c.concordant + c.discordant;
  if (total == 0) {
    throw Error(ErrorCode::kNoUsablePairs,
                "kendall-like: no pair survives the threshold");
  }
  CorrelationResult out;
  out.statistic = Statistic::kKendallLike;
  out.n = static_cast<int>(total);
  out.value = static_cast<double>(c.concordant - c.discordant) /
              static_cast<double>(total);
  return out;
}

}  // namespace mqm
