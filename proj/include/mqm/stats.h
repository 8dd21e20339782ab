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
#ifndef MQM_STATS_H_
#define MQM_STATS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mqm/scoring.h"

namespace mqm {

enum class Statistic { kPearson, kKendallTauB, kKendallLike };
std::string_view StatisticName(Statistic s);

struct CorrelationResult {
  Statistic statistic = Statistic::kPearson;
  double value = 0.0;
  int n = 0;  // items, or usable pairs for KendallLike
  std::optional<double> p_value;
};

// Exact two-tailed permutation p-values up to this many items.
inline constexpr int kExactPermutationMaxN = 10;

// Sample Pearson r. p: exact permutation for n <= 10, Student t otherwise.
// Errors: DegenerateInput (constant vector, length mismatch, n < 3).
CorrelationResult Pearson(std::span<const double> xs,
                          std::span<const double> ys);

// Kendall tau-b. p: exact permutation for n <= 10, tie-corrected normal
// approximation otherwise. Errors: DegenerateInput (all ties, n < 2).
CorrelationResult KendallTau(std::span<const double> xs,
                             std::span<const double> ys);

// Statistic only; no p-value and no input checks beyond length.
double PearsonValue(std::span<const double> xs, std::span<const double> ys);
// NaN when either side is all ties.
double KendallTauBValue(std::span<const double> xs,
                        std::span<const double> ys);

struct PairCounts {
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  std::int64_t tied_x = 0;  // tied in x (including tied in both)
  std::int64_t tied_y = 0;  // tied in y (including tied in both)
};

// Per segment, per unordered system pair: the pair is kept iff
// |gold_a - gold_b| >= threshold and gold_a != gold_b; gold is oriented so
// that higher is better, candidate scores are taken as higher-better. A
// candidate tie counts as discordant. Cells holding NaN in either grid are
// skipped. grid[segment][system].
struct KendallLikeCounts {
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
};
KendallLikeCounts CountKendallLike(
    const std::vector<std::vector<double>>& gold,
    const std::vector<std::vector<double>>& candidate, double threshold,
    Orientation gold_orientation);

// (C - D) / (C + D) pooled over segments; n = C + D. Errors: NoUsablePairs,
// InvalidArgument (shape mismatch, negative threshold).
CorrelationResult KendallLike(const std::vector<std::vector<double>>& gold,
                              const std::vector<std::vector<double>>& candidate,
                              double threshold, Orientation gold_orientation);

}  // namespace mqm

#endif  // MQM_STATS_H_
