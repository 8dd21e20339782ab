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
#ifndef MQM_KERNELS_H_
#define MQM_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mqm/budget.h"
#include "mqm/stats.h"

// Hot loops in two interchangeable flavors. `serial` is the reference used by
// the tests; `omp` is what the library calls. Both produce identical results
// for identical inputs (integer counts, or floating-point sums evaluated in
// the same order per output element).
namespace mqm::kernels {

// Annotation weights of many ratings, flattened: rating r owns
// weights[offsets[r] .. offsets[r + 1]).
struct RatingWeights {
  std::vector<double> weights;
  std::vector<std::size_t> offsets{0};

  std::size_t size() const { return offsets.size() - 1; }
};

// Row-major [position][system] table of per-segment score components.
struct PositionGrid {
  int positions = 0;
  int systems = 0;
  std::vector<double> values;

  double at(int p, int s) const {
    return values[static_cast<std::size_t>(p) * systems + s];
  }
};

struct ResampleSums {
  int resamples = 0;
  int systems = 0;
  // [resample][system] sums over the drawn positions.
  std::vector<double> a;
  std::vector<double> b;
};

struct PermutationTally {
  std::uint64_t extreme = 0;  // permutations at least as extreme
  std::uint64_t total = 0;
};

namespace serial {
// out[r] = sum of rating r's weights.
void ScoreRatings(const RatingWeights& in, std::span<double> out);
// Resample r draws `positions` indices with replacement from
// StreamFor(seed, r) and sums both grids over them.
ResampleSums Resample(const PositionGrid& a, const PositionGrid& b,
                      int resamples, std::uint64_t seed);
PairCounts CountPairs(std::span<const double> xs, std::span<const double> ys);
// Enumerate all n! orderings of ys (n <= 10) and count those whose statistic
// is at least as extreme as the observed one.
PermutationTally PearsonPermutations(std::span<const double> xs,
                                     std::span<const double> ys);
PermutationTally KendallPermutations(std::span<const double> xs,
                                     std::span<const double> ys);
// out[i] = tau of iteration i; see SimulateTauDistribution.
void SimulateTaus(const GaussianModel& model, std::span<const double> truth,
                  const RatingBudgetConfig& config, const ScoreGrid* grid,
                  std::span<double> out);
}  // namespace serial

namespace omp {
// out[r] = sum of rating r's weights.
void ScoreRatings(const RatingWeights& in, std::span<double> out);
// Resample r draws `positions` indices with replacement from
// StreamFor(seed, r) and sums both grids over them.
ResampleSums Resample(const PositionGrid& a, const PositionGrid& b,
                      int resamples, std::uint64_t seed);
PairCounts CountPairs(std::span<const double> xs, std::span<const double> ys);
// Enumerate all n! orderings of ys (n <= 10) and count those whose statistic
// is at least as extreme as the observed one.
PermutationTally PearsonPermutations(std::span<const double> xs,
                                     std::span<const double> ys);
PermutationTally KendallPermutations(std::span<const double> xs,
                                     std::span<const double> ys);
// out[i] = tau of iteration i; see SimulateTauDistribution.
void SimulateTaus(const GaussianModel& model, std::span<const double> truth,
                  const RatingBudgetConfig& config, const ScoreGrid* grid,
                  std::span<double> out);
}  // namespace omp

}  // namespace mqm::kernels

#endif  // MQM_KERNELS_H_
