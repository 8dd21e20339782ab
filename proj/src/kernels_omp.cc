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
#include "kernels_common.h"
#include "mqm/kernels.h"

// Every parallel loop writes to disjoint output slots or reduces integers, so
// results match the serial kernels bit for bit regardless of thread count.
namespace mqm::kernels::omp {

void ScoreRatings(const RatingWeights& in, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t r = 0; r < n; ++r) {
    out[r] = internal::SumRange(in, static_cast<std::size_t>(r));
  }
}

ResampleSums Resample(const PositionGrid& a, const PositionGrid& b,
                      int resamples, std::uint64_t seed) {
  ResampleSums out;
  out.resamples = resamples;
  out.systems = a.systems;
  out.a.assign(static_cast<std::size_t>(resamples) * a.systems, 0.0);
  out.b.assign(out.a.size(), 0.0);
  if (a.positions == 0) return out;
#pragma omp parallel for schedule(dynamic, 8)
  for (int r = 0; r < resamples; ++r) {
    const std::size_t off = static_cast<std::size_t>(r) * a.systems;
    internal::ResampleOne(a, b, r, seed, &out.a[off], &out.b[off]);
  }
  return out;
}

PairCounts CountPairs(std::span<const double> xs, std::span<const double> ys) {
  std::int64_t c = 0, d = 0, tx = 0, ty = 0;
  const auto n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : c, d, tx, ty) \
    if (n > 2048)
  for (std::int64_t i = 0; i < n; ++i) {
    PairCounts row;
    internal::CountPairsRow(xs, ys, static_cast<std::size_t>(i), &row);
    c += row.concordant;
    d += row.discordant;
    tx += row.tied_x;
    ty += row.tied_y;
  }
  return {c, d, tx, ty};
}

namespace {

template <typename Setup, typename From>
PermutationTally Tally(const Setup& setup, std::size_t n, From from) {
  std::uint64_t extreme = 0, total = 0;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : extreme, total) \
    if (n > 7)
  for (std::int64_t f = 0; f < count; ++f) {
    const auto t = from(setup, static_cast<std::size_t>(f));
    extreme += t.extreme;
    total += t.total;
  }
  return {extreme, total};
}

}  // namespace

PermutationTally PearsonPermutations(std::span<const double> xs,
                                     std::span<const double> ys) {
  return Tally(internal::SetupPearson(xs, ys), xs.size(),
               internal::PearsonFrom);
}

PermutationTally KendallPermutations(std::span<const double> xs,
                                     std::span<const double> ys) {
  return Tally(internal::SetupKendall(xs, ys), xs.size(),
               internal::KendallFrom);
}

void SimulateTaus(const GaussianModel& model, std::span<const double> truth,
                  const RatingBudgetConfig& config, const ScoreGrid* grid,
                  std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = SimulatedTau(model, truth, config, grid,
                          static_cast<std::uint64_t>(i));
  }
}

}  // namespace mqm::kernels::omp
