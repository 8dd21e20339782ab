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

namespace mqm::kernels::serial {

void ScoreRatings(const RatingWeights& in, std::span<double> out) {
  for (std::size_t r = 0; r < in.size(); ++r) {
    out[r] = internal::SumRange(in, r);
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
  for (int r = 0; r < resamples; ++r) {
    const std::size_t off = static_cast<std::size_t>(r) * a.systems;
    internal::ResampleOne(a, b, r, seed, &out.a[off], &out.b[off]);
  }
  return out;
}

PairCounts CountPairs(std::span<const double> xs, std::span<const double> ys) {
  PairCounts c;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    internal::CountPairsRow(xs, ys, i, &c);
  }
  return c;
}

PermutationTally PearsonPermutations(std::span<const double> xs,
                                     std::span<const double> ys) {
  const auto setup = internal::SetupPearson(xs, ys);
  PermutationTally total;
  for (std::size_t f = 0; f < xs.size(); ++f) {
    const auto t = internal::PearsonFrom(setup, f);
    total.extreme += t.extreme;
    total.total += t.total;
  }
  return total;
}

PermutationTally KendallPermutations(std::span<const double> xs,
                                     std::span<const double> ys) {
  const auto setup = internal::SetupKendall(xs, ys);
  PermutationTally total;
  for (std::size_t f = 0; f < xs.size(); ++f) {
    const auto t = internal::KendallFrom(setup, f);
    total.extreme += t.extreme;
    total.total += t.total;
  }
  return total;
}

void SimulateTaus(const GaussianModel& model, std::span<const double> truth,
                  const RatingBudgetConfig& config, const ScoreGrid* grid,
                  std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = SimulatedTau(model, truth, config, grid, i);
  }
}

}  // namespace mqm::kernels::serial
