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
// Serial reference vs OpenMP kernels on representative sizes.
//
//   build/bench/mqm_bench --benchmark_filter=Resample

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "mqm/budget.h"
#include "mqm/kernels.h"

namespace {

using namespace mqm;

kernels::RatingWeights MakeWeights(int ratings) {
  std::mt19937_64 rng(1);
  kernels::RatingWeights w;
  const double choices[] = {0, 0.1, 1, 5, 25};
  for (int r = 0; r < ratings; ++r) {
    const int n = static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) w.weights.push_back(choices[rng() % 5]);
    w.offsets.push_back(w.weights.size());
  }
  return w;
}

kernels::PositionGrid MakeGrid(int positions, int systems, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> d(0.5);
  kernels::PositionGrid g{positions, systems, {}};
  g.values.resize(static_cast<std::size_t>(positions) * systems);
  for (auto& v : g.values) v = d(rng);
  return g;
}

GaussianModel MakeModel(int d) {
  std::vector<std::string> systems;
  std::vector<double> mu;
  Matrix doc(d, d), seg(d, d);
  for (int i = 0; i < d; ++i) {
    systems.push_back("s" + std::to_string(i));
    mu.push_back(0.75 + 0.25 * i);
    for (int j = 0; j < d; ++j) {
      doc(i, j) = i == j ? 1.0 : 0.4;
      seg(i, j) = i == j ? 9.0 : 3.0;
    }
  }
  return GaussianModel::FromMoments(systems, mu, doc, seg, 130, 1418);
}

template <auto Fn>
void BM_ScoreRatings(benchmark::State& state) {
  const auto w = MakeWeights(static_cast<int>(state.range(0)));
  std::vector<double> out(w.size());
  for (auto _ : state) {
    Fn(w, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_Resample(benchmark::State& state) {
  const auto a = MakeGrid(1418, 10, 1), b = MakeGrid(1418, 10, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Fn(a, b, static_cast<int>(state.range(0)), 7));
  }
}

template <auto Fn>
void BM_CountPairs(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<double> x(state.range(0)), y(state.range(0));
  for (auto& v : x) v = static_cast<double>(rng() % 50);
  for (auto& v : y) v = static_cast<double>(rng() % 50);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x, y));
}

template <auto Fn>
void BM_KendallPermutations(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::vector<double> x(state.range(0)), y(state.range(0));
  for (auto& v : x) v = static_cast<double>(rng() % 100);
  for (auto& v : y) v = static_cast<double>(rng() % 100);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x, y));
}

template <auto Fn>
void BM_SimulateTaus(benchmark::State& state) {
  const GaussianModel m = MakeModel(10);
  RatingBudgetConfig cfg;
  cfg.ratings_per_system = static_cast<int>(state.range(0));
  cfg.iterations = 200;
  std::vector<double> out(cfg.iterations);
  for (auto _ : state) {
    Fn(m, m.mu, cfg, nullptr, out);
    benchmark::DoNotOptimize(out.data());
  }
}

BENCHMARK(BM_ScoreRatings<kernels::serial::ScoreRatings>)->Name("ScoreRatings/serial")->Arg(1 << 20);
BENCHMARK(BM_ScoreRatings<kernels::omp::ScoreRatings>)->Name("ScoreRatings/omp")->Arg(1 << 20);
BENCHMARK(BM_Resample<kernels::serial::Resample>)->Name("Resample/serial")->Arg(1000);
BENCHMARK(BM_Resample<kernels::omp::Resample>)->Name("Resample/omp")->Arg(1000);
BENCHMARK(BM_CountPairs<kernels::serial::CountPairs>)->Name("CountPairs/serial")->Arg(5000);
BENCHMARK(BM_CountPairs<kernels::omp::CountPairs>)->Name("CountPairs/omp")->Arg(5000);
BENCHMARK(BM_KendallPermutations<kernels::serial::KendallPermutations>)
    ->Name("KendallPermutations/serial")->Arg(9);
BENCHMARK(BM_KendallPermutations<kernels::omp::KendallPermutations>)
    ->Name("KendallPermutations/omp")->Arg(9);
BENCHMARK(BM_SimulateTaus<kernels::serial::SimulateTaus>)->Name("SimulateTaus/serial")->Arg(900);
BENCHMARK(BM_SimulateTaus<kernels::omp::SimulateTaus>)->Name("SimulateTaus/omp")->Arg(900);

}  // namespace

BENCHMARK_MAIN();
