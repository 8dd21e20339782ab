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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mqm/error.h"
#include "support/oracles.h"

namespace mqm {
namespace {

namespace oracle = testing::oracle;

std::vector<double> RandomVector(std::mt19937_64& rng, int n, bool ties) {
  std::vector<double> v(n);
  std::normal_distribution<double> g(0, 1);
  for (auto& x : v) x = ties ? static_cast<double>(rng() % 4) : g(rng);
  return v;
}

TEST(Pearson, IdentityAndAntisymmetry) {
  const std::vector<double> x = {1, 4, 2, 8, 5, 7};
  std::vector<double> neg;
  for (double v : x) neg.push_back(-v);
  EXPECT_NEAR(Pearson(x, x).value, 1.0, 1e-15);
  EXPECT_NEAR(Pearson(x, neg).value, -1.0, 1e-15);
  EXPECT_EQ(Pearson(x, x).n, 6);
  ASSERT_TRUE(Pearson(x, x).p_value.has_value());
}

TEST(Pearson, Errors) {
  const std::vector<double> c = {2, 2, 2, 2};
  const std::vector<double> x = {1, 2, 3, 4};
  for (auto f : {+[](std::span<const double> a, std::span<const double> b) {
         return Pearson(a, b);
       }}) {
    try {
      f(c, x);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDegenerateInput);
    }
  }
  EXPECT_THROW(Pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}),
               Error);
  EXPECT_THROW(Pearson(x, std::vector<double>{1, 2, 3}), Error);
}

TEST(Pearson, MatchesOracleOnRandomVectors) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);  // 3..7
    const auto x = RandomVector(rng, n, false);
    const auto y = RandomVector(rng, n, false);
    const auto r = Pearson(x, y);
    EXPECT_NEAR(r.value, static_cast<double>(oracle::Pearson(x, y)), 1e-12);
    EXPECT_EQ(*r.p_value, oracle::PearsonPermutationP(x, y));
  }
}

TEST(Pearson, AffineInvariance) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 20);
    const auto x = RandomVector(rng, n, false);
    const auto y = RandomVector(rng, n, false);
    std::vector<double> ax, ay;
    for (double v : x) ax.push_back(3.5 * v - 2);
    for (double v : y) ay.push_back(0.25 * v + 100);
    EXPECT_NEAR(Pearson(ax, ay).value, Pearson(x, y).value, 1e-12);
  }
}

// Reference values from scipy.stats.pearsonr (t distribution) for n > 10.
TEST(Pearson, LargeSampleUsesTDistribution) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  const std::vector<double> y = {2, 1, 4, 3, 6, 5, 8, 9, 7, 12, 10, 11};
  const auto r = Pearson(x, y);
  EXPECT_NEAR(r.value, 0.9370629370629369, 1e-12);
  EXPECT_NEAR(*r.p_value, 6.993164953210718e-06, 1e-12);
}

TEST(KendallTau, IdentityReversalAndErrors) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> rev = {5, 4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(KendallTau(x, x).value, 1.0);
  EXPECT_DOUBLE_EQ(KendallTau(x, rev).value, -1.0);
  try {
    KendallTau(x, std::vector<double>{3, 3, 3, 3, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateInput);
  }
  EXPECT_THROW(KendallTau(std::vector<double>{1}, std::vector<double>{1}), Error);
}

TEST(KendallTau, SevenItemsWithOneTie) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7};
  const std::vector<double> y = {2, 1, 4, 4, 7, 5, 6};
  const auto r = KendallTau(x, y);
  EXPECT_NEAR(r.value, static_cast<double>(oracle::TauB(x, y)), 1e-15);
  // 21 pairs: 1 tie in y; concordant 17, discordant 3 -> 14 / sqrt(21 * 20).
  EXPECT_NEAR(r.value, 14.0 / std::sqrt(21.0 * 20.0), 1e-15);
  EXPECT_EQ(*r.p_value, oracle::TauBPermutationP(x, y));
}

TEST(KendallTau, MatchesOracleOnRandomVectors) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);  // 2..7
    const auto x = RandomVector(rng, n, trial % 2 == 0);
    const auto y = RandomVector(rng, n, trial % 3 == 0);
    const long double want = oracle::TauB(x, y);
    if (!std::isfinite(static_cast<double>(want))) {
      EXPECT_THROW(KendallTau(x, y), Error);
      continue;
    }
    const auto r = KendallTau(x, y);
    EXPECT_NEAR(r.value, static_cast<double>(want), 1e-12);
    EXPECT_EQ(*r.p_value, oracle::TauBPermutationP(x, y));
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(KendallTau, MonotoneInvariance) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 30);
    const auto x = RandomVector(rng, n, true);
    const auto y = RandomVector(rng, n, false);
    std::vector<double> tx, ty;
    for (double v : x) tx.push_back(std::exp(v));
    for (double v : y) ty.push_back(v * v * v + 4);
    const double a = KendallTauBValue(x, y);
    if (std::isnan(a)) continue;
    EXPECT_NEAR(KendallTauBValue(tx, ty), a, 1e-15);
  }
}

// Reference p-value from scipy.stats.kendalltau(method="asymptotic").
TEST(KendallTau, LargeSampleNormalApproximation) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  const std::vector<double> y = {2, 1, 4, 3, 6, 5, 8, 9, 7, 12, 10, 11};
  const auto r = KendallTau(x, y);
  EXPECT_NEAR(r.value, 0.7878787878787877, 1e-12);
  EXPECT_NEAR(*r.p_value, 0.0003627859782809728, 1e-12);
}

TEST(KendallLike, ThresholdExample) {
  // Gold {0, 10, 30} (MQM, lower is better) at threshold 25: only (0, 30).
  const std::vector<std::vector<double>> gold = {{0, 10, 30}};
  const std::vector<std::vector<double>> cand = {{3, 2, 1}};
  const auto r = KendallLike(gold, cand, 25, Orientation::kLowerBetter);
  EXPECT_EQ(r.n, 1);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_FALSE(r.p_value.has_value());
  const auto [c, d] = oracle::KendallLikeSegment(gold[0], cand[0], 25, true);
  EXPECT_EQ(c, 1);
  EXPECT_EQ(d, 0);
}

TEST(KendallLike, TiesExcludedAndIdentity) {
  const std::vector<std::vector<double>> gold = {{1, 1, 2}};
  const auto counts = CountKendallLike(gold, {{5, 6, 7}}, 0,
                                       Orientation::kHigherBetter);
  EXPECT_EQ(counts.concordant + counts.discordant, 2);
  const std::vector<std::vector<double>> g2 = {{1, 4, 2}, {0, 3, 9}};
  EXPECT_EQ(KendallLike(g2, g2, 0, Orientation::kHigherBetter).value, 1.0);
  try {
    KendallLike({{1, 1}}, {{1, 2}}, 0, Orientation::kHigherBetter);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoUsablePairs);
  }
  EXPECT_THROW(KendallLike(g2, g2, -1, Orientation::kHigherBetter), Error);
  EXPECT_THROW(KendallLike(g2, {{1, 2, 3}}, 0, Orientation::kHigherBetter), Error);
}

TEST(KendallLike, MatchesOracleAndThresholdMonotone) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int segs = 1 + static_cast<int>(rng() % 20);
    const int sys = 2 + static_cast<int>(rng() % 8);
    std::vector<std::vector<double>> gold(segs), cand(segs);
    for (int s = 0; s < segs; ++s) {
      gold[s] = RandomVector(rng, sys, trial % 2 == 0);
      cand[s] = RandomVector(rng, sys, trial % 3 == 0);
      for (auto& g : gold[s]) g *= 10;
    }
    for (bool lower : {true, false}) {
      const auto o = lower ? Orientation::kLowerBetter : Orientation::kHigherBetter;
      std::int64_t prev = -1;
      for (double t : {50.0, 25.0, 10.0, 5.0, 0.0}) {
        long c = 0, d = 0;
        for (int s = 0; s < segs; ++s) {
          const auto [sc, sd] = oracle::KendallLikeSegment(gold[s], cand[s], t, lower);
          c += sc;
          d += sd;
        }
        const auto got = CountKendallLike(gold, cand, t, o);
        EXPECT_EQ(got.concordant, c);
        EXPECT_EQ(got.discordant, d);
        // Lowering the threshold never removes pairs.
        EXPECT_GE(got.concordant + got.discordant, prev);
        prev = got.concordant + got.discordant;
      }
    }
  }
}

TEST(KendallLike, OrientationFlipEqualsNegation) {
  std::mt19937_64 rng(12);
  std::vector<std::vector<double>> gold(10), neg(10), cand(10);
  for (int s = 0; s < 10; ++s) {
    gold[s] = RandomVector(rng, 5, true);
    cand[s] = RandomVector(rng, 5, false);
    for (double g : gold[s]) neg[s].push_back(-g);
  }
  const auto a = KendallLike(gold, cand, 1, Orientation::kLowerBetter);
  const auto b = KendallLike(neg, cand, 1, Orientation::kHigherBetter);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.n, b.n);
}

}  // namespace
}  // namespace mqm
