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
#ifndef MQM_SRC_KERNELS_COMMON_H_
#define MQM_SRC_KERNELS_COMMON_H_

// Per-work-item bodies shared by the serial and OpenMP kernels, so the two
// flavors differ only in how the outer loop is scheduled.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "mqm/budget.h"
#include "mqm/kernels.h"

namespace mqm::kernels::internal {

inline double SumRange(const RatingWeights& in, std::size_t r) {
  double s = 0.0;
  for (std::size_t i = in.offsets[r]; i < in.offsets[r + 1]; ++i) {
    s += in.weights[i];
  }
  return s;
}

inline void ResampleOne(const PositionGrid& a, const PositionGrid& b, int r,
                        std::uint64_t seed, double* out_a, double* out_b) {
  Rng rng = StreamFor(seed, static_cast<std::uint64_t>(r));
  std::uniform_int_distribution<int> pick(0, a.positions - 1);
  std::fill(out_a, out_a + a.systems, 0.0);
  std::fill(out_b, out_b + a.systems, 0.0);
  for (int i = 0; i < a.positions; ++i) {
    const int p = pick(rng);
    for (int s = 0; s < a.systems; ++s) {
      out_a[s] += a.at(p, s);
      out_b[s] += b.at(p, s);
    }
  }
}

inline int Sign(double v) { return (v > 0) - (v < 0); }

inline void CountPairsRow(std::span<const double> xs,
                          std::span<const double> ys, std::size_t i,
                          PairCounts* c) {
  for (std::size_t j = i + 1; j < xs.size(); ++j) {
    const int sx = Sign(xs[i] - xs[j]);
    const int sy = Sign(ys[i] - ys[j]);
    if (sx == 0) ++c->tied_x;
    if (sy == 0) ++c->tied_y;
    if (sx == 0 || sy == 0) continue;
    if (sx == sy) {
      ++c->concordant;
    } else {
      ++c->discordant;
    }
  }
}

// Permutations of ys that start with ys[first]; `visit` receives the index
// order and returns true when the permutation is at least as extreme.
template <typename Visit>
PermutationTally TallyFrom(std::size_t n, std::size_t first, Visit visit) {
  std::vector<int> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != first) order.push_back(static_cast<int>(i));
  }
  std::vector<int> perm(n);
  perm[0] = static_cast<int>(first);
  PermutationTally t;
  do {
    std::copy(order.begin(), order.end(), perm.begin() + 1);
    ++t.total;
    if (visit(perm)) ++t.extreme;
  } while (std::next_permutation(order.begin(), order.end()));
  return t;
}

struct PearsonSetup {
  std::vector<double> cx, cy;
  double observed = 0.0;
  double slack = 0.0;
};

inline PearsonSetup SetupPearson(std::span<const double> xs,
                                 std::span<const double> ys) {
  PearsonSetup s;
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s.cx.push_back(xs[i] - mx);
    s.cy.push_back(ys[i] - my);
    sxx += s.cx.back() * s.cx.back();
    syy += s.cy.back() * s.cy.back();
    sxy += s.cx.back() * s.cy.back();
  }
  s.observed = std::abs(sxy);
  // Ties in |r| must count as "at least as extreme" despite rounding.
  s.slack = 1e-10 * std::sqrt(sxx * syy);
  return s;
}

inline PermutationTally PearsonFrom(const PearsonSetup& s, std::size_t first) {
  const std::size_t n = s.cx.size();
  return TallyFrom(n, first, [&](const std::vector<int>& perm) {
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) sxy += s.cx[i] * s.cy[perm[i]];
    return std::abs(sxy) >= s.observed - s.slack;
  });
}

struct KendallSetup {
  std::size_t n = 0;
  std::vector<int> sx;  // sign(x_i - x_j), n x n
  std::vector<int> sy;
  int observed = 0;     // |S|
};

inline KendallSetup SetupKendall(std::span<const double> xs,
                                 std::span<const double> ys) {
  KendallSetup k;
  k.n = xs.size();
  k.sx.resize(k.n * k.n);
  k.sy.resize(k.n * k.n);
  int s = 0;
  for (std::size_t i = 0; i < k.n; ++i) {
    for (std::size_t j = 0; j < k.n; ++j) {
      k.sx[i * k.n + j] = Sign(xs[i] - xs[j]);
      k.sy[i * k.n + j] = Sign(ys[i] - ys[j]);
      if (i < j) s += k.sx[i * k.n + j] * k.sy[i * k.n + j];
    }
  }
  k.observed = std::abs(s);
  return k;
}

inline PermutationTally KendallFrom(const KendallSetup& k, std::size_t first) {
  const std::size_t n = k.n;
  return TallyFrom(n, first, [&](const std::vector<int>& perm) {
    int s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int* row_x = &k.sx[i * n];
      const int* row_y = &k.sy[static_cast<std::size_t>(perm[i]) * n];
      for (std::size_t j = i + 1; j < n; ++j) s += row_x[j] * row_y[perm[j]];
    }
    return std::abs(s) >= k.observed;
  });
}

}  // namespace mqm::kernels::internal

#endif  // MQM_SRC_KERNELS_COMMON_H_
