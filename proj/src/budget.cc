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
#include "mqm/budget.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "mqm/error.h"
#include "mqm/kernels.h"
#include "mqm/scoring.h"
#include "mqm/stats.h"

namespace mqm {

int ScoreGrid::n_segments() const {
  int n = 0;
  for (const auto& d : documents) n += static_cast<int>(d.segments.size());
  return n;
}

std::vector<double> ScoreGrid::SystemMeans() const {
  std::vector<double> mean(systems.size(), 0.0);
  int n = 0;
  for (const auto& d : documents) {
    for (const auto& seg : d.segments) {
      for (std::size_t i = 0; i < seg.size(); ++i) mean[i] += seg[i];
      ++n;
    }
  }
  if (n > 0) {
    for (double& m : mean) m /= n;
  }
  return mean;
}

ScoreGrid BuildScoreGrid(const Corpus& corpus, const WeightScheme& scheme,
                         const std::vector<std::string>& systems,
                         bool drop_incomplete) {
  const auto seg = ComputeSegmentScores(corpus, scheme);
  ScoreGrid grid;
  grid.systems = systems;
  if (grid.systems.empty()) {
    std::set<std::string> rated;
    for (const auto& [key, s] : seg.score) rated.insert(key.system);
    for (const auto& s : corpus.systems()) {
      if (rated.count(s)) grid.systems.push_back(s);
    }
  }
  // Positions rated for at least one selected system, in document order.
  std::map<std::string, std::set<int>> positions;
  for (const auto& [key, s] : seg.score) {
    if (std::find(grid.systems.begin(), grid.systems.end(), key.system) !=
        grid.systems.end()) {
      positions[key.doc_id].insert(key.seg_index);
    }
  }
  std::vector<std::string> doc_order = corpus.doc_ids();
  for (const auto& [doc, idx] : positions) {
    if (std::find(doc_order.begin(), doc_order.end(), doc) == doc_order.end()) {
      doc_order.push_back(doc);
    }
  }
  std::vector<std::string> missing;
  int n_missing = 0;
  for (const auto& doc : doc_order) {
    auto it = positions.find(doc);
    if (it == positions.end()) continue;
    ScoreGrid::Document d;
    d.doc_id = doc;
    for (int idx : it->second) {
      std::vector<double> row;
      bool complete = true;
      for (const auto& sys : grid.systems) {
        auto cell = seg.score.find(SegmentKey{sys, doc, idx});
        if (cell == seg.score.end()) {
          complete = false;
          ++n_missing;
          if (missing.size() < 5) {
            missing.push_back(ToString(SegmentKey{sys, doc, idx}));
          }
          continue;
        }
        row.push_back(cell->second);
      }
      if (complete) d.segments.push_back(std::move(row));
    }
    if (!d.segments.empty()) grid.documents.push_back(std::move(d));
  }
  if (n_missing > 0 && !drop_incomplete) {
    std::string msg = std::to_string(n_missing) + " missing cells:";
    for (const auto& m : missing) msg += " " + m;
    if (n_missing > static_cast<int>(missing.size())) msg += " ...";
    throw Error(ErrorCode::kIncompleteGrid, msg);
  }
  if (grid.documents.empty()) {
    throw Error(ErrorCode::kIncompleteGrid, "no complete segment rows");
  }
  return grid;
}

namespace {

Matrix Factorize(const Matrix& sigma, double* jitter, const char* which) {
  Matrix lower;
  *jitter = 0.0;
  if (CholeskyPsd(sigma, &lower)) return lower;
  Matrix jittered = sigma;
  *jitter = 1e-9 * sigma.MeanDiagonal();
  for (std::size_t i = 0; i < sigma.rows(); ++i) jittered(i, i) += *jitter;
  if (CholeskyPsd(jittered, &lower)) return lower;
  throw Error(ErrorCode::kSingularModel,
              std::string(which) + " is not positive semi-definite");
}

}  // namespace

GaussianModel GaussianModel::FromMoments(std::vector<std::string> systems,
                                         std::vector<double> mu,
                                         Matrix sigma_doc, Matrix sigma_seg,
                                         int n_docs, int n_segments) {
  const std::size_t d = mu.size();
  if (d < 2) {
    throw Error(ErrorCode::kInvalidArgument, "model needs at least 2 systems");
  }
  if (systems.size() != d || sigma_doc.rows() != d || sigma_doc.cols() != d ||
      sigma_seg.rows() != d || sigma_seg.cols() != d) {
    throw Error(ErrorCode::kInvalidArgument, "model dimensions disagree");
  }
  for (double m : mu) {
    if (!std::isfinite(m)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite mean");
    }
  }
  for (const Matrix* s : {&sigma_doc, &sigma_seg}) {
    const double tol = 1e-9 * std::max(1.0, s->FrobeniusNorm());
    if (!s->IsSymmetric(tol)) {
      throw Error(ErrorCode::kInvalidArgument, "covariance is not symmetric");
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (!std::isfinite((*s)(i, j))) {
          throw Error(ErrorCode::kInvalidArgument, "non-finite covariance");
        }
      }
    }
  }
  GaussianModel m;
  m.systems = std::move(systems);
  m.mu = std::move(mu);
  m.sigma_doc = std::move(sigma_doc);
  m.sigma_seg = std::move(sigma_seg);
  m.chol_doc = Factorize(m.sigma_doc, &m.jitter_doc, "sigma_doc");
  m.chol_seg = Factorize(m.sigma_seg, &m.jitter_seg, "sigma_seg");
  m.n_docs = n_docs;
  m.n_segments = n_segments;
  return m;
}

GaussianModel FitGaussian(const ScoreGrid& grid) {
  const std::size_t d = grid.systems.size();
  std::vector<std::vector<double>> doc_means;
  std::vector<std::vector<double>> residuals;
  for (const auto& doc : grid.documents) {
    std::vector<double> mean(d, 0.0);
    for (const auto& seg : doc.segments) {
      for (std::size_t i = 0; i < d; ++i) mean[i] += seg[i];
    }
    for (double& v : mean) v /= static_cast<double>(doc.segments.size());
    for (const auto& seg : doc.segments) {
      std::vector<double> r(d);
      for (std::size_t i = 0; i < d; ++i) r[i] = seg[i] - mean[i];
      residuals.push_back(std::move(r));
    }
    doc_means.push_back(std::move(mean));
  }
  Matrix sigma_doc = doc_means.size() >= 2 ? SampleCovariance(doc_means)
                                           : Matrix(d, d);
  Matrix sigma_seg = residuals.size() >= 2 ? SampleCovariance(residuals)
                                           : Matrix(d, d);
  return GaussianModel::FromMoments(
      grid.systems, grid.SystemMeans(), std::move(sigma_doc),
      std::move(sigma_seg), static_cast<int>(grid.documents.size()),
      grid.n_segments());
}

void RatingBudgetConfig::Validate() const {
  auto fail = [](const std::string& m) {
    throw Error(ErrorCode::kInvalidArgument, m);
  };
  if (ratings_per_system <= 0) fail("ratings_per_system must be > 0");
  if (raters_per_item < 1) fail("raters_per_item must be >= 1");
  if (consecutive_per_doc < 1) fail("consecutive_per_doc must be >= 1");
  if (iterations < 1) fail("iterations must be >= 1");
  if (!(target_tau <= 1.0)) fail("target_tau must be <= 1");
  if (!(rater_noise_factor >= 0.0) || !std::isfinite(rater_noise_factor)) {
    fail("rater_noise_factor must be finite and >= 0");
  }
}

int RatingBudgetConfig::SegmentsPerSystem() const {
  return (ratings_per_system + raters_per_item - 1) / raters_per_item;
}

Rng StreamFor(std::uint64_t seed, std::uint64_t index) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return Rng(splitmix(splitmix(seed) ^ splitmix(index + 0x632be59bd9b4e019ULL)));
}

namespace {

// Standard deviation of coordinate i under L * L^T.
double MarginalSd(const Matrix& lower, std::size_t i) {
  double s = 0.0;
  for (std::size_t k = 0; k <= i; ++k) s += lower(i, k) * lower(i, k);
  return std::sqrt(s);
}

struct Draws {
  Rng& rng;
  std::normal_distribution<double> normal{0.0, 1.0};

  void Fill(std::vector<double>& z) {
    for (double& v : z) v = normal(rng);
  }
  double Next() { return normal(rng); }
};

std::vector<double> RaterNoiseSd(const GaussianModel& model,
                                 const RatingBudgetConfig& config) {
  std::vector<double> sd(model.dim());
  for (std::size_t i = 0; i < sd.size(); ++i) {
    sd[i] = config.rater_noise_factor *
            std::sqrt(std::max(model.sigma_seg(i, i), 0.0));
  }
  return sd;
}

// Raters of segment `s` (0-based) when `total` events are spread over
// `n_seg` segments; the remainder goes to the last segment.
int RatersFor(int s, int n_seg, const RatingBudgetConfig& config) {
  if (s + 1 < n_seg) return config.raters_per_item;
  return config.ratings_per_system - (n_seg - 1) * config.raters_per_item;
}

// Adds the averaged rater noise of one segment to `dev`.
void AddRaterNoise(Draws& draws, const std::vector<double>& sd, int raters,
                   bool aligned_raters, std::vector<double>& dev) {
  const std::size_t d = dev.size();
  std::vector<double> noise(d, 0.0);
  for (int r = 0; r < raters; ++r) {
    if (aligned_raters) {
      const double z = draws.Next();
      for (std::size_t i = 0; i < d; ++i) noise[i] += sd[i] * z;
    } else {
      for (std::size_t i = 0; i < d; ++i) noise[i] += sd[i] * draws.Next();
    }
  }
  for (std::size_t i = 0; i < d; ++i) dev[i] += noise[i] / raters;
}

}  // namespace

std::vector<std::vector<double>> DrawSegments(const GaussianModel& model,
                                              int count, int per_doc,
                                              Rng& rng) {
  const std::size_t d = model.dim();
  Draws draws{rng};
  std::vector<double> z(d), doc(d), seg(d);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    if (s % per_doc == 0) {
      draws.Fill(z);
      AffineTransform(model.mu, model.chol_doc, z, doc);
    }
    draws.Fill(z);
    AffineTransform(doc, model.chol_seg, z, seg);
    out.push_back(seg);
  }
  return out;
}

std::vector<double> SimulateProject(const GaussianModel& model,
                                    const RatingBudgetConfig& config,
                                    Rng& rng) {
  const std::size_t d = model.dim();
  const int n_seg = config.SegmentsPerSystem();
  const int per_doc = config.consecutive_per_doc;
  const auto noise_sd = RaterNoiseSd(model, config);
  const std::vector<double> zero(d, 0.0);
  Draws draws{rng};
  // Deviations from mu are accumulated so that a zero-variance model returns
  // mu exactly.
  std::vector<double> dev_sum(d, 0.0);

  if (config.align_items_across_systems) {
    std::vector<double> z(d), doc(d), seg(d);
    for (int s = 0; s < n_seg; ++s) {
      if (s % per_doc == 0) {
        draws.Fill(z);
        AffineTransform(zero, model.chol_doc, z, doc);
      }
      draws.Fill(z);
      AffineTransform(doc, model.chol_seg, z, seg);
      AddRaterNoise(draws, noise_sd, RatersFor(s, n_seg, config),
                    config.align_raters, seg);
      for (std::size_t i = 0; i < d; ++i) dev_sum[i] += seg[i];
    }
  } else {
    // Each system rates its own items: coordinates come from independent
    // draws, i.e. from the marginal of each system.
    for (std::size_t i = 0; i < d; ++i) {
      const double sd_doc = MarginalSd(model.chol_doc, i);
      const double sd_seg = MarginalSd(model.chol_seg, i);
      const std::vector<double> sd_noise = {noise_sd[i]};
      double doc = 0.0;
      for (int s = 0; s < n_seg; ++s) {
        if (s % per_doc == 0) doc = sd_doc * draws.Next();
        std::vector<double> seg = {doc + sd_seg * draws.Next()};
        AddRaterNoise(draws, sd_noise, RatersFor(s, n_seg, config), false, seg);
        dev_sum[i] += seg[0];
      }
    }
  }
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = model.mu[i] + dev_sum[i] / n_seg;
  return out;
}

std::vector<double> SimulateProjectBootstrap(const ScoreGrid& grid,
                                             const GaussianModel& model,
                                             const RatingBudgetConfig& config,
                                             Rng& rng) {
  const std::size_t d = grid.systems.size();
  const int n_seg = config.SegmentsPerSystem();
  const int per_doc = config.consecutive_per_doc;
  const auto noise_sd = RaterNoiseSd(model, config);
  const int n_docs = static_cast<int>(grid.documents.size());
  Draws draws{rng};
  std::uniform_int_distribution<int> pick_doc(0, n_docs - 1);
  std::vector<double> sum(d, 0.0);

  auto window_start = [&](const ScoreGrid::Document& doc) {
    const int len = static_cast<int>(doc.segments.size());
    if (len <= per_doc) return 0;
    return std::uniform_int_distribution<int>(0, len - per_doc)(rng);
  };
  // Segments past the end of a short document wrap around.
  auto cell = [](const ScoreGrid::Document& doc, int start, int offset,
                 std::size_t sys) {
    const int len = static_cast<int>(doc.segments.size());
    return doc.segments[(start + offset) % len][sys];
  };

  if (config.align_items_across_systems) {
    const ScoreGrid::Document* doc = nullptr;
    int start = 0;
    std::vector<double> seg(d);
    for (int s = 0; s < n_seg; ++s) {
      if (s % per_doc == 0) {
        doc = &grid.documents[pick_doc(rng)];
        start = window_start(*doc);
      }
      for (std::size_t i = 0; i < d; ++i) seg[i] = cell(*doc, start, s % per_doc, i);
      AddRaterNoise(draws, noise_sd, RatersFor(s, n_seg, config),
                    config.align_raters, seg);
      for (std::size_t i = 0; i < d; ++i) sum[i] += seg[i];
    }
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      const ScoreGrid::Document* doc = nullptr;
      int start = 0;
      const std::vector<double> sd_noise = {noise_sd[i]};
      for (int s = 0; s < n_seg; ++s) {
        if (s % per_doc == 0) {
          doc = &grid.documents[pick_doc(rng)];
          start = window_start(*doc);
        }
        std::vector<double> seg = {cell(*doc, start, s % per_doc, i)};
        AddRaterNoise(draws, sd_noise, RatersFor(s, n_seg, config), false, seg);
        sum[i] += seg[0];
      }
    }
  }
  for (double& v : sum) v /= n_seg;
  return sum;
}

double SimulatedTau(const GaussianModel& model, std::span<const double> truth,
                    const RatingBudgetConfig& config, const ScoreGrid* grid,
                    std::uint64_t iteration) {
  Rng rng = StreamFor(config.seed, iteration);
  const auto sim = config.mode == SimulationMode::kBlockBootstrap
                       ? SimulateProjectBootstrap(*grid, model, config, rng)
                       : SimulateProject(model, config, rng);
  // Both sides are lower-better, so no orientation flip is needed.
  const double tau = KendallTauBValue(sim, truth);
  return std::isnan(tau) ? 0.0 : tau;
}

namespace {

double Quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void CheckSimulationInputs(const GaussianModel& model,
                           std::span<const double> truth,
                           const RatingBudgetConfig& config,
                           const ScoreGrid* grid) {
  config.Validate();
  if (model.dim() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "model needs at least 2 systems");
  }
  if (truth.size() != model.dim()) {
    throw Error(ErrorCode::kInvalidArgument,
                "truth has " + std::to_string(truth.size()) +
                    " scores for a " + std::to_string(model.dim()) +
                    "-system model");
  }
  if (config.mode == SimulationMode::kBlockBootstrap) {
    if (grid == nullptr || grid->documents.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "block bootstrap needs the score grid");
    }
    if (grid->systems.size() != model.dim()) {
      throw Error(ErrorCode::kInvalidArgument, "grid and model disagree");
    }
  }
}

}  // namespace

TauDistribution SimulateTauDistribution(const GaussianModel& model,
                                        std::span<const double> truth,
                                        const RatingBudgetConfig& config,
                                        const ScoreGrid* grid) {
  CheckSimulationInputs(model, truth, config, grid);
  TauDistribution out;
  out.config = config;
  out.samples.resize(config.iterations);
  kernels::omp::SimulateTaus(model, truth, config, grid, out.samples);
  const double n = static_cast<double>(out.samples.size());
  out.mean = std::accumulate(out.samples.begin(), out.samples.end(), 0.0) / n;
  if (out.samples.size() > 1) {
    double ss = 0.0;
    for (double t : out.samples) ss += (t - out.mean) * (t - out.mean);
    out.variance = ss / (n - 1);
  }
  auto sorted = out.samples;
  std::sort(sorted.begin(), sorted.end());
  out.q05 = Quantile(sorted, 0.05);
  out.q25 = Quantile(sorted, 0.25);
  out.median = Quantile(sorted, 0.5);
  out.q75 = Quantile(sorted, 0.75);
  out.q95 = Quantile(sorted, 0.95);
  return out;
}

MinBudgetResult MinRatingsForTau(const GaussianModel& model,
                                 std::span<const double> truth,
                                 const RatingBudgetConfig& config,
                                 int max_ratings, const ScoreGrid* grid) {
  CheckSimulationInputs(model, truth, config, grid);
  MinBudgetResult result;
  result.max_ratings =
      max_ratings > 0
          ? max_ratings
          : kDefaultCeilingFactor * model.n_segments * config.raters_per_item;
  if (result.max_ratings < kBudgetResolution) {
    throw Error(ErrorCode::kInvalidArgument,
                "no search ceiling: the model has no corpus size and no "
                "maximum budget was given");
  }
  std::map<int, double> cache;
  auto mean_tau = [&](int ratings) {
    auto it = cache.find(ratings);
    if (it != cache.end()) return it->second;
    RatingBudgetConfig c = config;
    c.ratings_per_system = ratings;
    const double m = SimulateTauDistribution(model, truth, c, grid).mean;
    cache[ratings] = m;
    result.probes.push_back({ratings, m});
    return m;
  };

  int lo = 0;  // largest budget known to miss (0: none probed)
  int hi = kBudgetResolution;
  if (config.target_tau > 0) {
    while (mean_tau(hi) < config.target_tau) {
      if (hi >= result.max_ratings) {
        throw Error(ErrorCode::kNotReachable,
                    "mean tau " + std::to_string(mean_tau(hi)) + " at " +
                        std::to_string(hi) + " ratings is below the target " +
                        std::to_string(config.target_tau));
      }
      lo = hi;
      hi = std::min(2 * hi, result.max_ratings);
    }
    while (hi - lo > kBudgetResolution) {
      int mid = lo + (hi - lo) / 2 / kBudgetResolution * kBudgetResolution;
      if (mid <= lo) mid = lo + kBudgetResolution;
      if (mid >= hi) break;
      if (mean_tau(mid) >= config.target_tau) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  result.ratings = hi;
  result.mean_tau = mean_tau(hi);
  return result;
}

}  // namespace mqm
