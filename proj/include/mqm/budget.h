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
#ifndef MQM_BUDGET_H_
#define MQM_BUDGET_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mqm/corpus.h"
#include "mqm/linalg.h"
#include "mqm/taxonomy.h"

namespace mqm {

// Segment scores on the grid shared by a set of systems.
struct ScoreGrid {
  struct Document {
    std::string doc_id;
    std::vector<std::vector<double>> segments;  // [segment][system]
  };
  std::vector<std::string> systems;
  std::vector<Document> documents;

  int n_segments() const;
  // Column means over every segment (segment-weighted).
  std::vector<double> SystemMeans() const;
};

// Every (doc, segment) rated for every selected system. With
// `drop_incomplete` segments missing any cell are dropped instead of
// rejected. Error: IncompleteGrid naming the first missing cells.
ScoreGrid BuildScoreGrid(const Corpus& corpus, const WeightScheme& scheme,
                         const std::vector<std::string>& systems,
                         bool drop_incomplete = false);

// Two-level model: a document effect ~ N(mu, sigma_doc) shared by the
// segments of a document, plus per-segment residual ~ N(0, sigma_seg).
struct GaussianModel {
  std::vector<std::string> systems;
  std::vector<double> mu;
  Matrix sigma_doc;
  Matrix sigma_seg;
  Matrix chol_doc;  // lower factors of the (possibly jittered) covariances
  Matrix chol_seg;
  double jitter_doc = 0.0;  // added to the diagonal, 0 when not needed
  double jitter_seg = 0.0;
  int n_docs = 0;
  int n_segments = 0;

  std::size_t dim() const { return mu.size(); }

  // Validates and factorizes. Errors: InvalidArgument (shape, d < 2,
  // non-finite mu, asymmetric covariance), SingularModel.
  static GaussianModel FromMoments(std::vector<std::string> systems,
                                   std::vector<double> mu, Matrix sigma_doc,
                                   Matrix sigma_seg, int n_docs = 0,
                                   int n_segments = 0);
};

// mu: segment-weighted means; sigma_doc: unbiased covariance of document
// mean vectors; sigma_seg: unbiased covariance of segment-minus-document-mean
// residuals.
GaussianModel FitGaussian(const ScoreGrid& grid);

enum class SimulationMode { kGaussian, kBlockBootstrap };

struct RatingBudgetConfig {
  int ratings_per_system = 900;  // segment x rater events
  int raters_per_item = 1;
  int consecutive_per_doc = 3;
  bool align_items_across_systems = true;
  bool align_raters = false;
  int iterations = 1000;
  std::uint64_t seed = 20210401;
  double target_tau = 0.9;
  double rater_noise_factor = 1.0;
  SimulationMode mode = SimulationMode::kGaussian;

  // Errors: InvalidArgument.
  void Validate() const;
  // ceil(ratings / raters) rated segments.
  int SegmentsPerSystem() const;
};

using Rng = std::mt19937_64;

// Independent stream for (seed, index): SplitMix64-mixed mt19937_64.
Rng StreamFor(std::uint64_t seed, std::uint64_t index);

// `count` segment vectors grouped `per_doc` to a document, drawn from the
// two-level model without rater noise.
std::vector<std::vector<double>> DrawSegments(const GaussianModel& model,
                                              int count, int per_doc,
                                              Rng& rng);

// One simulated project: per-system means over the budget.
std::vector<double> SimulateProject(const GaussianModel& model,
                                    const RatingBudgetConfig& config, Rng& rng);

// Nonparametric counterpart: documents are drawn with replacement from the
// real grid and `consecutive_per_doc` consecutive segments (a random window)
// are taken from each. Rater noise as in the Gaussian mode, with the noise
// scale of `model`.
std::vector<double> SimulateProjectBootstrap(const ScoreGrid& grid,
                                             const GaussianModel& model,
                                             const RatingBudgetConfig& config,
                                             Rng& rng);

struct TauDistribution {
  std::vector<double> samples;  // one per iteration, in iteration order
  double mean = 0.0;
  double variance = 0.0;
  double q05 = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, q95 = 0.0;
  RatingBudgetConfig config;
};

// Kendall tau-b of each simulated project against `truth`; iteration i uses
// StreamFor(seed, i). `grid` is required in block-bootstrap mode. A sample
// whose simulated scores are all tied counts as 0.
TauDistribution SimulateTauDistribution(const GaussianModel& model,
                                        std::span<const double> truth,
                                        const RatingBudgetConfig& config,
                                        const ScoreGrid* grid = nullptr);

// Tau of iteration `iteration` alone; the unit of work behind
// SimulateTauDistribution.
double SimulatedTau(const GaussianModel& model, std::span<const double> truth,
                    const RatingBudgetConfig& config, const ScoreGrid* grid,
                    std::uint64_t iteration);

struct BudgetProbe {
  int ratings = 0;
  double mean_tau = 0.0;
};

struct MinBudgetResult {
  int ratings = 0;
  double mean_tau = 0.0;
  int max_ratings = 0;
  std::vector<BudgetProbe> probes;  // in evaluation order
};

inline constexpr int kBudgetResolution = 10;
// Default search ceiling, in multiples of the full-corpus budget
// (n_segments * raters_per_item). Simulated projects may exceed the corpus:
// a generative model is not limited to the rated segments.
inline constexpr int kDefaultCeilingFactor = 4;

// Smallest ratings_per_system, at a resolution of 10, whose mean tau reaches
// config.target_tau: doubling from 10, then bisection. Every probe reuses
// config.seed. `max_ratings` <= 0 selects the default ceiling.
// target_tau <= 0 returns 10.
// Errors: NotReachable when the ceiling budget misses the target;
// InvalidArgument when no ceiling can be derived.
MinBudgetResult MinRatingsForTau(const GaussianModel& model,
                                 std::span<const double> truth,
                                 const RatingBudgetConfig& config,
                                 int max_ratings = 0,
                                 const ScoreGrid* grid = nullptr);

}  // namespace mqm

#endif  // MQM_BUDGET_H_
