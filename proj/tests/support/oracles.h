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
#ifndef MQM_TESTS_SUPPORT_ORACLES_H_
#define MQM_TESTS_SUPPORT_ORACLES_H_

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "synthetic.h"

// Deliberately naive reference implementations. None of them calls into the
// library: labels are classified by string comparison, statistics are
// evaluated from their textbook definitions in long double.
namespace mqm::testing::oracle {

// Weight of one raw (category, severity) label pair under the default
// weighting: Non-translation 25, other Major 5, Minor punctuation 0.1,
// other Minor 1, Neutral and source errors 0, `No-error` rows 0.
double DefaultWeight(const std::string& category, const std::string& severity);
// Same with a given Major weight and Non-translation at five times that.
double WeightWithMajor(const std::string& category,
                       const std::string& severity, double major);

using RatingId = std::tuple<std::string, std::string, std::string,
                            std::string>;  // system, doc, seg, rater

// Sum of row weights per (system, doc, seg, rater).
std::map<RatingId, double> RatingScores(const std::vector<RawRow>& rows,
                                        double major = 5.0);

// Mean over raters per segment, then mean over segments per system.
std::map<std::string, double> SystemScores(const std::vector<RawRow>& rows,
                                           double major = 5.0);

long double Pearson(const std::vector<double>& x, const std::vector<double>& y);
// Tau-b by enumerating every pair.
long double TauB(const std::vector<double>& x, const std::vector<double>& y);

// Two-sided permutation p-values by enumerating every ordering of y and
// recomputing the statistic from scratch.
double PearsonPermutationP(const std::vector<double>& x,
                           const std::vector<double>& y);
double TauBPermutationP(const std::vector<double>& x,
                        const std::vector<double>& y);

// WMT Kendall-like over one segment's system scores: pairs with
// |gold difference| >= threshold and unequal gold; gold is lower-better
// when `gold_lower_better`, the candidate always higher-better; candidate
// ties are discordant. Returns (concordant, discordant).
std::pair<long, long> KendallLikeSegment(const std::vector<double>& gold,
                                         const std::vector<double>& cand,
                                         double threshold,
                                         bool gold_lower_better);

// Competition ranks ("1224") of scores; lower is better when `lower_better`.
std::vector<int> CompetitionRanks(const std::vector<double>& scores,
                                  bool lower_better);

}  // namespace mqm::testing::oracle

#endif  // MQM_TESTS_SUPPORT_ORACLES_H_
