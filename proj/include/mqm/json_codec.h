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
#ifndef MQM_JSON_CODEC_H_
#define MQM_JSON_CODEC_H_

// JSON forms shared by the event log and the HTTP API.

#include <json.hpp>

#include "mqm/budget.h"
#include "mqm/corpus.h"

namespace mqm {

// {"category": "Accuracy/Mistranslation", "severity": "Major",
//  "span": {"side": "target", "start": 6, "end": 9}, "note": ""}
// "span" and "note" are optional.
nlohmann::json AnnotationToJson(const ErrorAnnotation& a);
// Errors: UnknownCategory, UnknownSeverity, InvalidArgument (shape).
ErrorAnnotation AnnotationFromJson(const nlohmann::json& j);

nlohmann::json ViolationToJson(const Violation& v);

// {"systems", "mu", "sigma_doc", "sigma_seg", "n_docs", "n_segments"};
// covariances as arrays of rows. The factors are recomputed on load.
nlohmann::json ModelToJson(const GaussianModel& model);
// Errors: InvalidArgument, SingularModel.
GaussianModel ModelFromJson(const nlohmann::json& j);
// Errors: Io plus those of ModelFromJson.
GaussianModel LoadModelFile(const std::string& path);

}  // namespace mqm

#endif  // MQM_JSON_CODEC_H_
