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
#include "mqm/json_codec.h"

#include <fstream>

#include "mqm/error.h"

namespace mqm {

using nlohmann::json;

json AnnotationToJson(const ErrorAnnotation& a) {
  json j = {{"category", a.category.canonical()},
            {"severity", SeverityName(a.severity)}};
  if (a.span) {
    j["span"] = {{"side", SideName(a.span->side)},
                 {"start", a.span->start},
                 {"end", a.span->end}};
  }
  if (!a.note.empty()) j["note"] = a.note;
  return j;
}

ErrorAnnotation AnnotationFromJson(const json& j) {
  auto bad = [](const std::string& m) {
    throw Error(ErrorCode::kInvalidArgument, "annotation: " + m);
  };
  if (!j.is_object()) bad("expected an object");
  if (!j.contains("category") || !j["category"].is_string()) {
    bad("missing category");
  }
  if (!j.contains("severity") || !j["severity"].is_string()) {
    bad("missing severity");
  }
  ErrorAnnotation a;
  a.category = ParseCategory(j["category"].get<std::string>());
  a.severity = ParseSeverity(j["severity"].get<std::string>());
  if (j.contains("span") && !j["span"].is_null()) {
    const auto& s = j["span"];
    if (!s.is_object() || !s.contains("start") || !s.contains("end") ||
        !s["start"].is_number_unsigned() || !s["end"].is_number_unsigned()) {
      bad("span needs non-negative integer start and end");
    }
    Span span;
    const std::string side = s.value("side", std::string("target"));
    if (side == "source") {
      span.side = Side::kSource;
    } else if (side == "target") {
      span.side = Side::kTarget;
    } else {
      bad("span side must be source or target");
    }
    span.start = s["start"].get<std::size_t>();
    span.end = s["end"].get<std::size_t>();
    a.span = span;
  }
  if (j.contains("note")) {
    if (!j["note"].is_string()) bad("note must be a string");
    a.note = j["note"].get<std::string>();
  }
  return a;
}

json ViolationToJson(const Violation& v) {
  return {{"rule", ViolationKindName(v.kind)},
          {"location", v.location},
          {"message", v.message}};
}

namespace {

json MatrixToJson(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

Matrix MatrixFromJson(const json& j, std::size_t n, const char* name) {
  if (!j.is_array() || j.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must have " + std::to_string(n) + " rows");
  }
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = j[r].get<std::vector<double>>();
    if (row.size() != n) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(name) + " row " + std::to_string(r) +
                      " has the wrong length");
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = row[c];
  }
  return m;
}

}  // namespace

json ModelToJson(const GaussianModel& model) {
  return {{"systems", model.systems},
          {"mu", model.mu},
          {"sigma_doc", MatrixToJson(model.sigma_doc)},
          {"sigma_seg", MatrixToJson(model.sigma_seg)},
          {"n_docs", model.n_docs},
          {"n_segments", model.n_segments}};
}

GaussianModel ModelFromJson(const json& j) {
  try {
    auto systems = j.at("systems").get<std::vector<std::string>>();
    auto mu = j.at("mu").get<std::vector<double>>();
    const std::size_t n = mu.size();
    Matrix doc = MatrixFromJson(j.at("sigma_doc"), n, "sigma_doc");
    Matrix seg = MatrixFromJson(j.at("sigma_seg"), n, "sigma_seg");
    return GaussianModel::FromMoments(std::move(systems), std::move(mu),
                                      std::move(doc), std::move(seg),
                                      j.value("n_docs", 0),
                                      j.value("n_segments", 0));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("model: ") + e.what());
  }
}

GaussianModel LoadModelFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, path + ": " + e.what());
  }
  return ModelFromJson(j);
}

}  // namespace mqm
