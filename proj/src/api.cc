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
#include "mqm/api.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "mqm/error.h"
#include "mqm/json_codec.h"
#include "mqm/text.h"

namespace mqm {

namespace fs = std::filesystem;
using nlohmann::json;

void ApiService::LoadProjects(const std::string& data_dir) {
  std::error_code ec;
  if (!fs::is_directory(data_dir, ec)) {
    throw Error(ErrorCode::kIo, "not a directory: " + data_dir);
  }
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(data_dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "project.json")) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) AddProject(Campaign::Open(d.string()));
}

void ApiService::AddProject(std::unique_ptr<Campaign> project) {
  const std::string id = project->config().id;
  if (!projects_.emplace(id, std::move(project)).second) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate project id " + id);
  }
}

Campaign* ApiService::Find(const std::string& id) const {
  auto it = projects_.find(id);
  return it == projects_.end() ? nullptr : it->second.get();
}

std::vector<std::string> ApiService::ProjectIds() const {
  std::vector<std::string> ids;
  for (const auto& [id, p] : projects_) ids.push_back(id);
  return ids;
}

bool ApiService::Authorized(const ApiRequest& request) const {
  if (token_.empty()) return false;
  auto it = request.headers.find("authorization");
  return it != request.headers.end() && it->second == "Bearer " + token_;
}

namespace {

ApiResponse Json(int status, const json& body) {
  return {status, "application/json", body.dump() + "\n"};
}

ApiResponse Fail(int status, std::string_view code, const std::string& msg) {
  return Json(status, {{"error", code}, {"message", msg}});
}

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotAssigned:
      return 403;
    case ErrorCode::kProjectClosed:
      return 409;
    case ErrorCode::kEmptyProject:
      return 404;
    case ErrorCode::kInvalidArgument:
      return 400;
    default:
      return 500;
  }
}

std::vector<std::string> PathParts(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

const std::string* Param(const ApiRequest& r, const std::string& name) {
  auto it = r.query.find(name);
  return it == r.query.end() || it->second.empty() ? nullptr : &it->second;
}

json ViewToJson(const TaskView& v) {
  json segs = json::array();
  for (const auto& s : v.segments) {
    json j = {{"seg", s.seg_index},
              {"source", s.source},
              {"target", s.target},
              {"done", s.done}};
    if (s.seq) j["seq"] = *s.seq;
    if (s.done) {
      json anns = json::array();
      for (const auto& a : s.annotations) anns.push_back(AnnotationToJson(a));
      j["annotations"] = anns;
    }
    if (s.value) j["value"] = *s.value;
    segs.push_back(std::move(j));
  }
  return {{"project", v.project},   {"rater", v.rater_id},
          {"doc", v.doc_id},        {"alias", v.alias},
          {"position", v.position}, {"queue_size", v.queue_size},
          {"segments", segs}};
}

json TaxonomyJson() {
  json cats = json::array();
  for (const auto& c : AllCategories()) {
    json j = {{"name", c.canonical()},
              {"top", TopCategoryName(c.top())},
              {"source_side", c.is_source_error()},
              {"whole_segment", c.is_non_translation()}};
    if (c.has_sub()) j["sub"] = SubCategoryName(c.sub());
    cats.push_back(std::move(j));
  }
  json sev = json::array();
  for (Severity s : {Severity::kMajor, Severity::kMinor, Severity::kNeutral}) {
    sev.push_back(SeverityName(s));
  }
  json weights = json::array();
  for (const auto& r : WeightScheme::Default().rules()) {
    weights.push_back(
        {{"severity", r.severity ? std::string(SeverityName(*r.severity)) : "*"},
         {"category", r.pattern.ToString()},
         {"weight", r.weight}});
  }
  return {{"categories", cats},
          {"severities", sev},
          {"max_errors", 5},
          {"sqm_range", {0, 6}},
          {"weights", weights}};
}

// Request body -> Submission. Unknown categories and severities become
// violations so that the client sees every problem at once.
bool ParseSubmission(const json& j, Submission* s,
                     std::vector<Violation>* violations, std::string* error) {
  if (!j.is_object()) {
    *error = "body must be a JSON object";
    return false;
  }
  for (const char* field : {"rater", "doc", "alias"}) {
    if (!j.contains(field) || !j[field].is_string()) {
      *error = std::string("missing string field '") + field + "'";
      return false;
    }
  }
  if (!j.contains("seg") || !j["seg"].is_number_integer()) {
    *error = "missing integer field 'seg'";
    return false;
  }
  s->rater_id = j["rater"].get<std::string>();
  s->doc_id = j["doc"].get<std::string>();
  s->alias = j["alias"].get<std::string>();
  s->seg_index = j["seg"].get<int>();
  if (j.contains("value") && !j["value"].is_null()) {
    if (!j["value"].is_number()) {
      *error = "'value' must be a number";
      return false;
    }
    s->value = j["value"].get<double>();
  }
  if (j.contains("annotations")) {
    if (!j["annotations"].is_array()) {
      *error = "'annotations' must be an array";
      return false;
    }
    int n = 0;
    for (const auto& a : j["annotations"]) {
      const std::string loc = "annotations[" + std::to_string(n++) + "]";
      try {
        s->annotations.push_back(AnnotationFromJson(a));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kInvalidArgument) {
          *error = loc + ": " + e.detail();
          return false;
        }
        // Category or severity outside the taxonomy.
        violations->push_back({ViolationKind::kUnknownLabel, loc,
                               std::string(ErrorCodeName(e.code())) + ": " +
                                   e.detail()});
      }
    }
  }
  return true;
}

json ViolationsJson(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(ViolationToJson(v));
  return out;
}

}  // namespace

ApiResponse ApiService::Handle(const ApiRequest& req) const {
  const auto parts = PathParts(req.path);
  const bool get = req.method == "GET";
  const bool post = req.method == "POST";
  try {
    if (parts.size() == 1 && parts[0] == "taxonomy") {
      if (!get) return Fail(405, "MethodNotAllowed", req.method);
      return Json(200, TaxonomyJson());
    }
    if (parts.size() == 1 && parts[0] == "projects") {
      if (!get) return Fail(405, "MethodNotAllowed", req.method);
      json list = json::array();
      for (const auto& [id, p] : projects_) {
        list.push_back({{"id", id},
                        {"mode", ProjectModeName(p->config().mode)},
                        {"closed", p->closed()}});
      }
      return Json(200, {{"projects", list}});
    }
    if (parts.size() < 3 || parts[0] != "projects") {
      return Fail(404, "NotFound", req.path);
    }
    Campaign* project = Find(parts[1]);
    if (project == nullptr) return Fail(404, "NotFound", "project " + parts[1]);
    const std::string& what = parts[2];

    if (what == "tasks" && parts.size() == 3) {
      if (!get) return Fail(405, "MethodNotAllowed", req.method);
      const std::string* rater = Param(req, "rater");
      if (!rater) return Fail(400, "InvalidArgument", "rater is required");
      auto task = project->NextTask(*rater);
      if (!task) {
        return Json(200, {{"project", project->config().id},
                          {"rater", *rater},
                          {"done", true}});
      }
      json j = ViewToJson(*task);
      j["done"] = false;
      return Json(200, j);
    }
    if (what == "documents" && parts.size() == 4) {
      if (!get) return Fail(405, "MethodNotAllowed", req.method);
      const std::string* rater = Param(req, "rater");
      const std::string* alias = Param(req, "alias");
      if (!rater || !alias) {
        return Fail(400, "InvalidArgument", "rater and alias are required");
      }
      return Json(200, ViewToJson(project->Document(*rater, parts[3], *alias)));
    }
    if (what == "annotations" && parts.size() == 3) {
      if (!post) return Fail(405, "MethodNotAllowed", req.method);
      json body;
      try {
        body = json::parse(req.body);
      } catch (const json::exception&) {
        return Fail(400, "InvalidArgument", "body is not JSON");
      }
      Submission s;
      std::vector<Violation> violations;
      std::string error;
      if (!ParseSubmission(body, &s, &violations, &error)) {
        return Fail(400, "InvalidArgument", error);
      }
      if (!violations.empty()) {
        // Taxonomy problems were found while parsing; add the other rules
        // for the annotations that did parse.
        for (auto& v : project->Check(s)) violations.push_back(std::move(v));
        return Json(422, {{"accepted", false},
                          {"error", "ValidationFailed"},
                          {"violations", ViolationsJson(violations)}});
      }
      const SubmitResult r = project->Submit(s);
      if (!r.accepted) {
        return Json(422, {{"accepted", false},
                          {"error", "ValidationFailed"},
                          {"violations", ViolationsJson(r.violations)}});
      }
      json j = {{"accepted", true}, {"seq", r.seq}};
      if (r.supersedes) j["supersedes"] = *r.supersedes;
      return Json(200, j);
    }
    if (what == "progress" && parts.size() == 3) {
      if (!get) return Fail(405, "MethodNotAllowed", req.method);
      json raters = json::array();
      for (const auto& p : project->Progress()) {
        raters.push_back(
            {{"rater", p.rater_id}, {"assigned", p.assigned}, {"done", p.done}});
      }
      return Json(200, {{"project", project->config().id},
                        {"closed", project->closed()},
                        {"raters", raters}});
    }
    if (what == "export" && parts.size() == 3) {
      if (!get) return Fail(405, "MethodNotAllowed", req.method);
      if (!Authorized(req)) return Fail(401, "Unauthorized", "export");
      std::ostringstream out;
      project->ExportTsv(out);
      return {200, "text/tab-separated-values; charset=utf-8", out.str()};
    }
    if (what == "close" && parts.size() == 3) {
      if (!post) return Fail(405, "MethodNotAllowed", req.method);
      if (!Authorized(req)) return Fail(401, "Unauthorized", "close");
      project->Close();
      return Json(200, {{"project", project->config().id}, {"closed", true}});
    }
    return Fail(404, "NotFound", req.path);
  } catch (const Error& e) {
    return Fail(StatusFor(e.code()), ErrorCodeName(e.code()), e.detail());
  } catch (const std::exception& e) {
    return Fail(500, "Internal", e.what());
  }
}

struct ApiServer::Impl {
  const ApiService* service;
  httplib::Server server;
};

ApiServer::ApiServer(const ApiService* service)
    : impl_(std::make_unique<Impl>()) {
  impl_->service = service;
  auto handler = [this](const httplib::Request& hreq, httplib::Response& hres) {
    ApiRequest req;
    req.method = hreq.method;
    req.path = hreq.path;
    for (const auto& [k, v] : hreq.params) req.query.emplace(k, v);
    for (const auto& [k, v] : hreq.headers) {
      req.headers.emplace(text::AsciiLower(k), v);
    }
    req.body = hreq.body;
    const ApiResponse res = impl_->service->Handle(req);
    hres.status = res.status;
    hres.set_content(res.body, res.content_type);
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.set_default_headers(
      {{"Access-Control-Allow-Origin", "*"},
       {"Access-Control-Allow-Headers", "Authorization, Content-Type"}});
  impl_->server.Options(".*", [](const httplib::Request&,
                                 httplib::Response& res) { res.status = 204; });
}

ApiServer::~ApiServer() { Stop(); }

int ApiServer::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool ApiServer::Serve() { return impl_->server.listen_after_bind(); }

void ApiServer::Stop() { impl_->server.stop(); }

}  // namespace mqm
