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
#ifndef MQM_API_H_
#define MQM_API_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mqm/campaign.h"

namespace mqm {

struct ApiRequest {
  std::string method;  // "GET", "POST"
  std::string path;    // decoded, without the query string
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Routes for the annotation service, independent of any HTTP library:
//   GET  /taxonomy
//   GET  /projects
//   GET  /projects/{id}/tasks?rater=
//   GET  /projects/{id}/documents/{doc}?rater=&alias=
//   POST /projects/{id}/annotations
//   GET  /projects/{id}/progress
//   GET  /projects/{id}/export          (Authorization: Bearer <token>)
//   POST /projects/{id}/close           (Authorization: Bearer <token>)
// Rater-facing payloads carry aliases only, never system names.
class ApiService {
 public:
  // An empty token disables the authorized routes.
  explicit ApiService(std::string token) : token_(std::move(token)) {}

  // Opens every subdirectory of `data_dir` holding a project.json.
  // Errors: Io, LogCorrupt.
  void LoadProjects(const std::string& data_dir);
  // Error: InvalidArgument on a duplicate project id.
  void AddProject(std::unique_ptr<Campaign> project);
  Campaign* Find(const std::string& id) const;
  std::vector<std::string> ProjectIds() const;

  ApiResponse Handle(const ApiRequest& request) const;

 private:
  bool Authorized(const ApiRequest& request) const;

  std::string token_;
  std::map<std::string, std::unique_ptr<Campaign>> projects_;
};

// Blocking HTTP front end over an ApiService.
class ApiServer {
 public:
  explicit ApiServer(const ApiService* service);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Port 0 picks a free port. Returns the bound port, or -1.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); returns false if the listener failed.
  bool Serve();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mqm

#endif  // MQM_API_H_
