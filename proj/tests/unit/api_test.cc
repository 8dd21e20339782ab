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

#include <atomic>
#include <filesystem>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "mqm/corpus_io.h"

namespace mqm {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string TempDir() {
  static std::atomic<int> counter{0};
  const fs::path p = fs::temp_directory_path() /
                     ("mqm_api_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter++));
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

Corpus Segments() {
  std::istringstream in(
      "system\tdoc_id\tseg_id\tsource\ttarget\n"
      "SecretSysOne\td1\t1\tDas Haus.\tThe house.\n"
      "SecretSysOne\td1\t2\tDer Hund.\tThe dog.\n"
      "SecretSysTwo\td1\t1\tDas Haus.\tHouse the.\n"
      "SecretSysTwo\td1\t2\tDer Hund.\tDog.\n");
  return ImportSegmentsTsv(in);
}

class ApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = TempDir();
    ProjectConfig c = ProjectConfig::FromCorpus(Segments(), "p1", {"r1", "r2"});
    c.raters_per_doc = 2;
    Campaign::Create(root_ + "/p1", c, Segments());
    c.id = "p2";
    c.mode = ProjectMode::kSqm;
    Campaign::Create(root_ + "/p2", c, Segments());
    service_.LoadProjects(root_);
  }

  ApiResponse Call(const std::string& method, const std::string& path,
                   std::map<std::string, std::string> query = {},
                   std::string body = "", bool auth = false) const {
    ApiRequest r{method, path, std::move(query), {}, std::move(body)};
    if (auth) r.headers["authorization"] = "Bearer s3cret";
    return service_.Handle(r);
  }

  std::string Alias(const std::string& rater, const std::string& sys) const {
    return service_.Find("p1")->plan().aliases.at(rater).at(sys);
  }

  std::string root_;
  ApiService service_{"s3cret"};
};

TEST_F(ApiTest, TaxonomyAndProjects) {
  auto r = Call("GET", "/taxonomy");
  ASSERT_EQ(r.status, 200);
  const json t = json::parse(r.body);
  EXPECT_EQ(t["categories"].size(), 27u);
  EXPECT_EQ(t["max_errors"], 5);
  r = Call("GET", "/projects");
  ASSERT_EQ(r.status, 200);
  const json p = json::parse(r.body);
  ASSERT_EQ(p["projects"].size(), 2u);
  EXPECT_EQ(p["projects"][0]["id"], "p1");
  EXPECT_EQ(p["projects"][1]["mode"], "sqm");
}

TEST_F(ApiTest, TaskFlowNeverRevealsSystems) {
  auto r = Call("GET", "/projects/p1/tasks", {{"rater", "r1"}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body.find("SecretSys"), std::string::npos);
  json task = json::parse(r.body);
  EXPECT_FALSE(task["done"].get<bool>());
  ASSERT_EQ(task["segments"].size(), 2u);

  const std::string alias = task["alias"];
  json sub = {{"rater", "r1"},
              {"doc", "d1"},
              {"alias", alias},
              {"seg", 0},
              {"annotations",
               {{{"category", "Accuracy/Mistranslation"},
                 {"severity", "Major"},
                 {"span", {{"start", 0}, {"end", 3}}}}}}};
  r = Call("POST", "/projects/p1/annotations", {}, sub.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(json::parse(r.body)["seq"], 1);
  sub["seg"] = 1;
  sub["annotations"] = json::array();
  r = Call("POST", "/projects/p1/annotations", {}, sub.dump());
  ASSERT_EQ(r.status, 200);

  // Resubmission reports what it supersedes.
  r = Call("POST", "/projects/p1/annotations", {}, sub.dump());
  EXPECT_EQ(json::parse(r.body)["supersedes"], 2);

  r = Call("GET", "/projects/p1/documents/d1", {{"rater", "r1"}, {"alias", alias}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body.find("SecretSys"), std::string::npos);
  task = json::parse(r.body);
  EXPECT_TRUE(task["segments"][0]["done"].get<bool>());
  EXPECT_EQ(task["segments"][0]["annotations"][0]["severity"], "Major");

  r = Call("GET", "/projects/p1/progress");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(json::parse(r.body)["raters"][0]["done"], 2);

  // Second task, then done.
  r = Call("GET", "/projects/p1/tasks", {{"rater", "r1"}});
  task = json::parse(r.body);
  EXPECT_NE(task["alias"], alias);
  for (int seg = 0; seg < 2; ++seg) {
    json s = {{"rater", "r1"}, {"doc", "d1"}, {"alias", task["alias"]},
              {"seg", seg}, {"annotations", json::array()}};
    ASSERT_EQ(Call("POST", "/projects/p1/annotations", {}, s.dump()).status, 200);
  }
  r = Call("GET", "/projects/p1/tasks", {{"rater", "r1"}});
  EXPECT_TRUE(json::parse(r.body)["done"].get<bool>());
}

TEST_F(ApiTest, ViolationsAre422WithEveryRule) {
  json sub = {{"rater", "r1"},
              {"doc", "d1"},
              {"alias", Alias("r1", "SecretSysOne")},
              {"seg", 0},
              {"annotations", json::array()}};
  for (int i = 0; i < 6; ++i) {
    sub["annotations"].push_back({{"category", "Style/Awkward"},
                                  {"severity", "Minor"},
                                  {"span", {{"start", 0}, {"end", 42}}}});
  }
  sub["annotations"].push_back({{"category", "Wrongness"}, {"severity", "Minor"}});
  const auto r = Call("POST", "/projects/p1/annotations", {}, sub.dump());
  ASSERT_EQ(r.status, 422) << r.body;
  EXPECT_EQ(r.body.find("SecretSys"), std::string::npos);
  const json j = json::parse(r.body);
  EXPECT_FALSE(j["accepted"].get<bool>());
  std::set<std::string> rules;
  for (const auto& v : j["violations"]) rules.insert(v["rule"]);
  EXPECT_TRUE(rules.count("unknown-label"));
  EXPECT_TRUE(rules.count("error-cap"));
  EXPECT_TRUE(rules.count("span-out-of-bounds"));

  // SQM range.
  json s = {{"rater", "r1"}, {"doc", "d1"}, {"alias", "S1"}, {"seg", 0}, {"value", 9}};
  const auto q = Call("POST", "/projects/p2/annotations", {}, s.dump());
  EXPECT_EQ(q.status, 422);
  s["value"] = 4;
  EXPECT_EQ(Call("POST", "/projects/p2/annotations", {}, s.dump()).status, 200);
}

TEST_F(ApiTest, ErrorStatuses) {
  EXPECT_EQ(Call("GET", "/nowhere").status, 404);
  EXPECT_EQ(Call("GET", "/projects/none/tasks", {{"rater", "r1"}}).status, 404);
  EXPECT_EQ(Call("POST", "/taxonomy").status, 405);
  EXPECT_EQ(Call("GET", "/projects/p1/annotations").status, 405);
  EXPECT_EQ(Call("GET", "/projects/p1/tasks").status, 400);
  EXPECT_EQ(Call("POST", "/projects/p1/annotations", {}, "{not json").status, 400);
  EXPECT_EQ(Call("POST", "/projects/p1/annotations", {}, R"({"rater": "r1"})").status,
            400);
  EXPECT_EQ(Call("GET", "/projects/p1/tasks", {{"rater", "mallory"}}).status, 403);
  json sub = {{"rater", "r1"}, {"doc", "d1"}, {"alias", "S7"}, {"seg", 0}};
  EXPECT_EQ(Call("POST", "/projects/p1/annotations", {}, sub.dump()).status, 403);
}

TEST_F(ApiTest, ExportAndCloseNeedTheToken) {
  EXPECT_EQ(Call("GET", "/projects/p1/export").status, 401);
  EXPECT_EQ(Call("POST", "/projects/p1/close").status, 401);
  ApiRequest wrong{"GET", "/projects/p1/export", {}, {{"authorization", "Bearer no"}}, ""};
  EXPECT_EQ(service_.Handle(wrong).status, 401);
  // Authorized but nothing submitted yet.
  EXPECT_EQ(Call("GET", "/projects/p1/export", {}, "", true).status, 404);

  json sub = {{"rater", "r2"}, {"doc", "d1"}, {"alias", Alias("r2", "SecretSysTwo")},
              {"seg", 1}, {"annotations", json::array()}};
  ASSERT_EQ(Call("POST", "/projects/p1/annotations", {}, sub.dump()).status, 200);
  const auto e = Call("GET", "/projects/p1/export", {}, "", true);
  ASSERT_EQ(e.status, 200);
  EXPECT_NE(e.content_type.find("tab-separated"), std::string::npos);
  // The export is for the organizer and does carry system names.
  EXPECT_NE(e.body.find("SecretSysTwo\td1\t2\tr2"), std::string::npos);

  EXPECT_EQ(Call("POST", "/projects/p1/close", {}, "", true).status, 200);
  EXPECT_EQ(Call("POST", "/projects/p1/annotations", {}, sub.dump()).status, 409);

  // An empty token disables the organizer routes entirely.
  ApiService no_token("");
  no_token.LoadProjects(root_);
  ApiRequest any{"GET", "/projects/p1/export", {}, {{"authorization", "Bearer "}}, ""};
  EXPECT_EQ(no_token.Handle(any).status, 401);
}

TEST_F(ApiTest, ServesOverHttp) {
  ApiServer server(&service_);
  const int port = server.Bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread t([&] { server.Serve(); });
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);

  auto res = client.Get("/projects/p1/tasks?rater=r2");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  const json task = json::parse(res->body);
  json sub = {{"rater", "r2"}, {"doc", "d1"}, {"alias", task["alias"]},
              {"seg", 0}, {"annotations", json::array()}};
  res = client.Post("/projects/p1/annotations", sub.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  res = client.Get("/projects/p1/export");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 401);
  res = client.Get("/projects/p1/export", {{"Authorization", "Bearer s3cret"}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);

  server.Stop();
  t.join();

  // The submission went through the log: a fresh service sees it.
  ApiService reloaded("s3cret");
  reloaded.LoadProjects(root_);
  EXPECT_EQ(reloaded.Find("p1")->AuthoritativeEvents().size(), 1u);
}

}  // namespace
}  // namespace mqm
