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
#include "mqm/campaign.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mqm/budget.h"
#include "mqm/corpus_io.h"
#include "mqm/error.h"
#include "mqm/json_codec.h"
#include "mqm/text.h"

namespace mqm {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view ProjectModeName(ProjectMode mode) {
  return mode == ProjectMode::kMqm ? "mqm" : "sqm";
}

ProjectMode ParseProjectMode(std::string_view text) {
  const std::string t = text::AsciiLower(text::Trim(text));
  if (t == "mqm") return ProjectMode::kMqm;
  if (t == "sqm") return ProjectMode::kSqm;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown project mode '" + std::string(text) + "'");
}

ProjectConfig ProjectConfig::FromCorpus(const Corpus& corpus, std::string id,
                                        std::vector<std::string> rater_pool) {
  ProjectConfig c;
  c.id = std::move(id);
  c.systems = corpus.systems();
  c.documents = corpus.doc_ids();
  for (const auto& d : c.documents) c.doc_lengths[d] = corpus.DocumentLength(d);
  c.rater_pool = std::move(rater_pool);
  return c;
}

double AssignmentPlan::BalanceRatio() const {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = 0;
  for (const auto& [rater, l] : load) {
    if (l <= 0) continue;
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  if (hi == 0) return 1.0;
  return static_cast<double>(hi) / static_cast<double>(lo);
}

const TaskItem* AssignmentPlan::FindAlias(const std::string& rater,
                                          const std::string& doc_id,
                                          const std::string& alias) const {
  auto it = queue.find(rater);
  if (it == queue.end()) return nullptr;
  for (const auto& item : it->second) {
    if (item.doc_id == doc_id && item.alias == alias) return &item;
  }
  return nullptr;
}

bool AssignmentPlan::Assigned(const std::string& rater,
                              const std::string& doc_id) const {
  for (const auto& a : assignments) {
    if (a.doc_id != doc_id) continue;
    return std::find(a.raters.begin(), a.raters.end(), rater) != a.raters.end();
  }
  return false;
}

std::vector<std::vector<std::string>> KSubsets(
    const std::vector<std::string>& pool, int k) {
  const int n = static_cast<int>(pool.size());
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "raters_per_doc must be >= 1");
  }
  if (k > n) {
    throw Error(ErrorCode::kPoolTooSmall,
                std::to_string(n) + " raters cannot fill subsets of " +
                    std::to_string(k));
  }
  std::vector<std::vector<std::string>> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<std::string> subset;
    for (int i : idx) subset.push_back(pool[i]);
    out.push_back(std::move(subset));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

namespace {

void CheckConfig(const ProjectConfig& c) {
  if (c.documents.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "project has no documents");
  }
  if (c.systems.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "project has no systems");
  }
  if (std::set<std::string>(c.rater_pool.begin(), c.rater_pool.end()).size() !=
      c.rater_pool.size()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate rater id in pool");
  }
  if (std::set<std::string>(c.systems.begin(), c.systems.end()).size() !=
      c.systems.size()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate system");
  }
  for (const auto& d : c.documents) {
    auto it = c.doc_lengths.find(d);
    if (it == c.doc_lengths.end() || it->second < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "document " + d + " has no segment count");
    }
  }
  if (!(c.balance_tolerance >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "balance_tolerance must be >= 0");
  }
}

}  // namespace

AssignmentPlan MakeAssignments(const ProjectConfig& config) {
  CheckConfig(config);
  AssignmentPlan plan;
  plan.subsets = KSubsets(config.rater_pool, config.raters_per_doc);
  const std::size_t n_docs = config.documents.size();
  const std::size_t n_sub = plan.subsets.size();
  const auto n_sys = static_cast<std::int64_t>(config.systems.size());

  std::map<std::string, int> rater_index;
  for (std::size_t r = 0; r < config.rater_pool.size(); ++r) {
    rater_index[config.rater_pool[r]] = static_cast<int>(r);
  }
  std::vector<std::vector<int>> members(n_sub);
  for (std::size_t s = 0; s < n_sub; ++s) {
    for (const auto& r : plan.subsets[s]) members[s].push_back(rater_index[r]);
  }

  std::vector<std::int64_t> weight(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) {
    weight[d] = config.doc_lengths.at(config.documents[d]) * n_sys;
  }
  std::vector<std::size_t> subset_of(n_docs);
  std::vector<std::int64_t> load(config.rater_pool.size(), 0);
  for (std::size_t d = 0; d < n_docs; ++d) {
    subset_of[d] = d % n_sub;
    for (int r : members[subset_of[d]]) load[r] += weight[d];
  }

  auto ratio = [&] {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = 0;
    for (auto l : load) {
      if (l <= 0) continue;
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
    return hi == 0 ? 1.0 : static_cast<double>(hi) / static_cast<double>(lo);
  };

  // Swap repair: exchange the subsets of the document pair that lowers the
  // sum of squared loads the most. Subset sizes are preserved, so every
  // subset keeps its round-robin share of documents.
  std::vector<std::int64_t> delta(load.size(), 0);
  while (ratio() > 1.0 + config.balance_tolerance) {
    std::int64_t best = 0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n_docs; ++i) {
      for (std::size_t j = i + 1; j < n_docs; ++j) {
        const std::size_t si = subset_of[i], sj = subset_of[j];
        if (si == sj || weight[i] == weight[j]) continue;
        const std::int64_t w = weight[j] - weight[i];
        for (int r : members[si]) delta[r] += w;
        for (int r : members[sj]) delta[r] -= w;
        std::int64_t change = 0;
        for (int r : members[si]) {
          change += delta[r] * (2 * load[r] + delta[r]);
        }
        for (int r : members[sj]) {
          if (std::find(members[si].begin(), members[si].end(), r) ==
              members[si].end()) {
            change += delta[r] * (2 * load[r] + delta[r]);
          }
        }
        for (int r : members[si]) delta[r] = 0;
        for (int r : members[sj]) delta[r] = 0;
        if (change < best) {
          best = change;
          bi = i;
          bj = j;
        }
      }
    }
    if (best >= 0) break;  // local optimum
    for (int r : members[subset_of[bi]]) load[r] += weight[bj] - weight[bi];
    for (int r : members[subset_of[bj]]) load[r] += weight[bi] - weight[bj];
    std::swap(subset_of[bi], subset_of[bj]);
    ++plan.swaps;
  }

  for (std::size_t d = 0; d < n_docs; ++d) {
    plan.assignments.push_back({config.documents[d], plan.subsets[subset_of[d]]});
  }
  for (std::size_t r = 0; r < config.rater_pool.size(); ++r) {
    const std::string& rater = config.rater_pool[r];
    plan.load[rater] = load[r];

    Rng alias_rng = StreamFor(config.seed, 2 * r);
    std::vector<std::string> order = config.systems;
    std::shuffle(order.begin(), order.end(), alias_rng);
    auto& aliases = plan.aliases[rater];
    for (std::size_t i = 0; i < order.size(); ++i) {
      aliases[order[i]] = "S" + std::to_string(i + 1);
    }

    auto& queue = plan.queue[rater];
    for (const auto& a : plan.assignments) {
      if (std::find(a.raters.begin(), a.raters.end(), rater) == a.raters.end()) {
        continue;
      }
      for (const auto& s : config.systems) {
        queue.push_back({s, a.doc_id, aliases[s]});
      }
    }
    Rng queue_rng = StreamFor(config.seed, 2 * r + 1);
    std::shuffle(queue.begin(), queue.end(), queue_rng);
  }
  return plan;
}

namespace {

std::string UtcNow() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json ConfigToJson(const ProjectConfig& c) {
  json docs = json::array();
  for (const auto& d : c.documents) {
    docs.push_back({{"doc_id", d}, {"segments", c.doc_lengths.at(d)}});
  }
  return {{"id", c.id},
          {"systems", c.systems},
          {"documents", docs},
          {"rater_pool", c.rater_pool},
          {"raters_per_doc", c.raters_per_doc},
          {"mode", ProjectModeName(c.mode)},
          {"seed", c.seed},
          {"balance_tolerance", c.balance_tolerance}};
}

ProjectConfig ConfigFromJson(const json& j) {
  ProjectConfig c;
  c.id = j.at("id").get<std::string>();
  c.systems = j.at("systems").get<std::vector<std::string>>();
  for (const auto& d : j.at("documents")) {
    const auto id = d.at("doc_id").get<std::string>();
    c.documents.push_back(id);
    c.doc_lengths[id] = d.at("segments").get<int>();
  }
  c.rater_pool = j.at("rater_pool").get<std::vector<std::string>>();
  c.raters_per_doc = j.at("raters_per_doc").get<int>();
  c.mode = ParseProjectMode(j.at("mode").get<std::string>());
  c.seed = j.at("seed").get<std::uint64_t>();
  c.balance_tolerance = j.at("balance_tolerance").get<double>();
  return c;
}

void WriteFileAtomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename " + tmp.string());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json EventToJson(const SubmissionEvent& e) {
  json j = {{"seq", e.seq},
            {"ts", e.timestamp},
            {"type", "submit"},
            {"rater", e.rater_id},
            {"system", e.key.system},
            {"doc", e.key.doc_id},
            {"seg", e.key.seg_index}};
  if (e.mqm) {
    json anns = json::array();
    for (const auto& a : e.mqm->annotations) anns.push_back(AnnotationToJson(a));
    j["annotations"] = anns;
  }
  if (e.scalar) j["value"] = e.scalar->value;
  if (e.supersedes) j["supersedes"] = *e.supersedes;
  return j;
}

SubmissionEvent EventFromJson(const json& j, ProjectMode mode,
                              const Corpus& texts) {
  SubmissionEvent e;
  e.seq = j.at("seq").get<std::int64_t>();
  e.timestamp = j.at("ts").get<std::string>();
  e.rater_id = j.at("rater").get<std::string>();
  e.key = {j.at("system").get<std::string>(), j.at("doc").get<std::string>(),
           j.at("seg").get<int>()};
  if (mode == ProjectMode::kMqm) {
    SegmentRating r{e.key, e.rater_id, {}};
    for (const auto& a : j.at("annotations")) {
      r.annotations.push_back(AnnotationFromJson(a));
    }
    e.mqm = std::move(r);
  } else {
    ScalarRating s;
    s.key = e.key;
    s.raw_seg_id = texts.RawSegId(e.key.doc_id, e.key.seg_index);
    s.rater_id = e.rater_id;
    s.value = j.at("value").get<double>();
    s.scale = ScalarScale::kSqm;
    e.scalar = s;
  }
  if (j.contains("supersedes")) {
    e.supersedes = j["supersedes"].get<std::int64_t>();
  }
  return e;
}

const char kProjectFile[] = "project.json";
const char kSegmentsFile[] = "segments.tsv";
const char kEventsFile[] = "events.jsonl";

}  // namespace

std::unique_ptr<Campaign> Campaign::Create(const std::string& dir,
                                           ProjectConfig config,
                                           const Corpus& segments) {
  const fs::path root(dir);
  if (fs::exists(root / kProjectFile)) {
    throw Error(ErrorCode::kInvalidArgument,
                "a project already exists in " + dir);
  }
  std::unique_ptr<Campaign> c(new Campaign());
  c->plan_ = MakeAssignments(config);
  for (const auto& doc : config.documents) {
    const int n = config.doc_lengths.at(doc);
    std::vector<std::string> raw;
    for (int i = 0; i < n; ++i) raw.push_back(segments.RawSegId(doc, i));
    c->texts_.RegisterDocument(doc, raw);
    for (const auto& sys : config.systems) {
      for (int i = 0; i < n; ++i) {
        const SegmentText* t = segments.FindSegment({sys, doc, i});
        if (t == nullptr) {
          throw Error(ErrorCode::kInvalidArgument,
                      "no text for " + ToString(SegmentKey{sys, doc, i}));
        }
        c->texts_.AddSegment({sys, doc, i}, *t);
      }
    }
  }

  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir);
  std::ostringstream seg;
  WriteSegmentsTsv(c->texts_, seg);
  WriteFileAtomic(root / kSegmentsFile, seg.str());
  WriteFileAtomic(root / kEventsFile, "");
  // Written last: its presence marks a complete project directory.
  WriteFileAtomic(root / kProjectFile, ConfigToJson(config).dump(2) + "\n");

  c->dir_ = dir;
  c->config_ = std::move(config);
  c->clock_ = UtcNow;
  return c;
}

std::unique_ptr<Campaign> Campaign::Open(const std::string& dir) {
  const fs::path root(dir);
  std::unique_ptr<Campaign> c(new Campaign());
  c->dir_ = dir;
  json j;
  try {
    j = json::parse(ReadFile(root / kProjectFile));
    c->config_ = ConfigFromJson(j);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo,
                "bad " + (root / kProjectFile).string() + ": " + e.what());
  }
  c->plan_ = MakeAssignments(c->config_);
  std::istringstream seg(ReadFile(root / kSegmentsFile));
  c->texts_ = ImportSegmentsTsv(seg);
  c->clock_ = UtcNow;
  c->Replay();
  return c;
}

void Campaign::Replay() {
  const fs::path path = fs::path(dir_) / kEventsFile;
  const std::string content = ReadFile(path);
  const std::size_t complete = content.rfind('\n') == std::string::npos
                                   ? 0
                                   : content.rfind('\n') + 1;
  if (complete < content.size()) {
    // The last append was cut short; it was never acknowledged.
    std::error_code ec;
    fs::resize_file(path, complete, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot truncate " + path.string());
  }
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < complete) {
    const std::size_t nl = content.find('\n', pos);
    const std::string line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const std::string where = kEventsFile + (":" + std::to_string(line_no));
    if (text::Trim(line).empty()) {
      throw Error(ErrorCode::kLogCorrupt, where + ": empty line");
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      throw Error(ErrorCode::kLogCorrupt, where + ": not JSON");
    }
    try {
      const auto seq = j.at("seq").get<std::int64_t>();
      if (seq != last_seq_ + 1) {
        throw Error(ErrorCode::kLogCorrupt,
                    where + ": sequence " + std::to_string(seq) +
                        " follows " + std::to_string(last_seq_));
      }
      const auto type = j.at("type").get<std::string>();
      if (type == "close") {
        closed_ = true;
      } else if (type == "submit") {
        SubmissionEvent e = EventFromJson(j, config_.mode, texts_);
        if (texts_.FindSegment(e.key) == nullptr) {
          throw Error(ErrorCode::kLogCorrupt,
                      where + ": unknown segment " + ToString(e.key));
        }
        latest_[{e.rater_id, e.key}] = events_.size();
        events_.push_back(std::move(e));
      } else {
        throw Error(ErrorCode::kLogCorrupt, where + ": unknown type " + type);
      }
      last_seq_ = seq;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kLogCorrupt, where + ": " + e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kLogCorrupt) throw;
      throw Error(ErrorCode::kLogCorrupt, where + ": " + e.detail());
    }
  }
}

void Campaign::Append(const std::string& line) {
  const std::string path = (fs::path(dir_) / kEventsFile).string();
  const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC,
                        0644);
  if (fd < 0) {
    throw Error(ErrorCode::kIo, "cannot open " + path + ": " +
                                    std::strerror(errno));
  }
  // One write call per event keeps concurrent readers from seeing a
  // partial line in the common case; replay drops a torn tail otherwise.
  const char* p = line.data();
  std::size_t left = line.size();
  while (left > 0) {
    const ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string msg = std::strerror(errno);
      ::close(fd);
      throw Error(ErrorCode::kIo, "cannot append to " + path + ": " + msg);
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    const std::string msg = std::strerror(errno);
    ::close(fd);
    throw Error(ErrorCode::kIo, "fsync " + path + ": " + msg);
  }
  ::close(fd);
}

bool Campaign::closed() const {
  std::shared_lock lock(mu_);
  return closed_;
}

std::vector<Violation> Campaign::CheckLocked(const Submission& s,
                                             SubmissionEvent* event) const {
  if (closed_) {
    throw Error(ErrorCode::kProjectClosed, "project " + config_.id + " is closed");
  }
  if (!plan_.Assigned(s.rater_id, s.doc_id)) {
    throw Error(ErrorCode::kNotAssigned,
                "rater " + s.rater_id + " is not assigned document " + s.doc_id);
  }
  const TaskItem* item = plan_.FindAlias(s.rater_id, s.doc_id, s.alias);
  if (item == nullptr) {
    throw Error(ErrorCode::kNotAssigned, "unknown alias '" + s.alias +
                                             "' for document " + s.doc_id);
  }

  std::vector<Violation> violations;
  const SegmentKey key{item->system, s.doc_id, s.seg_index};
  // Locations name the alias, never the system.
  const std::string loc =
      s.doc_id + "/" + s.alias + "/" + std::to_string(s.seg_index);
  const SegmentText* text = texts_.FindSegment(key);
  if (text == nullptr) {
    violations.push_back(
        {ViolationKind::kDanglingReference, loc,
         "segment index outside 0.." +
             std::to_string(config_.doc_lengths.at(s.doc_id) - 1)});
    return violations;
  }

  event->rater_id = s.rater_id;
  event->key = key;
  if (config_.mode == ProjectMode::kMqm) {
    if (s.value) {
      violations.push_back({ViolationKind::kPayloadMismatch, loc,
                            "MQM project takes annotations, not a value"});
    }
    SegmentRating r{key, s.rater_id, s.annotations};
    for (auto v : CheckRating(r, text)) {
      v.location = loc;
      violations.push_back(std::move(v));
    }
    event->mqm = std::move(r);
  } else {
    if (!s.annotations.empty()) {
      violations.push_back({ViolationKind::kPayloadMismatch, loc,
                            "SQM project takes a value, not annotations"});
    }
    if (!s.value) {
      violations.push_back(
          {ViolationKind::kPayloadMismatch, loc, "missing SQM value"});
    } else {
      try {
        CheckScalarRange(ScalarScale::kSqm, *s.value);
      } catch (const Error& err) {
        violations.push_back({ViolationKind::kScalarRange, loc, err.detail()});
      }
      ScalarRating sr;
      sr.key = key;
      sr.raw_seg_id = texts_.RawSegId(key.doc_id, key.seg_index);
      sr.rater_id = s.rater_id;
      sr.value = *s.value;
      sr.scale = ScalarScale::kSqm;
      event->scalar = sr;
    }
  }
  return violations;
}

std::vector<Violation> Campaign::Check(const Submission& s) const {
  std::shared_lock lock(mu_);
  SubmissionEvent unused;
  return CheckLocked(s, &unused);
}

SubmitResult Campaign::Submit(const Submission& s) {
  std::unique_lock lock(mu_);
  SubmitResult result;
  SubmissionEvent e;
  result.violations = CheckLocked(s, &e);
  if (!result.violations.empty()) return result;

  e.seq = last_seq_ + 1;
  e.timestamp = clock_();
  auto prev = latest_.find({e.rater_id, e.key});
  if (prev != latest_.end()) e.supersedes = events_[prev->second].seq;
  Append(EventToJson(e).dump() + "\n");

  last_seq_ = e.seq;
  latest_[{e.rater_id, e.key}] = events_.size();
  result.accepted = true;
  result.seq = e.seq;
  result.supersedes = e.supersedes;
  events_.push_back(std::move(e));
  return result;
}

bool Campaign::DoneLocked(const std::string& rater,
                          const TaskItem& item) const {
  const int n = config_.doc_lengths.at(item.doc_id);
  for (int i = 0; i < n; ++i) {
    if (!latest_.count({rater, SegmentKey{item.system, item.doc_id, i}})) {
      return false;
    }
  }
  return true;
}

TaskView Campaign::ViewLocked(const std::string& rater, const TaskItem& item,
                              int position) const {
  TaskView v;
  v.project = config_.id;
  v.rater_id = rater;
  v.doc_id = item.doc_id;
  v.alias = item.alias;
  v.position = position;
  v.queue_size = static_cast<int>(plan_.queue.at(rater).size());
  const int n = config_.doc_lengths.at(item.doc_id);
  for (int i = 0; i < n; ++i) {
    const SegmentKey key{item.system, item.doc_id, i};
    SegmentView sv;
    sv.seg_index = i;
    const SegmentText* t = texts_.FindSegment(key);
    sv.source = t->source;
    sv.target = t->target;
    auto it = latest_.find({rater, key});
    if (it != latest_.end()) {
      const SubmissionEvent& e = events_[it->second];
      sv.done = true;
      sv.seq = e.seq;
      if (e.mqm) sv.annotations = e.mqm->annotations;
      if (e.scalar) sv.value = e.scalar->value;
    }
    v.segments.push_back(std::move(sv));
  }
  return v;
}

std::optional<TaskView> Campaign::NextTask(const std::string& rater) const {
  std::shared_lock lock(mu_);
  auto q = plan_.queue.find(rater);
  if (q == plan_.queue.end()) {
    throw Error(ErrorCode::kNotAssigned, "unknown rater " + rater);
  }
  for (std::size_t i = 0; i < q->second.size(); ++i) {
    if (!DoneLocked(rater, q->second[i])) {
      return ViewLocked(rater, q->second[i], static_cast<int>(i));
    }
  }
  return std::nullopt;
}

TaskView Campaign::Document(const std::string& rater, const std::string& doc_id,
                            const std::string& alias) const {
  std::shared_lock lock(mu_);
  const TaskItem* item = plan_.FindAlias(rater, doc_id, alias);
  if (item == nullptr) {
    throw Error(ErrorCode::kNotAssigned, "rater " + rater + " has no task " +
                                             doc_id + "/" + alias);
  }
  const auto& q = plan_.queue.at(rater);
  return ViewLocked(rater, *item, static_cast<int>(item - q.data()));
}

std::vector<RaterProgress> Campaign::Progress() const {
  std::shared_lock lock(mu_);
  std::map<std::string, std::int64_t> done;
  for (const auto& [rk, idx] : latest_) ++done[rk.first];
  std::vector<RaterProgress> out;
  for (const auto& r : config_.rater_pool) {
    out.push_back({r, plan_.load.at(r), done[r]});
  }
  return out;
}

std::vector<SubmissionEvent> Campaign::AuthoritativeEvents() const {
  std::shared_lock lock(mu_);
  std::vector<SubmissionEvent> out;
  out.reserve(latest_.size());
  for (const auto& [rk, idx] : latest_) out.push_back(events_[idx]);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.seq < b.seq; });
  return out;
}

Corpus Campaign::AuthoritativeCorpus() const {
  const auto events = AuthoritativeEvents();
  Corpus c;
  for (const auto& doc : texts_.doc_ids()) {
    std::vector<std::string> raw;
    for (int i = 0; i < texts_.DocumentLength(doc); ++i) {
      raw.push_back(texts_.RawSegId(doc, i));
    }
    c.RegisterDocument(doc, raw);
  }
  for (const auto& [key, t] : texts_.segments()) c.AddSegment(key, t);
  std::vector<ScalarRating> scalars;
  for (const auto& e : events) {
    if (e.mqm) c.AddMqmRating(*e.mqm);
    if (e.scalar) scalars.push_back(*e.scalar);
  }
  if (!scalars.empty()) c.AddScalarRatings("sqm", std::move(scalars));
  return c;
}

void Campaign::ExportTsv(std::ostream& out) const {
  const Corpus c = AuthoritativeCorpus();
  if (c.mqm_ratings().empty() && c.scalar_ratings().empty()) {
    throw Error(ErrorCode::kEmptyProject,
                "project " + config_.id + " has no accepted submissions");
  }
  if (config_.mode == ProjectMode::kMqm) {
    WriteMqmTsv(c, out);
  } else {
    WriteScalarTsv(c, c.scalar_ratings().at("sqm"), out);
  }
}

void Campaign::Close() {
  std::unique_lock lock(mu_);
  if (closed_) return;
  const json j = {{"seq", last_seq_ + 1}, {"ts", clock_()}, {"type", "close"}};
  Append(j.dump() + "\n");
  ++last_seq_;
  closed_ = true;
}

}  // namespace mqm
