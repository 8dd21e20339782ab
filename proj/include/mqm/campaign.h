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
#ifndef MQM_CAMPAIGN_H_
#define MQM_CAMPAIGN_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <string>
#include <vector>

#include "mqm/corpus.h"

namespace mqm {

enum class ProjectMode { kMqm, kSqm };
std::string_view ProjectModeName(ProjectMode mode);
ProjectMode ParseProjectMode(std::string_view text);

struct ProjectConfig {
  std::string id;
  std::vector<std::string> systems;
  std::vector<std::string> documents;  // doc ids, in corpus order
  std::map<std::string, int> doc_lengths;
  std::vector<std::string> rater_pool;
  int raters_per_doc = 3;
  ProjectMode mode = ProjectMode::kMqm;
  std::uint64_t seed = 20210401;
  double balance_tolerance = 0.10;

  // Systems, documents and lengths taken from the segments of `corpus`.
  static ProjectConfig FromCorpus(const Corpus& corpus, std::string id,
                                  std::vector<std::string> rater_pool);
};

// One (system, document) unit of a rater's queue. `alias` is the label the
// rater sees; the true system never leaves the server for an open project.
struct TaskItem {
  std::string system;
  std::string doc_id;
  std::string alias;

  bool operator==(const TaskItem&) const = default;
};

struct Assignment {
  std::string doc_id;
  std::vector<std::string> raters;  // one k-subset of the pool
};

struct AssignmentPlan {
  std::vector<std::vector<std::string>> subsets;  // enumeration order
  std::vector<Assignment> assignments;            // per document
  std::map<std::string, std::vector<TaskItem>> queue;  // per rater
  std::map<std::string, std::map<std::string, std::string>> aliases;  // rater -> system -> alias
  std::map<std::string, std::int64_t> load;  // segments per rater
  int swaps = 0;

  // max load / min load over raters with any load.
  double BalanceRatio() const;
  const TaskItem* FindAlias(const std::string& rater, const std::string& doc_id,
                            const std::string& alias) const;
  bool Assigned(const std::string& rater, const std::string& doc_id) const;
};

// k-combinations of the pool in lexicographic order of pool positions.
std::vector<std::vector<std::string>> KSubsets(
    const std::vector<std::string>& pool, int k);

// Document i goes to subset i mod C(n, k); a swap pass then exchanges the
// subsets of document pairs while that lowers the load spread, until
// max/min load <= 1 + tolerance. Each rater's queue is shuffled from the
// seed at (system, document) granularity. Errors: PoolTooSmall,
// InvalidArgument (no documents or systems).
AssignmentPlan MakeAssignments(const ProjectConfig& config);

struct Submission {
  std::string rater_id;
  std::string doc_id;
  std::string alias;
  int seg_index = -1;
  std::vector<ErrorAnnotation> annotations;  // MQM mode
  std::optional<double> value;               // SQM mode
};

struct SubmissionEvent {
  std::int64_t seq = 0;
  std::string timestamp;  // UTC, ISO 8601
  std::string rater_id;
  SegmentKey key;
  std::optional<SegmentRating> mqm;
  std::optional<ScalarRating> scalar;
  std::optional<std::int64_t> supersedes;
};

struct SubmitResult {
  bool accepted = false;
  std::int64_t seq = 0;
  std::optional<std::int64_t> supersedes;
  std::vector<Violation> violations;  // every violated rule when rejected
};

// Carries no system name: safe to serve to raters.
struct SegmentView {
  int seg_index = 0;
  std::string source;
  std::string target;
  bool done = false;
  std::optional<std::int64_t> seq;  // of the authoritative submission
  std::vector<ErrorAnnotation> annotations;
  std::optional<double> value;
};

// A document as one rater sees it for one aliased system.
struct TaskView {
  std::string project;
  std::string rater_id;
  std::string doc_id;
  std::string alias;
  int position = 0;  // index in the rater's queue
  int queue_size = 0;
  std::vector<SegmentView> segments;
};

struct RaterProgress {
  std::string rater_id;
  std::int64_t assigned = 0;  // segments, all systems
  std::int64_t done = 0;
};

// An annotation project persisted under one directory:
//   project.json   configuration
//   segments.tsv   texts served to raters
//   events.jsonl   append-only submission log
// Submissions are serialized by an exclusive lock and appended before they
// become visible; readers share the lock.
class Campaign {
 public:
  using Clock = std::function<std::string()>;

  // Errors: InvalidArgument when the directory already holds a project,
  // PoolTooSmall, Io.
  static std::unique_ptr<Campaign> Create(const std::string& dir,
                                          ProjectConfig config,
                                          const Corpus& segments);
  // Replays the event log. A torn final line (crash mid-append) is dropped.
  // Errors: LogCorrupt, Io.
  static std::unique_ptr<Campaign> Open(const std::string& dir);

  const ProjectConfig& config() const { return config_; }
  const AssignmentPlan& plan() const { return plan_; }
  bool closed() const;

  // Errors: ProjectClosed, NotAssigned. Validation failures are returned,
  // not thrown.
  SubmitResult Submit(const Submission& submission);
  // The rules Submit would report, without appending anything.
  std::vector<Violation> Check(const Submission& submission) const;

  // First queue item with an unannotated segment; nullopt when done.
  std::optional<TaskView> NextTask(const std::string& rater) const;
  // Errors: NotAssigned.
  TaskView Document(const std::string& rater, const std::string& doc_id,
                    const std::string& alias) const;
  std::vector<RaterProgress> Progress() const;

  // Latest event per (rater, segment). Errors (export only): EmptyProject.
  std::vector<SubmissionEvent> AuthoritativeEvents() const;
  Corpus AuthoritativeCorpus() const;
  void ExportTsv(std::ostream& out) const;

  // Appends a close marker; later submissions fail with ProjectClosed.
  void Close();

  // Overrides the timestamp source (tests).
  void set_clock(Clock clock) { clock_ = std::move(clock); }

 private:
  Campaign() = default;
  void Replay();
  void Append(const std::string& line);
  // Caller holds mu_. Fills `event` (minus seq, timestamp) when valid.
  std::vector<Violation> CheckLocked(const Submission& s,
                                     SubmissionEvent* event) const;
  TaskView ViewLocked(const std::string& rater, const TaskItem& item,
                      int position) const;
  bool DoneLocked(const std::string& rater, const TaskItem& item) const;

  std::string dir_;
  ProjectConfig config_;
  AssignmentPlan plan_;
  Corpus texts_;
  Clock clock_;

  mutable std::shared_mutex mu_;
  std::int64_t last_seq_ = 0;
  bool closed_ = false;
  std::vector<SubmissionEvent> events_;
  // (rater, key) -> index into events_ of the authoritative event
  std::map<std::pair<std::string, SegmentKey>, std::size_t> latest_;
};

}  // namespace mqm

#endif  // MQM_CAMPAIGN_H_
