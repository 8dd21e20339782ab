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
// mqm: command-line front end for the MQM toolkit.
//
// Exit status: 0 success, 1 data or validation error, 2 usage error.

#include <signal.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mqm/analysis.h"
#include "mqm/api.h"
#include "mqm/budget.h"
#include "mqm/campaign.h"
#include "mqm/corpus.h"
#include "mqm/corpus_io.h"
#include "mqm/error.h"
#include "mqm/json_codec.h"
#include "mqm/report.h"
#include "mqm/scoring.h"
#include "mqm/taxonomy.h"
#include "mqm/text.h"

namespace fs = std::filesystem;

namespace mqm::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 20210401;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::string corpus;
  std::string segments;
  std::vector<std::string> scalars;  // NAME[:scale]=PATH
  std::vector<std::string> metrics_system;
  std::vector<std::string> metrics_segment;
  bool lenient = false;
  std::string scheme;
};

struct Output {
  std::string out;
  std::string format = "tsv";
  int decimals = 4;
  std::string plot_data;
};

struct Globals {
  std::string data_dir;
  std::optional<std::uint64_t> seed;
};

Globals g;

std::string DataDir() {
  if (!g.data_dir.empty()) return g.data_dir;
  const char* env = std::getenv("MQM_DATA_DIR");
  return env ? env : "";
}

std::uint64_t Seed() {
  if (g.seed) return *g.seed;
  if (const char* env = std::getenv("MQM_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("MQM_SEED is not an integer: ") + env);
  }
  return kDefaultSeed;
}

// Relative paths are looked up under the data directory when they do not
// exist as given.
std::string Resolve(const std::string& path) {
  const std::string dir = DataDir();
  if (path.empty() || dir.empty() || fs::path(path).is_absolute() ||
      fs::exists(path)) {
    return path;
  }
  return (fs::path(dir) / path).string();
}

std::string EnvOr(const char* name, const std::string& fallback) {
  const char* env = std::getenv(name);
  return env && *env ? env : fallback;
}

void AddInputOptions(CLI::App* app, Inputs* in, bool corpus_required = true) {
  auto* c = app->add_option("--corpus", in->corpus, "MQM ratings TSV");
  if (corpus_required) c->required();
  app->add_option("--scalar", in->scalars,
                  "scalar ratings NAME[:wmt-raw|wmt-z|sqm]=PATH (repeatable)");
  app->add_option("--metrics-system", in->metrics_system,
                  "system-level metric scores TSV (repeatable)");
  app->add_option("--metrics-segment", in->metrics_segment,
                  "segment-level metric scores TSV (repeatable)");
  app->add_flag("--lenient", in->lenient,
                "demote cap violations and unknown categories to warnings");
  app->add_option("--scheme", in->scheme, "weight scheme TSV");
}

void AddOutputOptions(CLI::App* app, Output* out, bool plot_data = false) {
  app->add_option("--out", out->out, "output file (default stdout)");
  app->add_option("--format", out->format, "tsv or jsonl")
      ->check(CLI::IsMember({"tsv", "jsonl"}));
  app->add_option("--decimals", out->decimals, "digits after the point")
      ->check(CLI::Range(0, 17));
  if (plot_data) {
    app->add_option("--plot-data", out->plot_data,
                    "long-format TSV for external plotting");
  }
}

ScalarScale DefaultScale(const std::string& name) {
  const std::string n = text::AsciiLower(name);
  if (n == "wmt-raw" || n == "wmt_raw") return ScalarScale::kWmtRaw;
  if (n == "wmt-z" || n == "wmt_z") return ScalarScale::kWmtZ;
  return ScalarScale::kSqm;
}

Corpus LoadInputs(const Inputs& in) {
  ImportOptions opts;
  opts.mode = in.lenient ? ParseMode::kLenient : ParseMode::kStrict;
  std::vector<std::string> warnings;
  Corpus corpus;
  if (!in.corpus.empty()) {
    corpus = LoadMqmFile(Resolve(in.corpus), opts, &warnings);
  } else if (!in.segments.empty()) {
    std::ifstream f(Resolve(in.segments));
    if (!f) throw Error(ErrorCode::kIo, "cannot open " + Resolve(in.segments));
    corpus = ImportSegmentsTsv(f);
  } else {
    throw UsageError("--corpus is required");
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& spec : in.scalars) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--scalar expects NAME[:scale]=PATH, got " + spec);
    }
    std::string name = spec.substr(0, eq);
    ScalarScale scale;
    if (auto colon = name.find(':'); colon != std::string::npos) {
      scale = ParseScalarScale(name.substr(colon + 1));
      name = name.substr(0, colon);
    } else {
      scale = DefaultScale(name);
    }
    corpus.AddScalarRatings(name,
                            LoadScalarFile(Resolve(spec.substr(eq + 1)), scale));
  }
  for (const auto& p : in.metrics_system) {
    corpus.AddMetricScores(LoadMetricFile(Resolve(p), MetricLevel::kSystem));
  }
  for (const auto& p : in.metrics_segment) {
    corpus.AddMetricScores(LoadMetricFile(Resolve(p), MetricLevel::kSegment));
  }
  return corpus;
}

WeightScheme LoadScheme(const Inputs& in) {
  if (in.scheme.empty()) return WeightScheme::Default();
  return WeightScheme::FromFile(Resolve(in.scheme));
}

// Runs `write` against --out or stdout.
template <typename F>
void WithOutput(const std::string& path, F write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  write(f);
  f.flush();
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
}

void Emit(const Table& t, const Output& o) {
  WithOutput(o.out, [&](std::ostream& os) {
    WriteTable(t, ParseReportFormat(o.format), os, {o.decimals});
  });
}

void EmitPlot(const Table& t, const Output& o) {
  if (o.plot_data.empty()) return;
  WithOutput(o.plot_data, [&](std::ostream& os) {
    WriteTable(t, ReportFormat::kTsv, os, {o.decimals});
  });
}

ReportLevel ParseLevel(const std::string& s) {
  if (s == "system") return ReportLevel::kSystem;
  if (s == "document") return ReportLevel::kDocument;
  if (s == "segment") return ReportLevel::kSegment;
  if (s == "rating") return ReportLevel::kRating;
  throw UsageError("unknown level " + s);
}

MetricLevel ParseMetricLevel(const std::string& s) {
  if (s == "system") return MetricLevel::kSystem;
  if (s == "segment") return MetricLevel::kSegment;
  throw UsageError("unknown level " + s);
}

// Systems named Human* when the user gives no explicit set.
std::set<std::string> HumanSystems(const Corpus& corpus,
                                   const std::vector<std::string>& given) {
  if (!given.empty()) return {given.begin(), given.end()};
  std::set<std::string> out;
  for (const auto& s : corpus.systems()) {
    if (s.rfind("Human", 0) == 0) out.insert(s);
  }
  return out;
}

std::set<std::string> MtSystems(const Corpus& corpus,
                                const std::set<std::string>& human,
                                const std::vector<std::string>& given) {
  if (!given.empty()) return {given.begin(), given.end()};
  std::set<std::string> out;
  for (const auto& s : corpus.systems()) {
    if (!human.count(s)) out.insert(s);
  }
  return out;
}

// ---------------------------------------------------------------- budget

struct BudgetFlags {
  std::string config_path;
  std::string model_path;
  std::vector<std::string> systems;
  bool drop_incomplete = false;
  int ratings = 0, raters = 0, consecutive = 0, iterations = 0;
  bool unaligned_items = false, align_raters = false;
  double noise = -1.0, target = -1.0;
  std::string mode;
  int max_ratings = 0;
};

void AddBudgetOptions(CLI::App* app, BudgetFlags* b) {
  app->add_option("--config", b->config_path,
                  "key<TAB>value file of budget settings; flags override");
  app->add_option("--model", b->model_path,
                  "Gaussian model JSON (from fit-gaussian) instead of --corpus");
  app->add_option("--systems", b->systems, "systems to model")->delimiter(',');
  app->add_flag("--drop-incomplete", b->drop_incomplete,
                "drop segments not rated for every system");
  app->add_option("--ratings", b->ratings, "ratings per system");
  app->add_option("--raters", b->raters, "raters per item");
  app->add_option("--consecutive", b->consecutive,
                  "consecutive segments per document");
  app->add_option("--iterations", b->iterations, "simulated projects");
  app->add_flag("--unaligned-items", b->unaligned_items,
                "draw items independently per system");
  app->add_flag("--align-raters", b->align_raters,
                "share rater noise across systems");
  app->add_option("--noise-factor", b->noise, "rater noise scale");
  app->add_option("--target-tau", b->target, "target mean Kendall tau");
  app->add_option("--mode", b->mode, "gaussian or bootstrap")
      ->check(CLI::IsMember({"gaussian", "bootstrap"}));
}

bool ParseBool(const std::string& v) {
  const std::string t = text::AsciiLower(v);
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw UsageError("not a boolean: " + v);
}

RatingBudgetConfig BudgetConfig(const BudgetFlags& b) {
  RatingBudgetConfig c;
  c.seed = Seed();
  if (!b.config_path.empty()) {
    std::ifstream f(Resolve(b.config_path));
    if (!f) throw Error(ErrorCode::kIo, "cannot open " + b.config_path);
    std::string line;
    while (std::getline(f, line)) {
      const std::string t(text::Trim(line));
      if (t.empty() || t[0] == '#') continue;
      const auto cols = text::SplitTabs(t);
      if (cols.size() != 2) throw UsageError("bad config line: " + t);
      const std::string key(text::Trim(cols[0]));
      const std::string val(text::Trim(cols[1]));
      try {
        if (key == "ratings_per_system") c.ratings_per_system = std::stoi(val);
        else if (key == "raters_per_item") c.raters_per_item = std::stoi(val);
        else if (key == "consecutive_per_doc") c.consecutive_per_doc = std::stoi(val);
        else if (key == "align_items_across_systems") c.align_items_across_systems = ParseBool(val);
        else if (key == "align_raters") c.align_raters = ParseBool(val);
        else if (key == "iterations") c.iterations = std::stoi(val);
        else if (key == "seed") c.seed = std::stoull(val);
        else if (key == "target_tau") c.target_tau = std::stod(val);
        else if (key == "rater_noise_factor") c.rater_noise_factor = std::stod(val);
        else if (key == "mode") c.mode = val == "bootstrap" ? SimulationMode::kBlockBootstrap : SimulationMode::kGaussian;
        else throw UsageError("unknown config key: " + key);
      } catch (const std::logic_error&) {
        throw UsageError("bad value for " + key + ": " + val);
      }
    }
    if (g.seed || std::getenv("MQM_SEED")) c.seed = Seed();
  }
  if (b.ratings) c.ratings_per_system = b.ratings;
  if (b.raters) c.raters_per_item = b.raters;
  if (b.consecutive) c.consecutive_per_doc = b.consecutive;
  if (b.iterations) c.iterations = b.iterations;
  if (b.unaligned_items) c.align_items_across_systems = false;
  if (b.align_raters) c.align_raters = true;
  if (b.noise >= 0.0) c.rater_noise_factor = b.noise;
  if (b.target >= 0.0) c.target_tau = b.target;
  if (!b.mode.empty()) {
    c.mode = b.mode == "bootstrap" ? SimulationMode::kBlockBootstrap
                                   : SimulationMode::kGaussian;
  }
  c.Validate();
  return c;
}

struct ModelInputs {
  GaussianModel model;
  std::optional<ScoreGrid> grid;
};

ModelInputs LoadModel(const Inputs& in, const BudgetFlags& b) {
  if (!b.model_path.empty()) {
    return {LoadModelFile(Resolve(b.model_path)), std::nullopt};
  }
  if (in.corpus.empty()) throw UsageError("--corpus or --model is required");
  const Corpus corpus = LoadInputs(in);
  ScoreGrid grid =
      BuildScoreGrid(corpus, LoadScheme(in), b.systems, b.drop_incomplete);
  GaussianModel model = FitGaussian(grid);
  return {std::move(model), std::move(grid)};
}

// ------------------------------------------------------------------ serve

int Serve(const std::string& data_dir, const std::string& listen,
          const std::string& token) {
  if (data_dir.empty()) throw UsageError("serve needs --data-dir or MQM_DATA_DIR");
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw UsageError("--listen expects HOST:PORT");
  const std::string host = listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(listen.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("bad port in " + listen);
  }
  ApiService service(token);
  service.LoadProjects(data_dir);
  if (token.empty()) {
    std::cerr << "warning: no token; export and close are disabled\n";
  }

  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  ApiServer server(&service);
  const int bound = server.Bind(host, port);
  if (bound < 0) throw Error(ErrorCode::kIo, "cannot listen on " + listen);
  std::cerr << "serving " << service.ProjectIds().size() << " project(s) on "
            << host << ':' << bound << '\n';
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    server.Stop();
  });
  const bool ok = server.Serve();
  // Wake the waiter if the server stopped on its own.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return ok ? 0 : 1;
}

// -------------------------------------------------------------------- main

int Run(int argc, char** argv) {
  CLI::App app{"MQM toolkit: scoring, analysis, budget simulation and "
               "annotation campaigns"};
  app.require_subcommand(1);
  app.add_option("--data-dir", g.data_dir,
                 "directory for relative inputs and served projects "
                 "(env MQM_DATA_DIR)");
  app.add_option("--seed", g.seed, "random seed (env MQM_SEED)");

  Inputs in;
  Output out;
  std::function<int()> action;

  // import
  auto* imp = app.add_subcommand("import", "normalize an MQM TSV");
  AddInputOptions(imp, &in);
  AddOutputOptions(imp, &out);
  std::string segments_out;
  imp->add_option("--segments-out", segments_out, "also write segment texts");
  imp->callback([&] {
    action = [&] {
      const Corpus c = LoadInputs(in);
      WithOutput(out.out, [&](std::ostream& os) { WriteMqmTsv(c, os); });
      if (!segments_out.empty()) {
        WithOutput(segments_out,
                   [&](std::ostream& os) { WriteSegmentsTsv(c, os); });
      }
      return 0;
    };
  });

  // validate
  auto* val = app.add_subcommand("validate", "check corpus invariants");
  AddInputOptions(val, &in);
  AddOutputOptions(val, &out);
  val->callback([&] {
    action = [&] {
      const ValidationReport r = ValidateCorpus(LoadInputs(in));
      Emit(ViolationTableOf(r), out);
      if (!r.ok()) {
        std::cerr << r.violations.size() << " violation(s)\n";
        return 1;
      }
      return 0;
    };
  });

  // score
  auto* score = app.add_subcommand("score", "MQM scores per level");
  AddInputOptions(score, &in);
  AddOutputOptions(score, &out);
  std::string level = "system", severity;
  std::vector<std::string> include, exclude;
  score->add_option("--level", level, "system, document, segment or rating")
      ->check(CLI::IsMember({"system", "document", "segment", "rating"}));
  score->add_option("--severity", severity, "only this severity");
  score->add_option("--category", include, "only these category patterns");
  score->add_option("--exclude", exclude, "drop these category patterns");
  score->callback([&] {
    action = [&] {
      const Corpus c = LoadInputs(in);
      AnnotationFilter f;
      if (!severity.empty()) f.severity = ParseSeverity(severity);
      for (const auto& p : include) f.include.push_back(CategoryPattern::Parse(p));
      for (const auto& p : exclude) f.exclude.push_back(CategoryPattern::Parse(p));
      Emit(ScoreTableOf(Aggregate(c, LoadScheme(in), ParseLevel(level), f)), out);
      return 0;
    };
  });

  // breakdown
  auto* bd = app.add_subcommand("breakdown", "per-category error breakdown");
  AddInputOptions(bd, &in);
  AddOutputOptions(bd, &out);
  std::vector<std::string> human, mt, focus;
  bd->add_option("--human", human, "human systems (default Human*)")
      ->delimiter(',');
  bd->add_option("--mt", mt, "MT systems (default all others)")->delimiter(',');
  bd->add_option("--focus", focus, "systems with their own column")
      ->delimiter(',');
  bd->callback([&] {
    action = [&] {
      const Corpus c = LoadInputs(in);
      BreakdownGroups groups;
      groups.human = HumanSystems(c, human);
      groups.mt = MtSystems(c, groups.human, mt);
      groups.focus = focus;
      Emit(BreakdownTableOf(BreakdownByCategory(c, LoadScheme(in), groups)),
           out);
      return 0;
    };
  });

  // rater-report
  auto* rr = app.add_subcommand("rater-report", "per-rater MQM by group");
  AddInputOptions(rr, &in);
  AddOutputOptions(rr, &out);
  rr->callback([&] {
    action = [&] {
      Emit(RaterTableOf(BuildRaterReport(LoadInputs(in), LoadScheme(in))), out);
      return 0;
    };
  });

  // rank
  auto* rank = app.add_subcommand("rank", "competition ranking of systems");
  AddInputOptions(rank, &in);
  AddOutputOptions(rank, &out);
  std::string method = "mqm";
  std::optional<int> tie_decimals;
  std::vector<std::string> rank_systems;
  rank->add_option("--method", method, "mqm, a scalar method or a metric");
  rank->add_option("--tie-decimals", tie_decimals,
                   "round scores before comparing");
  rank->add_option("--systems", rank_systems, "restrict to these systems")
      ->delimiter(',');
  rank->callback([&] {
    action = [&] {
      const Corpus c = LoadInputs(in);
      const WeightScheme scheme = LoadScheme(in);
      MethodOptions mo;
      mo.scheme = &scheme;
      ScoreTable t = MethodScores(c, method, mo);
      std::map<std::string, double> scores = t.system;
      if (!rank_systems.empty()) {
        std::map<std::string, double> kept;
        for (const auto& s : rank_systems) {
          auto it = scores.find(s);
          if (it == scores.end()) {
            throw Error(ErrorCode::kMissingScores, method + " has no score for " + s);
          }
          kept.insert(*it);
        }
        scores = std::move(kept);
      }
      Emit(RankTableOf(RankSystems(scores, t.orientation, tie_decimals)), out);
      return 0;
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Major-weight stability sweep");
  AddInputOptions(sweep, &in);
  AddOutputOptions(sweep, &out, true);
  SweepOptions so;
  so.major_weights = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  sweep->add_option("--weights", so.major_weights, "Major weights to try")
      ->delimiter(',');
  sweep->add_option("--resamples", so.resamples, "bootstrap resamples");
  sweep->add_option("--slack", so.stability_slack,
                    "stability slack below the maximum");
  sweep->add_option("--separation", so.separation_level,
                    "resample share that separates a pair");
  sweep->callback([&] {
    action = [&] {
      so.seed = Seed();
      const SweepReport r = WeightSweep(LoadInputs(in), so);
      Emit(SweepTableOf(r), out);
      EmitPlot(SweepPlotData(r), out);
      return 0;
    };
  });

  // correlate / kendall-like / metrics-eval share these.
  std::string gold = "mqm", corr_level = "system";
  std::vector<std::string> candidates, corr_systems, corr_human;
  bool include_human = false, all_segments = false;
  std::optional<double> threshold;
  auto add_corr = [&](CLI::App* sub, bool with_level, bool with_candidates) {
    AddInputOptions(sub, &in);
    AddOutputOptions(sub, &out);
    sub->add_option("--gold", gold, "mqm, wmt-z, wmt-raw, psqm or csqm");
    if (with_level) {
      sub->add_option("--level", corr_level, "system or segment")
          ->check(CLI::IsMember({"system", "segment"}));
    }
    if (with_candidates) {
      sub->add_option("--candidates", candidates,
                      "methods or metrics (default all)")
          ->delimiter(',');
    }
    sub->add_option("--systems", corr_systems, "systems to correlate over")
        ->delimiter(',');
    sub->add_option("--human", corr_human, "human systems (default Human*)")
        ->delimiter(',');
    sub->add_flag("--include-human", include_human,
                  "score human outputs as systems");
    sub->add_flag("--all-segments", all_segments,
                  "segment level: do not restrict to WMT-rated segments");
    sub->add_option("--threshold", threshold,
                    "segment-level gold difference threshold");
  };
  auto corr_options = [&](const Corpus& c, MetricLevel lvl,
                          const WeightScheme* scheme) {
    CorrelationOptions o;
    o.gold = GoldConfig::For(ParseGoldSource(gold), lvl);
    if (threshold) o.gold.seg_threshold = *threshold;
    if (all_segments) o.gold.segment_filter = SegmentFilter::kAll;
    o.level = lvl;
    o.candidates = candidates;
    o.systems = corr_systems;
    o.human_systems = HumanSystems(c, corr_human);
    o.include_human = include_human;
    o.methods.scheme = scheme;
    return o;
  };

  auto* corr = app.add_subcommand("correlate", "correlate methods with a gold");
  add_corr(corr, true, true);
  corr->callback([&] {
    action = [&] {
      const Corpus c = LoadInputs(in);
      const WeightScheme scheme = LoadScheme(in);
      Emit(CorrelationTableOf(BuildCorrelationReport(
               c, corr_options(c, ParseMetricLevel(corr_level), &scheme))),
           out);
      return 0;
    };
  });

  auto* kl = app.add_subcommand("kendall-like",
                                "segment-level Kendall-like agreement");
  add_corr(kl, false, true);
  kl->callback([&] {
    action = [&] {
      const Corpus c = LoadInputs(in);
      const WeightScheme scheme = LoadScheme(in);
      Emit(CorrelationTableOf(BuildCorrelationReport(
               c, corr_options(c, MetricLevel::kSegment, &scheme))),
           out);
      return 0;
    };
  });

  auto* me = app.add_subcommand("metrics-eval",
                                "correlate every automatic metric with a gold");
  add_corr(me, true, false);
  me->callback([&] {
    action = [&] {
      const Corpus c = LoadInputs(in);
      const WeightScheme scheme = LoadScheme(in);
      auto o = corr_options(c, ParseMetricLevel(corr_level), &scheme);
      std::set<std::string> at_level;
      if (o.level == MetricLevel::kSystem) {
        for (const auto& [k, v] : c.metric_scores().system_scores()) {
          at_level.insert(k.first);
        }
      } else {
        for (const auto& [k, v] : c.metric_scores().segment_scores()) {
          at_level.insert(std::get<0>(k));
        }
      }
      o.candidates.assign(at_level.begin(), at_level.end());
      if (o.candidates.empty()) {
        throw Error(ErrorCode::kMissingScores,
                    "no metric scores at level " + corr_level);
      }
      Emit(CorrelationTableOf(BuildCorrelationReport(c, o)), out);
      return 0;
    };
  });

  // doc-profile
  auto* dp = app.add_subcommand("doc-profile", "per-document human vs MT");
  AddInputOptions(dp, &in);
  AddOutputOptions(dp, &out);
  dp->add_option("--human", human, "human systems (default Human*)")
      ->delimiter(',');
  dp->add_option("--mt", mt, "MT systems (default all others)")->delimiter(',');
  dp->callback([&] {
    action = [&] {
      const Corpus c = LoadInputs(in);
      const auto h = HumanSystems(c, human);
      const DocumentProfile p =
          BuildDocumentProfile(c, LoadScheme(in), h, MtSystems(c, h, mt));
      Emit(DocumentProfileTableOf(p), out);
      std::cerr << "ht mean " << FormatNumber(p.ht_mean, out.decimals)
                << " var " << FormatNumber(p.ht_variance, out.decimals)
                << "; mt mean " << FormatNumber(p.mt_mean, out.decimals)
                << " var " << FormatNumber(p.mt_variance, out.decimals) << '\n';
      return 0;
    };
  });

  // fit-gaussian / simulate / min-budget
  BudgetFlags bf;
  auto* fit = app.add_subcommand("fit-gaussian",
                                 "fit the two-level Gaussian score model");
  AddInputOptions(fit, &in);
  fit->add_option("--out", out.out, "model JSON (default stdout)");
  fit->add_option("--systems", bf.systems, "systems to model")->delimiter(',');
  fit->add_flag("--drop-incomplete", bf.drop_incomplete,
                "drop segments not rated for every system");
  fit->callback([&] {
    action = [&] {
      const Corpus c = LoadInputs(in);
      const GaussianModel m = FitGaussian(
          BuildScoreGrid(c, LoadScheme(in), bf.systems, bf.drop_incomplete));
      WithOutput(out.out,
                 [&](std::ostream& os) { os << ModelToJson(m).dump(2) << '\n'; });
      return 0;
    };
  });

  auto* sim = app.add_subcommand("simulate",
                                 "Kendall tau distribution for one budget");
  AddInputOptions(sim, &in, false);
  AddOutputOptions(sim, &out, true);
  AddBudgetOptions(sim, &bf);
  sim->callback([&] {
    action = [&] {
      const RatingBudgetConfig cfg = BudgetConfig(bf);
      const ModelInputs mi = LoadModel(in, bf);
      const TauDistribution d = SimulateTauDistribution(
          mi.model, mi.model.mu, cfg, mi.grid ? &*mi.grid : nullptr);
      Emit(TauSummaryOf(d), out);
      EmitPlot(TauSamplesOf(d), out);
      return 0;
    };
  });

  auto* mb = app.add_subcommand("min-budget",
                                "smallest budget reaching a target tau");
  mb->alias("budget");
  AddInputOptions(mb, &in, false);
  AddOutputOptions(mb, &out, true);
  AddBudgetOptions(mb, &bf);
  mb->add_option("--max-ratings", bf.max_ratings,
                 "search ceiling (default 4x the corpus budget)");
  mb->callback([&] {
    action = [&] {
      const RatingBudgetConfig cfg = BudgetConfig(bf);
      const ModelInputs mi = LoadModel(in, bf);
      const MinBudgetResult r =
          MinRatingsForTau(mi.model, mi.model.mu, cfg, bf.max_ratings,
                           mi.grid ? &*mi.grid : nullptr);
      Table t({"ratings", "mean_tau", "target_tau", "max_ratings", "probes"});
      t.AddRow({std::int64_t{r.ratings}, r.mean_tau, cfg.target_tau,
                std::int64_t{r.max_ratings},
                static_cast<std::int64_t>(r.probes.size())});
      Emit(t, out);
      EmitPlot(MinBudgetTableOf(r), out);
      return 0;
    };
  });

  // serve
  auto* serve = app.add_subcommand("serve", "run the annotation HTTP API");
  std::string listen, token;
  serve->add_option("--listen", listen,
                    "HOST:PORT (env MQM_LISTEN, default 127.0.0.1:8080)");
  serve->add_option("--token", token,
                    "bearer token for export and close (env MQM_TOKEN)");
  serve->callback([&] {
    action = [&] {
      return Serve(DataDir(), listen.empty() ? EnvOr("MQM_LISTEN", "127.0.0.1:8080")
                                             : listen,
                   token.empty() ? EnvOr("MQM_TOKEN", "") : token);
    };
  });

  // assign
  auto* asg = app.add_subcommand("assign", "create an annotation project");
  AddInputOptions(asg, &in, false);
  asg->add_option("--segments", in.segments,
                  "segment texts TSV (system, doc_id, seg_id, source, target)");
  AddOutputOptions(asg, &out);
  std::string project_dir, project_id, mode = "mqm";
  std::vector<std::string> raters;
  int per_doc = 3;
  double tolerance = 0.10;
  bool dry_run = false;
  asg->add_option("--project-dir", project_dir, "directory of the new project");
  asg->add_option("--id", project_id, "project id (default directory name)");
  asg->add_option("--raters", raters, "rater pool")->delimiter(',')->required();
  asg->add_option("--per-doc", per_doc, "raters per document");
  asg->add_option("--mode", mode, "mqm or sqm")
      ->check(CLI::IsMember({"mqm", "sqm"}));
  asg->add_option("--tolerance", tolerance, "load balance tolerance");
  asg->add_flag("--dry-run", dry_run, "print the plan without creating files");
  asg->callback([&] {
    action = [&] {
      if (project_dir.empty() && !dry_run) {
        throw UsageError("--project-dir is required unless --dry-run");
      }
      const Corpus c = LoadInputs(in);
      std::string id = project_id;
      if (id.empty()) {
        id = project_dir.empty() ? "project"
                                 : fs::path(project_dir).filename().string();
      }
      ProjectConfig cfg = ProjectConfig::FromCorpus(c, id, raters);
      cfg.raters_per_doc = per_doc;
      cfg.mode = ParseProjectMode(mode);
      cfg.seed = Seed();
      cfg.balance_tolerance = tolerance;
      AssignmentPlan plan;
      if (dry_run) {
        plan = MakeAssignments(cfg);
      } else {
        plan = Campaign::Create(project_dir, cfg, c)->plan();
      }
      Emit(AssignmentTableOf(plan), out);
      std::cerr << plan.subsets.size() << " subsets, balance ratio "
                << FormatNumber(plan.BalanceRatio(), 4) << " after "
                << plan.swaps << " swap(s)\n";
      return 0;
    };
  });

  // export
  auto* exp = app.add_subcommand("export", "export a project's ratings as TSV");
  exp->add_option("--project-dir", project_dir, "project directory")->required();
  exp->add_option("--out", out.out, "output file (default stdout)");
  bool progress = false;
  exp->add_flag("--progress", progress, "per-rater progress instead");
  exp->callback([&] {
    action = [&] {
      const auto p = Campaign::Open(Resolve(project_dir));
      if (progress) {
        Emit(ProgressTableOf(p->Progress()), out);
      } else {
        WithOutput(out.out, [&](std::ostream& os) { p->ExportTsv(os); });
      }
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "mqm: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "mqm: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "mqm: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace
}  // namespace mqm::cli

int main(int argc, char** argv) { return mqm::cli::Run(argc, argv); }
