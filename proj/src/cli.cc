// Copyright 2026 The scddq Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scddq/cli.h"

#include <atomic>
#include <filesystem>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "scddq/analysis.h"
#include "scddq/curriculum.h"
#include "scddq/errors.h"
#include "scddq/json_io.h"
#include "scddq/knowledge_base.h"
#include "scddq/user_goal.h"

namespace scddq {

uint64_t MatrixRunSeed(uint64_t master_seed, const std::string& method,
                       const std::string& schedule, int seed_index) {
  const uint64_t cell = HashString(method + "|" + schedule);
  return DeriveSeed(DeriveSeed(master_seed, cell), static_cast<uint64_t>(seed_index));
}

std::vector<MatrixRun> ExpandMatrix(const nlohmann::json& spec) {
  if (!spec.is_object()) throw ConfigError("<root>", "matrix file must be a JSON object");
  auto strings = [&](const char* key) {
    std::vector<std::string> v;
    if (!spec.contains(key)) return v;
    try {
      v = spec.at(key).get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(key, "expected a list of strings");
    }
    return v;
  };
  const auto methods = strings("methods");
  const auto schedules = strings("schedules");
  int seeds = 1;
  uint64_t master = 0;
  try {
    if (spec.contains("seeds")) seeds = spec.at("seeds").get<int>();
    if (spec.contains("master_seed")) master = spec.at("master_seed").get<uint64_t>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("seeds", "expected integers for seeds and master_seed");
  }
  if (seeds < 0) throw ConfigError("seeds", "must be non-negative");
  nlohmann::json base = spec.value("base", nlohmann::json::object());
  for (const char* k : {"method", "schedule", "seed", "run_id"}) {
    if (base.contains(k)) throw ConfigError(std::string("base.") + k, "is set per run");
  }
  if (spec.contains("out_dir")) base["out_dir"] = spec.at("out_dir");
  const RunConfig proto = ConfigFromJson(base);

  std::vector<MatrixRun> runs;
  for (const auto& m : methods) {
    Method method;
    try {
      method = MethodFromName(m);
    } catch (const InvalidArgument& e) {
      throw ConfigError("methods", e.what());
    }
    std::vector<std::string> cells;
    if (UsesSchedule(method)) {
      for (const auto& s : schedules) {
        if (s != "RANDOM") cells.push_back(s);
      }
    } else {
      cells.push_back("RANDOM");
    }
    for (const auto& s : cells) {
      if (!IsNamedSchedule(s)) throw ConfigError("schedules", "unknown schedule '" + s + "'");
      for (int i = 0; i < seeds; ++i) {
        MatrixRun r;
        r.config = proto;
        r.config.method = method;
        r.config.schedule = s;
        r.config.seed = MatrixRunSeed(master, m, s, i);
        r.config.run_id = m + "_" + s + "_" + std::to_string(i);
        r.seed_index = i;
        runs.push_back(std::move(r));
      }
    }
  }
  return runs;
}

namespace {

int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const NumericError*>(&e)) return kExitNumeric;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const IoError*>(&e) ||
      dynamic_cast<const InvalidArgument*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const FormatError*>(&e) || dynamic_cast<const GenerationError*>(&e) ||
      dynamic_cast<const InvalidGoal*>(&e)) {
    return kExitUsage;
  }
  return kExitFailure;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

int GenData(uint64_t seed, int movies, const std::string& goals_spec,
            const std::string& out_dir, std::ostream& out) {
  if (movies < 1) throw InvalidArgument("--movies must be at least 1");
  const GoalCounts counts = ParseGoalCounts(goals_spec);
  const KnowledgeBase kb = GenerateKb(seed, movies);
  const auto goals = GenerateGoalSet(kb, counts, seed);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
  SaveKb(kb, (std::filesystem::path(out_dir) / "kb.json").string());
  SaveGoals(goals, (std::filesystem::path(out_dir) / "goals.json").string());
  const GoalBuffers b = BuildBuffers(goals);
  out << "easy=" << b.easy.size() << " middle=" << b.middle.size()
      << " difficult=" << b.difficult.size() << "\n";
  return kExitOk;
}

int Train(const std::string& config_path, const std::string& out_dir_override,
          std::ostream& out) {
  RunConfig config = LoadConfig(config_path);
  if (!out_dir_override.empty()) config.out_dir = out_dir_override;
  if (config.out_dir.empty()) config.out_dir = "runs";
  Trainer trainer(config);
  trainer.Run([&](const EvalReport& r) {
    out << "epoch " << r.checkpoint_epoch << " level=" << LevelName(r.level)
        << " success_rate=" << Fixed(r.success_rate, 4) << " avg_turns=" << Fixed(r.avg_turns, 2)
        << "\n";
    out.flush();
  });
  out << "run directory: " << trainer.run_dir() << "\n";
  return kExitOk;
}

int Eval(const std::string& config_path, const std::string& checkpoint_path,
         const std::string& level_name, int episodes, std::ostream& out) {
  const RunConfig config = LoadConfig(config_path);
  const Trainer setup(config);
  DqnAgent agent = [&] {
    const nlohmann::json j = ReadJsonFile(checkpoint_path);
    if (!j.contains("agent")) throw FormatError(checkpoint_path + ": no agent bundle");
    return DqnAgent::FromJson(j.at("agent"));
  }();
  const DifficultyLevel level = LevelFromName(level_name);
  const int n = episodes > 0 ? episodes : config.eval_episodes;
  const EvalReport r = EvaluatePolicy(
      GreedyPolicy(agent), setup.kb(), ActionRoster::Default(),
      RewardConfig::ForMaxTurns(config.max_turns), setup.goal_buffers().ForLevel(level), n,
      DeriveSeed(config.seed, "cli-eval"));
  out << "level=" << LevelName(level) << " episodes=" << n
      << " success_rate=" << Fixed(r.success_rate, 4) << " avg_turns=" << Fixed(r.avg_turns, 2)
      << "\n";
  return kExitOk;
}

int Matrix(const std::string& matrix_path, int jobs, std::ostream& out, std::ostream& err) {
  if (jobs < 1) throw InvalidArgument("--jobs must be at least 1");
  nlohmann::json spec;
  try {
    spec = ReadJsonFile(matrix_path);
  } catch (const Error& e) {
    throw ConfigError("<file>", e.what());
  }
  const auto runs = ExpandMatrix(spec);
  for (const auto& r : runs) ValidateConfig(r.config);
  std::vector<std::string> lines(runs.size());
  std::vector<int> codes(runs.size(), kExitOk);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < runs.size(); i = next++) {
      const RunConfig& c = runs[i].config;
      try {
        Trainer trainer(c);
        const auto result = trainer.Run();
        const auto& last = result.evals.back();
        lines[i] = "ok " + c.run_id + " success_rate=" + Fixed(last.success_rate, 4) +
                   " avg_turns=" + Fixed(last.avg_turns, 2);
      } catch (const std::exception& e) {
        codes[i] = ExitCodeFor(e);
        lines[i] = "failed " + c.run_id + ": " + e.what();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(runs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  int code = kExitOk;
  for (size_t i = 0; i < runs.size(); ++i) {
    (codes[i] == kExitOk ? out : err) << lines[i] << "\n";
    code = std::max(code, codes[i]);
  }
  out << runs.size() << " runs, "
      << std::count_if(codes.begin(), codes.end(), [](int c) { return c != kExitOk; })
      << " failed\n";
  return code;
}

int Report(const std::string& runs_dir, const std::string& out_dir, std::ostream& out) {
  const auto runs = LoadRuns(runs_dir);
  if (runs.empty()) throw IoError("no runs found under " + runs_dir);
  const ReportSummary s = BuildReport(runs, out_dir);
  out << "runs=" << s.runs << " conditions=" << s.table_rows << " written to " << out_dir
      << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scheduled curiosity Deep Dyna-Q dialog policy learning", "scddq"};
  app.require_subcommand(1);

  uint64_t gen_seed = 7;
  int movies = 991;
  std::string goals_spec = "1:61,2:16,3:17,4:34,5:9";
  std::string gen_out = "data";
  auto* gen = app.add_subcommand("gen-data", "Generate a knowledge base and a goal set");
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--movies", movies, "Number of KB records")->capture_default_str();
  gen->add_option("--goals-spec", goals_spec, "Goal counts per request-slot count")
      ->capture_default_str();
  gen->add_option("--out-dir", gen_out, "Output directory")->capture_default_str();

  std::string train_config, train_out;
  auto* train = app.add_subcommand("train", "Run one training experiment");
  train->add_option("--config", train_config, "Run config JSON")->required();
  train->add_option("--out-dir", train_out, "Override the config out_dir");

  std::string eval_config, eval_checkpoint, eval_level = "all";
  int eval_episodes = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpointed agent");
  eval->add_option("--config", eval_config, "Run config JSON (KB and goals)")->required();
  eval->add_option("--checkpoint", eval_checkpoint, "Checkpoint JSON")->required();
  eval->add_option("--level", eval_level, "easy, middle, difficult or all")
      ->capture_default_str();
  eval->add_option("--episodes", eval_episodes, "Episodes (default: config eval_episodes)");

  std::string matrix_config;
  int jobs = 1;
  auto* matrix = app.add_subcommand("matrix", "Run a grid of experiments");
  matrix->add_option("--config", matrix_config, "Matrix JSON")->required();
  matrix->add_option("--jobs", jobs, "Concurrent runs")->capture_default_str();

  std::string report_runs, report_out = "report";
  auto* report = app.add_subcommand("report", "Build tables and figure data from runs");
  report->add_option("--runs", report_runs, "Directory containing run directories")
      ->required();
  report->add_option("--out", report_out, "Output directory")->capture_default_str();

  std::vector<std::string> argv_storage = {"scddq"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*gen) return GenData(gen_seed, movies, goals_spec, gen_out, out);
    if (*train) return Train(train_config, train_out, out);
    if (*eval) return Eval(eval_config, eval_checkpoint, eval_level, eval_episodes, out);
    if (*matrix) return Matrix(matrix_config, jobs, out, err);
    if (*report) return Report(report_runs, report_out, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
  return kExitUsage;
}

}  // namespace scddq
