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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "scddq/cli.h"
#include "test_util.h"

namespace scddq {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json SmallBase() {
  return {{"epochs", 6},
          {"real_dialogs_per_epoch", 3},
          {"planning_rounds", 1},
          {"warm_start_dialogs", 5},
          {"warm_start_updates", 2},
          {"eval_episodes", 4},
          {"kb_size", 120},
          {"goal_counts", "1:8,2:4,3:4,4:4,5:2"}};
}

std::string WriteJson(const scddq::testing::TempDir& dir, const std::string& name,
                      const nlohmann::json& j) {
  const std::string path = dir.File(name);
  std::ofstream(path) << j.dump(2);
  return path;
}

const std::vector<std::string> kAllMethods = {"DQN", "DDQ", "C-DDQ", "S-DDQ", "SC-DDQ"};
const std::vector<std::string> kAllSchedules = {"RANDOM", "EMD", "EDD", "EED",
                                                "DME",    "DEE", "DDM"};

TEST_CASE("gen-data prints the default partition and is reproducible") {
  scddq::testing::TempDir dir;
  const Result r = Cli({"gen-data", "--out-dir", dir.File("a")});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "easy=61 middle=33 difficult=43\n");
  CHECK(fs::exists(dir.File("a") + "/kb.json"));
  CHECK(fs::exists(dir.File("a") + "/goals.json"));
  CHECK(Cli({"gen-data", "--out-dir", dir.File("b")}).code == kExitOk);
  for (const char* f : {"kb.json", "goals.json"}) {
    CHECK(Slurp(dir.File("a") + "/" + f) == Slurp(dir.File("b") + "/" + f));
  }
  CHECK(Cli({"gen-data", "--movies", "0", "--out-dir", dir.File("c")}).code == kExitUsage);
  CHECK(Cli({"gen-data", "--bogus"}).code == kExitUsage);
  CHECK(Cli({}).code == kExitUsage);
}

TEST_CASE("train writes a run directory and is deterministic") {
  scddq::testing::TempDir dir;
  REQUIRE(Cli({"gen-data", "--movies", "150", "--goals-spec", "1:8,2:4,3:4,4:4,5:2",
               "--out-dir", dir.File("data")})
              .code == kExitOk);
  nlohmann::json config = SmallBase();
  config.erase("kb_size");
  config.erase("goal_counts");
  config["method"] = "SC-DDQ";
  config["schedule"] = "EMD";
  config["seed"] = 1;
  config["kb_path"] = dir.File("data") + "/kb.json";
  config["goals_path"] = dir.File("data") + "/goals.json";
  const std::string path = WriteJson(dir, "run.json", config);

  const Result r = Cli({"train", "--config", path, "--out-dir", dir.File("runs")});
  REQUIRE(r.code == kExitOk);
  const fs::path run = fs::path(dir.File("runs")) / "SC-DDQ_EMD_1";
  REQUIRE(fs::is_directory(run));
  const std::string eval = Slurp(run / "eval.csv");
  CHECK(std::count(eval.begin(), eval.end(), '\n') == 5);  // header + 4 rows
  for (const char* f : {"metrics.csv", "actions.csv", "run.json"}) CHECK(fs::exists(run / f));

  REQUIRE(Cli({"train", "--config", path, "--out-dir", dir.File("again")}).code == kExitOk);
  CHECK(Slurp(fs::path(dir.File("again")) / "SC-DDQ_EMD_1" / "eval.csv") == eval);

  const Result ev = Cli({"eval", "--config", path, "--checkpoint",
                         (run / "checkpoints" / "epoch_0006.json").string(), "--level", "easy"});
  CHECK(ev.code == kExitOk);
  CHECK(ev.out.find("level=easy") != std::string::npos);

  config["kb_path"] = dir.File("missing.json");
  const Result bad = Cli({"train", "--config", WriteJson(dir, "bad.json", config)});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("kb_path") != std::string::npos);

  config["kb_path"] = dir.File("data") + "/kb.json";
  config["schedule"] = "RANDOM";
  CHECK(Cli({"train", "--config", WriteJson(dir, "gate.json", config)}).code == kExitUsage);
}

TEST_CASE("the full grid expands to fifteen runs per seed") {
  const auto runs = ExpandMatrix(
      {{"methods", kAllMethods}, {"schedules", kAllSchedules}, {"seeds", 2}, {"master_seed", 9}});
  CHECK(runs.size() == 30);
  std::set<std::string> ids;
  for (const auto& r : runs) ids.insert(r.config.run_id);
  CHECK(ids.size() == 30);
  CHECK(ids.count("DQN_RANDOM_0"));
  CHECK(ids.count("SC-DDQ_DDM_1"));
  CHECK_FALSE(ids.count("DQN_EMD_0"));
  CHECK_FALSE(ids.count("S-DDQ_RANDOM_0"));
  CHECK(ExpandMatrix(nlohmann::json::object()).empty());
  CHECK(MatrixRunSeed(9, "DDQ", "RANDOM", 0) != MatrixRunSeed(9, "DDQ", "RANDOM", 1));
  CHECK(MatrixRunSeed(9, "DDQ", "RANDOM", 0) != MatrixRunSeed(9, "DQN", "RANDOM", 0));
}

TEST_CASE("matrix output does not depend on the number of jobs") {
  scddq::testing::TempDir dir;
  auto spec = [&](const std::string& out) {
    return nlohmann::json{{"methods", {"DQN", "DDQ", "S-DDQ"}},
                          {"schedules", {"EMD", "DME"}},
                          {"seeds", 1},
                          {"master_seed", 4},
                          {"out_dir", dir.File(out)},
                          {"base", SmallBase()}};
  };
  const Result one = Cli({"matrix", "--config", WriteJson(dir, "m1.json", spec("j1")),
                          "--jobs", "1"});
  const Result four = Cli({"matrix", "--config", WriteJson(dir, "m4.json", spec("j4")),
                           "--jobs", "4"});
  REQUIRE(one.code == kExitOk);
  REQUIRE(four.code == kExitOk);
  CHECK(one.out == four.out);
  int compared = 0;
  for (const auto& e : fs::directory_iterator(dir.File("j1"))) {
    const fs::path other = fs::path(dir.File("j4")) / e.path().filename();
    for (const char* f : {"eval.csv", "metrics.csv", "actions.csv"}) {
      CHECK(Slurp(e.path() / f) == Slurp(other / f));
    }
    ++compared;
  }
  CHECK(compared == 4);

  const Result empty = Cli({"matrix", "--config", WriteJson(dir, "e.json", nlohmann::json::object())});
  CHECK(empty.code == kExitOk);
  CHECK(empty.out.find("0 runs") != std::string::npos);

  const Result report = Cli({"report", "--runs", dir.File("j1"), "--out", dir.File("report")});
  CHECK(report.code == kExitOk);
  for (const char* f : {"table4.csv", "table5.csv", "table6.csv", "correlation.csv"}) {
    CHECK(fs::exists(fs::path(dir.File("report")) / f));
  }
  const std::string corr = Slurp(fs::path(dir.File("report")) / "correlation.csv");
  CHECK(std::count(corr.begin(), corr.end(), '\n') == 5);
}

TEST_CASE("report on an empty directory is a usage error") {
  scddq::testing::TempDir dir;
  CHECK(Cli({"report", "--runs", dir.path().string(), "--out", dir.File("out")}).code ==
        kExitUsage);
}

}  // namespace
}  // namespace scddq
