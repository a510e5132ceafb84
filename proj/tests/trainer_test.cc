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
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "scddq/errors.h"
#include "scddq/trainer.h"
#include "test_util.h"

namespace scddq {
namespace {

RunConfig SmallConfig(Method method, const std::string& schedule) {
  RunConfig c;
  c.method = method;
  c.schedule = schedule;
  c.seed = 3;
  c.epochs = 8;
  c.real_dialogs_per_epoch = 5;
  c.planning_rounds = 2;
  c.warm_start_dialogs = 20;
  c.warm_start_updates = 5;
  c.eval_episodes = 10;
  c.kb_size = 150;
  c.goal_counts = {{1, 10}, {2, 5}, {3, 5}, {4, 5}, {5, 3}};
  return c;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_CASE("warm start stays within bounds and is deterministic") {
  RunConfig c;
  c.schedule = "RANDOM";
  Trainer a(c), b(c);
  const size_t stored = a.WarmStart();
  CHECK(stored > 0);
  CHECK(stored <= 2000);
  CHECK(a.real_buffer().size() == stored);
  CHECK(b.WarmStart() == stored);
  for (size_t i = 0; i < stored; ++i) {
    const Experience& x = a.real_buffer().at(i);
    const Experience& y = b.real_buffer().at(i);
    REQUIRE(x.s == y.s);
    REQUIRE(x.a == y.a);
    REQUIRE(x.r == y.r);
    REQUIRE(x.done == y.done);
  }
  CHECK(a.StateHash() == b.StateHash());
  CHECK(a.sim_buffer().empty());
  CHECK_THROWS_AS(a.WarmStart(), ContractViolation);
}

TEST_CASE("warm start on the easy buffer succeeds every dialog") {
  RunConfig c;
  c.method = Method::kSDdq;
  c.schedule = "EMD";
  Trainer t(c);
  t.WarmStart();
  const RewardConfig rewards = RewardConfig::ForMaxTurns(c.max_turns);
  int endings = 0;
  for (size_t i = 0; i < t.real_buffer().size(); ++i) {
    const Experience& e = t.real_buffer().at(i);
    if (!e.done) continue;
    ++endings;
    CHECK(e.r == rewards.per_turn + rewards.success_bonus);
  }
  CHECK(endings == c.warm_start_dialogs);
}

TEST_CASE("evaluation baselines") {
  RunConfig c;
  Trainer t(c);
  const RewardConfig rewards = RewardConfig::ForMaxTurns(c.max_turns);
  const EvalReport rule = EvaluatePolicy(RuleBasedPolicy(), t.kb(), ActionRoster::Default(),
                                         rewards, t.goal_buffers().easy, 50, 1);
  CHECK(rule.success_rate == 1.0);
  CHECK(rule.episodes == 50);
  const EvalReport untrained = t.Evaluate(0, DifficultyLevel::kDifficult);
  CHECK(untrained.success_rate <= 0.2);
  for (const EvalReport& r : {rule, untrained}) {
    CHECK(r.success_rate >= 0.0);
    CHECK(r.success_rate <= 1.0);
    CHECK(r.avg_turns >= 2.0);
    CHECK(r.avg_turns <= 80.0);
  }
}

TEST_CASE("epoch phases run in order") {
  Trainer t(SmallConfig(Method::kScDdq, "EMD"));
  CHECK_THROWS_AS(t.RunEpoch(0), ContractViolation);
  t.WarmStart();
  t.RunEpoch(0);
  const std::vector<std::string> expected = {
      "warm_start",    "determine_level", "real_dialogs",     "dqn_update_real",
      "world_model_update", "planning",   "dqn_update_sim",   "curiosity_update",
      "sync_target"};
  CHECK(t.call_log() == expected);
  CHECK(t.agent().q_net().FlatParameters() == t.agent().target_net().FlatParameters());
}

TEST_CASE("DQN skips the model-based phases") {
  Trainer t(SmallConfig(Method::kDqn, "RANDOM"));
  CHECK(t.world_model() == nullptr);
  CHECK(t.curiosity_model() == nullptr);
  t.WarmStart();
  const EpochReport r = t.RunEpoch(0);
  const std::vector<std::string> expected = {"warm_start", "determine_level", "real_dialogs",
                                             "dqn_update_real", "sync_target"};
  CHECK(t.call_log() == expected);
  CHECK(t.sim_buffer().empty());
  CHECK_FALSE(r.world_loss.has_value());
  CHECK_FALSE(r.curiosity_loss.has_value());
  CHECK(r.planned_experiences == 0);
}

TEST_CASE("planning growth is bounded and actions are accounted for") {
  RunConfig c = SmallConfig(Method::kDdq, "RANDOM");
  c.planning_rounds = 5;
  Trainer t(c);
  t.WarmStart();
  size_t sim_before = 0;
  long counted = 0;
  for (int e = 0; e < 3; ++e) {
    const size_t real_before = t.real_buffer().total_stored();
    const EpochReport r = t.RunEpoch(e);
    CHECK(t.sim_buffer().total_stored() - sim_before <= 5u * 5u * 40u);
    CHECK(r.planned_experiences == t.sim_buffer().total_stored() - sim_before);
    sim_before = t.sim_buffer().total_stored();
    const long sum = std::accumulate(r.action_counts.begin(), r.action_counts.end(), 0L);
    CHECK(sum == static_cast<long>(t.real_buffer().total_stored() - real_before));
    CHECK(std::abs(r.mean_agent_turns * c.real_dialogs_per_epoch - sum) < 1e-9);
    counted += sum;
  }
  const auto& stage = t.stage_action_counts();
  long histogram = 0;
  for (const auto& h : stage) histogram += std::accumulate(h.begin(), h.end(), 0L);
  CHECK(histogram == counted);
}

TEST_CASE("evaluation leaves training state untouched") {
  Trainer t(SmallConfig(Method::kScDdq, "DME"));
  t.WarmStart();
  t.RunEpoch(0);
  const uint64_t before = t.StateHash();
  const EvalReport a = t.Evaluate(1, DifficultyLevel::kAll);
  CHECK(t.StateHash() == before);
  const EvalReport b = t.Evaluate(1, DifficultyLevel::kAll);
  CHECK(a.success_rate == b.success_rate);
  CHECK(a.avg_turns == b.avg_turns);
}

TEST_CASE("a full run evaluates once per stage and is reproducible") {
  scddq::testing::TempDir dir;
  RunConfig c = SmallConfig(Method::kScDdq, "EDD");
  c.out_dir = dir.File("a");
  std::vector<int> seen;
  const ExperimentResult ra = Trainer(c).Run([&](const EvalReport& r) {
    seen.push_back(r.checkpoint_epoch);
  });
  REQUIRE(ra.evals.size() == 4);
  const auto bounds = StageBoundaries(c.epochs);
  CHECK(seen == std::vector<int>{bounds[1], bounds[2], bounds[3], bounds[4]});
  CHECK(ra.evals[0].level == DifficultyLevel::kEasy);
  CHECK(ra.evals[1].level == DifficultyLevel::kDifficult);
  CHECK(ra.evals[3].level == DifficultyLevel::kAll);
  CHECK(ra.epochs.size() == static_cast<size_t>(c.epochs));

  c.out_dir = dir.File("b");
  Trainer(c).Run();
  const std::string run_a = dir.File("a") + "/" + c.DefaultRunId();
  const std::string run_b = dir.File("b") + "/" + c.DefaultRunId();
  for (const char* f : {"eval.csv", "metrics.csv", "actions.csv"}) {
    INFO(f);
    const std::string text = Slurp(run_a + "/" + f);
    CHECK_FALSE(text.empty());
    CHECK(text == Slurp(run_b + "/" + f));
  }
  CHECK(std::filesystem::exists(run_a + "/run.json"));
  int checkpoints = 0;
  for (const auto& e : std::filesystem::directory_iterator(run_a + "/checkpoints")) {
    (void)e;
    ++checkpoints;
  }
  CHECK(checkpoints == 4);
}

TEST_CASE("a 300-epoch schedule yields four evaluations") {
  RunConfig c = SmallConfig(Method::kDqn, "RANDOM");
  c.epochs = 300;
  c.real_dialogs_per_epoch = 1;
  c.warm_start_updates = 1;
  c.eval_episodes = 1;
  c.warm_start_dialogs = 1;
  const ExperimentResult r = Trainer(c).Run();
  REQUIRE(r.evals.size() == 4);
  CHECK(r.evals[0].checkpoint_epoch == 70);
  CHECK(r.evals[3].checkpoint_epoch == 300);
}

TEST_CASE("inconsistent configs are rejected before any work") {
  RunConfig c = SmallConfig(Method::kScDdq, "RANDOM");
  CHECK_THROWS_AS(Trainer{c}, ConfigError);
  c = SmallConfig(Method::kDdq, "EMD");
  CHECK_THROWS_AS(ValidateConfig(c), ConfigError);
  c = SmallConfig(Method::kSDdq, "XYZ");
  CHECK_THROWS_AS(ValidateConfig(c), ConfigError);
  c = SmallConfig(Method::kDdq, "RANDOM");
  c.epochs = 0;
  CHECK_THROWS_AS(ValidateConfig(c), ConfigError);
  c = SmallConfig(Method::kDdq, "RANDOM");
  c.kb_path = "/nonexistent/kb.json";
  CHECK_THROWS_AS(Trainer{c}, ConfigError);
  CHECK_THROWS_AS(ConfigFromJson(nlohmann::json{{"methd", "DDQ"}}), ConfigError);
}

TEST_CASE("config JSON round-trips") {
  RunConfig c = SmallConfig(Method::kSDdq, "DEE");
  c.run_id = "x";
  const RunConfig back = ConfigFromJson(ConfigToJson(c));
  CHECK(back.method == c.method);
  CHECK(back.schedule == c.schedule);
  CHECK(back.goal_counts == c.goal_counts);
  CHECK(back.epochs == c.epochs);
  CHECK(back.run_id == "x");
  CHECK(ConfigToJson(back) == ConfigToJson(c));
}

}  // namespace
}  // namespace scddq
