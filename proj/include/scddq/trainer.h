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

// The training loop: warm start with the rule-based agent, then per epoch
// direct RL, world-model learning, planning, curiosity learning and a target
// sync, with greedy evaluations at the stage boundaries.

#ifndef SCDDQ_TRAINER_H_
#define SCDDQ_TRAINER_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scddq/curiosity_model.h"
#include "scddq/curriculum.h"
#include "scddq/dialog_env.h"
#include "scddq/dqn_agent.h"
#include "scddq/knowledge_base.h"
#include "scddq/planner.h"
#include "scddq/replay_buffer.h"
#include "scddq/user_goal.h"
#include "scddq/world_model.h"

namespace scddq {

enum class Method { kDqn, kDdq, kCDdq, kSDdq, kScDdq };

std::string MethodName(Method m);  // "DQN", "DDQ", "C-DDQ", "S-DDQ", "SC-DDQ"
Method MethodFromName(const std::string& name);
bool UsesPlanning(Method m);
bool UsesCuriosity(Method m);
bool UsesSchedule(Method m);

struct RunConfig {
  Method method = Method::kDdq;
  std::string schedule = "RANDOM";
  std::optional<Schedule> custom_schedule;  // overrides the named table
  uint64_t seed = 1;
  int epochs = kDefaultEpochs;
  int real_dialogs_per_epoch = 30;
  int planning_rounds = 5;
  int planning_dialogs_per_round = 0;  // 0: same as real_dialogs_per_epoch
  int warm_start_dialogs = 100;
  int warm_start_updates = 50;
  // World-model batches per epoch, as a multiple of the new real batches.
  int world_model_update_factor = 4;
  double epsilon = 0.05;
  double learning_rate = 0.001;
  int buffer_capacity = static_cast<int>(kDefaultBufferCapacity);
  int max_turns = kDefaultMaxTurns;
  int eval_episodes = 50;
  int hidden = 80;
  int batch_size = 16;
  int kb_size = 991;
  GoalCounts goal_counts = DefaultGoalCounts();
  uint64_t data_seed = 7;
  std::string kb_path;     // empty: generate from kb_size and data_seed
  std::string goals_path;  // empty: generate from goal_counts and data_seed
  std::string out_dir;     // empty: nothing written
  std::string run_id;      // empty: {method}_{schedule}_{seed}

  Schedule ResolvedSchedule() const;
  std::string DefaultRunId() const;
};

// Throws ConfigError naming the offending field.
void ValidateConfig(const RunConfig& config);
// Unknown keys are rejected; omitted keys keep their defaults.
RunConfig ConfigFromJson(const nlohmann::json& j);
nlohmann::json ConfigToJson(const RunConfig& config);
RunConfig LoadConfig(const std::string& path);

struct EpochReport {
  int epoch = 0;
  int stage = 1;  // 1-based
  DifficultyLevel level = DifficultyLevel::kAll;
  double train_success = 0.0;
  double mean_reward = 0.0;
  double mean_agent_turns = 0.0;
  std::vector<long> action_counts;  // real-dialog agent actions this epoch
  std::optional<double> dqn_loss;
  std::optional<double> dqn_sim_loss;
  std::optional<double> world_loss;
  std::optional<double> curiosity_loss;
  std::optional<double> curiosity_q_ratio;  // mean(c) / mean(|Q|)
  size_t real_buffer_size = 0;
  size_t sim_buffer_size = 0;
  size_t planned_experiences = 0;
};

struct EvalReport {
  int checkpoint_epoch = 0;
  DifficultyLevel level = DifficultyLevel::kAll;
  int episodes = 0;
  double success_rate = 0.0;
  double avg_turns = 0.0;  // user and agent turns
};

struct EpisodeSummary {
  bool success = false;
  int agent_turns = 0;
  double total_reward = 0.0;
};

using PolicyFn = std::function<int(const DialogEnvironment& env)>;

// Runs one dialog to completion; every transition goes to `sink` when given
// and every agent action is tallied into `action_counts` when given.
EpisodeSummary RunEpisode(DialogEnvironment& env, const UserGoal& goal, uint64_t seed,
                          const PolicyFn& policy, ReplayBuffer* sink,
                          std::vector<long>* action_counts);

// Evaluates a policy on `episodes` goals drawn uniformly from `goals`.
EvalReport EvaluatePolicy(const PolicyFn& policy, const KnowledgeBase& kb,
                          const ActionRoster& roster, const RewardConfig& rewards,
                          const std::vector<UserGoal>& goals, int episodes,
                          uint64_t seed);

PolicyFn GreedyPolicy(const DqnAgent& agent);
PolicyFn RuleBasedPolicy();
// Uniformly random actions from its own stream seeded by `seed`.
PolicyFn RandomPolicy(uint64_t seed);

struct ExperimentResult {
  std::vector<EpochReport> epochs;
  std::vector<EvalReport> evals;
  std::array<std::vector<long>, kNumStages> stage_action_counts;
};

class Trainer {
 public:
  // Validates the config, then loads or generates the KB and goal set.
  explicit Trainer(RunConfig config);

  // Rule-based dialogs on the stage-1 buffer into the real buffer, then
  // warm_start_updates Q-network updates. Returns experiences stored.
  size_t WarmStart();
  EpochReport RunEpoch(int epoch);
  // Greedy on Q (no exploration, no curiosity). Does not touch training state.
  EvalReport Evaluate(int checkpoint_epoch, DifficultyLevel level) const;
  // Warm start, all epochs, evaluations after each stage; writes run files
  // when out_dir is set. `on_eval` sees each evaluation as it finishes.
  ExperimentResult Run(const std::function<void(const EvalReport&)>& on_eval = nullptr);

  const RunConfig& config() const { return config_; }
  const Schedule& schedule() const { return schedule_; }
  const KnowledgeBase& kb() const { return *kb_; }
  const GoalBuffers& goal_buffers() const { return buffers_; }
  const DqnAgent& agent() const { return agent_; }
  const WorldModel* world_model() const { return world_model_.get(); }
  const CuriosityModel* curiosity_model() const { return curiosity_.get(); }
  const ReplayBuffer& real_buffer() const { return real_buffer_; }
  const ReplayBuffer& sim_buffer() const { return sim_buffer_; }
  const std::array<std::vector<long>, kNumStages>& stage_action_counts() const {
    return stage_counts_;
  }
  // Names of the phases executed so far, in order.
  const std::vector<std::string>& call_log() const { return call_log_; }
  std::string run_dir() const;

  // Hash over every trainable parameter and buffer size.
  uint64_t StateHash() const;

 private:
  EpochReport RunEpochImpl(int epoch);
  void WriteCheckpoint(int checkpoint_epoch) const;

  RunConfig config_;
  Schedule schedule_;
  RewardConfig rewards_;
  std::unique_ptr<KnowledgeBase> kb_;
  GoalBuffers buffers_;
  DqnAgent agent_;
  std::unique_ptr<WorldModel> world_model_;
  std::unique_ptr<CuriosityModel> curiosity_;
  ReplayBuffer real_buffer_;
  ReplayBuffer sim_buffer_;
  Rng env_rng_;
  Rng act_rng_;
  Rng replay_rng_;
  Rng plan_rng_;
  std::array<std::vector<long>, kNumStages> stage_counts_;
  std::vector<std::string> call_log_;
  bool warm_started_ = false;
};

// Writes metrics.csv, eval.csv, actions.csv and run.json into `dir`.
void WriteRunFiles(const RunConfig& config, const ExperimentResult& result,
                   const std::string& dir);

}  // namespace scddq

#endif  // SCDDQ_TRAINER_H_
