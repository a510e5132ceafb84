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

#include "scddq/trainer.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "scddq/errors.h"
#include "scddq/json_io.h"

namespace scddq {

std::string MethodName(Method m) {
  switch (m) {
    case Method::kDqn: return "DQN";
    case Method::kDdq: return "DDQ";
    case Method::kCDdq: return "C-DDQ";
    case Method::kSDdq: return "S-DDQ";
    case Method::kScDdq: return "SC-DDQ";
  }
  return "?";
}

Method MethodFromName(const std::string& name) {
  for (Method m : {Method::kDqn, Method::kDdq, Method::kCDdq, Method::kSDdq, Method::kScDdq}) {
    if (MethodName(m) == name) return m;
  }
  throw InvalidArgument("unknown method '" + name + "'");
}

bool UsesPlanning(Method m) { return m != Method::kDqn; }
bool UsesCuriosity(Method m) { return m == Method::kCDdq || m == Method::kScDdq; }
bool UsesSchedule(Method m) { return m == Method::kSDdq || m == Method::kScDdq; }

Schedule RunConfig::ResolvedSchedule() const {
  if (custom_schedule) return *custom_schedule;
  return NamedSchedule(schedule, epochs);
}

std::string RunConfig::DefaultRunId() const {
  const std::string sched = custom_schedule ? custom_schedule->name : schedule;
  return MethodName(method) + "_" + sched + "_" + std::to_string(seed);
}

void ValidateConfig(const RunConfig& c) {
  auto require = [](bool ok, const char* field, const std::string& msg) {
    if (!ok) throw ConfigError(field, msg);
  };
  require(c.epochs >= kNumStages, "epochs", "must be at least 4");
  require(c.real_dialogs_per_epoch >= 1, "real_dialogs_per_epoch", "must be positive");
  require(c.planning_rounds >= 0, "planning_rounds", "must be non-negative");
  require(c.planning_dialogs_per_round >= 0, "planning_dialogs_per_round",
          "must be non-negative");
  require(c.warm_start_dialogs >= 0, "warm_start_dialogs", "must be non-negative");
  require(c.warm_start_updates >= 0, "warm_start_updates", "must be non-negative");
  require(c.world_model_update_factor >= 1, "world_model_update_factor",
          "must be at least 1");
  require(c.epsilon >= 0.0 && c.epsilon <= 1.0, "epsilon", "must lie in [0, 1]");
  require(c.learning_rate > 0.0 && std::isfinite(c.learning_rate), "learning_rate",
          "must be positive");
  require(c.buffer_capacity >= 1, "buffer_capacity", "must be positive");
  require(c.max_turns >= 1, "max_turns", "must be positive");
  require(c.eval_episodes >= 1, "eval_episodes", "must be positive");
  require(c.hidden >= 1, "hidden", "must be positive");
  require(c.batch_size >= 1, "batch_size", "must be positive");
  require(c.kb_size >= 1, "kb_size", "must be positive");
  if (c.custom_schedule) {
    try {
      ValidateSchedule(*c.custom_schedule);
    } catch (const InvalidArgument& e) {
      throw ConfigError("schedule", e.what());
    }
    require(c.custom_schedule->epochs() == c.epochs, "schedule",
            "custom stages must end at the configured epoch count");
  } else {
    require(IsNamedSchedule(c.schedule), "schedule", "unknown schedule '" + c.schedule + "'");
  }
  const bool random = !c.custom_schedule && c.schedule == "RANDOM";
  if (UsesSchedule(c.method)) {
    require(!random, "schedule", MethodName(c.method) + " requires a curriculum schedule");
  } else {
    require(random, "schedule",
            MethodName(c.method) + " samples goals uniformly; use schedule RANDOM");
  }
  if (c.goals_path.empty()) {
    require(!c.goal_counts.empty(), "goal_counts", "must not be empty");
    for (const auto& [k, n] : c.goal_counts) {
      require(k >= 1 && k <= kMaxRequestSlots && n >= 0, "goal_counts",
              "request-slot counts must be in 1..5 with non-negative sizes");
    }
  }
  namespace fs = std::filesystem;
  require(c.kb_path.empty() || fs::is_regular_file(c.kb_path), "kb_path",
          "file not found: " + c.kb_path);
  require(c.goals_path.empty() || fs::is_regular_file(c.goals_path), "goals_path",
          "file not found: " + c.goals_path);
}

namespace {

template <typename T>
T Field(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(key, std::string("wrong type: ") + e.what());
  }
}

}  // namespace

RunConfig ConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  static const std::set<std::string> known = {
      "method", "schedule", "seed", "epochs", "real_dialogs_per_epoch",
      "planning_rounds", "planning_dialogs_per_round", "warm_start_dialogs",
      "warm_start_updates", "world_model_update_factor", "epsilon", "learning_rate",
      "buffer_capacity", "max_turns", "eval_episodes", "hidden", "batch_size", "kb_size",
      "goal_counts", "data_seed", "kb_path", "goals_path", "out_dir", "run_id"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw ConfigError(item.key(), "unknown field");
  }
  RunConfig c;
  if (j.contains("method")) {
    try {
      c.method = MethodFromName(Field<std::string>(j, "method"));
    } catch (const InvalidArgument& e) {
      throw ConfigError("method", e.what());
    }
  }
  if (j.contains("seed")) c.seed = Field<uint64_t>(j, "seed");
  if (j.contains("epochs")) c.epochs = Field<int>(j, "epochs");
  if (j.contains("schedule")) {
    const auto& s = j.at("schedule");
    if (s.is_string()) {
      c.schedule = s.get<std::string>();
    } else {
      try {
        c.custom_schedule = ScheduleFromJson(s, c.epochs);
        c.schedule = c.custom_schedule->name;
      } catch (const InvalidArgument& e) {
        throw ConfigError("schedule", e.what());
      }
    }
  }
#define SCDDQ_READ(name, type) \
  if (j.contains(#name)) c.name = Field<type>(j, #name)
  SCDDQ_READ(real_dialogs_per_epoch, int);
  SCDDQ_READ(planning_rounds, int);
  SCDDQ_READ(planning_dialogs_per_round, int);
  SCDDQ_READ(warm_start_dialogs, int);
  SCDDQ_READ(warm_start_updates, int);
  SCDDQ_READ(world_model_update_factor, int);
  SCDDQ_READ(epsilon, double);
  SCDDQ_READ(learning_rate, double);
  SCDDQ_READ(buffer_capacity, int);
  SCDDQ_READ(max_turns, int);
  SCDDQ_READ(eval_episodes, int);
  SCDDQ_READ(hidden, int);
  SCDDQ_READ(batch_size, int);
  SCDDQ_READ(kb_size, int);
  SCDDQ_READ(data_seed, uint64_t);
  SCDDQ_READ(kb_path, std::string);
  SCDDQ_READ(goals_path, std::string);
  SCDDQ_READ(out_dir, std::string);
  SCDDQ_READ(run_id, std::string);
#undef SCDDQ_READ
  if (j.contains("goal_counts")) {
    const auto& g = j.at("goal_counts");
    try {
      if (g.is_string()) {
        c.goal_counts = ParseGoalCounts(g.get<std::string>());
      } else if (g.is_object()) {
        c.goal_counts.clear();
        for (const auto& item : g.items()) {
          c.goal_counts[std::stoi(item.key())] = item.value().get<int>();
        }
      } else {
        throw ConfigError("goal_counts", "expected a string or an object");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("goal_counts", e.what());
    }
  }
  return c;
}

nlohmann::json ConfigToJson(const RunConfig& c) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [k, n] : c.goal_counts) counts[std::to_string(k)] = n;
  nlohmann::json j = {
      {"method", MethodName(c.method)},
      {"schedule", c.custom_schedule ? ScheduleToJson(*c.custom_schedule)
                                     : nlohmann::json(c.schedule)},
      {"seed", c.seed},
      {"epochs", c.epochs},
      {"real_dialogs_per_epoch", c.real_dialogs_per_epoch},
      {"planning_rounds", c.planning_rounds},
      {"planning_dialogs_per_round", c.planning_dialogs_per_round},
      {"warm_start_dialogs", c.warm_start_dialogs},
      {"warm_start_updates", c.warm_start_updates},
      {"world_model_update_factor", c.world_model_update_factor},
      {"epsilon", c.epsilon},
      {"learning_rate", c.learning_rate},
      {"buffer_capacity", c.buffer_capacity},
      {"max_turns", c.max_turns},
      {"eval_episodes", c.eval_episodes},
      {"hidden", c.hidden},
      {"batch_size", c.batch_size},
      {"kb_size", c.kb_size},
      {"goal_counts", counts},
      {"data_seed", c.data_seed},
      {"kb_path", c.kb_path},
      {"goals_path", c.goals_path},
      {"out_dir", c.out_dir},
      {"run_id", c.run_id}};
  return j;
}

RunConfig LoadConfig(const std::string& path) {
  nlohmann::json j;
  try {
    j = ReadJsonFile(path);
  } catch (const Error& e) {
    throw ConfigError("<file>", e.what());
  }
  return ConfigFromJson(j);
}

EpisodeSummary RunEpisode(DialogEnvironment& env, const UserGoal& goal, uint64_t seed,
                          const PolicyFn& policy, ReplayBuffer* sink,
                          std::vector<long>* action_counts) {
  env.Reset(goal, seed);
  EpisodeSummary summary;
  while (!env.done()) {
    StateVector s = env.EncodedState();
    const int a = policy(env);
    const auto step = env.StepAction(a);
    summary.total_reward += step.outcome.reward;
    if (action_counts) ++(*action_counts)[a];
    if (sink) {
      sink->Store({std::move(s), a, step.outcome.reward, step.user_action,
                   env.EncodedState(), step.outcome.done});
    }
    if (step.outcome.done) summary.success = step.outcome.success.value_or(false);
  }
  summary.agent_turns = env.simulator().agent_turns();
  return summary;
}

EvalReport EvaluatePolicy(const PolicyFn& policy, const KnowledgeBase& kb,
                          const ActionRoster& roster, const RewardConfig& rewards,
                          const std::vector<UserGoal>& goals, int episodes,
                          uint64_t seed) {
  if (goals.empty()) throw SamplingError("no goals to evaluate on");
  Rng rng(seed);
  DialogEnvironment env(kb, roster, rewards);
  EvalReport report;
  report.episodes = episodes;
  int successes = 0;
  long turns = 0;
  for (int i = 0; i < episodes; ++i) {
    const UserGoal& goal = goals[rng.Below(goals.size())];
    const auto summary = RunEpisode(env, goal, rng.NextU64(), policy, nullptr, nullptr);
    successes += summary.success ? 1 : 0;
    turns += 2L * summary.agent_turns;
  }
  report.success_rate = episodes > 0 ? static_cast<double>(successes) / episodes : 0.0;
  report.avg_turns = episodes > 0 ? static_cast<double>(turns) / episodes : 0.0;
  return report;
}

PolicyFn GreedyPolicy(const DqnAgent& agent) {
  return [&agent](const DialogEnvironment& env) {
    return ArgmaxLowest(agent.QValues(env.EncodedState()));
  };
}

PolicyFn RuleBasedPolicy() {
  return [](const DialogEnvironment& env) {
    return *env.roster().AgentIndexOf(RuleBasedAgentAct(env.state()));
  };
}

PolicyFn RandomPolicy(uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [rng](const DialogEnvironment& env) {
    return static_cast<int>(rng->Below(env.roster().num_agent_actions()));
  };
}

namespace {

DqnConfig AgentConfig(const RunConfig& c) {
  DqnConfig d;
  d.num_actions = ActionRoster::Default().num_agent_actions();
  d.hidden = c.hidden;
  d.epsilon = c.epsilon;
  d.learning_rate = c.learning_rate;
  d.batch_size = c.batch_size;
  return d;
}

const RunConfig& Validated(const RunConfig& c) {
  ValidateConfig(c);
  return c;
}

}  // namespace

Trainer::Trainer(RunConfig config)
    : config_(Validated(config)),
      schedule_(config_.ResolvedSchedule()),
      rewards_(RewardConfig::ForMaxTurns(config_.max_turns)),
      agent_(AgentConfig(config_), DeriveSeed(config_.seed, "q-init")),
      real_buffer_(BufferKind::kReal, static_cast<size_t>(config_.buffer_capacity)),
      sim_buffer_(BufferKind::kSimulated, static_cast<size_t>(config_.buffer_capacity)),
      env_rng_(DeriveSeed(config_.seed, "env")),
      act_rng_(DeriveSeed(config_.seed, "act")),
      replay_rng_(DeriveSeed(config_.seed, "replay")),
      plan_rng_(DeriveSeed(config_.seed, "planning")) {
  try {
    kb_ = std::make_unique<KnowledgeBase>(
        config_.kb_path.empty() ? GenerateKb(config_.data_seed, config_.kb_size)
                                : LoadKb(config_.kb_path));
  } catch (const Error& e) {
    throw ConfigError("kb_path", e.what());
  }
  std::vector<UserGoal> goals;
  try {
    goals = config_.goals_path.empty()
                ? GenerateGoalSet(*kb_, config_.goal_counts, config_.data_seed)
                : LoadGoals(config_.goals_path);
    buffers_ = BuildBuffers(goals);
  } catch (const Error& e) {
    throw ConfigError(config_.goals_path.empty() ? "goal_counts" : "goals_path", e.what());
  }
  for (int i = 0; i < kNumStages; ++i) {
    if (buffers_.ForLevel(schedule_.stages[i].level).empty()) {
      throw ConfigError("schedule", "stage " + std::to_string(i + 1) + " draws from the " +
                                        LevelName(schedule_.stages[i].level) +
                                        " buffer, which is empty");
    }
  }
  const int n_agent = ActionRoster::Default().num_agent_actions();
  if (UsesPlanning(config_.method)) {
    WorldModelConfig wc;
    wc.num_agent_actions = n_agent;
    wc.num_user_actions = ActionRoster::Default().num_user_actions();
    wc.hidden = config_.hidden;
    wc.learning_rate = config_.learning_rate;
    wc.batch_size = config_.batch_size;
    world_model_ = std::make_unique<WorldModel>(wc, DeriveSeed(config_.seed, "world-init"));
  }
  if (UsesCuriosity(config_.method)) {
    CuriosityConfig cc;
    cc.num_agent_actions = n_agent;
    cc.hidden = config_.hidden;
    cc.learning_rate = config_.learning_rate;
    cc.batch_size = config_.batch_size;
    curiosity_ = std::make_unique<CuriosityModel>(cc, DeriveSeed(config_.seed, "curiosity-init"));
  }
  for (auto& counts : stage_counts_) counts.assign(n_agent, 0);
}

std::string Trainer::run_dir() const {
  const std::string id = config_.run_id.empty() ? config_.DefaultRunId() : config_.run_id;
  return (std::filesystem::path(config_.out_dir) / id).string();
}

size_t Trainer::WarmStart() {
  if (warm_started_ || !real_buffer_.empty()) {
    throw ContractViolation("warm start requires an empty real buffer");
  }
  call_log_.push_back("warm_start");
  DialogEnvironment env(*kb_, ActionRoster::Default(), rewards_);
  Rng rng(DeriveSeed(config_.seed, "warm"));
  const PolicyFn rule = RuleBasedPolicy();
  const DifficultyLevel level = schedule_.stages[0].level;
  for (int i = 0; i < config_.warm_start_dialogs; ++i) {
    const UserGoal& goal = SampleGoal(buffers_, level, rng);
    RunEpisode(env, goal, rng.NextU64(), rule, &real_buffer_, nullptr);
  }
  if (config_.warm_start_updates > 0 && !real_buffer_.empty()) {
    agent_.Update(real_buffer_, config_.warm_start_updates, replay_rng_);
    agent_.SyncTarget();
  }
  warm_started_ = true;
  return real_buffer_.size();
}

EpochReport Trainer::RunEpoch(int epoch) {
  if (!warm_started_) throw ContractViolation("RunEpoch called before WarmStart");
  try {
    return RunEpochImpl(epoch);
  } catch (const NumericError& e) {
    throw NumericError("epoch " + std::to_string(epoch) + ": " + e.what(), epoch);
  }
}

EpochReport Trainer::RunEpochImpl(int epoch) {
  EpochReport report;
  report.epoch = epoch;
  const int stage = StageIndexForEpoch(schedule_, epoch);
  report.stage = stage + 1;
  report.level = schedule_.stages[stage].level;
  call_log_.push_back("determine_level");

  const ActionRoster& roster = ActionRoster::Default();
  report.action_counts.assign(roster.num_agent_actions(), 0);
  DialogEnvironment env(*kb_, roster, rewards_);
  double c_sum = 0.0, q_sum = 0.0;
  PolicyFn policy;
  if (curiosity_) {
    policy = [&](const DialogEnvironment& e) {
      const StateVector s = e.EncodedState();
      const Eigen::VectorXd c = curiosity_->Scores(s).values;
      c_sum += c.mean();
      q_sum += agent_.QValues(s).cwiseAbs().mean();
      return agent_.SelectWithBonus(s, c, act_rng_, config_.epsilon);
    };
  } else {
    policy = [&](const DialogEnvironment& e) {
      return agent_.SelectEpsGreedy(e.EncodedState(), act_rng_, config_.epsilon);
    };
  }
  const size_t before = real_buffer_.total_stored();
  int successes = 0;
  double reward_sum = 0.0;
  long turn_sum = 0;
  for (int i = 0; i < config_.real_dialogs_per_epoch; ++i) {
    const UserGoal& goal = SampleGoal(buffers_, report.level, env_rng_);
    const auto summary = RunEpisode(env, goal, env_rng_.NextU64(), policy, &real_buffer_,
                                    &report.action_counts);
    successes += summary.success ? 1 : 0;
    reward_sum += summary.total_reward;
    turn_sum += summary.agent_turns;
  }
  call_log_.push_back("real_dialogs");
  const size_t new_real = real_buffer_.total_stored() - before;
  report.train_success = static_cast<double>(successes) / config_.real_dialogs_per_epoch;
  report.mean_reward = reward_sum / config_.real_dialogs_per_epoch;
  report.mean_agent_turns = static_cast<double>(turn_sum) / config_.real_dialogs_per_epoch;
  if (curiosity_ && q_sum > 0.0) report.curiosity_q_ratio = c_sum / q_sum;
  for (size_t a = 0; a < report.action_counts.size(); ++a) {
    stage_counts_[stage][a] += report.action_counts[a];
  }

  const int batch = config_.batch_size;
  report.dqn_loss = agent_.Update(real_buffer_, BatchesFor(new_real, batch), replay_rng_);
  call_log_.push_back("dqn_update_real");

  if (world_model_) {
    report.world_loss = world_model_->Train(
        real_buffer_, config_.world_model_update_factor * BatchesFor(new_real, batch),
        replay_rng_);
    call_log_.push_back("world_model_update");

    PlanningConfig pc;
    pc.rounds = config_.planning_rounds;
    pc.dialogs_per_round = config_.planning_dialogs_per_round > 0
                               ? config_.planning_dialogs_per_round
                               : config_.real_dialogs_per_epoch;
    pc.epsilon = config_.epsilon;
    const DifficultyLevel level = report.level;
    const GoalSampler sampler = [this, level](Rng& rng) -> const UserGoal& {
      return SampleGoal(buffers_, level, rng);
    };
    report.planned_experiences = Plan(agent_, curiosity_.get(), *world_model_, sampler, *kb_,
                                      roster, rewards_, pc, plan_rng_, &sim_buffer_);
    call_log_.push_back("planning");

    if (report.planned_experiences > 0) {
      report.dqn_sim_loss = agent_.Update(
          sim_buffer_, BatchesFor(report.planned_experiences, batch), replay_rng_);
    }
    call_log_.push_back("dqn_update_sim");
  }

  if (curiosity_) {
    report.curiosity_loss =
        curiosity_->Train(real_buffer_, sim_buffer_,
                          BatchesFor(new_real + report.planned_experiences, batch), replay_rng_);
    call_log_.push_back("curiosity_update");
  }

  agent_.SyncTarget();
  call_log_.push_back("sync_target");
  report.real_buffer_size = real_buffer_.size();
  report.sim_buffer_size = sim_buffer_.size();
  return report;
}

EvalReport Trainer::Evaluate(int checkpoint_epoch, DifficultyLevel level) const {
  const uint64_t seed =
      DeriveSeed(DeriveSeed(config_.seed, "eval"), static_cast<uint64_t>(checkpoint_epoch));
  EvalReport r = EvaluatePolicy(GreedyPolicy(agent_), *kb_, ActionRoster::Default(), rewards_,
                                buffers_.ForLevel(level), config_.eval_episodes, seed);
  r.checkpoint_epoch = checkpoint_epoch;
  r.level = level;
  return r;
}

uint64_t Trainer::StateHash() const {
  uint64_t h = MixSeed(agent_.q_net().ParameterHash());
  h = MixSeed(h ^ agent_.target_net().ParameterHash());
  if (world_model_) h = MixSeed(h ^ world_model_->net().ParameterHash());
  if (curiosity_) h = MixSeed(h ^ curiosity_->net().ParameterHash());
  h = MixSeed(h ^ real_buffer_.total_stored());
  h = MixSeed(h ^ sim_buffer_.total_stored());
  return h;
}

void Trainer::WriteCheckpoint(int checkpoint_epoch) const {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(run_dir()) / "checkpoints";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  nlohmann::json j = {{"epoch", checkpoint_epoch}, {"agent", agent_.ToJson()}};
  if (world_model_) j["world_model"] = world_model_->net().ToJson();
  if (curiosity_) j["curiosity_model"] = curiosity_->net().ToJson();
  char name[32];
  std::snprintf(name, sizeof(name), "epoch_%04d.json", checkpoint_epoch);
  WriteTextFile(j.dump() + "\n", (dir / name).string());
}

ExperimentResult Trainer::Run(const std::function<void(const EvalReport&)>& on_eval) {
  ExperimentResult result;
  WarmStart();
  for (int epoch = 0; epoch < schedule_.epochs(); ++epoch) {
    result.epochs.push_back(RunEpoch(epoch));
    const int stage = StageIndexForEpoch(schedule_, epoch);
    if (epoch + 1 == schedule_.stages[stage].end) {
      result.evals.push_back(Evaluate(epoch + 1, schedule_.stages[stage].level));
      if (on_eval) on_eval(result.evals.back());
      if (!config_.out_dir.empty()) WriteCheckpoint(epoch + 1);
    }
  }
  result.stage_action_counts = stage_counts_;
  if (!config_.out_dir.empty()) WriteRunFiles(config_, result, run_dir());
  return result;
}

namespace {

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string OptNum(const std::optional<double>& v) { return v ? Num(*v) : "NA"; }

}  // namespace

void WriteRunFiles(const RunConfig& config, const ExperimentResult& result,
                   const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const std::string id = config.run_id.empty() ? config.DefaultRunId() : config.run_id;
  const std::string method = MethodName(config.method);
  const std::string sched = config.custom_schedule ? config.custom_schedule->name : config.schedule;

  std::ostringstream metrics;
  metrics << "run_id,method,schedule,seed,epoch,stage,train_success,mean_reward,"
             "dqn_loss,world_loss,curiosity_loss\n";
  for (const auto& e : result.epochs) {
    metrics << id << ',' << method << ',' << sched << ',' << config.seed << ',' << e.epoch
            << ',' << e.stage << ',' << Num(e.train_success) << ',' << Num(e.mean_reward)
            << ',' << OptNum(e.dqn_loss) << ',' << OptNum(e.world_loss) << ','
            << OptNum(e.curiosity_loss) << '\n';
  }
  WriteTextFile(metrics.str(), (fs::path(dir) / "metrics.csv").string());

  std::ostringstream eval;
  eval << "run_id,checkpoint_epoch,success_rate,avg_turns\n";
  for (const auto& r : result.evals) {
    eval << id << ',' << r.checkpoint_epoch << ',' << Num(r.success_rate) << ','
         << Num(r.avg_turns) << '\n';
  }
  WriteTextFile(eval.str(), (fs::path(dir) / "eval.csv").string());

  std::ostringstream actions;
  actions << "run_id,stage,action_index,count\n";
  for (int s = 0; s < kNumStages; ++s) {
    for (size_t a = 0; a < result.stage_action_counts[s].size(); ++a) {
      actions << id << ',' << s + 1 << ',' << a << ',' << result.stage_action_counts[s][a]
              << '\n';
    }
  }
  WriteTextFile(actions.str(), (fs::path(dir) / "actions.csv").string());

  nlohmann::json evals = nlohmann::json::array();
  for (const auto& r : result.evals) {
    evals.push_back({{"checkpoint_epoch", r.checkpoint_epoch},
                     {"level", LevelName(r.level)},
                     {"episodes", r.episodes},
                     {"success_rate", r.success_rate},
                     {"avg_turns", r.avg_turns}});
  }
  nlohmann::json run = {{"run_id", id},
                        {"method", method},
                        {"schedule", sched},
                        {"seed", config.seed},
                        {"config", ConfigToJson(config)},
                        {"schedule_stages", ScheduleToJson(config.ResolvedSchedule())},
                        {"evals", evals}};
  WriteJsonFile(run, (fs::path(dir) / "run.json").string());
}

}  // namespace scddq
