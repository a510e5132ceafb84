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

#include "scddq/planner.h"

#include "scddq/dialog_state.h"
#include "scddq/errors.h"

namespace scddq {

DialogAct FillUserTemplate(const DialogAct& user_template, const UserGoal& goal) {
  DialogAct act = user_template;
  for (auto& [slot, value] : act.inform_slots) {
    const auto it = goal.inform_slots.find(slot);
    value = it == goal.inform_slots.end() ? "" : it->second;
  }
  return act;
}

namespace {

int DecodeUserAct(const Eigen::VectorXd& probs, bool sample, Rng& rng) {
  if (!sample) return ArgmaxLowest(probs);
  double u = rng.Uniform(), acc = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size() - 1);
}

}  // namespace

size_t Plan(const DqnAgent& agent, const CuriosityModel* curiosity,
            const WorldModel& world_model, const GoalSampler& sample_goal,
            const KnowledgeBase& kb, const ActionRoster& roster,
            const RewardConfig& rewards, const PlanningConfig& config, Rng& rng,
            ReplayBuffer* sim_buffer) {
  if (config.rounds < 0 || config.dialogs_per_round < 0) {
    throw InvalidArgument("planning rounds and dialogs must be non-negative");
  }
  if (sim_buffer->kind() != BufferKind::kSimulated) {
    throw ContractViolation("planning writes to the simulated buffer only");
  }
  UserSimulator opener(kb, rewards);
  StateTracker tracker(kb);
  size_t stored = 0;
  for (int round = 0; round < config.rounds; ++round) {
    for (int d = 0; d < config.dialogs_per_round; ++d) {
      const UserGoal& goal = sample_goal(rng);
      tracker.Reset(opener.Reset(goal, rng.NextU64()));
      bool done = false;
      while (!done) {
        const StateVector s = EncodeState(tracker.state());
        const int a = curiosity
                          ? agent.SelectWithBonus(s, curiosity->Scores(s).values, rng,
                                                  config.epsilon)
                          : agent.SelectEpsGreedy(s, rng, config.epsilon);
        const DialogAct agent_act =
            tracker.MaterializeAgentAct(roster.agent_actions()[a]);
        tracker.ApplyAgentAct(agent_act);
        const WorldPrediction pred = world_model.Predict(s, a);
        const int u = DecodeUserAct(pred.user_probs, config.sample_user_act, rng);
        tracker.ApplyUserAct(FillUserTemplate(roster.user_actions()[u], goal));
        done = pred.p_done > config.done_threshold ||
               tracker.state().turn >= rewards.max_turns;
        sim_buffer->Store({s, a, pred.reward, u, EncodeState(tracker.state()), done});
        ++stored;
      }
    }
  }
  return stored;
}

}  // namespace scddq
