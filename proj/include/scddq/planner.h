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

// Planning: the agent converses with the learned world model instead of the
// user simulator, and the resulting transitions fill the simulated buffer.

#ifndef SCDDQ_PLANNER_H_
#define SCDDQ_PLANNER_H_

#include <functional>

#include "scddq/curiosity_model.h"
#include "scddq/dqn_agent.h"
#include "scddq/knowledge_base.h"
#include "scddq/ontology.h"
#include "scddq/replay_buffer.h"
#include "scddq/user_goal.h"
#include "scddq/user_simulator.h"
#include "scddq/world_model.h"

namespace scddq {

struct PlanningConfig {
  int rounds = 5;  // K
  int dialogs_per_round = 30;
  double done_threshold = 0.5;
  double epsilon = 0.05;
  bool sample_user_act = false;  // argmax decoding when false
};

using GoalSampler = std::function<const UserGoal&(Rng&)>;

// Instantiates a user template: inform values come from the goal ("" when the
// goal does not constrain the slot).
DialogAct FillUserTemplate(const DialogAct& user_template, const UserGoal& goal);

// Runs rounds * dialogs_per_round simulated dialogs. The agent picks actions
// with curiosity-augmented selection when `curiosity` is non-null, else
// epsilon-greedy. Returns the number of experiences stored.
size_t Plan(const DqnAgent& agent, const CuriosityModel* curiosity,
            const WorldModel& world_model, const GoalSampler& sample_goal,
            const KnowledgeBase& kb, const ActionRoster& roster,
            const RewardConfig& rewards, const PlanningConfig& config, Rng& rng,
            ReplayBuffer* sim_buffer);

}  // namespace scddq

#endif  // SCDDQ_PLANNER_H_
