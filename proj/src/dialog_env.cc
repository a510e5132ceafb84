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

#include "scddq/dialog_env.h"

#include "scddq/errors.h"

namespace scddq {

DialogEnvironment::DialogEnvironment(const KnowledgeBase& kb,
                                     const ActionRoster& roster,
                                     RewardConfig rewards)
    : roster_(&roster), simulator_(kb, rewards), tracker_(kb) {}

const DialogState& DialogEnvironment::Reset(const UserGoal& goal, uint64_t seed) {
  tracker_.Reset(simulator_.Reset(goal, seed));
  return tracker_.state();
}

DialogEnvironment::Step DialogEnvironment::StepAction(int agent_action) {
  if (agent_action < 0 || agent_action >= roster_->num_agent_actions()) {
    throw InvalidArgument("agent action index out of range: " +
                          std::to_string(agent_action));
  }
  return StepTemplate(roster_->agent_actions()[agent_action]);
}

DialogEnvironment::Step DialogEnvironment::StepTemplate(const DialogAct& agent_template) {
  Step step;
  const auto index = roster_->AgentIndexOf(agent_template);
  if (!index) throw InvalidArgument("agent act is not in the roster");
  step.agent_action = *index;
  step.agent_act = tracker_.MaterializeAgentAct(agent_template);
  step.outcome = simulator_.Step(step.agent_act);
  tracker_.ApplyAgentAct(step.agent_act);
  tracker_.ApplyUserAct(step.outcome.user_act);
  const auto user_index = roster_->UserIndexOf(step.outcome.user_act);
  if (!user_index) throw ContractViolation("user act is not in the roster");
  step.user_action = *user_index;
  return step;
}

DialogAct RuleBasedAgentAct(const DialogState& state) {
  for (Slot s : kRuleAgentAgenda) {
    if (!state.user_informed.count(s) && !state.agent_requested.count(s)) {
      return DialogAct::Request(s);
    }
  }
  for (Slot s : kUserRequestPriority) {
    if (s != Slot::kTicket && IsInformable(s) &&
        state.user_requested_outstanding.count(s)) {
      return DialogAct::Inform(s);
    }
  }
  for (Slot s : state.user_requested_outstanding) {
    if (IsInformable(s)) return DialogAct::Inform(s);
  }
  return DialogAct::Inform(Slot::kTaskComplete);
}

}  // namespace scddq
