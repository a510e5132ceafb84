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

#ifndef SCDDQ_DIALOG_ENV_H_
#define SCDDQ_DIALOG_ENV_H_

#include <array>
#include <cstdint>

#include "scddq/dialog_state.h"
#include "scddq/ontology.h"
#include "scddq/user_simulator.h"

namespace scddq {

// User simulator + state tracker behind an action-index interface.
class DialogEnvironment {
 public:
  struct Step {
    StepOutcome outcome;
    DialogAct agent_act;  // materialized
    int agent_action = -1;
    int user_action = -1;
  };

  DialogEnvironment(const KnowledgeBase& kb, const ActionRoster& roster,
                    RewardConfig rewards = {});

  const DialogState& Reset(const UserGoal& goal, uint64_t seed);
  Step StepAction(int agent_action);
  Step StepTemplate(const DialogAct& agent_template);

  const DialogState& state() const { return tracker_.state(); }
  StateVector EncodedState() const { return EncodeState(tracker_.state()); }
  bool done() const { return simulator_.done(); }
  const UserSimulator& simulator() const { return simulator_; }
  const StateTracker& tracker() const { return tracker_; }
  const ActionRoster& roster() const { return *roster_; }

 private:
  const ActionRoster* roster_;
  UserSimulator simulator_;
  StateTracker tracker_;
};

// Slots the hand-crafted agent collects, in order.
inline constexpr std::array<Slot, 6> kRuleAgentAgenda = {
    Slot::kMovieName, Slot::kStartTime, Slot::kCity,
    Slot::kDate,      Slot::kTheater,   Slot::kNumberOfPeople};

// Hand-crafted warm-start policy. Requests each agenda slot the user has not
// yet informed (once), then answers the user's outstanding requests from the
// KB, then books. Returns a roster template.
DialogAct RuleBasedAgentAct(const DialogState& state);

}  // namespace scddq

#endif  // SCDDQ_DIALOG_ENV_H_
