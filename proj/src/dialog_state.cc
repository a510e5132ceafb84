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

#include "scddq/dialog_state.h"

#include <algorithm>

namespace scddq {

StateVector EncodeState(const DialogState& state) {
  using L = StateLayout;
  StateVector v = StateVector::Zero(kStateDim);
  if (state.last_user_act) {
    v[L::kUserIntent + IntentIndex(state.last_user_act->intent)] = 1.0;
  }
  for (const auto& [slot, value] : state.user_informed) {
    v[L::kUserInformed + SlotIndex(slot)] = 1.0;
  }
  for (Slot s : state.user_requested_outstanding) {
    v[L::kUserRequested + SlotIndex(s)] = 1.0;
  }
  if (state.last_agent_act) {
    v[L::kAgentIntent + IntentIndex(state.last_agent_act->intent)] = 1.0;
  }
  for (const auto& [slot, value] : state.agent_informed) {
    v[L::kAgentInformed + SlotIndex(slot)] = 1.0;
  }
  for (Slot s : state.agent_requested) {
    v[L::kAgentRequested + SlotIndex(s)] = 1.0;
  }
  v[L::kTurn + std::clamp(state.turn, 0, kTurnBuckets - 1)] = 1.0;
  const int bucket = state.kb_match_count == 0 ? 0 : state.kb_match_count == 1 ? 1 : 2;
  v[L::kKbBucket + bucket] = 1.0;
  return v;
}

void StateTracker::Reset(const DialogAct& first_user_act) {
  state_ = DialogState{};
  ApplyUserAct(first_user_act);
}

SlotValues StateTracker::Constraints() const {
  SlotValues c;
  for (const auto& [slot, value] : state_.agent_informed) {
    if (!value.empty() && value != kNoMatchValue) c[slot] = value;
  }
  for (const auto& [slot, value] : state_.user_informed) {
    if (!value.empty()) c[slot] = value;  // the user's word wins
  }
  return c;
}

DialogAct StateTracker::MaterializeAgentAct(const DialogAct& act_template) const {
  DialogAct act = act_template;
  if (act.inform_slots.empty()) return act;
  const auto match = kb_->FirstMatch(Constraints());
  for (auto& [slot, value] : act.inform_slots) {
    if (!match) {
      value = kNoMatchValue;
    } else if (slot == Slot::kTaskComplete) {
      value = std::to_string(*match);
    } else if (IsInformable(slot)) {
      value = kb_->record(*match).Get(slot);
    } else {
      value = kNoMatchValue;
    }
  }
  return act;
}

void StateTracker::ApplyAgentAct(const DialogAct& act) {
  ++state_.turn;
  state_.last_agent_act = act;
  for (const auto& [slot, value] : act.inform_slots) {
    if (slot == Slot::kTaskComplete) continue;
    state_.agent_informed[slot] = value;
    state_.user_requested_outstanding.erase(slot);
  }
  for (Slot s : act.request_slots) state_.agent_requested.insert(s);
  RefreshMatchCount();
}

void StateTracker::ApplyUserAct(const DialogAct& act) {
  state_.last_user_act = act;
  if (act.intent == Intent::kDeny) {
    // A denial retracts whatever the agent said about the named slots.
    for (const auto& [slot, value] : act.inform_slots) state_.agent_informed.erase(slot);
    for (Slot s : act.request_slots) state_.agent_informed.erase(s);
  }
  for (const auto& [slot, value] : act.inform_slots) {
    auto& have = state_.user_informed[slot];
    if (!value.empty() || have.empty()) have = value;
  }
  for (Slot s : act.request_slots) state_.user_requested_outstanding.insert(s);
  RefreshMatchCount();
}

void StateTracker::RefreshMatchCount() {
  state_.kb_match_count = kb_->CountMatches(Constraints());
}

}  // namespace scddq
