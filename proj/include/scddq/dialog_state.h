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

// Dialog state tracking and the fixed-length binary state encoding shared by
// the Q-network, the world model and the curiosity model.

#ifndef SCDDQ_DIALOG_STATE_H_
#define SCDDQ_DIALOG_STATE_H_

#include <optional>
#include <set>

#include <Eigen/Core>

#include "scddq/knowledge_base.h"
#include "scddq/ontology.h"

namespace scddq {

inline constexpr int kDefaultMaxTurns = 40;
inline constexpr int kTurnBuckets = 40;
inline constexpr int kKbBuckets = 3;
// user intent | user informed | user requests | agent intent | agent informed
// | agent requested | turn | kb match bucket
inline constexpr int kStateDim = kNumIntents + kNumSlots + kNumSlots +
                                 kNumIntents + kNumSlots + kNumSlots +
                                 kTurnBuckets + kKbBuckets;
static_assert(kStateDim == 129);

using StateVector = Eigen::VectorXd;

struct DialogState {
  int turn = 0;  // agent turns taken so far
  std::optional<DialogAct> last_user_act;
  std::optional<DialogAct> last_agent_act;
  SlotValues user_informed;  // keys are the informed slots; "" = value unknown
  std::set<Slot> user_requested_outstanding;
  SlotValues agent_informed;
  std::set<Slot> agent_requested;
  size_t kb_match_count = 0;

  friend bool operator==(const DialogState&, const DialogState&) = default;
};

// Block offsets inside the encoded vector.
struct StateLayout {
  static constexpr int kUserIntent = 0;
  static constexpr int kUserInformed = kUserIntent + kNumIntents;
  static constexpr int kUserRequested = kUserInformed + kNumSlots;
  static constexpr int kAgentIntent = kUserRequested + kNumSlots;
  static constexpr int kAgentInformed = kAgentIntent + kNumIntents;
  static constexpr int kAgentRequested = kAgentInformed + kNumSlots;
  static constexpr int kTurn = kAgentRequested + kNumSlots;
  static constexpr int kKbBucket = kTurn + kTurnBuckets;
};

StateVector EncodeState(const DialogState& state);

// Observes acts from both speakers and maintains DialogState. Used for real
// dialogs and for world-model rollouts alike.
class StateTracker {
 public:
  explicit StateTracker(const KnowledgeBase& kb) : kb_(&kb) {}

  void Reset(const DialogAct& first_user_act);

  // Known constraints: user-informed values plus agent-informed values.
  SlotValues Constraints() const;

  // Fills a roster template with concrete values from the first KB record
  // consistent with the current constraints ("none" when nothing matches).
  // A booking act, inform(taskcomplete), carries that record's index.
  DialogAct MaterializeAgentAct(const DialogAct& act_template) const;

  void ApplyAgentAct(const DialogAct& act);
  void ApplyUserAct(const DialogAct& act);

  const DialogState& state() const { return state_; }
  const KnowledgeBase& kb() const { return *kb_; }

 private:
  void RefreshMatchCount();

  const KnowledgeBase* kb_;
  DialogState state_;
};

inline constexpr const char* kNoMatchValue = "none";

}  // namespace scddq

#endif  // SCDDQ_DIALOG_STATE_H_
