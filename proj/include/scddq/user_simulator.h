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

// Rule-based user simulator for the movie-ticket task, with reward emission
// and transcript-based success judgment.

#ifndef SCDDQ_USER_SIMULATOR_H_
#define SCDDQ_USER_SIMULATOR_H_

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "scddq/dialog_state.h"
#include "scddq/knowledge_base.h"
#include "scddq/ontology.h"
#include "scddq/random.h"
#include "scddq/user_goal.h"

namespace scddq {

struct RewardConfig {
  int max_turns = kDefaultMaxTurns;  // L
  double per_turn = -1.0;
  double success_bonus = 2.0 * kDefaultMaxTurns;
  double failure_penalty = -1.0 * kDefaultMaxTurns;

  // Bonus 2L and penalty -L for the given turn limit.
  static RewardConfig ForMaxTurns(int max_turns);
  void Validate() const;
};

struct StepOutcome {
  DialogAct user_act;
  double reward = 0.0;
  bool done = false;
  std::optional<bool> success;  // set iff done
};

enum class Speaker { kUser, kAgent };

struct TranscriptEntry {
  int turn = 0;
  Speaker speaker = Speaker::kUser;
  DialogAct act;
  double reward = 0.0;
};
using Transcript = std::vector<TranscriptEntry>;

// Order in which the user voices its outstanding requests; ticket is last.
inline constexpr std::array<Slot, 7> kUserRequestPriority = {
    Slot::kStartTime, Slot::kTheater, Slot::kDate,  Slot::kCity,
    Slot::kPrice,     Slot::kVideoFormat, Slot::kTicket};

// True iff the transcript ends in a booking whose record satisfies every goal
// constraint and every non-ticket goal request was last informed by the agent
// with that record's value. Agent informs the user denied are discarded.
bool JudgeSuccess(const UserGoal& goal, const Transcript& transcript,
                  const KnowledgeBase& kb);

// Writes one JSON object per act: {turn, speaker, intent, inform_slots,
// request_slots, reward}.
void WriteTranscriptJsonl(const Transcript& transcript, std::ostream& out);

class UserSimulator {
 public:
  explicit UserSimulator(const KnowledgeBase& kb, RewardConfig rewards = {});

  // Starts an episode. The first act requests the highest-priority goal
  // request slot and carries 1-3 goal constraints, the movie name first. Throws
  // EnvironmentSetupError when no KB record satisfies the goal.
  DialogAct Reset(const UserGoal& goal, uint64_t seed);

  // Responds to one agent act. Throws ContractViolation once done.
  StepOutcome Step(const DialogAct& agent_act);

  bool done() const { return done_; }
  int agent_turns() const { return turn_; }
  const UserGoal& goal() const { return goal_; }
  const Transcript& transcript() const { return transcript_; }
  const RewardConfig& rewards() const { return rewards_; }
  // Goal request slots the agent has not yet answered acceptably.
  const std::set<Slot>& outstanding() const { return outstanding_; }

 private:
  DialogAct NextRequest() const;
  DialogAct Respond(const DialogAct& agent_act);

  const KnowledgeBase* kb_;
  RewardConfig rewards_;
  UserGoal goal_;
  Rng rng_;
  std::set<Slot> outstanding_;
  SlotValues accepted_;  // agent answers the user accepted
  Transcript transcript_;
  int turn_ = 0;
  bool done_ = true;
  bool success_ = false;
};

}  // namespace scddq

#endif  // SCDDQ_USER_SIMULATOR_H_
