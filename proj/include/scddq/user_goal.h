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

#ifndef SCDDQ_USER_GOAL_H_
#define SCDDQ_USER_GOAL_H_

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "scddq/knowledge_base.h"
#include "scddq/ontology.h"

namespace scddq {

// What the simulated user wants: constraints it knows (inform_slots) and
// values it must obtain from the agent (request_slots, always incl. ticket).
struct UserGoal {
  std::set<Slot> request_slots;
  SlotValues inform_slots;

  friend bool operator==(const UserGoal&, const UserGoal&) = default;
  friend auto operator<=>(const UserGoal&, const UserGoal&) = default;
};

inline constexpr int kMaxRequestSlots = 5;

// Constraint slots a generated goal may carry.
inline constexpr std::array<Slot, 6> kGoalInformCandidates = {
    Slot::kMovieName, Slot::kStartTime, Slot::kCity,
    Slot::kDate,      Slot::kTheater,   Slot::kNumberOfPeople};

// Non-ticket slots a generated goal may request.
inline constexpr std::array<Slot, 6> kGoalRequestCandidates = {
    Slot::kStartTime, Slot::kTheater, Slot::kDate,
    Slot::kCity,      Slot::kPrice,   Slot::kVideoFormat};

// Throws InvalidGoal when the goal breaks its invariants.
void ValidateGoal(const UserGoal& goal);

// request-slot count -> number of goals.
using GoalCounts = std::map<int, int>;
const GoalCounts& DefaultGoalCounts();  // {1:61, 2:16, 3:17, 4:34, 5:9}

// Distinct goals, satisfiable by construction (constraint values are copied
// from one KB record). Ordered by request-slot count, then generation order.
// Throws GenerationError when a count cannot be met with distinct goals.
std::vector<UserGoal> GenerateGoalSet(const KnowledgeBase& kb,
                                      const GoalCounts& counts, uint64_t seed);

// Parses "1:61,2:16,..." into counts.
GoalCounts ParseGoalCounts(const std::string& text);

nlohmann::json GoalToJson(const UserGoal& goal);
UserGoal GoalFromJson(const nlohmann::json& j);
void SaveGoals(const std::vector<UserGoal>& goals, const std::string& path);
std::vector<UserGoal> LoadGoals(const std::string& path);

}  // namespace scddq

#endif  // SCDDQ_USER_GOAL_H_
