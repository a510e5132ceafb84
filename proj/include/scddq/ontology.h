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

// Movie-ticket dialog ontology: slots, intents, semantic-frame dialog acts and
// the fixed agent/user action rosters.

#ifndef SCDDQ_ONTOLOGY_H_
#define SCDDQ_ONTOLOGY_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace scddq {

enum class Slot : uint8_t {
  kCity = 0,
  kClosing,
  kDate,
  kDistanceConstraints,
  kGreeting,
  kMovieName,
  kNumberOfPeople,
  kPrice,
  kStartTime,
  kState,
  kTaskComplete,
  kTheater,
  kTheaterChain,
  kTicket,
  kVideoFormat,
  kZip,
};
inline constexpr int kNumSlots = 16;

enum class Intent : uint8_t {
  kRequest = 0,
  kInform,
  kDeny,
  kConfirmQuestion,
  kConfirmAnswer,
  kGreeting,
  kClosing,
  kNotSure,
  kMultipleChoice,
  kThanks,
  kWelcome,
};
inline constexpr int kNumIntents = 11;

constexpr int SlotIndex(Slot s) { return static_cast<int>(s); }
constexpr int IntentIndex(Intent i) { return static_cast<int>(i); }

std::string_view SlotName(Slot slot);
std::string_view IntentName(Intent intent);
std::optional<Slot> SlotFromName(std::string_view name);
std::optional<Intent> IntentFromName(std::string_view name);
Slot SlotFromIndex(int index);
Intent IntentFromIndex(int index);

// Slots carried by knowledge-base records; the agent can request and inform
// exactly these.
inline constexpr std::array<Slot, 11> kInformableSlots = {
    Slot::kMovieName, Slot::kCity,        Slot::kState,
    Slot::kTheater,   Slot::kTheaterChain, Slot::kDate,
    Slot::kStartTime, Slot::kPrice,       Slot::kVideoFormat,
    Slot::kZip,       Slot::kNumberOfPeople};

bool IsInformable(Slot slot);

using SlotValues = std::map<Slot, std::string>;

// A semantic frame. Templates (roster entries) carry empty inform values.
struct DialogAct {
  Intent intent = Intent::kThanks;
  SlotValues inform_slots;
  std::set<Slot> request_slots;

  static DialogAct Request(Slot slot, SlotValues informs = {});
  static DialogAct Inform(Slot slot, std::string value = "");
  static DialogAct Plain(Intent intent);

  friend bool operator==(const DialogAct&, const DialogAct&) = default;
};

// Throws InvalidArgument when the act breaks the frame invariants.
void ValidateAct(const DialogAct& act);

// Human-readable rendering for transcript logs.
std::string RenderAct(const DialogAct& act, bool agent_speaker);

nlohmann::json ActToJson(const DialogAct& act);
DialogAct ActFromJson(const nlohmann::json& j);

class ActionRoster {
 public:
  static constexpr int kDefaultAgentActions = 29;
  static constexpr int kDefaultUserActions = 35;

  ActionRoster(std::vector<DialogAct> agent_actions,
               std::vector<DialogAct> user_actions);

  static const ActionRoster& Default();

  const std::vector<DialogAct>& agent_actions() const { return agent_actions_; }
  const std::vector<DialogAct>& user_actions() const { return user_actions_; }
  int num_agent_actions() const { return static_cast<int>(agent_actions_.size()); }
  int num_user_actions() const { return static_cast<int>(user_actions_.size()); }

  // Index of the template a concrete act instantiates. Request acts match on
  // their request slots, inform acts on their inform keys, all others on the
  // intent alone (so a user deny carrying a correction maps onto "deny").
  std::optional<int> AgentIndexOf(const DialogAct& act) const;
  std::optional<int> UserIndexOf(const DialogAct& act) const;

  nlohmann::json ToJson() const;
  static ActionRoster FromJson(const nlohmann::json& j);

 private:
  std::vector<DialogAct> agent_actions_;
  std::vector<DialogAct> user_actions_;
};

void SaveRoster(const ActionRoster& roster, const std::string& path);
ActionRoster LoadRoster(const std::string& path);

}  // namespace scddq

#endif  // SCDDQ_ONTOLOGY_H_
