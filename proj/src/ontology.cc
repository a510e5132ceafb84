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

#include "scddq/ontology.h"

#include <algorithm>
#include <utility>

#include "scddq/errors.h"
#include "scddq/json_io.h"

namespace scddq {
namespace {

constexpr std::array<std::string_view, kNumSlots> kSlotNames = {
    "city",           "closing",   "date",       "distanceconstraints",
    "greeting",       "moviename", "numberofpeople", "price",
    "starttime",      "state",     "taskcomplete",   "theater",
    "theater_chain",  "ticket",    "video_format",   "zip"};

constexpr std::array<std::string_view, kNumIntents> kIntentNames = {
    "request", "inform",  "deny",     "confirm_question", "confirm_answer",
    "greeting", "closing", "not_sure", "multiple_choice",  "thanks",
    "welcome"};

// Acts match a roster template when intent and the slot keys agree.
std::pair<Intent, std::vector<Slot>> TemplateKey(const DialogAct& act) {
  std::vector<Slot> slots;
  if (act.intent == Intent::kRequest) {
    slots.assign(act.request_slots.begin(), act.request_slots.end());
  } else if (act.intent == Intent::kInform) {
    for (const auto& [slot, value] : act.inform_slots) slots.push_back(slot);
  }
  return {act.intent, std::move(slots)};
}

std::optional<int> IndexOf(const std::vector<DialogAct>& roster,
                           const DialogAct& act) {
  const auto key = TemplateKey(act);
  for (size_t i = 0; i < roster.size(); ++i) {
    if (TemplateKey(roster[i]) == key) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::string SpokenSlot(Slot slot) {
  std::string name(SlotName(slot));
  std::replace(name.begin(), name.end(), '_', ' ');
  if (slot == Slot::kMovieName) return "movie";
  if (slot == Slot::kStartTime) return "start time";
  if (slot == Slot::kNumberOfPeople) return "number of people";
  return name;
}

std::vector<DialogAct> DefaultAgentActions() {
  std::vector<DialogAct> acts;
  for (Slot s : kInformableSlots) acts.push_back(DialogAct::Request(s));
  for (Slot s : kInformableSlots) acts.push_back(DialogAct::Inform(s));
  acts.push_back(DialogAct::Inform(Slot::kTaskComplete));
  for (Intent i : {Intent::kClosing, Intent::kThanks, Intent::kConfirmQuestion,
                   Intent::kConfirmAnswer, Intent::kDeny, Intent::kNotSure}) {
    acts.push_back(DialogAct::Plain(i));
  }
  return acts;
}

std::vector<DialogAct> DefaultUserActions() {
  std::vector<Slot> user_slots;
  for (int i = 0; i < kNumSlots; ++i) {
    const Slot s = SlotFromIndex(i);
    if (s == Slot::kClosing || s == Slot::kGreeting || s == Slot::kTaskComplete) {
      continue;
    }
    user_slots.push_back(s);
  }
  std::vector<DialogAct> acts;
  for (Slot s : user_slots) acts.push_back(DialogAct::Inform(s));
  for (Slot s : user_slots) acts.push_back(DialogAct::Request(s));
  for (Intent i : {Intent::kThanks, Intent::kClosing, Intent::kDeny,
                   Intent::kConfirmQuestion, Intent::kConfirmAnswer,
                   Intent::kNotSure, Intent::kGreeting, Intent::kWelcome,
                   Intent::kMultipleChoice}) {
    acts.push_back(DialogAct::Plain(i));
  }
  return acts;
}

}  // namespace

std::string_view SlotName(Slot slot) { return kSlotNames.at(SlotIndex(slot)); }

std::string_view IntentName(Intent intent) {
  return kIntentNames.at(IntentIndex(intent));
}

std::optional<Slot> SlotFromName(std::string_view name) {
  for (int i = 0; i < kNumSlots; ++i) {
    if (kSlotNames[i] == name) return static_cast<Slot>(i);
  }
  return std::nullopt;
}

std::optional<Intent> IntentFromName(std::string_view name) {
  for (int i = 0; i < kNumIntents; ++i) {
    if (kIntentNames[i] == name) return static_cast<Intent>(i);
  }
  return std::nullopt;
}

Slot SlotFromIndex(int index) {
  if (index < 0 || index >= kNumSlots) {
    throw InvalidArgument("slot index out of range: " + std::to_string(index));
  }
  return static_cast<Slot>(index);
}

Intent IntentFromIndex(int index) {
  if (index < 0 || index >= kNumIntents) {
    throw InvalidArgument("intent index out of range: " + std::to_string(index));
  }
  return static_cast<Intent>(index);
}

bool IsInformable(Slot slot) {
  return std::find(kInformableSlots.begin(), kInformableSlots.end(), slot) !=
         kInformableSlots.end();
}

DialogAct DialogAct::Request(Slot slot, SlotValues informs) {
  DialogAct act;
  act.intent = Intent::kRequest;
  act.request_slots = {slot};
  act.inform_slots = std::move(informs);
  return act;
}

DialogAct DialogAct::Inform(Slot slot, std::string value) {
  DialogAct act;
  act.intent = Intent::kInform;
  act.inform_slots[slot] = std::move(value);
  return act;
}

DialogAct DialogAct::Plain(Intent intent) {
  DialogAct act;
  act.intent = intent;
  return act;
}

void ValidateAct(const DialogAct& act) {
  if (act.intent == Intent::kRequest && act.request_slots.empty()) {
    throw InvalidArgument("request act without request slots");
  }
  for (Slot s : act.request_slots) {
    if (act.inform_slots.count(s)) {
      throw InvalidArgument("slot '" + std::string(SlotName(s)) +
                            "' both informed and requested");
    }
  }
}

std::string RenderAct(const DialogAct& act, bool agent_speaker) {
  auto informs = [&]() {
    std::string out;
    for (const auto& [slot, value] : act.inform_slots) {
      if (!out.empty()) out += ", ";
      out += SpokenSlot(slot) + " " + value;
    }
    return out;
  };
  switch (act.intent) {
    case Intent::kRequest: {
      const Slot first = *act.request_slots.begin();
      std::string text = agent_speaker
                             ? "Which " + SpokenSlot(first) + " would you like?"
                             : "Which " + SpokenSlot(first) + " is available?";
      if (!act.inform_slots.empty()) text += " (" + informs() + ")";
      return text;
    }
    case Intent::kInform:
      if (act.inform_slots.count(Slot::kTaskComplete)) {
        return "Great, I was able to purchase your tickets.";
      }
      return agent_speaker ? informs() + " is available."
                           : "I want " + informs() + ".";
    case Intent::kDeny:
      return act.inform_slots.empty() ? "That does not work for me."
                                      : "No, I want " + informs() + ".";
    case Intent::kNotSure:
      return "I am not sure.";
    case Intent::kThanks:
      return "Thank you.";
    case Intent::kClosing:
      return "Goodbye.";
    default:
      return std::string(IntentName(act.intent)) + ".";
  }
}

nlohmann::json ActToJson(const DialogAct& act) {
  nlohmann::json informs = nlohmann::json::object();
  for (const auto& [slot, value] : act.inform_slots) {
    informs[std::string(SlotName(slot))] = value;
  }
  nlohmann::json requests = nlohmann::json::array();
  for (Slot s : act.request_slots) requests.push_back(std::string(SlotName(s)));
  return {{"intent", std::string(IntentName(act.intent))},
          {"inform_slots", informs},
          {"request_slots", requests}};
}

DialogAct ActFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("dialog act must be a JSON object");
  DialogAct act;
  const std::string intent_name = j.value("intent", "");
  const auto intent = IntentFromName(intent_name);
  if (!intent) throw ParseError("unknown intent '" + intent_name + "'");
  act.intent = *intent;
  if (j.contains("inform_slots")) {
    for (const auto& [key, value] : j.at("inform_slots").items()) {
      const auto slot = SlotFromName(key);
      if (!slot) throw ParseError("unknown slot '" + key + "' in inform_slots");
      if (!value.is_string()) throw ParseError("slot '" + key + "' value must be a string");
      act.inform_slots[*slot] = value.get<std::string>();
    }
  }
  if (j.contains("request_slots")) {
    for (const auto& name : j.at("request_slots")) {
      const std::string s = name.is_string() ? name.get<std::string>() : name.dump();
      const auto slot = SlotFromName(s);
      if (!slot) throw ParseError("unknown slot '" + s + "' in request_slots");
      act.request_slots.insert(*slot);
    }
  }
  try {
    ValidateAct(act);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return act;
}

ActionRoster::ActionRoster(std::vector<DialogAct> agent_actions,
                           std::vector<DialogAct> user_actions)
    : agent_actions_(std::move(agent_actions)),
      user_actions_(std::move(user_actions)) {
  for (const auto* roster : {&agent_actions_, &user_actions_}) {
    if (roster->empty()) throw InvalidArgument("action roster must not be empty");
    for (size_t i = 0; i < roster->size(); ++i) {
      ValidateAct((*roster)[i]);
      for (size_t j = 0; j < i; ++j) {
        if (TemplateKey((*roster)[i]) == TemplateKey((*roster)[j])) {
          throw InvalidArgument("duplicate roster template at index " +
                                std::to_string(i));
        }
      }
    }
  }
}

const ActionRoster& ActionRoster::Default() {
  static const ActionRoster* roster = [] {
    auto* r = new ActionRoster(DefaultAgentActions(), DefaultUserActions());
    if (r->num_agent_actions() != kDefaultAgentActions ||
        r->num_user_actions() != kDefaultUserActions) {
      throw SpecError("default roster cardinality mismatch");
    }
    return r;
  }();
  return *roster;
}

std::optional<int> ActionRoster::AgentIndexOf(const DialogAct& act) const {
  return IndexOf(agent_actions_, act);
}

std::optional<int> ActionRoster::UserIndexOf(const DialogAct& act) const {
  return IndexOf(user_actions_, act);
}

nlohmann::json ActionRoster::ToJson() const {
  nlohmann::json agent = nlohmann::json::array();
  for (const auto& a : agent_actions_) agent.push_back(ActToJson(a));
  nlohmann::json user = nlohmann::json::array();
  for (const auto& a : user_actions_) user.push_back(ActToJson(a));
  return {{"version", 1}, {"agent_actions", agent}, {"user_actions", user}};
}

ActionRoster ActionRoster::FromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("agent_actions") || !j.contains("user_actions")) {
    throw ParseError("roster must contain agent_actions and user_actions");
  }
  std::vector<DialogAct> agent, user;
  for (const auto& a : j.at("agent_actions")) agent.push_back(ActFromJson(a));
  for (const auto& a : j.at("user_actions")) user.push_back(ActFromJson(a));
  try {
    return ActionRoster(std::move(agent), std::move(user));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

void SaveRoster(const ActionRoster& roster, const std::string& path) {
  WriteJsonFile(roster.ToJson(), path);
}

ActionRoster LoadRoster(const std::string& path) {
  return ActionRoster::FromJson(ReadJsonFile(path));
}

}  // namespace scddq
