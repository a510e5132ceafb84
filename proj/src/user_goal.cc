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

#include "scddq/user_goal.h"

#include <algorithm>
#include <sstream>

#include "scddq/errors.h"
#include "scddq/json_io.h"
#include "scddq/random.h"

namespace scddq {

void ValidateGoal(const UserGoal& goal) {
  if (!goal.request_slots.count(Slot::kTicket)) {
    throw InvalidGoal("goal must request 'ticket'");
  }
  if (goal.request_slots.size() > static_cast<size_t>(kMaxRequestSlots)) {
    throw InvalidGoal("goal requests more than 5 slots");
  }
  for (Slot s : goal.request_slots) {
    if (goal.inform_slots.count(s)) {
      throw InvalidGoal("slot '" + std::string(SlotName(s)) +
                        "' is both requested and informed");
    }
  }
}

const GoalCounts& DefaultGoalCounts() {
  static const GoalCounts counts = {{1, 61}, {2, 16}, {3, 17}, {4, 34}, {5, 9}};
  return counts;
}

std::vector<UserGoal> GenerateGoalSet(const KnowledgeBase& kb,
                                      const GoalCounts& counts, uint64_t seed) {
  if (kb.size() == 0) throw GenerationError("cannot generate goals from an empty KB");
  Rng rng(DeriveSeed(seed, "goals"));
  std::vector<UserGoal> goals;
  std::set<UserGoal> seen;
  for (const auto& [n_requests, n_goals] : counts) {
    if (n_requests < 1 || n_requests > kMaxRequestSlots) {
      throw GenerationError("request-slot count " + std::to_string(n_requests) +
                            " outside 1..5");
    }
    if (n_goals < 0) throw GenerationError("negative goal count");
    const long max_attempts = 2000L * n_goals + 2000;
    long attempts = 0;
    int made = 0;
    while (made < n_goals) {
      if (++attempts > max_attempts) {
        throw GenerationError("only " + std::to_string(made) + " of " +
                              std::to_string(n_goals) + " distinct goals with " +
                              std::to_string(n_requests) +
                              " request slots are available");
      }
      const MovieRecord& record = kb.record(rng.Below(kb.size()));
      std::vector<Slot> pool(kGoalRequestCandidates.begin(), kGoalRequestCandidates.end());
      rng.Shuffle(pool);

      UserGoal goal;
      goal.request_slots.insert(Slot::kTicket);
      goal.request_slots.insert(pool.begin(), pool.begin() + (n_requests - 1));
      for (Slot s : kGoalInformCandidates) {
        if (goal.request_slots.count(s)) continue;
        const bool always = s == Slot::kMovieName || s == Slot::kNumberOfPeople;
        if (always || rng.Bernoulli(0.5)) goal.inform_slots[s] = record.Get(s);
      }
      if (seen.insert(goal).second) {
        goals.push_back(std::move(goal));
        ++made;
      }
    }
  }
  return goals;
}

GoalCounts ParseGoalCounts(const std::string& text) {
  GoalCounts counts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument("goal count '" + item + "' is not of the form k:n");
    }
    try {
      counts[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("goal count '" + item + "' is not numeric");
    }
  }
  return counts;
}

nlohmann::json GoalToJson(const UserGoal& goal) {
  nlohmann::json requests = nlohmann::json::array();
  for (Slot s : goal.request_slots) requests.push_back(std::string(SlotName(s)));
  nlohmann::json informs = nlohmann::json::object();
  for (const auto& [slot, value] : goal.inform_slots) {
    informs[std::string(SlotName(slot))] = value;
  }
  return {{"request_slots", requests}, {"inform_slots", informs}};
}

UserGoal GoalFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("goal must be an object");
  if (!j.contains("request_slots") || !j.at("request_slots").is_array()) {
    throw ParseError("field 'request_slots' missing or not an array");
  }
  if (!j.contains("inform_slots") || !j.at("inform_slots").is_object()) {
    throw ParseError("field 'inform_slots' missing or not an object");
  }
  UserGoal goal;
  for (const auto& v : j.at("request_slots")) {
    const std::string name = v.is_string() ? v.get<std::string>() : v.dump();
    const auto slot = SlotFromName(name);
    if (!slot) throw ParseError("request_slots: unknown slot '" + name + "'");
    goal.request_slots.insert(*slot);
  }
  for (const auto& [key, value] : j.at("inform_slots").items()) {
    const auto slot = SlotFromName(key);
    if (!slot) throw ParseError("inform_slots: unknown slot '" + key + "'");
    if (!value.is_string()) throw ParseError("inform_slots: '" + key + "' must be a string");
    goal.inform_slots[*slot] = value.get<std::string>();
  }
  try {
    ValidateGoal(goal);
  } catch (const InvalidGoal& e) {
    throw ParseError(e.what());
  }
  return goal;
}

void SaveGoals(const std::vector<UserGoal>& goals, const std::string& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : goals) arr.push_back(GoalToJson(g));
  WriteJsonFile(arr, path);
}

std::vector<UserGoal> LoadGoals(const std::string& path) {
  const auto j = ReadJsonFile(path);
  if (!j.is_array()) throw ParseError(path + ": goal file must be a JSON array");
  std::vector<UserGoal> goals;
  for (size_t i = 0; i < j.size(); ++i) {
    try {
      goals.push_back(GoalFromJson(j[i]));
    } catch (const ParseError& e) {
      throw ParseError(path + ": goal " + std::to_string(i) + ": " + e.what());
    }
  }
  return goals;
}

}  // namespace scddq
