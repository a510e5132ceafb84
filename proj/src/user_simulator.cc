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

#include "scddq/user_simulator.h"

#include <algorithm>
#include <charconv>

#include "scddq/errors.h"

namespace scddq {
namespace {

std::optional<size_t> ParseRecordIndex(const std::string& value, size_t kb_size) {
  size_t index = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, index);
  if (ec != std::errc() || ptr != end || index >= kb_size) return std::nullopt;
  return index;
}

bool SameValue(const std::string& a, const std::string& b) {
  return NormalizeValue(a) == NormalizeValue(b);
}

}  // namespace

RewardConfig RewardConfig::ForMaxTurns(int max_turns) {
  RewardConfig c;
  c.max_turns = max_turns;
  c.success_bonus = 2.0 * max_turns;
  c.failure_penalty = -1.0 * max_turns;
  c.Validate();
  return c;
}

void RewardConfig::Validate() const {
  if (max_turns <= 0) throw InvalidArgument("max_turns must be positive");
}

bool JudgeSuccess(const UserGoal& goal, const Transcript& transcript,
                  const KnowledgeBase& kb) {
  SlotValues agent_values;
  std::optional<size_t> booked;
  bool booking_seen = false;
  for (const auto& entry : transcript) {
    const DialogAct& act = entry.act;
    if (entry.speaker == Speaker::kAgent) {
      if (act.intent != Intent::kInform) continue;
      for (const auto& [slot, value] : act.inform_slots) {
        if (slot == Slot::kTaskComplete) {
          booking_seen = true;
          booked = ParseRecordIndex(value, kb.size());
        } else {
          agent_values[slot] = value;
        }
      }
    } else if (act.intent == Intent::kDeny) {
      for (const auto& [slot, value] : act.inform_slots) agent_values.erase(slot);
      for (Slot s : act.request_slots) agent_values.erase(s);
    }
  }
  if (!booking_seen || !booked) return false;
  if (!kb.Matches(*booked, goal.inform_slots)) return false;
  const MovieRecord& record = kb.record(*booked);
  for (Slot s : goal.request_slots) {
    if (s == Slot::kTicket) continue;
    const auto it = agent_values.find(s);
    if (it == agent_values.end()) return false;
    const auto rv = record.values.find(s);
    if (rv == record.values.end() || !SameValue(rv->second, it->second)) return false;
  }
  return true;
}

void WriteTranscriptJsonl(const Transcript& transcript, std::ostream& out) {
  for (const auto& e : transcript) {
    nlohmann::json j = ActToJson(e.act);
    j["turn"] = e.turn;
    j["speaker"] = e.speaker == Speaker::kAgent ? "agent" : "user";
    j["reward"] = e.reward;
    out << j.dump() << "\n";
  }
}

UserSimulator::UserSimulator(const KnowledgeBase& kb, RewardConfig rewards)
    : kb_(&kb), rewards_(rewards) {
  rewards_.Validate();
}

DialogAct UserSimulator::Reset(const UserGoal& goal, uint64_t seed) {
  ValidateGoal(goal);
  if (!kb_->FirstMatch(goal.inform_slots)) {
    throw EnvironmentSetupError("no KB record satisfies the goal constraints");
  }
  goal_ = goal;
  rng_ = Rng(seed);
  outstanding_ = goal.request_slots;
  accepted_.clear();
  transcript_.clear();
  turn_ = 0;
  done_ = false;
  success_ = false;

  DialogAct first = NextRequest();
  if (!goal.inform_slots.empty()) {
    // The movie name, when known, always opens the dialog.
    std::vector<Slot> keys;
    for (const auto& [slot, value] : goal.inform_slots) {
      if (slot != Slot::kMovieName) keys.push_back(slot);
    }
    const int max_carry = std::min<int>(3, static_cast<int>(goal.inform_slots.size()));
    const int carry = rng_.UniformInt(1, max_carry);
    rng_.Shuffle(keys);
    if (goal.inform_slots.count(Slot::kMovieName)) keys.insert(keys.begin(), Slot::kMovieName);
    for (int i = 0; i < carry; ++i) first.inform_slots[keys[i]] = goal.inform_slots.at(keys[i]);
  }
  transcript_.push_back({0, Speaker::kUser, first, 0.0});
  return first;
}

DialogAct UserSimulator::NextRequest() const {
  for (Slot s : kUserRequestPriority) {
    if (outstanding_.count(s)) return DialogAct::Request(s);
  }
  // Goal request slots outside the priority list, if a goal ever has them.
  if (!outstanding_.empty()) return DialogAct::Request(*outstanding_.begin());
  return DialogAct::Request(Slot::kTicket);
}

DialogAct UserSimulator::Respond(const DialogAct& agent_act) {
  switch (agent_act.intent) {
    case Intent::kInform: {
      if (agent_act.inform_slots.count(Slot::kTaskComplete)) {
        done_ = true;
        success_ = JudgeSuccess(goal_, transcript_, *kb_);
        return success_ ? DialogAct::Plain(Intent::kThanks)
                        : DialogAct::Plain(Intent::kDeny);
      }
      for (const auto& [slot, value] : agent_act.inform_slots) {
        const auto constraint = goal_.inform_slots.find(slot);
        if (constraint != goal_.inform_slots.end()) {
          if (!SameValue(constraint->second, value)) {
            DialogAct deny = DialogAct::Plain(Intent::kDeny);
            deny.inform_slots[slot] = constraint->second;
            return deny;
          }
          continue;
        }
        if (slot != Slot::kTicket && outstanding_.count(slot)) {
          SlotValues wanted = goal_.inform_slots;
          for (const auto& [s, v] : accepted_) wanted[s] = v;
          wanted[slot] = value;
          if (value == kNoMatchValue || !kb_->FirstMatch(wanted)) {
            DialogAct deny = DialogAct::Plain(Intent::kDeny);
            deny.request_slots.insert(slot);
            return deny;
          }
          accepted_[slot] = value;
          outstanding_.erase(slot);
        }
      }
      return NextRequest();
    }
    case Intent::kRequest: {
      const Slot slot = *agent_act.request_slots.begin();
      const auto it = goal_.inform_slots.find(slot);
      if (it != goal_.inform_slots.end()) return DialogAct::Inform(slot, it->second);
      return DialogAct::Plain(Intent::kNotSure);
    }
    case Intent::kClosing:
      done_ = true;
      success_ = false;
      return DialogAct::Plain(Intent::kClosing);
    case Intent::kConfirmQuestion:
      return DialogAct::Plain(Intent::kConfirmAnswer);
    default:
      return NextRequest();
  }
}

StepOutcome UserSimulator::Step(const DialogAct& agent_act) {
  if (done_) throw ContractViolation("user_step called on a finished dialog");
  ValidateAct(agent_act);
  ++turn_;
  transcript_.push_back({turn_, Speaker::kAgent, agent_act, 0.0});
  StepOutcome out;
  out.user_act = Respond(agent_act);
  if (!done_ && turn_ >= rewards_.max_turns) {
    done_ = true;
    success_ = false;
    out.user_act = DialogAct::Plain(Intent::kClosing);
  }
  out.done = done_;
  out.reward = rewards_.per_turn;
  if (done_) {
    out.success = success_;
    out.reward += success_ ? rewards_.success_bonus : rewards_.failure_penalty;
  }
  transcript_.back().reward = out.reward;
  transcript_.push_back({turn_, Speaker::kUser, out.user_act, 0.0});
  return out;
}

}  // namespace scddq
