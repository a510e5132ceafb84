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

#include "scddq/curriculum.h"

#include <map>

#include "scddq/errors.h"

namespace scddq {

std::string LevelName(DifficultyLevel level) {
  switch (level) {
    case DifficultyLevel::kEasy: return "easy";
    case DifficultyLevel::kMiddle: return "middle";
    case DifficultyLevel::kDifficult: return "difficult";
    case DifficultyLevel::kAll: return "all";
  }
  return "?";
}

DifficultyLevel LevelFromName(const std::string& name) {
  if (name == "easy") return DifficultyLevel::kEasy;
  if (name == "middle") return DifficultyLevel::kMiddle;
  if (name == "difficult") return DifficultyLevel::kDifficult;
  if (name == "all") return DifficultyLevel::kAll;
  throw InvalidArgument("unknown difficulty level '" + name + "'");
}

DifficultyLevel ClassifyGoal(const UserGoal& goal) {
  const size_t n = goal.request_slots.size();
  if (n == 0) throw InvalidGoal("goal has no request slots");
  if (n == 1) return DifficultyLevel::kEasy;
  if (n <= 3) return DifficultyLevel::kMiddle;
  return DifficultyLevel::kDifficult;
}

const std::vector<UserGoal>& GoalBuffers::ForLevel(DifficultyLevel level) const {
  switch (level) {
    case DifficultyLevel::kEasy: return easy;
    case DifficultyLevel::kMiddle: return middle;
    case DifficultyLevel::kDifficult: return difficult;
    case DifficultyLevel::kAll: return total;
  }
  return total;
}

GoalBuffers BuildBuffers(const std::vector<UserGoal>& goals) {
  GoalBuffers b;
  for (const auto& g : goals) {
    switch (ClassifyGoal(g)) {
      case DifficultyLevel::kEasy: b.easy.push_back(g); break;
      case DifficultyLevel::kMiddle: b.middle.push_back(g); break;
      default: b.difficult.push_back(g); break;
    }
    b.total.push_back(g);
  }
  return b;
}

const UserGoal& SampleGoal(const GoalBuffers& buffers, DifficultyLevel level, Rng& rng) {
  const auto& buf = buffers.ForLevel(level);
  if (buf.empty()) {
    throw SamplingError("goal buffer '" + LevelName(level) + "' is empty");
  }
  return buf[rng.Below(buf.size())];
}

namespace {

const std::map<std::string, std::array<DifficultyLevel, 3>>& ScheduleTable() {
  using L = DifficultyLevel;
  static const auto* table = new std::map<std::string, std::array<L, 3>>{
      {"EMD", {L::kEasy, L::kMiddle, L::kDifficult}},
      {"EDD", {L::kEasy, L::kDifficult, L::kDifficult}},
      {"EED", {L::kEasy, L::kEasy, L::kDifficult}},
      {"DME", {L::kDifficult, L::kMiddle, L::kEasy}},
      {"DEE", {L::kDifficult, L::kEasy, L::kEasy}},
      {"DDM", {L::kDifficult, L::kDifficult, L::kMiddle}},
      {"RANDOM", {L::kAll, L::kAll, L::kAll}},
  };
  return *table;
}

}  // namespace

const std::vector<std::string>& ScheduleNames() {
  static const std::vector<std::string> names = {"EMD", "EDD", "EED", "DME",
                                                 "DEE", "DDM", "RANDOM"};
  return names;
}

bool IsNamedSchedule(const std::string& name) { return ScheduleTable().count(name) > 0; }

std::array<int, kNumStages + 1> StageBoundaries(int epochs) {
  if (epochs < kNumStages) {
    throw InvalidArgument("a schedule needs at least " + std::to_string(kNumStages) +
                          " epochs, got " + std::to_string(epochs));
  }
  std::array<int, kNumStages + 1> b{};
  for (int i = 1; i < kNumStages; ++i) {
    b[i] = static_cast<int>(static_cast<long>(epochs) * 70 * i / 300);
    if (b[i] <= b[i - 1]) b[i] = b[i - 1] + 1;
  }
  b[kNumStages] = epochs;
  return b;
}

Schedule NamedSchedule(const std::string& name, int epochs) {
  const auto it = ScheduleTable().find(name);
  if (it == ScheduleTable().end()) throw InvalidArgument("unknown schedule '" + name + "'");
  const auto bounds = StageBoundaries(epochs);
  Schedule s;
  s.name = name;
  for (int i = 0; i < kNumStages; ++i) {
    s.stages[i] = {bounds[i], bounds[i + 1],
                   i < 3 ? it->second[i] : DifficultyLevel::kAll};
  }
  return s;
}

void ValidateSchedule(const Schedule& schedule) {
  int expected = 0;
  for (const auto& st : schedule.stages) {
    if (st.begin != expected || st.end <= st.begin) {
      throw InvalidArgument("schedule '" + schedule.name +
                            "' stages must tile the epochs contiguously from 0");
    }
    expected = st.end;
  }
}

Schedule ScheduleFromJson(const nlohmann::json& j, int epochs) {
  if (j.is_string()) return NamedSchedule(j.get<std::string>(), epochs);
  try {
    Schedule s;
    s.name = j.at("name").get<std::string>();
    const auto& stages = j.at("stages");
    if (!stages.is_array() || stages.size() != kNumStages) {
      throw InvalidArgument("custom schedule needs exactly 4 stages");
    }
    for (int i = 0; i < kNumStages; ++i) {
      s.stages[i] = {stages[i].at("begin").get<int>(), stages[i].at("end").get<int>(),
                     LevelFromName(stages[i].at("level").get<std::string>())};
    }
    ValidateSchedule(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed schedule: ") + e.what());
  }
}

nlohmann::json ScheduleToJson(const Schedule& schedule) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& st : schedule.stages) {
    stages.push_back({{"begin", st.begin}, {"end", st.end}, {"level", LevelName(st.level)}});
  }
  return {{"name", schedule.name}, {"stages", stages}};
}

int StageIndexForEpoch(const Schedule& schedule, int epoch) {
  for (int i = 0; i < kNumStages; ++i) {
    if (epoch >= schedule.stages[i].begin && epoch < schedule.stages[i].end) return i;
  }
  throw InvalidArgument("epoch " + std::to_string(epoch) + " outside schedule [0, " +
                        std::to_string(schedule.epochs()) + ")");
}

DifficultyLevel StageForEpoch(const Schedule& schedule, int epoch) {
  return schedule.stages[StageIndexForEpoch(schedule, epoch)].level;
}

}  // namespace scddq
