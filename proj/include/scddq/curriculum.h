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

// Goal difficulty classification and the stage schedules that decide which
// goal buffer the user simulator samples from at each epoch.

#ifndef SCDDQ_CURRICULUM_H_
#define SCDDQ_CURRICULUM_H_

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "scddq/random.h"
#include "scddq/user_goal.h"

namespace scddq {

enum class DifficultyLevel { kEasy, kMiddle, kDifficult, kAll };

std::string LevelName(DifficultyLevel level);
DifficultyLevel LevelFromName(const std::string& name);

// 1 request slot: easy; 2-3: middle; 4+: difficult. Throws InvalidGoal for a
// goal without request slots.
DifficultyLevel ClassifyGoal(const UserGoal& goal);

struct GoalBuffers {
  std::vector<UserGoal> easy;
  std::vector<UserGoal> middle;
  std::vector<UserGoal> difficult;
  std::vector<UserGoal> total;

  const std::vector<UserGoal>& ForLevel(DifficultyLevel level) const;
};

GoalBuffers BuildBuffers(const std::vector<UserGoal>& goals);

// Uniform draw. Throws SamplingError when the buffer is empty.
const UserGoal& SampleGoal(const GoalBuffers& buffers, DifficultyLevel level, Rng& rng);

inline constexpr int kDefaultEpochs = 300;
inline constexpr int kNumStages = 4;

struct Stage {
  int begin = 0;  // inclusive epoch
  int end = 0;    // exclusive epoch
  DifficultyLevel level = DifficultyLevel::kAll;
};

struct Schedule {
  std::string name;
  std::array<Stage, kNumStages> stages;

  int epochs() const { return stages.back().end; }
};

// "EMD", "EDD", "EED", "DME", "DEE", "DDM" and "RANDOM".
const std::vector<std::string>& ScheduleNames();
bool IsNamedSchedule(const std::string& name);

// Stage boundaries floor(epochs * {70, 140, 210} / 300); exactly
// [0,70), [70,140), [140,210), [210,300) for 300 epochs.
std::array<int, kNumStages + 1> StageBoundaries(int epochs);

Schedule NamedSchedule(const std::string& name, int epochs = kDefaultEpochs);

// Throws InvalidArgument unless the stages tile [0, epochs) in order.
void ValidateSchedule(const Schedule& schedule);

// {"name": ..., "stages": [{"begin": 0, "end": 70, "level": "easy"}, ...]}
// or a bare schedule name string.
Schedule ScheduleFromJson(const nlohmann::json& j, int epochs = kDefaultEpochs);
nlohmann::json ScheduleToJson(const Schedule& schedule);

// 0-based stage index. Throws InvalidArgument for epochs outside the schedule.
int StageIndexForEpoch(const Schedule& schedule, int epoch);
DifficultyLevel StageForEpoch(const Schedule& schedule, int epoch);

}  // namespace scddq

#endif  // SCDDQ_CURRICULUM_H_
