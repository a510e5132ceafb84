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

// Learned user model M(s, a): predicts the user's response act, the reward
// and whether the dialog ends.

#ifndef SCDDQ_WORLD_MODEL_H_
#define SCDDQ_WORLD_MODEL_H_

#include <cstdint>
#include <optional>

#include "scddq/dialog_state.h"
#include "scddq/mlp.h"
#include "scddq/random.h"
#include "scddq/replay_buffer.h"

namespace scddq {

struct WorldModelConfig {
  int num_agent_actions = 29;
  int num_user_actions = 35;
  int hidden = 80;
  double learning_rate = 0.001;
  int batch_size = 16;
};

struct WorldPrediction {
  Eigen::VectorXd user_probs;
  double reward = 0.0;
  double p_done = 0.0;
};

// State concatenated with a one-hot agent action.
Eigen::VectorXd StateActionInput(const StateVector& s, int action, int num_actions);

nn::MlpSpec WorldModelSpec(const WorldModelConfig& config);

class WorldModel {
 public:
  WorldModel(WorldModelConfig config, uint64_t seed);

  const WorldModelConfig& config() const { return config_; }

  WorldPrediction Predict(const StateVector& s, int action) const;

  // Joint cross-entropy + MSE + binary cross-entropy on minibatches from the
  // real buffer. Throws ContractViolation for a simulated buffer; returns
  // nullopt with a warning when the buffer is empty.
  std::optional<double> Train(const ReplayBuffer& real_buffer, int n_batches, Rng& rng);

  const nn::MlpModel& net() const { return net_; }
  nn::MlpModel& mutable_net() { return net_; }

 private:
  WorldModelConfig config_;
  nn::MlpModel net_;
};

}  // namespace scddq

#endif  // SCDDQ_WORLD_MODEL_H_
