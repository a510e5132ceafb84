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

// Deep Q-network dialog policy with a target network, epsilon-greedy and
// curiosity-augmented action selection.

#ifndef SCDDQ_DQN_AGENT_H_
#define SCDDQ_DQN_AGENT_H_

#include <cstdint>
#include <optional>

#include "json.hpp"
#include "scddq/dialog_state.h"
#include "scddq/mlp.h"
#include "scddq/random.h"
#include "scddq/replay_buffer.h"

namespace scddq {

struct DqnConfig {
  int num_actions = 29;
  int hidden = 80;
  double gamma = 0.9;
  double epsilon = 0.05;
  double learning_rate = 0.001;
  int batch_size = 16;
};

nn::MlpSpec QNetSpec(int num_actions, int hidden);

// Index of the largest entry; ties go to the lowest index.
int ArgmaxLowest(const Eigen::VectorXd& v);

// Number of minibatches for `new_experiences` fresh samples: ceil(n / batch).
int BatchesFor(size_t new_experiences, int batch_size);

class DqnAgent {
 public:
  DqnAgent(DqnConfig config, uint64_t seed);

  const DqnConfig& config() const { return config_; }
  void set_epsilon(double epsilon);

  Eigen::VectorXd QValues(const StateVector& s) const;

  // With probability epsilon a uniform action, else argmax Q.
  int SelectEpsGreedy(const StateVector& s, Rng& rng, double epsilon) const;
  int SelectEpsGreedy(const StateVector& s, Rng& rng) const {
    return SelectEpsGreedy(s, rng, config_.epsilon);
  }
  // Same exploration draw as SelectEpsGreedy, then argmax of Q + bonus.
  int SelectWithBonus(const StateVector& s, const Eigen::VectorXd& bonus,
                      Rng& rng, double epsilon) const;

  // Q-learning on minibatches drawn from `buffer`; only the taken action's
  // output is regressed. Returns the mean loss, or nullopt (with a warning)
  // when the buffer is empty.
  std::optional<double> Update(const ReplayBuffer& buffer, int n_batches, Rng& rng);

  // Bootstrapped target for one experience under the target network.
  double TargetValue(const Experience& e) const;

  void SyncTarget();

  const nn::MlpModel& q_net() const { return q_net_; }
  const nn::MlpModel& target_net() const { return target_net_; }
  nn::MlpModel& mutable_q_net() { return q_net_; }
  long update_steps() const { return update_steps_; }

  nlohmann::json ToJson() const;
  static DqnAgent FromJson(const nlohmann::json& j);

 private:
  DqnConfig config_;
  nn::MlpModel q_net_;
  nn::MlpModel target_net_;
  long update_steps_ = 0;
};

}  // namespace scddq

#endif  // SCDDQ_DQN_AGENT_H_
