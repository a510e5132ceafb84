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

// Curiosity module C(s, a): a forward model of the next encoded state plus a
// head estimating its own prediction error, used as an exploration bonus.

#ifndef SCDDQ_CURIOSITY_MODEL_H_
#define SCDDQ_CURIOSITY_MODEL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "scddq/dialog_state.h"
#include "scddq/mlp.h"
#include "scddq/random.h"
#include "scddq/replay_buffer.h"

namespace scddq {

struct CuriosityConfig {
  int num_agent_actions = 29;
  int hidden = 80;
  double learning_rate = 0.001;
  int batch_size = 16;
};

struct CuriosityScores {
  Eigen::VectorXd values;           // one per agent action, >= 0
  Eigen::MatrixXd predicted_next;   // actions x kStateDim
};

// Squared Euclidean distance between two encoded states.
double PredictionError(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted);

nn::MlpSpec CuriositySpec(const CuriosityConfig& config);

class CuriosityModel {
 public:
  CuriosityModel(CuriosityConfig config, uint64_t seed);

  const CuriosityConfig& config() const { return config_; }

  // Scores every agent action in one batched pass.
  CuriosityScores Scores(const StateVector& s) const;

  // Trains both heads on one batch of experiences; the curiosity target is the
  // prediction error of the next-state head before this step. Returns the loss.
  double TrainOnBatch(const std::vector<const Experience*>& batch);

  // Minibatches drawn from real ++ simulated. Returns nullopt with a warning
  // when both buffers are empty.
  std::optional<double> Train(const ReplayBuffer& real_buffer,
                              const ReplayBuffer& sim_buffer, int n_batches, Rng& rng);

  const nn::MlpModel& net() const { return net_; }
  nn::MlpModel& mutable_net() { return net_; }

 private:
  CuriosityConfig config_;
  nn::MlpModel net_;
};

}  // namespace scddq

#endif  // SCDDQ_CURIOSITY_MODEL_H_
