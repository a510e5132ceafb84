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

#include "scddq/world_model.h"

#include "scddq/errors.h"
#include "scddq/log.h"

namespace scddq {

Eigen::VectorXd StateActionInput(const StateVector& s, int action, int num_actions) {
  if (s.size() != kStateDim) throw ShapeError("state has wrong length");
  if (action < 0 || action >= num_actions) throw ShapeError("action index out of range");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(kStateDim + num_actions);
  x.head(kStateDim) = s;
  x[kStateDim + action] = 1.0;
  return x;
}

nn::MlpSpec WorldModelSpec(const WorldModelConfig& c) {
  using nn::Activation;
  using nn::LossKind;
  return nn::MlpSpec::Build(
      kStateDim + c.num_agent_actions, {c.hidden, c.hidden}, c.hidden,
      {{"user_action", {{0, c.num_user_actions, Activation::kSoftmax}}, LossKind::kCrossEntropy},
       {"reward", {{0, 1, Activation::kLinear}}, LossKind::kMse},
       {"termination", {{0, 1, Activation::kSigmoid}}, LossKind::kBinaryCrossEntropy}});
}

WorldModel::WorldModel(WorldModelConfig config, uint64_t seed)
    : config_(config), net_(WorldModelSpec(config), seed) {}

WorldPrediction WorldModel::Predict(const StateVector& s, int action) const {
  const Eigen::VectorXd x = StateActionInput(s, action, config_.num_agent_actions);
  const auto out = net_.Forward(x.transpose());
  return {out[0].row(0).transpose(), out[1](0, 0), out[2](0, 0)};
}

std::optional<double> WorldModel::Train(const ReplayBuffer& real_buffer, int n_batches,
                                        Rng& rng) {
  if (real_buffer.kind() != BufferKind::kReal) {
    throw ContractViolation("the world model trains on real experience only");
  }
  if (real_buffer.empty()) {
    LogWarning("world-model update skipped: replay buffer is empty");
    return std::nullopt;
  }
  if (n_batches <= 0) return std::nullopt;
  const int b = config_.batch_size;
  const int in = kStateDim + config_.num_agent_actions;
  double total = 0.0;
  for (int k = 0; k < n_batches; ++k) {
    const auto batch = real_buffer.Sample(static_cast<size_t>(b), rng);
    nn::Matrix x(b, in);
    nn::HeadTarget user{nn::Matrix::Zero(b, config_.num_user_actions), {}};
    nn::HeadTarget reward{nn::Matrix(b, 1), {}};
    nn::HeadTarget term{nn::Matrix(b, 1), {}};
    for (int i = 0; i < b; ++i) {
      const Experience& e = *batch[i];
      if (e.a_user < 0 || e.a_user >= config_.num_user_actions) {
        throw ContractViolation("experience user action index out of range");
      }
      x.row(i) = StateActionInput(e.s, e.a, config_.num_agent_actions).transpose();
      user.target(i, e.a_user) = 1.0;
      reward.target(i, 0) = e.r;
      term.target(i, 0) = e.done ? 1.0 : 0.0;
    }
    total += net_.TrainMinibatch({x, {user, reward, term}}, config_.learning_rate);
  }
  return total / n_batches;
}

}  // namespace scddq
