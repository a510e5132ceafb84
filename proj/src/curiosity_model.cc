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

#include "scddq/curiosity_model.h"

#include "scddq/errors.h"
#include "scddq/log.h"
#include "scddq/world_model.h"

namespace scddq {

double PredictionError(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted) {
  if (actual.size() != predicted.size()) throw ShapeError("state sizes differ");
  return (actual - predicted).squaredNorm();
}

nn::MlpSpec CuriositySpec(const CuriosityConfig& c) {
  using nn::Activation;
  using nn::LossKind;
  return nn::MlpSpec::Build(
      kStateDim + c.num_agent_actions, {c.hidden, c.hidden}, c.hidden,
      {{"next_state", {{0, kStateDim, Activation::kLinear}}, LossKind::kMse},
       {"curiosity", {{0, 1, Activation::kLinear}}, LossKind::kMse}});
}

CuriosityModel::CuriosityModel(CuriosityConfig config, uint64_t seed)
    : config_(config), net_(CuriositySpec(config), seed) {}

CuriosityScores CuriosityModel::Scores(const StateVector& s) const {
  if (s.size() != kStateDim) throw ShapeError("state has wrong length");
  const int n = config_.num_agent_actions;
  nn::Matrix x = nn::Matrix::Zero(n, kStateDim + n);
  for (int a = 0; a < n; ++a) {
    x.row(a).head(kStateDim) = s.transpose();
    x(a, kStateDim + a) = 1.0;
  }
  auto out = net_.Forward(x);
  return {out[1].col(0).cwiseMax(0.0), std::move(out[0])};
}

double CuriosityModel::TrainOnBatch(const std::vector<const Experience*>& batch) {
  const int b = static_cast<int>(batch.size());
  if (b == 0) throw InvalidArgument("empty curiosity batch");
  nn::Matrix x(b, kStateDim + config_.num_agent_actions);
  nn::HeadTarget next{nn::Matrix(b, kStateDim), {}};
  for (int i = 0; i < b; ++i) {
    x.row(i) = StateActionInput(batch[i]->s, batch[i]->a, config_.num_agent_actions).transpose();
    next.target.row(i) = batch[i]->s_next.transpose();
  }
  const nn::Matrix predicted = net_.Forward(x)[0];
  nn::HeadTarget err{nn::Matrix(b, 1), {}};
  for (int i = 0; i < b; ++i) {
    err.target(i, 0) = PredictionError(next.target.row(i).transpose(),
                                       predicted.row(i).transpose());
  }
  return net_.TrainMinibatch({x, {next, err}}, config_.learning_rate);
}

std::optional<double> CuriosityModel::Train(const ReplayBuffer& real_buffer,
                                            const ReplayBuffer& sim_buffer,
                                            int n_batches, Rng& rng) {
  if (real_buffer.empty() && sim_buffer.empty()) {
    LogWarning("curiosity update skipped: both replay buffers are empty");
    return std::nullopt;
  }
  if (n_batches <= 0) return std::nullopt;
  double total = 0.0;
  for (int k = 0; k < n_batches; ++k) {
    total += TrainOnBatch(SampleUnion(real_buffer, sim_buffer,
                                      static_cast<size_t>(config_.batch_size), rng));
  }
  return total / n_batches;
}

}  // namespace scddq
