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

#include "scddq/dqn_agent.h"

#include <cmath>

#include "scddq/errors.h"
#include "scddq/log.h"

namespace scddq {

nn::MlpSpec QNetSpec(int num_actions, int hidden) {
  return nn::MlpSpec::Build(
      kStateDim, {hidden}, 0,
      {{"q", {{0, num_actions, nn::Activation::kLinear}}, nn::LossKind::kMse}});
}

int ArgmaxLowest(const Eigen::VectorXd& v) {
  if (v.size() == 0) throw InvalidArgument("argmax of an empty vector");
  int best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = static_cast<int>(i);
  }
  return best;
}

int BatchesFor(size_t new_experiences, int batch_size) {
  return static_cast<int>((new_experiences + batch_size - 1) / batch_size);
}

DqnAgent::DqnAgent(DqnConfig config, uint64_t seed)
    : config_(config),
      q_net_(QNetSpec(config.num_actions, config.hidden), seed),
      target_net_(q_net_) {
  set_epsilon(config.epsilon);
  if (config.batch_size <= 0) throw InvalidArgument("batch size must be positive");
}

void DqnAgent::set_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw InvalidArgument("epsilon must lie in [0, 1]");
  }
  config_.epsilon = epsilon;
}

Eigen::VectorXd DqnAgent::QValues(const StateVector& s) const {
  if (s.size() != kStateDim) {
    throw ShapeError("state has " + std::to_string(s.size()) + " entries, expected " +
                     std::to_string(kStateDim));
  }
  return q_net_.Forward(s.transpose())[0].row(0).transpose();
}

int DqnAgent::SelectEpsGreedy(const StateVector& s, Rng& rng, double epsilon) const {
  if (rng.Uniform() < epsilon) return static_cast<int>(rng.Below(config_.num_actions));
  return ArgmaxLowest(QValues(s));
}

int DqnAgent::SelectWithBonus(const StateVector& s, const Eigen::VectorXd& bonus,
                              Rng& rng, double epsilon) const {
  if (bonus.size() != config_.num_actions) throw ShapeError("bonus vector has wrong length");
  if (rng.Uniform() < epsilon) return static_cast<int>(rng.Below(config_.num_actions));
  return ArgmaxLowest(QValues(s) + bonus);
}

double DqnAgent::TargetValue(const Experience& e) const {
  if (e.done) return e.r;
  return e.r + config_.gamma * target_net_.Forward(e.s_next.transpose())[0].row(0).maxCoeff();
}

std::optional<double> DqnAgent::Update(const ReplayBuffer& buffer, int n_batches, Rng& rng) {
  if (buffer.empty()) {
    LogWarning("DQN update skipped: replay buffer is empty");
    return std::nullopt;
  }
  if (n_batches <= 0) return std::nullopt;
  const int b = config_.batch_size;
  double total = 0.0;
  for (int k = 0; k < n_batches; ++k) {
    const auto batch = buffer.Sample(static_cast<size_t>(b), rng);
    nn::Matrix states(b, kStateDim), next(b, kStateDim);
    for (int i = 0; i < b; ++i) {
      states.row(i) = batch[i]->s.transpose();
      next.row(i) = batch[i]->s_next.transpose();
    }
    const nn::Matrix next_q = target_net_.Forward(next)[0];
    nn::HeadTarget target{nn::Matrix::Zero(b, config_.num_actions),
                          nn::Matrix::Zero(b, config_.num_actions)};
    for (int i = 0; i < b; ++i) {
      const Experience& e = *batch[i];
      if (e.a < 0 || e.a >= config_.num_actions) {
        throw ContractViolation("experience action index out of range");
      }
      const double y = e.done ? e.r : e.r + config_.gamma * next_q.row(i).maxCoeff();
      target.target(i, e.a) = y;
      target.mask(i, e.a) = 1.0;
    }
    nn::TrainBatch tb{states, {target}};
    total += q_net_.TrainMinibatch(tb, config_.learning_rate);
    ++update_steps_;
  }
  return total / n_batches;
}

void DqnAgent::SyncTarget() { target_net_.CopyParametersFrom(q_net_); }

nlohmann::json DqnAgent::ToJson() const {
  return {{"q_net", q_net_.ToJson()},
          {"target_net", target_net_.ToJson()},
          {"epsilon", config_.epsilon},
          {"gamma", config_.gamma},
          {"learning_rate", config_.learning_rate},
          {"batch_size", config_.batch_size},
          {"update_steps", update_steps_}};
}

DqnAgent DqnAgent::FromJson(const nlohmann::json& j) {
  try {
    nn::MlpModel q = nn::MlpModel::FromJson(j.at("q_net"));
    nn::MlpModel t = nn::MlpModel::FromJson(j.at("target_net"));
    if (!(q.spec() == t.spec())) throw FormatError("q_net and target_net specs differ");
    DqnConfig c;
    c.num_actions = q.spec().heads[0].layers.back().output_dim;
    c.hidden = q.spec().shared.at(0).output_dim;
    c.epsilon = j.at("epsilon").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.batch_size = j.at("batch_size").get<int>();
    DqnAgent agent(c, 0);
    agent.q_net_ = std::move(q);
    agent.target_net_ = std::move(t);
    agent.update_steps_ = j.at("update_steps").get<long>();
    return agent;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed agent checkpoint: ") + e.what());
  }
}

}  // namespace scddq
