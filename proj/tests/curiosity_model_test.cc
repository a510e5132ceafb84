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

#include <cmath>

#include "doctest.h"
#include "scddq/curiosity_model.h"
#include "scddq/errors.h"
#include "test_util.h"

namespace scddq {
namespace {

StateVector RandomState(Rng& rng, double p = 0.1) {
  StateVector s = StateVector::Zero(kStateDim);
  for (int i = 0; i < kStateDim; ++i) s[i] = rng.Bernoulli(p) ? 1.0 : 0.0;
  return s;
}

// RMSProp at the training rate of 0.001 jitters around 0.05 near a fixed
// point, so convergence checks use a smaller step.
CuriosityConfig SlowConfig() {
  CuriosityConfig c;
  c.learning_rate = 3e-4;
  return c;
}

double MeanTarget(const CuriosityModel& cm, const ReplayBuffer& buf) {
  double total = 0.0;
  for (size_t i = 0; i < buf.size(); ++i) {
    const Experience& e = buf.at(i);
    total += PredictionError(e.s_next, cm.Scores(e.s).predicted_next.row(e.a).transpose());
  }
  return total / static_cast<double>(buf.size());
}

TEST_CASE("scores are nonnegative with one row per action") {
  const CuriosityModel cm(CuriosityConfig{}, 1);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const CuriosityScores c = cm.Scores(RandomState(rng, 0.5));
    CHECK(c.values.size() == 29);
    CHECK(c.values.minCoeff() >= 0.0);
    CHECK(c.predicted_next.rows() == 29);
    CHECK(c.predicted_next.cols() == kStateDim);
  }
  CHECK_THROWS_AS(cm.Scores(StateVector::Zero(3)), ShapeError);
}

TEST_CASE("a zero-weight net scores every action with the clamped bias") {
  for (double bias : {0.4, -0.4}) {
    CuriosityModel cm(CuriosityConfig{}, 2);
    nn::MlpModel& net = cm.mutable_net();
    net.SetFlatParameters(nn::Vector::Zero(static_cast<Eigen::Index>(net.ParameterCount())));
    net.mutable_head_layers()[1].back().bias[0] = bias;
    Rng rng(2);
    const CuriosityScores c = cm.Scores(RandomState(rng));
    CHECK(c.values == Eigen::VectorXd::Constant(29, std::max(0.0, bias)));
  }
}

TEST_CASE("prediction error is the squared distance") {
  Rng rng(3);
  const StateVector s = RandomState(rng);
  CHECK(PredictionError(s, s) == 0.0);
  StateVector t = s;
  for (int i : {0, 17, 60, 128}) t[i] = 1.0 - t[i];
  CHECK(PredictionError(s, t) == 4.0);
  CHECK_THROWS_AS(PredictionError(s, StateVector::Zero(4)), ShapeError);
}

TEST_CASE("unpredictable actions score higher than predictable ones") {
  Rng rng(4);
  const StateVector s = RandomState(rng);
  const StateVector fixed = RandomState(rng);
  ReplayBuffer real(BufferKind::kReal);
  for (int i = 0; i < 400; ++i) {
    const bool noisy = i % 2 == 0;
    real.Store({s, noisy ? 3 : 7, -1.0, 0, noisy ? RandomState(rng, 0.5) : fixed, false});
  }
  ReplayBuffer sim(BufferKind::kSimulated);
  CuriosityModel cm(CuriosityConfig{}, 4);
  cm.Train(real, sim, 1500, rng);
  const CuriosityScores c = cm.Scores(s);
  CHECK(c.values[3] > c.values[7]);
}

TEST_CASE("a deterministic transition stops being curious") {
  Rng rng(5);
  ReplayBuffer real(BufferKind::kReal);
  const Experience e{RandomState(rng), 11, -1.0, 0, RandomState(rng), false};
  real.Store(e);
  ReplayBuffer sim(BufferKind::kSimulated);
  CuriosityModel cm(SlowConfig(), 5);
  for (int i = 0; i < 1000; ++i) cm.Train(real, sim, 1, rng);
  CHECK(cm.Scores(e.s).values[11] < 0.05);
}

TEST_CASE("mean target does not grow on a deterministic corpus") {
  Rng rng(6);
  ReplayBuffer sim(BufferKind::kSimulated);
  for (int i = 0; i < 20; ++i) {
    const StateVector s = RandomState(rng);
    sim.Store({s, static_cast<int>(rng.Below(29)), -1.0, 0, RandomState(rng), false});
  }
  ReplayBuffer real(BufferKind::kReal);
  CuriosityModel cm(SlowConfig(), 6);
  const double initial = MeanTarget(cm, sim);
  double previous = initial;
  // Checkpoints at 25, 50, ..., 3200 steps; a plateau may wobble within 0.05.
  for (int done = 0, steps = 25; steps <= 3200; done = steps, steps *= 2) {
    cm.Train(real, sim, steps - done, rng);
    const double now = MeanTarget(cm, sim);
    CHECK(now <= previous + 0.05);
    previous = now;
  }
  CHECK(previous < 0.01 * initial);
}

TEST_CASE("curiosity trains on either buffer and warns when both are empty") {
  Rng rng(7);
  ReplayBuffer real(BufferKind::kReal), sim(BufferKind::kSimulated);
  CuriosityModel cm(CuriosityConfig{}, 7);
  {
    scddq::testing::WarningCapture warnings;
    const uint64_t before = cm.net().ParameterHash();
    CHECK_FALSE(cm.Train(real, sim, 2, rng).has_value());
    CHECK(cm.net().ParameterHash() == before);
    CHECK(warnings.messages().size() == 1);
  }
  sim.Store({RandomState(rng), 0, -1.0, 0, RandomState(rng), false});
  const auto loss = cm.Train(real, sim, 2, rng);
  REQUIRE(loss.has_value());
  CHECK(std::isfinite(*loss));
}

}  // namespace
}  // namespace scddq
