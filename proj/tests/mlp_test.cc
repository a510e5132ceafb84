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
#include <fstream>

#include "doctest.h"
#include "scddq/dqn_agent.h"
#include "scddq/errors.h"
#include "scddq/mlp.h"
#include "scddq/random.h"
#include "test_util.h"

namespace scddq::nn {
namespace {

MlpSpec TinySpec() {
  MlpSpec s;
  s.input_dim = 2;
  s.shared = {{2, 3, Activation::kTanh}};
  s.heads = {{"out", {{3, 1, Activation::kLinear}}, LossKind::kMse}};
  return s;
}

// Three heads covering every loss, with a hidden layer inside one head.
MlpSpec MixedSpec(int in, int hidden, int classes) {
  return MlpSpec::Build(in, {hidden}, 0,
                        {{"cls", {{0, classes, Activation::kSoftmax}}, LossKind::kCrossEntropy},
                         {"reg", {{0, 2, Activation::kLinear}}, LossKind::kMse},
                         {"bin", {{0, 1, Activation::kSigmoid}}, LossKind::kBinaryCrossEntropy}});
}

Matrix RandomMatrix(Rng& rng, int r, int c, double scale = 1.0) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.Uniform(-scale, scale);
  return m;
}

TrainBatch MixedBatch(Rng& rng, int rows, int in, int classes) {
  TrainBatch b;
  b.inputs = RandomMatrix(rng, rows, in);
  Matrix onehot = Matrix::Zero(rows, classes);
  Matrix weights = Matrix::Zero(rows, classes);
  Matrix bin(rows, 1);
  for (int i = 0; i < rows; ++i) {
    onehot(i, static_cast<int>(rng.Below(classes))) = 1.0;
    weights(i, 0) = rng.Uniform(0.0, 2.0);
    bin(i, 0) = rng.Bernoulli(0.5) ? 1.0 : 0.0;
  }
  Matrix mask = RandomMatrix(rng, rows, 2).cwiseAbs();
  b.targets = {HeadTarget{onehot, weights}, HeadTarget{RandomMatrix(rng, rows, 2), mask},
               HeadTarget{bin, {}}};
  return b;
}

TEST_CASE("parameter count of the Q network") {
  const MlpModel q(QNetSpec(29, 80), 1);
  const size_t expected = (129 * 80 + 80) + (80 * 29 + 29);
  CHECK(q.ParameterCount() == expected);
  CHECK(q.FlatParameters().size() == static_cast<Eigen::Index>(expected));
}

TEST_CASE("initialization is deterministic and Glorot-bounded") {
  const MlpSpec spec = QNetSpec(29, 80);
  const MlpModel a(spec, 5), b(spec, 5), c(spec, 6);
  CHECK(a.FlatParameters() == b.FlatParameters());
  CHECK(a.ParameterHash() == b.ParameterHash());
  CHECK(a.FlatParameters() != c.FlatParameters());
  const double limit = std::sqrt(6.0 / (129 + 80));
  CHECK(a.shared_layers()[0].weights.cwiseAbs().maxCoeff() <= limit);
  CHECK(a.shared_layers()[0].bias.isZero());
}

TEST_CASE("invalid specs are rejected") {
  MlpSpec s = TinySpec();
  s.input_dim = 0;
  s.shared[0].input_dim = 0;
  CHECK_THROWS_AS(MlpModel(s, 1), SpecError);
  s = TinySpec();
  s.heads[0].layers[0].input_dim = 4;
  CHECK_THROWS_AS(MlpModel(s, 1), SpecError);
  s = TinySpec();
  s.heads[0].loss = LossKind::kCrossEntropy;
  CHECK_THROWS_AS(MlpModel(s, 1), SpecError);
}

TEST_CASE("zero weights output the bias") {
  MlpModel m(TinySpec(), 1);
  m.SetFlatParameters(Vector::Zero(static_cast<Eigen::Index>(m.ParameterCount())));
  m.mutable_head_layers()[0][0].bias[0] = 0.75;
  Rng rng(3);
  const Matrix out = m.Forward(RandomMatrix(rng, 5, 2))[0];
  for (int i = 0; i < 5; ++i) CHECK(out(i, 0) == 0.75);
}

TEST_CASE("forward pass matches a hand computation") {
  MlpModel m(TinySpec(), 1);
  auto& h = m.mutable_shared_layers()[0];
  h.weights << 0.5, -0.25, 0.1, 0.2, -0.3, 0.4;
  h.bias << 0.05, -0.1, 0.2;
  auto& o = m.mutable_head_layers()[0][0];
  o.weights << 1.0, -2.0, 0.5;
  o.bias << 0.3;
  Matrix x(1, 2);
  x << 0.8, -0.6;
  const double h0 = std::tanh(0.5 * 0.8 - 0.25 * -0.6 + 0.05);
  const double h1 = std::tanh(0.1 * 0.8 + 0.2 * -0.6 - 0.1);
  const double h2 = std::tanh(-0.3 * 0.8 + 0.4 * -0.6 + 0.2);
  const double y = 1.0 * h0 - 2.0 * h1 + 0.5 * h2 + 0.3;
  CHECK(std::abs(m.Forward(x)[0](0, 0) - y) < 1e-12);
}

TEST_CASE("softmax rows sum to one and sigmoid stays in range") {
  const MlpModel m(MixedSpec(6, 8, 5), 2);
  Rng rng(4);
  const auto out = m.Forward(RandomMatrix(rng, 12, 6, 50.0));
  for (int i = 0; i < 12; ++i) {
    CHECK(std::abs(out[0].row(i).sum() - 1.0) < 1e-12);
    CHECK(out[0].row(i).minCoeff() >= 0.0);
    CHECK(out[2](i, 0) >= 0.0);
    CHECK(out[2](i, 0) <= 1.0);
  }
}

TEST_CASE("analytic gradients match finite differences") {
  Rng rng(11);
  for (int trial = 0; trial < 24; ++trial) {
    const int in = 1 + static_cast<int>(rng.Below(5));
    const int hidden = 1 + static_cast<int>(rng.Below(6));
    const int classes = 2 + static_cast<int>(rng.Below(4));
    MlpSpec spec = MixedSpec(in, hidden, classes);
    if (trial % 2 == 1) spec = MlpSpec::Build(in, {hidden, hidden}, 3, spec.heads);
    MlpModel m(spec, rng.NextU64());
    const TrainBatch batch = MixedBatch(rng, 1 + static_cast<int>(rng.Below(6)), in, classes);
    Vector grad;
    m.LossAndGradient(batch, &grad);
    const Vector p = m.FlatParameters();
    const double h = 1e-5;
    double worst = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      Vector q = p;
      q[k] += h;
      m.SetFlatParameters(q);
      const double up = m.Loss(batch);
      q[k] -= 2 * h;
      m.SetFlatParameters(q);
      const double down = m.Loss(batch);
      const double numeric = (up - down) / (2 * h);
      worst = std::max(worst, std::abs(numeric - grad[k]) / std::max(1.0, std::abs(numeric)));
    }
    m.SetFlatParameters(p);
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("masked and untrained heads contribute nothing") {
  MlpModel m(MixedSpec(3, 4, 3), 8);
  Rng rng(8);
  TrainBatch b = MixedBatch(rng, 4, 3, 3);
  b.targets[0].reset();
  b.targets[2].reset();
  b.targets[1]->mask = Matrix::Zero(4, 2);
  Vector grad;
  CHECK(m.LossAndGradient(b, &grad) == 0.0);
  CHECK(grad.isZero());
}

TEST_CASE("RMSProp fits a small regression") {
  MlpModel m(MlpSpec::Build(3, {16}, 0, {{"y", {{0, 1, Activation::kLinear}}, LossKind::kMse}}), 9);
  Rng rng(9);
  TrainBatch b;
  b.inputs = RandomMatrix(rng, 4, 3);
  Matrix y(4, 1);
  for (int i = 0; i < 4; ++i) y(i, 0) = std::sin(2 * b.inputs(i, 0)) + b.inputs(i, 1) * b.inputs(i, 2);
  b.targets = {HeadTarget{y, {}}};
  const double initial = m.Loss(b);
  for (int step = 0; step < 200; ++step) m.TrainMinibatch(b, 0.01);
  CHECK(m.Loss(b) < 0.01 * initial);
  CHECK(m.steps() == 200);
}

TEST_CASE("zero learning rate leaves parameters unchanged") {
  MlpModel m(MixedSpec(3, 4, 3), 10);
  Rng rng(10);
  const Vector before = m.FlatParameters();
  m.TrainMinibatch(MixedBatch(rng, 5, 3, 3), 0.0);
  CHECK(m.FlatParameters() == before);
}

TEST_CASE("non-finite inputs raise NumericError") {
  MlpModel m(TinySpec(), 1);
  TrainBatch b;
  b.inputs = Matrix::Constant(1, 2, std::nan(""));
  b.targets = {HeadTarget{Matrix::Zero(1, 1), {}}};
  CHECK_THROWS_AS(m.TrainMinibatch(b, 0.1), NumericError);
}

TEST_CASE("bad shapes raise ShapeError") {
  const MlpModel m(TinySpec(), 1);
  CHECK_THROWS_AS(m.Forward(Matrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("checkpoints round-trip and reject corruption") {
  scddq::testing::TempDir dir;
  MlpModel m(MixedSpec(4, 6, 3), 12);
  Rng rng(12);
  for (int i = 0; i < 5; ++i) m.TrainMinibatch(MixedBatch(rng, 4, 4, 3), 0.01);
  const std::string path = dir.File("m.json");
  SaveModel(m, path);
  const MlpModel back = LoadModel(path, m.spec());
  CHECK(back.FlatParameters() == m.FlatParameters());
  CHECK(back.FlatRmsPropState() == m.FlatRmsPropState());
  CHECK(back.steps() == m.steps());
  const Matrix x = RandomMatrix(rng, 3, 4);
  CHECK(back.Forward(x)[1] == m.Forward(x)[1]);
  CHECK_THROWS_AS(LoadModel(path, TinySpec()), FormatError);

  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string cut = dir.File("cut.json");
  std::ofstream(cut) << text.substr(0, text.size() / 2);
  CHECK_THROWS_AS(LoadModel(cut), FormatError);

  nlohmann::json j = m.ToJson();
  j["version"] = kCheckpointVersion + 1;
  CHECK_THROWS_AS(MlpModel::FromJson(j), FormatError);
  j = m.ToJson();
  j["spec_hash"] = "0000000000000000";
  CHECK_THROWS_WITH_AS(MlpModel::FromJson(j), doctest::Contains("expected"), FormatError);
  j = m.ToJson();
  j["parameters"].erase(0);
  CHECK_THROWS_AS(MlpModel::FromJson(j), FormatError);
}

TEST_CASE("copying parameters leaves optimizer state alone") {
  MlpModel a(MixedSpec(3, 4, 3), 1), b(MixedSpec(3, 4, 3), 2);
  Rng rng(1);
  b.TrainMinibatch(MixedBatch(rng, 3, 3, 3), 0.01);
  const Vector acc = b.FlatRmsPropState();
  b.CopyParametersFrom(a);
  CHECK(b.FlatParameters() == a.FlatParameters());
  CHECK(b.FlatRmsPropState() == acc);
  const MlpModel c(TinySpec(), 1);
  CHECK_THROWS_AS(b.CopyParametersFrom(c), SpecError);
}

}  // namespace
}  // namespace scddq::nn
