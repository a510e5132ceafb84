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

// Small dense multilayer perceptrons with a shared trunk and named output
// heads, trained by backpropagation and RMSProp.

#ifndef SCDDQ_MLP_H_
#define SCDDQ_MLP_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

namespace scddq::nn {

using Matrix = Eigen::MatrixXd;  // rows are samples
using Vector = Eigen::VectorXd;

enum class Activation { kTanh, kLinear, kSoftmax, kSigmoid };
enum class LossKind { kMse, kCrossEntropy, kBinaryCrossEntropy };

struct LayerSpec {
  int input_dim = 0;
  int output_dim = 0;
  Activation activation = Activation::kLinear;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct HeadSpec {
  std::string name;
  std::vector<LayerSpec> layers;
  LossKind loss = LossKind::kMse;

  friend bool operator==(const HeadSpec&, const HeadSpec&) = default;
};

struct MlpSpec {
  int input_dim = 0;
  std::vector<LayerSpec> shared;
  std::vector<HeadSpec> heads;

  friend bool operator==(const MlpSpec&, const MlpSpec&) = default;

  // Convenience: input -> tanh hidden layers -> one head per (name, dim,
  // activation, loss), each head optionally preceded by its own tanh layer.
  static MlpSpec Build(int input_dim, const std::vector<int>& shared_hidden,
                       int head_hidden, const std::vector<HeadSpec>& heads);
};

// Throws SpecError on non-positive dims, broken chaining, or an output
// activation that does not fit its loss (softmax needs cross-entropy, sigmoid
// heads with binary cross-entropy, etc.).
void ValidateSpec(const MlpSpec& spec);

nlohmann::json SpecToJson(const MlpSpec& spec);
MlpSpec SpecFromJson(const nlohmann::json& j);
// FNV-1a of the canonical spec JSON.
uint64_t SpecHash(const MlpSpec& spec);

struct RmsPropConfig {
  double decay = 0.9;
  double epsilon = 1e-8;
};

struct HeadTarget {
  Matrix target;
  // Elementwise loss weights (same shape as target). Empty means all ones.
  // Cross-entropy heads use the first column as a per-row weight.
  Matrix mask;
};

struct TrainBatch {
  Matrix inputs;
  // One entry per head, in spec order; nullopt leaves that head untrained.
  std::vector<std::optional<HeadTarget>> targets;
};

struct DenseLayer {
  Matrix weights;  // output_dim x input_dim
  Vector bias;
};

class MlpModel {
 public:
  // Glorot-uniform weights, zero biases.
  MlpModel(MlpSpec spec, uint64_t seed);

  const MlpSpec& spec() const { return spec_; }
  int num_heads() const { return static_cast<int>(spec_.heads.size()); }
  int HeadIndex(const std::string& name) const;

  // Per-head outputs with output activations applied. Pure.
  std::vector<Matrix> Forward(const Matrix& inputs) const;

  // Summed per-head losses, each averaged over the batch rows.
  double Loss(const TrainBatch& batch) const;

  // Loss and gradient flattened in FlatParameters() order.
  double LossAndGradient(const TrainBatch& batch, Vector* gradient) const;

  // One RMSProp step; returns the pre-step loss. Throws NumericError when the
  // loss or the updated parameters are not finite.
  double TrainMinibatch(const TrainBatch& batch, double learning_rate);

  size_t ParameterCount() const;
  Vector FlatParameters() const;
  void SetFlatParameters(const Vector& params);
  Vector FlatRmsPropState() const;
  void SetFlatRmsPropState(const Vector& acc);
  // Copies weights only (not optimizer state). Specs must match.
  void CopyParametersFrom(const MlpModel& other);
  uint64_t ParameterHash() const;

  long steps() const { return steps_; }
  const RmsPropConfig& rmsprop() const { return rmsprop_; }
  void set_rmsprop(RmsPropConfig c) { rmsprop_ = c; }

  const std::vector<DenseLayer>& shared_layers() const { return shared_; }
  const std::vector<std::vector<DenseLayer>>& head_layers() const { return heads_; }
  std::vector<DenseLayer>& mutable_shared_layers() { return shared_; }
  std::vector<std::vector<DenseLayer>>& mutable_head_layers() { return heads_; }

  nlohmann::json ToJson() const;
  // Throws FormatError on a version mismatch, a spec-hash mismatch, or a
  // parameter count that does not fit the spec.
  static MlpModel FromJson(const nlohmann::json& j);

 private:
  MlpModel() = default;
  void CheckBatch(const TrainBatch& batch) const;
  double Backprop(const TrainBatch& batch, std::vector<DenseLayer>* shared_grad,
                  std::vector<std::vector<DenseLayer>>* head_grad) const;

  MlpSpec spec_;
  std::vector<DenseLayer> shared_;
  std::vector<std::vector<DenseLayer>> heads_;
  std::vector<DenseLayer> shared_acc_;
  std::vector<std::vector<DenseLayer>> heads_acc_;
  RmsPropConfig rmsprop_;
  long steps_ = 0;
};

inline constexpr int kCheckpointVersion = 1;

void SaveModel(const MlpModel& model, const std::string& path);
MlpModel LoadModel(const std::string& path);
// Additionally requires the stored spec to equal `expected`.
MlpModel LoadModel(const std::string& path, const MlpSpec& expected);

}  // namespace scddq::nn

#endif  // SCDDQ_MLP_H_
