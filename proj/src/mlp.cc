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

#include "scddq/mlp.h"

#include <cmath>
#include <cstring>
#include <functional>
#include <set>

#include "scddq/errors.h"
#include "scddq/json_io.h"
#include "scddq/random.h"

namespace scddq::nn {
namespace {

const char* ActivationName(Activation a) {
  switch (a) {
    case Activation::kTanh: return "tanh";
    case Activation::kLinear: return "linear";
    case Activation::kSoftmax: return "softmax";
    case Activation::kSigmoid: return "sigmoid";
  }
  return "?";
}

Activation ActivationFromName(const std::string& s) {
  if (s == "tanh") return Activation::kTanh;
  if (s == "linear") return Activation::kLinear;
  if (s == "softmax") return Activation::kSoftmax;
  if (s == "sigmoid") return Activation::kSigmoid;
  throw FormatError("unknown activation '" + s + "'");
}

const char* LossName(LossKind k) {
  switch (k) {
    case LossKind::kMse: return "mse";
    case LossKind::kCrossEntropy: return "cross_entropy";
    case LossKind::kBinaryCrossEntropy: return "binary_cross_entropy";
  }
  return "?";
}

LossKind LossFromName(const std::string& s) {
  if (s == "mse") return LossKind::kMse;
  if (s == "cross_entropy") return LossKind::kCrossEntropy;
  if (s == "binary_cross_entropy") return LossKind::kBinaryCrossEntropy;
  throw FormatError("unknown loss kind '" + s + "'");
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

Matrix Affine(const DenseLayer& layer, const Matrix& input) {
  Matrix z = input * layer.weights.transpose();
  z.rowwise() += layer.bias.transpose();
  return z;
}

Matrix Activate(Activation a, const Matrix& z) {
  switch (a) {
    case Activation::kTanh:
      return z.array().tanh().matrix();
    case Activation::kLinear:
      return z;
    case Activation::kSigmoid:
      return z.unaryExpr([](double v) { return Sigmoid(v); });
    case Activation::kSoftmax: {
      Matrix out(z.rows(), z.cols());
      for (Eigen::Index r = 0; r < z.rows(); ++r) {
        const double m = z.row(r).maxCoeff();
        out.row(r) = (z.row(r).array() - m).exp().matrix();
        out.row(r) /= out.row(r).sum();
      }
      return out;
    }
  }
  return z;
}

// d(activation)/dz expressed through the activation output.
Matrix ActivationSlope(Activation a, const Matrix& out) {
  switch (a) {
    case Activation::kTanh:
      return (1.0 - out.array().square()).matrix();
    case Activation::kSigmoid:
      return (out.array() * (1.0 - out.array())).matrix();
    default:
      return Matrix::Ones(out.rows(), out.cols());
  }
}

struct StackTrace {
  std::vector<Matrix> inputs;  // input to each layer
  Matrix z_last;               // pre-activation of the final layer
  Matrix output;               // activated output of the final layer
};

StackTrace RunStack(const std::vector<DenseLayer>& layers,
                    const std::vector<LayerSpec>& specs, const Matrix& input) {
  StackTrace t;
  Matrix a = input;
  for (size_t i = 0; i < layers.size(); ++i) {
    t.inputs.push_back(a);
    Matrix z = Affine(layers[i], a);
    a = Activate(specs[i].activation, z);
    if (i + 1 == layers.size()) t.z_last = std::move(z);
  }
  t.output = std::move(a);
  return t;
}

// Backpropagates dZ of the final layer down the stack; returns dL/d(input).
Matrix BackStack(const std::vector<DenseLayer>& layers,
                 const std::vector<LayerSpec>& specs, const StackTrace& trace,
                 Matrix dz, std::vector<DenseLayer>* grads) {
  Matrix da_in;
  for (size_t li = layers.size(); li-- > 0;) {
    const Matrix& a_in = trace.inputs[li];
    (*grads)[li].weights += dz.transpose() * a_in;
    (*grads)[li].bias += dz.colwise().sum().transpose();
    da_in = dz * layers[li].weights;
    if (li > 0) {
      dz = da_in.cwiseProduct(ActivationSlope(specs[li - 1].activation, a_in));
    }
  }
  return da_in;
}

std::vector<DenseLayer> ZerosLike(const std::vector<DenseLayer>& layers) {
  std::vector<DenseLayer> out;
  for (const auto& l : layers) {
    out.push_back({Matrix::Zero(l.weights.rows(), l.weights.cols()),
                   Vector::Zero(l.bias.size())});
  }
  return out;
}

std::vector<DenseLayer> InitLayers(const std::vector<LayerSpec>& specs, Rng* rng) {
  std::vector<DenseLayer> out;
  for (const auto& s : specs) {
    const double bound = std::sqrt(6.0 / (s.input_dim + s.output_dim));
    DenseLayer l{Matrix(s.output_dim, s.input_dim), Vector::Zero(s.output_dim)};
    for (Eigen::Index c = 0; c < l.weights.cols(); ++c) {
      for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
        l.weights(r, c) = rng->Uniform(-bound, bound);
      }
    }
    out.push_back(std::move(l));
  }
  return out;
}

// Visits every DenseLayer of a (shared, heads) pair in flattening order.
template <typename Shared, typename Heads, typename Fn>
void ForEachLayer(Shared& shared, Heads& heads, Fn&& fn) {
  for (auto& l : shared) fn(l);
  for (auto& h : heads) {
    for (auto& l : h) fn(l);
  }
}

nlohmann::json LayerToJson(const LayerSpec& l) {
  return {{"input_dim", l.input_dim},
          {"output_dim", l.output_dim},
          {"activation", ActivationName(l.activation)}};
}

LayerSpec LayerFromJson(const nlohmann::json& j) {
  return {j.at("input_dim").get<int>(), j.at("output_dim").get<int>(),
          ActivationFromName(j.at("activation").get<std::string>())};
}

std::string HexHash(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

MlpSpec MlpSpec::Build(int input_dim, const std::vector<int>& shared_hidden,
                       int head_hidden, const std::vector<HeadSpec>& heads) {
  MlpSpec spec;
  spec.input_dim = input_dim;
  int width = input_dim;
  for (int h : shared_hidden) {
    spec.shared.push_back({width, h, Activation::kTanh});
    width = h;
  }
  for (const auto& head : heads) {
    HeadSpec hs;
    hs.name = head.name;
    hs.loss = head.loss;
    int w = width;
    if (head_hidden > 0) {
      hs.layers.push_back({w, head_hidden, Activation::kTanh});
      w = head_hidden;
    }
    for (const auto& l : head.layers) {
      hs.layers.push_back({w, l.output_dim, l.activation});
      w = l.output_dim;
    }
    spec.heads.push_back(std::move(hs));
  }
  return spec;
}

void ValidateSpec(const MlpSpec& spec) {
  if (spec.input_dim <= 0) {
    throw SpecError("input dimension (fan-in) must be positive, got " +
                    std::to_string(spec.input_dim));
  }
  auto check_layer = [](const LayerSpec& l, int expected_in, const std::string& where) {
    if (l.input_dim <= 0 || l.output_dim <= 0) {
      throw SpecError(where + ": dimensions must be positive");
    }
    if (l.input_dim != expected_in) {
      throw SpecError(where + ": input_dim " + std::to_string(l.input_dim) +
                      " does not chain from " + std::to_string(expected_in));
    }
  };
  int width = spec.input_dim;
  for (size_t i = 0; i < spec.shared.size(); ++i) {
    const std::string where = "shared layer " + std::to_string(i);
    check_layer(spec.shared[i], width, where);
    if (spec.shared[i].activation == Activation::kSoftmax) {
      throw SpecError(where + ": softmax is only allowed on a head output");
    }
    width = spec.shared[i].output_dim;
  }
  if (spec.heads.empty()) throw SpecError("model needs at least one head");
  std::set<std::string> names;
  for (const auto& head : spec.heads) {
    const std::string where = "head '" + head.name + "'";
    if (head.name.empty() || !names.insert(head.name).second) {
      throw SpecError(where + ": head names must be unique and non-empty");
    }
    if (head.layers.empty()) throw SpecError(where + ": no layers");
    int w = width;
    for (size_t i = 0; i < head.layers.size(); ++i) {
      check_layer(head.layers[i], w, where + " layer " + std::to_string(i));
      const bool last = i + 1 == head.layers.size();
      if (!last && head.layers[i].activation == Activation::kSoftmax) {
        throw SpecError(where + ": softmax is only allowed on the output layer");
      }
      w = head.layers[i].output_dim;
    }
    const Activation out = head.layers.back().activation;
    switch (head.loss) {
      case LossKind::kCrossEntropy:
        if (out != Activation::kSoftmax) throw SpecError(where + ": cross_entropy needs softmax");
        break;
      case LossKind::kBinaryCrossEntropy:
        if (out != Activation::kSigmoid) {
          throw SpecError(where + ": binary_cross_entropy needs sigmoid");
        }
        break;
      case LossKind::kMse:
        if (out == Activation::kSoftmax) throw SpecError(where + ": mse on softmax unsupported");
        break;
    }
  }
}

nlohmann::json SpecToJson(const MlpSpec& spec) {
  nlohmann::json shared = nlohmann::json::array();
  for (const auto& l : spec.shared) shared.push_back(LayerToJson(l));
  nlohmann::json heads = nlohmann::json::array();
  for (const auto& h : spec.heads) {
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& l : h.layers) layers.push_back(LayerToJson(l));
    heads.push_back({{"name", h.name}, {"loss", LossName(h.loss)}, {"layers", layers}});
  }
  return {{"input_dim", spec.input_dim}, {"shared", shared}, {"heads", heads}};
}

MlpSpec SpecFromJson(const nlohmann::json& j) {
  try {
    MlpSpec spec;
    spec.input_dim = j.at("input_dim").get<int>();
    for (const auto& l : j.at("shared")) spec.shared.push_back(LayerFromJson(l));
    for (const auto& h : j.at("heads")) {
      HeadSpec hs;
      hs.name = h.at("name").get<std::string>();
      hs.loss = LossFromName(h.at("loss").get<std::string>());
      for (const auto& l : h.at("layers")) hs.layers.push_back(LayerFromJson(l));
      spec.heads.push_back(std::move(hs));
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed model spec: ") + e.what());
  }
}

uint64_t SpecHash(const MlpSpec& spec) { return HashString(SpecToJson(spec).dump()); }

MlpModel::MlpModel(MlpSpec spec, uint64_t seed) : spec_(std::move(spec)) {
  ValidateSpec(spec_);
  Rng rng(DeriveSeed(seed, "mlp-init"));
  shared_ = InitLayers(spec_.shared, &rng);
  for (const auto& h : spec_.heads) heads_.push_back(InitLayers(h.layers, &rng));
  shared_acc_ = ZerosLike(shared_);
  for (const auto& h : heads_) heads_acc_.push_back(ZerosLike(h));
}

int MlpModel::HeadIndex(const std::string& name) const {
  for (size_t i = 0; i < spec_.heads.size(); ++i) {
    if (spec_.heads[i].name == name) return static_cast<int>(i);
  }
  throw InvalidArgument("no head named '" + name + "'");
}

std::vector<Matrix> MlpModel::Forward(const Matrix& inputs) const {
  if (inputs.cols() != spec_.input_dim) {
    throw ShapeError("input width " + std::to_string(inputs.cols()) +
                     " != model input_dim " + std::to_string(spec_.input_dim));
  }
  Matrix trunk = inputs;
  for (size_t i = 0; i < shared_.size(); ++i) {
    trunk = Activate(spec_.shared[i].activation, Affine(shared_[i], trunk));
  }
  std::vector<Matrix> outs;
  outs.reserve(heads_.size());
  for (size_t h = 0; h < heads_.size(); ++h) {
    Matrix a = trunk;
    for (size_t i = 0; i < heads_[h].size(); ++i) {
      a = Activate(spec_.heads[h].layers[i].activation, Affine(heads_[h][i], a));
    }
    outs.push_back(std::move(a));
  }
  return outs;
}

void MlpModel::CheckBatch(const TrainBatch& batch) const {
  if (batch.inputs.cols() != spec_.input_dim) {
    throw ShapeError("batch input width " + std::to_string(batch.inputs.cols()) +
                     " != model input_dim " + std::to_string(spec_.input_dim));
  }
  if (batch.inputs.rows() == 0) throw ShapeError("empty batch");
  if (batch.targets.size() != heads_.size()) {
    throw ShapeError("batch has " + std::to_string(batch.targets.size()) +
                     " head targets, model has " + std::to_string(heads_.size()));
  }
  for (size_t h = 0; h < heads_.size(); ++h) {
    if (!batch.targets[h]) continue;
    const auto& t = *batch.targets[h];
    const int dim = spec_.heads[h].layers.back().output_dim;
    if (t.target.rows() != batch.inputs.rows() || t.target.cols() != dim) {
      throw ShapeError("target shape mismatch for head '" + spec_.heads[h].name + "'");
    }
    if (t.mask.size() != 0 && (t.mask.rows() != t.target.rows() ||
                               t.mask.cols() != t.target.cols())) {
      throw ShapeError("mask shape mismatch for head '" + spec_.heads[h].name + "'");
    }
  }
}

double MlpModel::Backprop(const TrainBatch& batch,
                          std::vector<DenseLayer>* shared_grad,
                          std::vector<std::vector<DenseLayer>>* head_grad) const {
  CheckBatch(batch);
  const double inv_b = 1.0 / static_cast<double>(batch.inputs.rows());
  const StackTrace trunk = RunStack(shared_, spec_.shared, batch.inputs);
  const Matrix& trunk_out = shared_.empty() ? batch.inputs : trunk.output;
  Matrix d_trunk = Matrix::Zero(trunk_out.rows(), trunk_out.cols());

  double loss = 0.0;
  for (size_t h = 0; h < heads_.size(); ++h) {
    if (!batch.targets[h]) continue;
    const HeadSpec& hs = spec_.heads[h];
    const HeadTarget& ht = *batch.targets[h];
    const Matrix mask = ht.mask.size() ? ht.mask : Matrix::Ones(ht.target.rows(), ht.target.cols());
    const StackTrace t = RunStack(heads_[h], hs.layers, trunk_out);
    Matrix dz;
    switch (hs.loss) {
      case LossKind::kMse: {
        const Matrix diff = t.output - ht.target;
        loss += mask.cwiseProduct(diff.cwiseProduct(diff)).sum() * inv_b;
        dz = (2.0 * inv_b) * mask.cwiseProduct(diff).cwiseProduct(
                                 ActivationSlope(hs.layers.back().activation, t.output));
        break;
      }
      case LossKind::kCrossEntropy: {
        dz.resize(t.z_last.rows(), t.z_last.cols());
        for (Eigen::Index r = 0; r < t.z_last.rows(); ++r) {
          const double w = mask(r, 0);
          const double m = t.z_last.row(r).maxCoeff();
          const double lse = m + std::log((t.z_last.row(r).array() - m).exp().sum());
          const double tsum = ht.target.row(r).sum();
          loss -= w * inv_b * (ht.target.row(r).array() * (t.z_last.row(r).array() - lse)).sum();
          dz.row(r) = (w * inv_b) * (t.output.row(r) * tsum - ht.target.row(r));
        }
        break;
      }
      case LossKind::kBinaryCrossEntropy: {
        const Matrix sp = t.z_last.unaryExpr([](double v) { return Softplus(v); });
        loss += mask.cwiseProduct(sp - ht.target.cwiseProduct(t.z_last)).sum() * inv_b;
        dz = inv_b * mask.cwiseProduct(t.output - ht.target);
        break;
      }
    }
    Matrix d_in = BackStack(heads_[h], hs.layers, t, std::move(dz), &(*head_grad)[h]);
    d_trunk += d_in;
  }
  if (!shared_.empty()) {
    Matrix dz = d_trunk.cwiseProduct(ActivationSlope(spec_.shared.back().activation, trunk.output));
    BackStack(shared_, spec_.shared, trunk, std::move(dz), shared_grad);
  }
  return loss;
}

double MlpModel::Loss(const TrainBatch& batch) const {
  auto sg = ZerosLike(shared_);
  std::vector<std::vector<DenseLayer>> hg;
  for (const auto& h : heads_) hg.push_back(ZerosLike(h));
  return Backprop(batch, &sg, &hg);
}

double MlpModel::LossAndGradient(const TrainBatch& batch, Vector* gradient) const {
  auto sg = ZerosLike(shared_);
  std::vector<std::vector<DenseLayer>> hg;
  for (const auto& h : heads_) hg.push_back(ZerosLike(h));
  const double loss = Backprop(batch, &sg, &hg);
  gradient->resize(static_cast<Eigen::Index>(ParameterCount()));
  Eigen::Index pos = 0;
  ForEachLayer(sg, hg, [&](const DenseLayer& l) {
    gradient->segment(pos, l.weights.size()) =
        Eigen::Map<const Vector>(l.weights.data(), l.weights.size());
    pos += l.weights.size();
    gradient->segment(pos, l.bias.size()) = l.bias;
    pos += l.bias.size();
  });
  return loss;
}

double MlpModel::TrainMinibatch(const TrainBatch& batch, double learning_rate) {
  auto sg = ZerosLike(shared_);
  std::vector<std::vector<DenseLayer>> hg;
  for (const auto& h : heads_) hg.push_back(ZerosLike(h));
  const double loss = Backprop(batch, &sg, &hg);
  if (!std::isfinite(loss)) throw NumericError("non-finite training loss", steps_);

  const double rho = rmsprop_.decay, eps = rmsprop_.epsilon;
  auto update = [&](DenseLayer& p, DenseLayer& g, DenseLayer& acc) {
    acc.weights = rho * acc.weights + (1.0 - rho) * g.weights.cwiseProduct(g.weights);
    acc.bias = rho * acc.bias + (1.0 - rho) * g.bias.cwiseProduct(g.bias);
    p.weights.array() -= learning_rate * g.weights.array() / (acc.weights.array() + eps).sqrt();
    p.bias.array() -= learning_rate * g.bias.array() / (acc.bias.array() + eps).sqrt();
  };
  for (size_t i = 0; i < shared_.size(); ++i) update(shared_[i], sg[i], shared_acc_[i]);
  for (size_t h = 0; h < heads_.size(); ++h) {
    for (size_t i = 0; i < heads_[h].size(); ++i) update(heads_[h][i], hg[h][i], heads_acc_[h][i]);
  }
  ++steps_;
  bool finite = true;
  ForEachLayer(shared_, heads_, [&](const DenseLayer& l) {
    finite = finite && l.weights.allFinite() && l.bias.allFinite();
  });
  if (!finite) throw NumericError("non-finite parameters after update", steps_);
  return loss;
}

size_t MlpModel::ParameterCount() const {
  size_t n = 0;
  ForEachLayer(shared_, heads_, [&](const DenseLayer& l) {
    n += static_cast<size_t>(l.weights.size() + l.bias.size());
  });
  return n;
}

namespace {

Vector Flatten(const std::vector<DenseLayer>& shared,
               const std::vector<std::vector<DenseLayer>>& heads, size_t n) {
  Vector out(static_cast<Eigen::Index>(n));
  Eigen::Index pos = 0;
  ForEachLayer(shared, heads, [&](const DenseLayer& l) {
    out.segment(pos, l.weights.size()) = Eigen::Map<const Vector>(l.weights.data(), l.weights.size());
    pos += l.weights.size();
    out.segment(pos, l.bias.size()) = l.bias;
    pos += l.bias.size();
  });
  return out;
}

void Unflatten(const Vector& v, std::vector<DenseLayer>* shared,
               std::vector<std::vector<DenseLayer>>* heads) {
  Eigen::Index pos = 0;
  ForEachLayer(*shared, *heads, [&](DenseLayer& l) {
    Eigen::Map<Vector>(l.weights.data(), l.weights.size()) = v.segment(pos, l.weights.size());
    pos += l.weights.size();
    l.bias = v.segment(pos, l.bias.size());
    pos += l.bias.size();
  });
}

}  // namespace

Vector MlpModel::FlatParameters() const { return Flatten(shared_, heads_, ParameterCount()); }

void MlpModel::SetFlatParameters(const Vector& params) {
  if (static_cast<size_t>(params.size()) != ParameterCount()) {
    throw ShapeError("flat parameter vector has wrong length");
  }
  Unflatten(params, &shared_, &heads_);
}

Vector MlpModel::FlatRmsPropState() const {
  return Flatten(shared_acc_, heads_acc_, ParameterCount());
}

void MlpModel::SetFlatRmsPropState(const Vector& acc) {
  if (static_cast<size_t>(acc.size()) != ParameterCount()) {
    throw ShapeError("flat optimizer state has wrong length");
  }
  Unflatten(acc, &shared_acc_, &heads_acc_);
}

void MlpModel::CopyParametersFrom(const MlpModel& other) {
  if (!(other.spec_ == spec_)) throw SpecError("cannot copy parameters across specs");
  shared_ = other.shared_;
  heads_ = other.heads_;
}

uint64_t MlpModel::ParameterHash() const {
  const Vector p = FlatParameters();
  return HashString(std::string_view(reinterpret_cast<const char*>(p.data()),
                                     static_cast<size_t>(p.size()) * sizeof(double)));
}

nlohmann::json MlpModel::ToJson() const {
  const Vector p = FlatParameters();
  const Vector a = FlatRmsPropState();
  return {{"format", "scddq-mlp"},
          {"version", kCheckpointVersion},
          {"spec", SpecToJson(spec_)},
          {"spec_hash", HexHash(SpecHash(spec_))},
          {"parameters", std::vector<double>(p.data(), p.data() + p.size())},
          {"rmsprop_accumulators", std::vector<double>(a.data(), a.data() + a.size())},
          {"rmsprop_decay", rmsprop_.decay},
          {"rmsprop_epsilon", rmsprop_.epsilon},
          {"steps", steps_}};
}

MlpModel MlpModel::FromJson(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != "scddq-mlp") {
    throw FormatError("not a model checkpoint");
  }
  const int version = j.value("version", -1);
  if (version != kCheckpointVersion) {
    throw FormatError("checkpoint version mismatch: expected " +
                      std::to_string(kCheckpointVersion) + ", got " +
                      std::to_string(version));
  }
  try {
    MlpModel m;
    m.spec_ = SpecFromJson(j.at("spec"));
    try {
      ValidateSpec(m.spec_);
    } catch (const SpecError& e) {
      throw FormatError(std::string("invalid stored spec: ") + e.what());
    }
    const std::string expected = j.at("spec_hash").get<std::string>();
    const std::string actual = HexHash(SpecHash(m.spec_));
    if (expected != actual) {
      throw FormatError("spec hash mismatch: expected " + expected + ", actual " + actual);
    }
    Rng unused(0);
    m.shared_ = InitLayers(m.spec_.shared, &unused);
    for (const auto& h : m.spec_.heads) m.heads_.push_back(InitLayers(h.layers, &unused));
    m.shared_acc_ = ZerosLike(m.shared_);
    for (const auto& h : m.heads_) m.heads_acc_.push_back(ZerosLike(h));
    const auto params = j.at("parameters").get<std::vector<double>>();
    const auto acc = j.at("rmsprop_accumulators").get<std::vector<double>>();
    if (params.size() != m.ParameterCount() || acc.size() != m.ParameterCount()) {
      throw FormatError("parameter count " + std::to_string(params.size()) +
                        " does not match spec (" + std::to_string(m.ParameterCount()) + ")");
    }
    m.SetFlatParameters(Eigen::Map<const Vector>(params.data(), static_cast<Eigen::Index>(params.size())));
    m.SetFlatRmsPropState(Eigen::Map<const Vector>(acc.data(), static_cast<Eigen::Index>(acc.size())));
    m.rmsprop_.decay = j.at("rmsprop_decay").get<double>();
    m.rmsprop_.epsilon = j.at("rmsprop_epsilon").get<double>();
    m.steps_ = j.at("steps").get<long>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  }
}

void SaveModel(const MlpModel& model, const std::string& path) {
  WriteTextFile(model.ToJson().dump() + "\n", path);
}

MlpModel LoadModel(const std::string& path) {
  nlohmann::json j;
  try {
    j = ParseJsonText(ReadTextFile(path), path);
  } catch (const ParseError& e) {
    throw FormatError(e.what());
  }
  return MlpModel::FromJson(j);
}

MlpModel LoadModel(const std::string& path, const MlpSpec& expected) {
  MlpModel m = LoadModel(path);
  if (!(m.spec() == expected)) {
    throw FormatError("checkpoint spec hash mismatch: expected " +
                      HexHash(SpecHash(expected)) + ", actual " +
                      HexHash(SpecHash(m.spec())));
  }
  return m;
}

}  // namespace scddq::nn
