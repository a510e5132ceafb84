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

#include "scddq/replay_buffer.h"

#include "scddq/errors.h"

namespace scddq {

ReplayBuffer::ReplayBuffer(BufferKind kind, size_t capacity)
    : kind_(kind), capacity_(capacity) {
  if (capacity == 0) throw InvalidArgument("replay buffer capacity must be positive");
}

void ReplayBuffer::Store(Experience e) {
  if (entries_.size() == capacity_) entries_.pop_front();
  entries_.push_back(std::move(e));
  ++total_stored_;
}

std::vector<const Experience*> ReplayBuffer::Sample(size_t n, Rng& rng) const {
  if (entries_.empty()) throw SamplingError("cannot sample from an empty replay buffer");
  std::vector<const Experience*> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(&entries_[rng.Below(entries_.size())]);
  return out;
}

std::vector<const Experience*> SampleUnion(const ReplayBuffer& a,
                                           const ReplayBuffer& b, size_t n,
                                           Rng& rng) {
  const size_t total = a.size() + b.size();
  if (total == 0) throw SamplingError("cannot sample from two empty replay buffers");
  std::vector<const Experience*> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t k = rng.Below(total);
    out.push_back(k < a.size() ? &a.at(k) : &b.at(k - a.size()));
  }
  return out;
}

}  // namespace scddq
