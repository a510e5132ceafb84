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

#ifndef SCDDQ_REPLAY_BUFFER_H_
#define SCDDQ_REPLAY_BUFFER_H_

#include <cstddef>
#include <deque>
#include <vector>

#include "scddq/dialog_state.h"
#include "scddq/random.h"

namespace scddq {

struct Experience {
  StateVector s;
  int a = 0;  // agent action index
  double r = 0.0;
  int a_user = 0;  // user action index
  StateVector s_next;
  bool done = false;
};

enum class BufferKind { kReal, kSimulated };

inline constexpr size_t kDefaultBufferCapacity = 5000;

// Fixed-capacity FIFO of experiences; the oldest entry is evicted first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(BufferKind kind, size_t capacity = kDefaultBufferCapacity);

  void Store(Experience e);
  void Clear() { entries_.clear(); }

  BufferKind kind() const { return kind_; }
  size_t capacity() const { return capacity_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // 0 is the oldest entry.
  const Experience& at(size_t i) const { return entries_.at(i); }
  // Total number of Store calls since construction.
  size_t total_stored() const { return total_stored_; }

  // Uniform draw with replacement. Throws SamplingError when empty.
  std::vector<const Experience*> Sample(size_t n, Rng& rng) const;

 private:
  BufferKind kind_;
  size_t capacity_;
  std::deque<Experience> entries_;
  size_t total_stored_ = 0;
};

// Uniform draw with replacement from the concatenation a ++ b.
std::vector<const Experience*> SampleUnion(const ReplayBuffer& a,
                                           const ReplayBuffer& b, size_t n,
                                           Rng& rng);

}  // namespace scddq

#endif  // SCDDQ_REPLAY_BUFFER_H_
