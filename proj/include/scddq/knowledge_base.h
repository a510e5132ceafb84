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

#ifndef SCDDQ_KNOWLEDGE_BASE_H_
#define SCDDQ_KNOWLEDGE_BASE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "scddq/ontology.h"

namespace scddq {

// One bookable showing. Every informable slot carries a non-empty value.
struct MovieRecord {
  SlotValues values;

  const std::string& Get(Slot slot) const;
  friend bool operator==(const MovieRecord&, const MovieRecord&) = default;
};

// Lowercased, whitespace-trimmed form used for all value comparisons.
std::string NormalizeValue(std::string_view value);

class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(std::vector<MovieRecord> records, uint64_t seed = 0);

  const std::vector<MovieRecord>& records() const { return records_; }
  const MovieRecord& record(size_t i) const { return records_.at(i); }
  size_t size() const { return records_.size(); }
  uint64_t seed() const { return seed_; }

  bool Matches(size_t index, const SlotValues& constraints) const;
  std::vector<size_t> MatchingIndices(const SlotValues& constraints) const;
  size_t CountMatches(const SlotValues& constraints) const;
  std::optional<size_t> FirstMatch(const SlotValues& constraints) const;

 private:
  std::vector<MovieRecord> records_;
  // normalized_[i][slot] mirrors records_[i].values; empty when absent.
  std::vector<std::array<std::string, kNumSlots>> normalized_;
  uint64_t seed_ = 0;
};

// Synthetic movie-showing KB; a pure function of (seed, n_movies).
KnowledgeBase GenerateKb(uint64_t seed, int n_movies);

// Records matching every constraint, in KB order.
std::vector<MovieRecord> KbQuery(const KnowledgeBase& kb,
                                 const SlotValues& constraints);

nlohmann::json KbToJson(const KnowledgeBase& kb);
KnowledgeBase KbFromJson(const nlohmann::json& j);
void SaveKb(const KnowledgeBase& kb, const std::string& path);
KnowledgeBase LoadKb(const std::string& path);

}  // namespace scddq

#endif  // SCDDQ_KNOWLEDGE_BASE_H_
