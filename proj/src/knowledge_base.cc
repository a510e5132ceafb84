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

#include "scddq/knowledge_base.h"

#include <algorithm>
#include <cctype>

#include "scddq/errors.h"
#include "scddq/json_io.h"
#include "scddq/random.h"

namespace scddq {
namespace {

struct CityInfo {
  const char* city;
  const char* state;
  const char* zip_prefix;
};

constexpr CityInfo kCities[] = {
    {"seattle", "wa", "981"},     {"portland", "or", "972"},
    {"los angeles", "ca", "900"}, {"birmingham", "al", "352"},
    {"chicago", "il", "606"},     {"boston", "ma", "021"},
    {"houston", "tx", "770"},     {"denver", "co", "802"},
    {"atlanta", "ga", "303"},     {"miami", "fl", "331"},
    {"san francisco", "ca", "941"}, {"detroit", "mi", "482"},
};

constexpr const char* kChains[] = {"amc", "regal", "carmike", "cinemark",
                                   "century", "marcus"};
constexpr const char* kVenues[] = {"pacific place", "lloyd center", "summit",
                                   "riverside",     "downtown",     "harbor view",
                                   "oak grove",     "meridian",     "parkway"};
constexpr const char* kTitleHeads[] = {
    "silent",  "crimson", "last",   "hidden", "golden", "broken", "distant",
    "wild",    "electric", "frozen", "lost",   "iron",   "paper",  "midnight",
    "secret",  "burning", "quiet",  "hollow", "neon",   "winter"};
constexpr const char* kTitleTails[] = {
    "harbor", "empire", "garden", "signal", "river",  "kingdom", "frontier",
    "island", "machine", "letter", "voyage", "horizon", "shadow", "orchard",
    "summit", "circuit", "tide",   "lantern", "mirror", "canyon"};
constexpr const char* kDates[] = {"today",  "tomorrow", "tonight",     "friday",
                                  "saturday", "sunday", "this weekend"};
constexpr const char* kStartTimes[] = {
    "10:00 am", "11:30 am", "12:05 pm", "1:30 pm", "3:00 pm",  "4:45 pm",
    "6:00 pm",  "7:15 pm",  "8:30 pm",  "9:00 pm", "10:00 pm", "11:15 pm"};
constexpr const char* kFormats[] = {"standard", "3d", "imax", "imax 3d"};

template <typename T, size_t N>
constexpr size_t Count(const T (&)[N]) {
  return N;
}

struct Theater {
  std::string name;
  std::string chain;
  std::string zip;
  size_t city;
};

}  // namespace

const std::string& MovieRecord::Get(Slot slot) const {
  const auto it = values.find(slot);
  if (it == values.end()) {
    throw InvalidArgument("record has no value for slot '" +
                          std::string(SlotName(slot)) + "'");
  }
  return it->second;
}

std::string NormalizeValue(std::string_view value) {
  size_t begin = 0, end = value.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(value[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(value[end - 1]))) --end;
  std::string out(value.substr(begin, end - begin));
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

KnowledgeBase::KnowledgeBase(std::vector<MovieRecord> records, uint64_t seed)
    : records_(std::move(records)), seed_(seed) {
  normalized_.reserve(records_.size());
  for (const auto& r : records_) {
    std::array<std::string, kNumSlots> row;
    for (const auto& [slot, value] : r.values) row[SlotIndex(slot)] = NormalizeValue(value);
    normalized_.push_back(std::move(row));
  }
}

bool KnowledgeBase::Matches(size_t index, const SlotValues& constraints) const {
  const auto& row = normalized_.at(index);
  for (const auto& [slot, value] : constraints) {
    const std::string& have = row[SlotIndex(slot)];
    if (have.empty() || have != NormalizeValue(value)) return false;
  }
  return true;
}

std::vector<size_t> KnowledgeBase::MatchingIndices(const SlotValues& constraints) const {
  std::vector<std::pair<int, std::string>> wanted;
  wanted.reserve(constraints.size());
  for (const auto& [slot, value] : constraints) {
    wanted.emplace_back(SlotIndex(slot), NormalizeValue(value));
  }
  std::vector<size_t> out;
  for (size_t i = 0; i < normalized_.size(); ++i) {
    const auto& row = normalized_[i];
    const bool ok = std::all_of(wanted.begin(), wanted.end(), [&](const auto& w) {
      return !row[w.first].empty() && row[w.first] == w.second;
    });
    if (ok) out.push_back(i);
  }
  return out;
}

size_t KnowledgeBase::CountMatches(const SlotValues& constraints) const {
  return MatchingIndices(constraints).size();
}

std::optional<size_t> KnowledgeBase::FirstMatch(const SlotValues& constraints) const {
  for (size_t i = 0; i < normalized_.size(); ++i) {
    if (Matches(i, constraints)) return i;
  }
  return std::nullopt;
}

KnowledgeBase GenerateKb(uint64_t seed, int n_movies) {
  if (n_movies < 1) throw InvalidArgument("n_movies must be >= 1");
  Rng rng(DeriveSeed(seed, "kb"));

  // Pools grow with the KB so that several showings share each value.
  const size_t n = static_cast<size_t>(n_movies);
  const size_t n_titles = std::clamp<size_t>(n / 8, 1, Count(kTitleHeads) * Count(kTitleTails));
  std::vector<std::string> titles;
  for (size_t h = 0; h < Count(kTitleHeads); ++h) {
    for (size_t t = 0; t < Count(kTitleTails); ++t) {
      titles.push_back(std::string(kTitleHeads[h]) + " " + kTitleTails[t]);
    }
  }
  rng.Shuffle(titles);
  titles.resize(n_titles);

  const size_t n_cities = std::clamp<size_t>(n / 40, 1, Count(kCities));
  std::vector<Theater> theaters;
  for (size_t c = 0; c < n_cities; ++c) {
    for (int k = 0; k < 3; ++k) {
      Theater th;
      th.chain = kChains[rng.Below(Count(kChains))];
      th.name = th.chain + " " + kVenues[rng.Below(Count(kVenues))] + " " +
                std::to_string(rng.UniformInt(6, 24));
      th.zip = std::string(kCities[c].zip_prefix) +
               std::to_string(10 + rng.Below(90));
      th.city = c;
      theaters.push_back(std::move(th));
    }
  }

  std::vector<MovieRecord> records;
  records.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Theater& th = theaters[rng.Below(theaters.size())];
    MovieRecord r;
    r.values[Slot::kMovieName] = titles[rng.Below(titles.size())];
    r.values[Slot::kCity] = kCities[th.city].city;
    r.values[Slot::kState] = kCities[th.city].state;
    r.values[Slot::kTheater] = th.name;
    r.values[Slot::kTheaterChain] = th.chain;
    r.values[Slot::kZip] = th.zip;
    r.values[Slot::kDate] = kDates[rng.Below(Count(kDates))];
    r.values[Slot::kStartTime] = kStartTimes[rng.Below(Count(kStartTimes))];
    r.values[Slot::kPrice] = "$" + std::to_string(rng.UniformInt(8, 18));
    r.values[Slot::kVideoFormat] = kFormats[rng.Below(Count(kFormats))];
    r.values[Slot::kNumberOfPeople] = std::to_string(rng.UniformInt(1, 6));
    records.push_back(std::move(r));
  }
  return KnowledgeBase(std::move(records), seed);
}

std::vector<MovieRecord> KbQuery(const KnowledgeBase& kb,
                                 const SlotValues& constraints) {
  std::vector<MovieRecord> out;
  for (size_t i : kb.MatchingIndices(constraints)) out.push_back(kb.record(i));
  return out;
}

nlohmann::json KbToJson(const KnowledgeBase& kb) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : kb.records()) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [slot, value] : r.values) obj[std::string(SlotName(slot))] = value;
    arr.push_back(std::move(obj));
  }
  return arr;
}

KnowledgeBase KbFromJson(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("KB file must be a JSON array");
  std::vector<MovieRecord> records;
  for (size_t i = 0; i < j.size(); ++i) {
    const auto& obj = j[i];
    const std::string where = "record " + std::to_string(i);
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    MovieRecord r;
    for (const auto& [key, value] : obj.items()) {
      const auto slot = SlotFromName(key);
      if (!slot) throw ParseError(where + ": unknown slot '" + key + "'");
      if (!value.is_string() || value.get<std::string>().empty()) {
        throw ParseError(where + ": slot '" + key + "' needs a non-empty string");
      }
      r.values[*slot] = value.get<std::string>();
    }
    if (!r.values.count(Slot::kMovieName)) {
      throw ParseError(where + ": missing 'moviename'");
    }
    records.push_back(std::move(r));
  }
  return KnowledgeBase(std::move(records));
}

void SaveKb(const KnowledgeBase& kb, const std::string& path) {
  WriteJsonFile(KbToJson(kb), path);
}

KnowledgeBase LoadKb(const std::string& path) {
  const auto j = ReadJsonFile(path);
  try {
    return KbFromJson(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace scddq
