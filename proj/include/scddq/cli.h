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

// Command-line front end: gen-data, train, eval, matrix and report.

#ifndef SCDDQ_CLI_H_
#define SCDDQ_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "scddq/trainer.h"

namespace scddq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

// `args` excludes the program name. Returns the process exit code.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct MatrixRun {
  RunConfig config;
  int seed_index = 0;
};

// Expands a matrix file: {"methods": [...], "schedules": [...], "seeds": N,
// "master_seed": S, "out_dir": ..., "base": {RunConfig fields}}. Methods
// without a curriculum run once on RANDOM; scheduled methods run on every
// listed non-RANDOM schedule.
std::vector<MatrixRun> ExpandMatrix(const nlohmann::json& spec);

// Seed of one matrix cell; independent of execution order.
uint64_t MatrixRunSeed(uint64_t master_seed, const std::string& method,
                       const std::string& schedule, int seed_index);

}  // namespace scddq

#endif  // SCDDQ_CLI_H_
