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

// Post-hoc analysis of finished runs: stage action distributions and their
// entropy, Pearson correlation, and the summary tables and figure data.

#ifndef SCDDQ_ANALYSIS_H_
#define SCDDQ_ANALYSIS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scddq {

struct StageActionDistribution {
  int stage = 0;
  std::vector<double> probabilities;
  bool empty = true;  // no actions were counted
};

// Throws InvalidArgument on a negative count.
StageActionDistribution ActionDistribution(const std::vector<long>& counts, int stage = 0);

// Base-2 Shannon entropy, 0 log 0 = 0. Throws UndefinedEntropy when empty.
double Entropy(const StageActionDistribution& dist);

// Sample Pearson correlation. Throws InvalidArgument on mismatched or short
// input, UndefinedCorrelation when either side has zero variance.
double Pearson(const std::vector<double>& x, const std::vector<double>& y);

struct CorrelationResult {
  int stage = 0;
  std::optional<double> r;  // nullopt when undefined
  int n = 0;
};

struct RunEval {
  int checkpoint_epoch = 0;
  double success_rate = 0.0;
  double avg_turns = 0.0;
};

struct RunArtifacts {
  std::string run_id;
  std::string method;
  std::string schedule;
  uint64_t seed = 0;
  std::vector<RunEval> evals;                   // ordered by checkpoint
  std::array<std::vector<long>, 4> stage_counts;  // empty when absent
};

// "Random" for RANDOM, "EFS" for easy-first and "DFS" for difficult-first
// schedule names, "Other" otherwise.
std::string StrategyOf(const std::string& schedule);

// Reads run.json, eval.csv and actions.csv from one run directory.
RunArtifacts LoadRun(const std::string& dir);
// Every directory below `root` holding a run.json, sorted by run id.
std::vector<RunArtifacts> LoadRuns(const std::string& root);

struct ReportSummary {
  int runs = 0;
  int table_rows = 0;
  std::vector<CorrelationResult> correlations;
};

// Writes table4.csv (success), table5.csv (turns), table6.csv (entropy),
// entropy.csv, correlation.csv, fig8_distributions.csv, fig11_scatter.csv and
// fig12_groups.csv into `out_dir`. Cells without data read "NA".
ReportSummary BuildReport(const std::vector<RunArtifacts>& runs, const std::string& out_dir);

}  // namespace scddq

#endif  // SCDDQ_ANALYSIS_H_
