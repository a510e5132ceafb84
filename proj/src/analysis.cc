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

#include "scddq/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "scddq/errors.h"
#include "scddq/json_io.h"

namespace scddq {

StageActionDistribution ActionDistribution(const std::vector<long>& counts, int stage) {
  StageActionDistribution d;
  d.stage = stage;
  long total = 0;
  for (long c : counts) {
    if (c < 0) throw InvalidArgument("action counts must be non-negative");
    total += c;
  }
  d.probabilities.assign(counts.size(), 0.0);
  d.empty = total == 0;
  if (!d.empty) {
    for (size_t i = 0; i < counts.size(); ++i) {
      d.probabilities[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
  }
  return d;
}

double Entropy(const StageActionDistribution& dist) {
  if (dist.empty) throw UndefinedEntropy("entropy of an empty action distribution");
  double h = 0.0;
  for (double p : dist.probabilities) {
    if (p < 0.0) throw InvalidArgument("negative probability");
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson inputs differ in length");
  if (x.size() < 2) throw InvalidArgument("pearson needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelation("zero variance input");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

std::string StrategyOf(const std::string& schedule) {
  if (schedule == "RANDOM") return "Random";
  if (!schedule.empty() && schedule[0] == 'E') return "EFS";
  if (!schedule.empty() && schedule[0] == 'D') return "DFS";
  return "Other";
}

namespace {

std::vector<std::vector<std::string>> ReadCsv(const std::string& path) {
  std::istringstream in(ReadTextFile(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string Fmt(double v, const char* fmt = "%.4f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string Fmt(const std::optional<double>& v) { return v ? Fmt(*v) : "NA"; }

std::optional<double> StageEntropy(const RunArtifacts& run, int stage) {
  const auto& counts = run.stage_counts[stage];
  if (counts.empty()) return std::nullopt;
  const auto d = ActionDistribution(counts, stage + 1);
  if (d.empty) return std::nullopt;
  return Entropy(d);
}

std::optional<double> StageEval(const RunArtifacts& run, int stage, bool turns) {
  if (stage >= static_cast<int>(run.evals.size())) return std::nullopt;
  return turns ? run.evals[stage].avg_turns : run.evals[stage].success_rate;
}

std::optional<double> Mean(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

using Condition = std::pair<std::string, std::string>;  // method, schedule

std::vector<Condition> CanonicalConditions() {
  std::vector<Condition> rows = {{"DQN", "RANDOM"}, {"DDQ", "RANDOM"}, {"C-DDQ", "RANDOM"}};
  for (const char* m : {"S-DDQ", "SC-DDQ"}) {
    for (const char* s : {"EMD", "EDD", "EED"}) rows.push_back({m, s});
  }
  for (const char* m : {"S-DDQ", "SC-DDQ"}) {
    for (const char* s : {"DME", "DEE", "DDM"}) rows.push_back({m, s});
  }
  return rows;
}

void WriteTable(const std::string& path, const std::vector<Condition>& rows,
                const std::map<Condition, std::vector<const RunArtifacts*>>& by_cond,
                const std::function<std::optional<double>(const RunArtifacts&, int)>& cell) {
  std::ostringstream out;
  out << "strategy,method,schedule,S1,S2,S3,S4\n";
  for (const auto& cond : rows) {
    out << StrategyOf(cond.second) << ',' << cond.first << ','
        << (cond.second == "RANDOM" ? "-" : cond.second);
    for (int s = 0; s < 4; ++s) {
      std::vector<double> vals;
      for (const RunArtifacts* r : by_cond.at(cond)) {
        if (auto v = cell(*r, s)) vals.push_back(*v);
      }
      out << ',' << Fmt(Mean(vals));
    }
    out << '\n';
  }
  WriteTextFile(out.str(), path);
}

}  // namespace

RunArtifacts LoadRun(const std::string& dir) {
  namespace fs = std::filesystem;
  RunArtifacts run;
  const nlohmann::json meta = ReadJsonFile((fs::path(dir) / "run.json").string());
  try {
    run.run_id = meta.at("run_id").get<std::string>();
    run.method = meta.at("method").get<std::string>();
    run.schedule = meta.at("schedule").get<std::string>();
    run.seed = meta.at("seed").get<uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(dir + "/run.json: " + e.what());
  }
  const fs::path eval_path = fs::path(dir) / "eval.csv";
  if (fs::exists(eval_path)) {
    for (const auto& row : ReadCsv(eval_path.string())) {
      if (row.size() < 4) throw FormatError(eval_path.string() + ": short row");
      run.evals.push_back({std::stoi(row[1]), std::stod(row[2]), std::stod(row[3])});
    }
    std::sort(run.evals.begin(), run.evals.end(),
              [](const RunEval& a, const RunEval& b) { return a.checkpoint_epoch < b.checkpoint_epoch; });
  }
  const fs::path actions_path = fs::path(dir) / "actions.csv";
  if (fs::exists(actions_path)) {
    for (const auto& row : ReadCsv(actions_path.string())) {
      if (row.size() < 4) throw FormatError(actions_path.string() + ": short row");
      const int stage = std::stoi(row[1]);
      const size_t action = static_cast<size_t>(std::stoul(row[2]));
      if (stage < 1 || stage > 4) throw FormatError(actions_path.string() + ": bad stage");
      auto& counts = run.stage_counts[stage - 1];
      if (counts.size() <= action) counts.resize(action + 1, 0);
      counts[action] = std::stol(row[3]);
    }
  }
  return run;
}

std::vector<RunArtifacts> LoadRuns(const std::string& root) {
  namespace fs = std::filesystem;
  std::vector<RunArtifacts> runs;
  if (!fs::is_directory(root)) return runs;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().filename() == "run.json") {
      runs.push_back(LoadRun(entry.path().parent_path().string()));
    }
  }
  std::sort(runs.begin(), runs.end(),
            [](const RunArtifacts& a, const RunArtifacts& b) { return a.run_id < b.run_id; });
  return runs;
}

ReportSummary BuildReport(const std::vector<RunArtifacts>& runs, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
  auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

  std::map<Condition, std::vector<const RunArtifacts*>> by_cond;
  for (const auto& r : runs) by_cond[{r.method, r.schedule}].push_back(&r);
  std::vector<Condition> rows;
  for (const auto& c : CanonicalConditions()) {
    if (by_cond.count(c)) rows.push_back(c);
  }
  for (const auto& [c, _] : by_cond) {
    if (std::find(rows.begin(), rows.end(), c) == rows.end()) rows.push_back(c);
  }
  std::vector<Condition> entropy_rows;
  for (const auto& c : rows) {
    if (c.first != "DQN") entropy_rows.push_back(c);
  }

  WriteTable(path("table4.csv"), rows, by_cond,
             [](const RunArtifacts& r, int s) { return StageEval(r, s, false); });
  WriteTable(path("table5.csv"), rows, by_cond,
             [](const RunArtifacts& r, int s) { return StageEval(r, s, true); });
  WriteTable(path("table6.csv"), entropy_rows, by_cond,
             [](const RunArtifacts& r, int s) { return StageEntropy(r, s); });

  std::ostringstream entropy, dist, scatter;
  entropy << "run_id,stage,entropy\n";
  dist << "run_id,stage,action_index,probability\n";
  scatter << "run_id,method,schedule,success_rate,avg_turns\n";
  for (const auto& r : runs) {
    for (int s = 0; s < 4; ++s) {
      entropy << r.run_id << ',' << s + 1 << ',' << Fmt(StageEntropy(r, s)) << '\n';
      if (r.stage_counts[s].empty()) continue;
      const auto d = ActionDistribution(r.stage_counts[s], s + 1);
      for (size_t a = 0; a < d.probabilities.size(); ++a) {
        dist << r.run_id << ',' << s + 1 << ',' << a << ','
             << (d.empty ? "NA" : Fmt(d.probabilities[a], "%.6f")) << '\n';
      }
    }
    if (!r.evals.empty()) {
      scatter << r.run_id << ',' << r.method << ',' << r.schedule << ','
              << Fmt(r.evals.back().success_rate) << ',' << Fmt(r.evals.back().avg_turns)
              << '\n';
    }
  }
  WriteTextFile(entropy.str(), path("entropy.csv"));
  WriteTextFile(dist.str(), path("fig8_distributions.csv"));
  WriteTextFile(scatter.str(), path("fig11_scatter.csv"));

  std::ostringstream groups;
  groups << "group,stage,mean_success,n_runs\n";
  for (const char* cur : {"curiosity", "no-curiosity"}) {
    for (const char* strat : {"Random", "EFS", "DFS"}) {
      for (int s = 0; s < 4; ++s) {
        std::vector<double> vals;
        for (const auto& r : runs) {
          if (r.method == "DQN") continue;
          const bool has_curiosity = r.method == "C-DDQ" || r.method == "SC-DDQ";
          if (has_curiosity != (std::string(cur) == "curiosity")) continue;
          if (StrategyOf(r.schedule) != strat) continue;
          if (auto v = StageEval(r, s, false)) vals.push_back(*v);
        }
        groups << cur << '_' << strat << ',' << s + 1 << ',' << Fmt(Mean(vals)) << ','
               << vals.size() << '\n';
      }
    }
  }
  WriteTextFile(groups.str(), path("fig12_groups.csv"));

  ReportSummary summary;
  summary.runs = static_cast<int>(runs.size());
  summary.table_rows = static_cast<int>(rows.size());
  std::ostringstream corr;
  corr << "stage,r,n\n";
  for (int s = 0; s < 4; ++s) {
    std::vector<double> x, y;
    for (const auto& r : runs) {
      const auto h = StageEntropy(r, s);
      if (h && !r.evals.empty()) {
        x.push_back(*h);
        y.push_back(r.evals.back().success_rate);
      }
    }
    CorrelationResult c;
    c.stage = s + 1;
    c.n = static_cast<int>(x.size());
    if (x.size() >= 2) {
      try {
        c.r = Pearson(x, y);
      } catch (const UndefinedCorrelation&) {
      }
    }
    corr << c.stage << ',' << (c.r ? Fmt(*c.r) : "NA") << ',' << c.n << '\n';
    summary.correlations.push_back(c);
  }
  WriteTextFile(corr.str(), path("correlation.csv"));
  return summary;
}

}  // namespace scddq
