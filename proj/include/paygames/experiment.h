// Copyright 2026 The paygames Authors. All rights reserved.
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

#ifndef PAYGAMES_EXPERIMENT_H_
#define PAYGAMES_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "paygames/dynamics.h"
#include "paygames/io.h"

namespace paygames::experiment {

using io::Json;

struct Sweep {
  std::string axis;  // horizon, v2_ratio, eta, grid_k, rate, window_fraction
  std::vector<double> values;
};

struct EmitFlags {
  bool trace = false;
  bool cdf = false;
  bool summary = true;
};

// A parsed experiment file. `spec` keeps the JSON with the game inlined, so
// that sweeps can rewrite it and every run is rebuilt from JSON.
struct ExperimentSpec {
  std::string name;
  Json spec;
  std::vector<std::uint64_t> seeds;
  std::optional<Sweep> sweep;
  EmitFlags emit;
  std::filesystem::path out;
  // Block compared against closed forms in cdf.csv and winfreq.csv.
  bool measure_window = true;
};

// Relative paths (game files, out) resolve against `base_dir`.
ExperimentSpec ParseExperimentSpec(const Json& j, const std::filesystem::path& base_dir);
ExperimentSpec LoadExperimentSpec(const std::filesystem::path& path);

// Copy of `spec` with one sweep axis set to `value`. Unknown axes throw.
Json ApplySweep(const Json& spec, const std::string& axis, double value);

// Game, policies, learners and horizon of one run.
RunConfig BuildRunConfig(const Json& spec, std::uint64_t seed);

// Closed-form bid CDFs of agents 1 and 2 on the bid grid, when the run is a
// first-price auction under player 1's eta policy; empty otherwise.
std::vector<std::vector<double>> TheoryCdfs(const RunConfig& config);

struct PointResult {
  std::optional<double> value;  // sweep value
  Json spec;
  std::vector<RunReport> runs;  // one per seed, traces dropped
};

struct ExperimentResult {
  std::vector<PointResult> points;
};

// PAYGAMES_WORKERS wins over the flag; 0 means hardware concurrency.
int ResolveWorkers(int flag);

// Runs every (sweep point, seed) pair on a bounded pool. When `out` is set,
// each run writes its own files under out/[point_<i>/]seed_<s>/.
ExperimentResult RunExperiment(const ExperimentSpec& spec, int workers,
                               const std::optional<std::filesystem::path>& out = std::nullopt);

// summary.json (with a timestamp field), plus winfreq.csv for first-price
// v2_ratio sweeps and a seed-averaged cdf.csv for single-point auction runs.
void WriteExperimentOutputs(const ExperimentSpec& spec, const ExperimentResult& result,
                            const std::filesystem::path& out);

Json SummaryJson(const ExperimentSpec& spec, const ExperimentResult& result);

// Seed-mean player-2 win frequency and its closed form at each v2_ratio point.
struct WinFrequencyRow {
  double ratio = 0.0;
  double empirical = 0.0;
  double theory = 0.0;
  std::vector<double> per_seed;
};
std::vector<WinFrequencyRow> WinFrequencyTable(const ExperimentSpec& spec,
                                               const ExperimentResult& result);

}  // namespace paygames::experiment

#endif  // PAYGAMES_EXPERIMENT_H_
