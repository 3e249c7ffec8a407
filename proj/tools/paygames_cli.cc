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

// paygames: simulate, sweep, analyze, theory and accept subcommands.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "paygames/acceptance.h"
#include "paygames/equilibrium.h"
#include "paygames/errors.h"
#include "paygames/experiment.h"
#include "paygames/first_price_theory.h"
#include "paygames/io.h"

#ifndef PAYGAMES_EXPERIMENTS_DIR
#define PAYGAMES_EXPERIMENTS_DIR "experiments"
#endif

namespace fs = std::filesystem;
using namespace paygames;

namespace {

std::vector<std::uint64_t> ParseSeedList(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const unsigned long long v = std::stoull(item, &used);
    if (used != item.size()) throw InputError("bad seed '" + item + "'");
    seeds.push_back(v);
  }
  if (seeds.empty()) throw InputError("--seeds needs at least one seed");
  return seeds;
}

int Simulate(const std::string& spec_path, const std::string& out_flag, const std::string& seeds,
             int workers, bool require_sweep) {
  experiment::ExperimentSpec spec = experiment::LoadExperimentSpec(spec_path);
  if (require_sweep && !spec.sweep) throw InputError("spec has no sweep section");
  if (!seeds.empty()) spec.seeds = ParseSeedList(seeds);
  const fs::path out = out_flag.empty() ? spec.out : fs::path(out_flag);
  const auto result = experiment::RunExperiment(spec, experiment::ResolveWorkers(workers), out);
  experiment::WriteExperimentOutputs(spec, result, out);
  std::printf("%s: %zu point(s) x %zu seed(s) -> %s\n", spec.name.c_str(), result.points.size(),
              spec.seeds.size(), out.string().c_str());
  return 0;
}

void WriteOrPrint(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << text;
}

int Analyze(const std::string& game_path, bool exact, const std::string& out) {
  const FiniteGame game = io::FiniteGameFromJson(io::LoadJsonFile(game_path));
  const analysis::AnalysisResult result = analysis::Analyze(game, exact);
  io::Json j = io::AnalysisToJson(game, result);
  j["exact"] = exact;
  WriteOrPrint(out, j.dump(2) + "\n");
  return 0;
}

struct TheoryParams {
  std::string kind;
  double v1 = 1.0, v2 = 0.5, v3 = 0.0, eta = 0.25;
  int points = 101;
  std::string out;
};

int Theory(const TheoryParams& p) {
  std::ostringstream csv;
  if (p.kind == "cdfs") {
    theory::WriteCdfCsv(csv, {p.v1, p.v2, p.v3, p.eta}, p.points);
  } else if (p.kind == "winfreq") {
    std::vector<double> ratios;
    for (int i = 0; i < p.points; ++i) ratios.push_back(static_cast<double>(i) / (p.points - 1));
    theory::WriteWinFrequencyCsv(csv, ratios);
  } else if (p.kind == "welfare_loss") {
    theory::WriteWelfareLossCsv(csv);
  } else if (p.kind == "utilities") {
    theory::WriteUtilitiesCsv(csv, p.v1, p.v2, p.v3, p.points);
  } else {
    throw InputError("theory kind must be cdfs, winfreq, welfare_loss or utilities");
  }
  WriteOrPrint(p.out, csv.str());
  return 0;
}

int Accept(const std::string& experiments, std::optional<std::int64_t> horizon, int workers) {
  acceptance::Options options;
  options.experiments_dir = experiments;
  options.horizon = horizon;
  options.workers = experiment::ResolveWorkers(workers);
  int failed = 0;
  acceptance::RunAll(options, [&](const acceptance::CriterionResult& r) {
    std::printf("%s\n", acceptance::FormatLine(r).c_str());
    std::fflush(stdout);
    failed += !r.pass;
  });
  std::printf("%d/%d criteria passed\n", acceptance::kNumCriteria - failed, acceptance::kNumCriteria);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Payment policies between no-regret agents: dynamics, theory and equilibrium analysis"};
  app.require_subcommand(1);
  int workers = 0;
  app.add_option("--workers", workers, "worker threads (0 = all cores; PAYGAMES_WORKERS overrides)");

  std::string spec, out, seeds;
  auto* simulate = app.add_subcommand("simulate", "run an experiment spec");
  simulate->add_option("--spec", spec, "experiment JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", out, "output directory (default: the spec's out)");
  simulate->add_option("--seeds", seeds, "comma-separated seeds overriding the spec");
  simulate->add_option("--workers", workers, "worker threads");

  auto* sweep = app.add_subcommand("sweep", "run an experiment spec with a sweep section");
  sweep->add_option("--spec", spec, "experiment JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "output directory (default: the spec's out)");
  sweep->add_option("--seeds", seeds, "comma-separated seeds overriding the spec");
  sweep->add_option("--workers", workers, "worker threads");

  bool exact = false;
  auto* analyze = app.add_subcommand("analyze", "equilibrium-lab report for a finite game");
  analyze->add_option("--spec", spec, "game JSON")->required()->check(CLI::ExistingFile);
  analyze->add_flag("--exact", exact, "solve the LPs in rational arithmetic");
  analyze->add_option("--out", out, "write the JSON here instead of stdout");

  TheoryParams tp;
  auto* theory_cmd = app.add_subcommand("theory", "closed-form curves as CSV");
  theory_cmd->add_option("kind", tp.kind, "cdfs | winfreq | welfare_loss | utilities")->required();
  theory_cmd->add_option("--v1", tp.v1);
  theory_cmd->add_option("--v2", tp.v2);
  theory_cmd->add_option("--v3", tp.v3);
  theory_cmd->add_option("--eta", tp.eta);
  theory_cmd->add_option("--points", tp.points, "rows to emit");
  theory_cmd->add_option("--out", tp.out, "write the CSV here instead of stdout");

  std::string experiments = PAYGAMES_EXPERIMENTS_DIR;
  std::optional<std::int64_t> horizon;
  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  accept->add_option("--experiments", experiments, "directory of committed experiment specs");
  accept->add_option("--horizon", horizon, "override T of the fixed-horizon dynamics criteria");
  accept->add_option("--workers", workers, "worker threads");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*simulate) return Simulate(spec, out, seeds, workers, false);
    if (*sweep) return Simulate(spec, out, seeds, workers, true);
    if (*analyze) return Analyze(spec, exact, out);
    if (*theory_cmd) return Theory(tp);
    if (*accept) return Accept(experiments, horizon, workers);
  } catch (const InvariantError& e) {
    std::fprintf(stderr, "invariant violated: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
