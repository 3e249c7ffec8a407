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

#include "paygames/experiment.h"

#include <atomic>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "paygames/errors.h"
#include "paygames/first_price_theory.h"

namespace paygames::experiment {
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kAxes = {"horizon", "v2_ratio", "eta", "grid_k", "rate",
                                        "window_fraction"};

std::vector<std::uint64_t> ParseSeeds(const Json& j) {
  std::vector<std::uint64_t> seeds;
  if (j.is_number_unsigned() || j.is_number_integer()) {
    seeds.push_back(j.get<std::uint64_t>());
  } else if (j.is_array()) {
    for (const Json& s : j) {
      if (!s.is_number_integer()) throw InputError("seeds must be nonnegative integers");
      seeds.push_back(s.get<std::uint64_t>());
    }
  } else {
    throw InputError("seeds must be an integer or a list");
  }
  return seeds;
}

std::string PointDir(std::size_t point) { return "point_" + std::to_string(point); }
std::string SeedDir(std::uint64_t seed) { return "seed_" + std::to_string(seed); }

const RoundStats& Block(const RunReport& r, bool window) { return window ? r.window : r.full; }

std::vector<double> SeedMeans(const std::vector<RunReport>& runs, bool window,
                              std::vector<double> RoundStats::*field) {
  std::vector<double> mean;
  for (const RunReport& r : runs) {
    const std::vector<double>& v = Block(r, window).*field;
    if (mean.empty()) mean.assign(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) mean[i] += v[i] / runs.size();
  }
  return mean;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace

ExperimentSpec ParseExperimentSpec(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw InputError("experiment spec must be a JSON object");
  ExperimentSpec spec;
  spec.name = j.value("name", "");
  if (spec.name.empty()) throw InputError("experiment spec needs a nonempty name");
  spec.spec = j;
  if (!j.contains("game")) throw InputError("experiment spec needs a game");
  if (j.at("game").is_string()) {
    const fs::path game_path = base_dir / j.at("game").get<std::string>();
    if (!fs::exists(game_path)) throw InputError("game file not found: " + game_path.string());
    spec.spec["game"] = io::LoadJsonFile(game_path);
  }
  spec.seeds = ParseSeeds(j.contains("seeds") ? j.at("seeds") : Json(0));
  if (spec.seeds.empty()) throw InputError("experiment spec needs at least one seed");
  if (j.contains("sweep") && !j.at("sweep").is_null()) {
    const Json& s = j.at("sweep");
    Sweep sweep;
    sweep.axis = s.value("axis", "");
    if (std::find(kAxes.begin(), kAxes.end(), sweep.axis) == kAxes.end()) {
      throw InputError("unknown sweep axis '" + sweep.axis + "'");
    }
    if (!s.contains("values") || !s.at("values").is_array() || s.at("values").empty()) {
      throw InputError("sweep needs a nonempty list of values");
    }
    sweep.values = s.at("values").get<std::vector<double>>();
    spec.sweep = std::move(sweep);
  }
  if (j.contains("emit")) {
    const Json& e = j.at("emit");
    spec.emit.trace = e.value("trace", false);
    spec.emit.cdf = e.value("cdf", false);
    spec.emit.summary = e.value("summary", true);
  }
  const std::string measure = j.value("measure", "window");
  if (measure != "window" && measure != "full") throw InputError("measure must be 'window' or 'full'");
  spec.measure_window = measure == "window";
  spec.out = base_dir / j.value("out", "out/" + spec.name);
  // Surface bad game/policy/learner specs before any run starts.
  BuildRunConfig(spec.sweep ? ApplySweep(spec.spec, spec.sweep->axis, spec.sweep->values[0])
                            : spec.spec,
                 spec.seeds[0]);
  return spec;
}

ExperimentSpec LoadExperimentSpec(const fs::path& path) {
  return ParseExperimentSpec(io::LoadJsonFile(path), path.parent_path());
}

Json ApplySweep(const Json& spec, const std::string& axis, double value) {
  Json out = spec;
  if (axis == "horizon") {
    if (value < 1 || value != std::floor(value)) throw InputError("horizon must be a positive integer");
    out["horizon"] = static_cast<std::int64_t>(value);
  } else if (axis == "window_fraction") {
    out["window_fraction"] = value;
  } else if (axis == "v2_ratio" || axis == "grid_k") {
    Json& game = out.at("game");
    if (game.value("type", "") != "auction") throw InputError(axis + " sweeps need an auction game");
    if (axis == "grid_k") {
      game["grid_k"] = static_cast<int>(value);
    } else {
      std::vector<double> values = game.at("values").get<std::vector<double>>();
      if (values.size() < 2) throw InputError("v2_ratio needs at least two values");
      values[1] = value * values[0];
      game["values"] = values;
    }
  } else if (axis == "eta") {
    bool found = false;
    if (out.contains("policies")) {
      for (Json& p : out["policies"]) {
        if (p.is_object() && p.value("name", "") == "first_price_eta") {
          p["params"]["eta"] = value;
          found = true;
        }
      }
    }
    if (!found) throw InputError("eta sweeps need a first_price_eta policy");
  } else if (axis == "rate") {
    Json& learners = out["learners"];
    if (learners.is_array()) {
      for (Json& l : learners) l["rate"] = value;
    } else {
      if (learners.is_null()) learners = Json::object();
      learners["rate"] = value;
    }
  } else {
    throw InputError("unknown sweep axis '" + axis + "'");
  }
  return out;
}

RunConfig BuildRunConfig(const Json& spec, std::uint64_t seed) {
  RunConfig config;
  config.game = io::GameFromJson(spec.at("game"));
  const int n = config.game->num_players();
  const double bound = spec.contains("payment_bound") ? spec.at("payment_bound").get<double>()
                                                      : io::DefaultBound(*config.game);
  const Json policies = spec.contains("policies") ? spec.at("policies") : Json();
  config.policies =
      std::make_shared<const PolicyProfile>(io::PolicyProfileFromJson(*config.game, policies, bound));
  const Json learners = spec.contains("learners") ? spec.at("learners") : Json();
  if (learners.is_array()) {
    if (static_cast<int>(learners.size()) != n) throw InputError("need one learner spec per player");
    for (const Json& l : learners) config.learners.push_back(io::LearnerFromJson(l));
  } else {
    config.learners.assign(n, io::LearnerFromJson(learners));
  }
  config.horizon = spec.value("horizon", static_cast<std::int64_t>(100000));
  if (config.horizon < 1) throw InputError("horizon must be positive");
  config.window_fraction = spec.value("window_fraction", 0.1);
  config.seed = seed;
  return config;
}

std::vector<std::vector<double>> TheoryCdfs(const RunConfig& config) {
  const auto* auction = dynamic_cast<const AuctionGame*>(config.game.get());
  if (!auction || auction->format() != AuctionFormat::kFirstPrice || !config.policies) return {};
  const auto* rule = std::get_if<rules::FirstPriceEta>(&(*config.policies)[0].rule());
  if (!rule) return {};
  for (int i = 1; i < auction->num_players(); ++i) {
    if (!(*config.policies)[i].IsZero()) return {};
  }
  theory::FirstPriceClosedForm cf{auction->value(0), auction->value(1),
                                  auction->Bid(rule->floor_action), rule->eta};
  std::vector<std::vector<double>> out(2);
  for (int a = 0; a < auction->space().action_count(0); ++a) {
    out[0].push_back(theory::F1Cdf(cf, auction->Bid(a)));
    out[1].push_back(theory::G2Cdf(cf, auction->Bid(a)));
  }
  return out;
}

int ResolveWorkers(int flag) {
  if (const char* env = std::getenv("PAYGAMES_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) throw ConfigError("PAYGAMES_WORKERS must be a nonnegative integer");
    flag = static_cast<int>(v);
  }
  if (flag <= 0) flag = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return flag;
}

ExperimentResult RunExperiment(const ExperimentSpec& spec, int workers,
                               const std::optional<fs::path>& out) {
  ExperimentResult result;
  if (spec.sweep) {
    for (double v : spec.sweep->values) {
      result.points.push_back({v, ApplySweep(spec.spec, spec.sweep->axis, v), {}});
    }
  } else {
    result.points.push_back({std::nullopt, spec.spec, {}});
  }
  struct Job {
    std::size_t point;
    std::size_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < result.points.size(); ++p) {
    result.points[p].runs.resize(spec.seeds.size());
    for (std::size_t s = 0; s < spec.seeds.size(); ++s) jobs.push_back({p, s});
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        PointResult& point = result.points[jobs[k].point];
        const std::uint64_t seed = spec.seeds[jobs[k].seed];
        RunConfig config = BuildRunConfig(point.spec, seed);
        config.record_trace = out.has_value() && spec.emit.trace;
        RunReport report = Run(config);
        if (out) {
          fs::path dir = *out;
          if (spec.sweep) dir /= PointDir(jobs[k].point);
          dir /= SeedDir(seed);
          fs::create_directories(dir);
          if (spec.emit.summary) WriteText(dir / "summary.json", io::ReportToJson(*config.game, report).dump(2) + "\n");
          if (spec.emit.trace) {
            std::ofstream trace(dir / "trace.csv");
            io::WriteTraceCsv(trace, report);
          }
          if (spec.emit.cdf && report.is_auction) {
            std::ofstream cdf(dir / "cdf.csv");
            io::WriteCdfCsv(cdf, report, TheoryCdfs(config), spec.measure_window);
          }
        }
        report.trace = RunTrace{};
        point.runs[jobs[k].seed] = std::move(report);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  const int pool = std::min<int>(std::max(1, workers), static_cast<int>(jobs.size()));
  if (pool <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < pool; ++w) threads.emplace_back(work);
    for (std::thread& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::vector<WinFrequencyRow> WinFrequencyTable(const ExperimentSpec& spec,
                                               const ExperimentResult& result) {
  std::vector<WinFrequencyRow> rows;
  if (!spec.sweep || spec.sweep->axis != "v2_ratio") return rows;
  for (const PointResult& point : result.points) {
    const RunConfig config = BuildRunConfig(point.spec, spec.seeds[0]);
    const auto* auction = dynamic_cast<const AuctionGame*>(config.game.get());
    if (!auction || auction->format() != AuctionFormat::kFirstPrice || auction->num_players() != 2) {
      return {};
    }
    WinFrequencyRow row;
    row.ratio = *point.value;
    for (const RunReport& r : point.runs) {
      row.per_seed.push_back(Block(r, spec.measure_window).WinFrequency(1));
      row.empirical += row.per_seed.back() / point.runs.size();
    }
    const auto* rule = std::get_if<rules::FirstPriceEta>(&(*config.policies)[0].rule());
    const double v1 = auction->value(0), v2 = auction->value(1);
    if (rule && std::abs(rule->eta - v2 / 2.0) <= 1e-12) {
      row.theory = theory::WinFrequency(v1, v2);
    } else if (rule) {
      row.theory = theory::QuadratureWinFrequency({v1, v2, 0.0, rule->eta});
    } else {
      row.theory = std::nan("");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json SummaryJson(const ExperimentSpec& spec, const ExperimentResult& result) {
  Json points = Json::array();
  for (const PointResult& point : result.points) {
    const RunConfig config = BuildRunConfig(point.spec, spec.seeds[0]);
    Json runs = Json::array();
    for (const RunReport& r : point.runs) runs.push_back(io::ReportToJson(*config.game, r));
    Json p{{"runs", runs},
           {"mean", {{"window_agent_utility",
                      SeedMeans(point.runs, true, &RoundStats::agent_utility)},
                     {"full_agent_utility", SeedMeans(point.runs, false, &RoundStats::agent_utility)},
                     {"window_stage_utility",
                      SeedMeans(point.runs, true, &RoundStats::stage_utility)},
                     {"full_stage_utility", SeedMeans(point.runs, false, &RoundStats::stage_utility)}}}};
    if (point.value) p["value"] = *point.value;
    points.push_back(std::move(p));
  }
  const std::time_t now = std::time(nullptr);
  std::ostringstream stamp;
  stamp << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
  Json out{{"name", spec.name},
           {"timestamp", stamp.str()},
           {"spec", spec.spec},
           {"seeds", spec.seeds},
           {"measure", spec.measure_window ? "window" : "full"},
           {"points", points}};
  if (spec.sweep) out["sweep"] = {{"axis", spec.sweep->axis}, {"values", spec.sweep->values}};
  return out;
}

void WriteExperimentOutputs(const ExperimentSpec& spec, const ExperimentResult& result,
                            const fs::path& out) {
  fs::create_directories(out);
  WriteText(out / "summary.json", SummaryJson(spec, result).dump(2) + "\n");

  const std::vector<WinFrequencyRow> wf = WinFrequencyTable(spec, result);
  if (!wf.empty()) {
    std::ofstream csv(out / "winfreq.csv");
    csv << "ratio,empirical,theory,seeds\n" << std::setprecision(17);
    for (const WinFrequencyRow& row : wf) {
      csv << row.ratio << ',' << row.empirical << ',' << row.theory << ',' << row.per_seed.size() << '\n';
    }
  }

  if (spec.emit.cdf && !spec.sweep && !result.points[0].runs.empty() &&
      result.points[0].runs[0].is_auction) {
    const PointResult& point = result.points[0];
    const RunConfig config = BuildRunConfig(point.spec, spec.seeds[0]);
    const std::vector<std::vector<double>> theory = TheoryCdfs(config);
    const RunReport& first = point.runs[0];
    const int n = static_cast<int>(first.action_counts.size());
    std::ofstream csv(out / "cdf.csv");
    csv << "bid,player,F_empirical,F_theory\n" << std::setprecision(17);
    for (int i = 0; i < n; ++i) {
      std::vector<double> mean(first.bid_grid.size(), 0.0);
      for (const RunReport& r : point.runs) {
        const std::vector<double> cdf = EmpiricalCdf(r, i, spec.measure_window);
        for (std::size_t a = 0; a < cdf.size(); ++a) mean[a] += cdf[a] / point.runs.size();
      }
      for (std::size_t a = 0; a < mean.size(); ++a) {
        csv << first.bid_grid[a] << ',' << i + 1 << ',' << mean[a] << ',';
        if (i < static_cast<int>(theory.size())) csv << theory[i][a];
        csv << '\n';
      }
    }
  }
}

}  // namespace paygames::experiment
