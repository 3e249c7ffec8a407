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

#include "paygames/dynamics.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "paygames/errors.h"

namespace paygames {
namespace {

// Rounding allowed when mapping agent utilities into [0,1].
constexpr double kClampSlack = 1e-9;

class Accumulator {
 public:
  Accumulator(const ProfileSpace& space, std::int64_t first_round)
      : n_(space.num_players()),
        first_round_(first_round),
        action_counts_(n_),
        agent_(n_, 0.0),
        stage_(n_, 0.0),
        payments_(n_ * n_, 0.0),
        wins_(n_, 0) {
    for (int i = 0; i < n_; ++i) action_counts_[i].assign(space.action_count(i), 0);
    ledgers_.reserve(n_);
    for (int i = 0; i < n_; ++i) ledgers_.emplace_back(space.action_count(i));
  }

  void Add(std::int64_t index, std::span<const int> s, std::span<const double> u,
           std::span<const double> v, std::span<const double> pay, double revenue,
           const std::optional<int>& winner) {
    ++rounds_;
    ++counts_[index];
    for (int i = 0; i < n_; ++i) {
      ++action_counts_[i][s[i]];
      agent_[i] += v[i];
      stage_[i] += u[i];
      welfare_ += u[i];
    }
    for (int k = 0; k < n_ * n_; ++k) payments_[k] += pay[k];
    revenue_ += revenue;
    if (winner) {
      ++wins_[*winner];
    } else {
      ++no_winner_;
    }
  }

  RegretLedger& ledger(int i) { return ledgers_[i]; }

  RoundStats Finish(std::span<const double> lo, std::span<const double> hi) const {
    RoundStats out;
    out.first_round = first_round_;
    out.rounds = rounds_;
    out.profile_counts.assign(counts_.begin(), counts_.end());
    std::sort(out.profile_counts.begin(), out.profile_counts.end());
    out.action_counts = action_counts_;
    const double r = rounds_ > 0 ? static_cast<double>(rounds_) : 1.0;
    out.agent_utility.resize(n_);
    out.stage_utility.resize(n_);
    for (int i = 0; i < n_; ++i) {
      out.agent_utility[i] = agent_[i] / r;
      out.stage_utility[i] = stage_[i] / r;
    }
    out.payments.resize(n_ * n_);
    for (int k = 0; k < n_ * n_; ++k) out.payments[k] = payments_[k] / r;
    out.revenue = revenue_ / r;
    out.welfare = welfare_ / r;
    out.wins = wins_;
    out.no_winner = no_winner_;
    for (int i = 0; i < n_; ++i) {
      const double regret = ExternalRegret(ledgers_[i]);
      out.regret.push_back(regret);
      out.normalized_regret.push_back(regret / (r * (hi[i] - lo[i])));
    }
    return out;
  }

 private:
  int n_;
  std::int64_t first_round_;
  std::int64_t rounds_ = 0;
  std::unordered_map<std::int64_t, std::int64_t> counts_;
  std::vector<std::vector<std::int64_t>> action_counts_;
  std::vector<double> agent_, stage_, payments_;
  double revenue_ = 0.0;
  double welfare_ = 0.0;
  std::vector<std::int64_t> wins_;
  std::int64_t no_winner_ = 0;
  std::vector<RegretLedger> ledgers_;
};

// Agent i's utility at `profile`: u_i plus net incoming transfers.
double AgentUtility(const StageGame& game, const PolicyProfile& policies, int i,
                    std::span<const int> profile, std::span<double> u, std::span<double> row) {
  game.Utilities(profile, u);
  double v = u[i];
  const int n = game.num_players();
  for (int p = 0; p < n; ++p) {
    if (std::holds_alternative<rules::Zero>(policies[p].rule())) continue;
    policies[p].Payments(profile, row);
    if (p == i) {
      for (int j = 0; j < n; ++j) v -= row[j];
    } else {
      v += row[i];
    }
  }
  return v;
}

}  // namespace

double RoundStats::ProfileFrequency(std::int64_t profile_index) const {
  auto it = std::lower_bound(profile_counts.begin(), profile_counts.end(),
                             std::make_pair(profile_index, std::int64_t{0}));
  if (it == profile_counts.end() || it->first != profile_index || rounds == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(rounds);
}

double RoundStats::ActionFrequency(int player, int action) const {
  if (rounds == 0) return 0.0;
  return static_cast<double>(action_counts.at(player).at(action)) / static_cast<double>(rounds);
}

double RoundStats::WinFrequency(int player) const {
  if (rounds == 0 || wins.empty()) return 0.0;
  return static_cast<double>(wins.at(player)) / static_cast<double>(rounds);
}

double RoundStats::PaidBy(int player) const {
  const int n = static_cast<int>(agent_utility.size());
  double total = 0.0;
  for (int j = 0; j < n; ++j) total += payments[player * n + j];
  return total;
}

RunReport Run(const RunConfig& config) {
  if (!config.game) throw InputError("run config has no game");
  const StageGame& game = *config.game;
  const ProfileSpace& space = game.space();
  const int n = game.num_players();
  const PolicyProfile policies =
      config.policies ? *config.policies : PolicyProfile::AllZero(space, 1.0);
  if (policies.num_players() != n || !(policies[0].space() == space)) {
    throw InputError("policy profile does not match the game");
  }
  if (static_cast<int>(config.learners.size()) != n) {
    throw InputError("need exactly one learner config per player");
  }
  if (config.horizon < 1) throw InputError("horizon must be >= 1");
  if (!(config.window_fraction > 0.0 && config.window_fraction <= 1.0)) {
    throw InputError("window fraction must lie in (0, 1]");
  }
  const std::int64_t T = config.horizon;
  const std::int64_t window_rounds = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(config.window_fraction * static_cast<double>(T) - 1e-9)));
  const std::int64_t window_start = T - window_rounds + 1;

  RunReport report;
  report.horizon = T;
  report.seed = config.seed;
  report.action_counts = space.action_counts();
  const auto* auction = dynamic_cast<const AuctionGame*>(&game);
  report.is_auction = auction != nullptr;
  if (auction) {
    for (int a = 0; a <= auction->grid_k(); ++a) report.bid_grid.push_back(auction->Bid(a));
  }

  std::vector<std::unique_ptr<Learner>> learners;
  for (int i = 0; i < n; ++i) {
    LearnerConfig lc = config.learners[i];
    lc.seed = MixSeed(config.seed, static_cast<std::uint64_t>(i), config.learners[i].seed);
    learners.push_back(MakeLearner(lc, space.action_count(i), T));
    report.learners.push_back(AlgorithmName(lc.algo));
  }

  report.norm_lo.resize(n);
  report.norm_hi.resize(n);
  for (int i = 0; i < n; ++i) {
    double incoming = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) incoming += policies[j].MaxTo(i);
    }
    report.norm_lo[i] = game.MinUtility(i) - policies[i].MaxTotal();
    report.norm_hi[i] = game.MaxUtility(i) + incoming;
    if (!(report.norm_hi[i] > report.norm_lo[i])) {
      // Constant game for this agent; any positive width works.
      report.norm_hi[i] = report.norm_lo[i] + 1.0;
    }
  }
  if (config.record_learner_state) {
    for (int i = 0; i < n; ++i) {
      if (!learners[i]->HasDistribution()) {
        throw InputError(AlgorithmName(learners[i]->algorithm()) +
                         " does not expose a distribution to record");
      }
    }
    report.learner_states.resize(n);
  }
  if (config.record_trace) {
    report.trace.actions.reserve(T * n);
    report.trace.agent_utility.reserve(T * n);
    report.trace.payments.reserve(T * n * n);
  }

  Accumulator full(space, 1);
  Accumulator window(space, window_start);

  Profile s(n), cf(n);
  std::vector<double> u(n), v(n), scratch_u(n), row(n), pay(n * n);
  int max_k = 0;
  for (int i = 0; i < n; ++i) max_k = std::max(max_k, space.action_count(i));
  std::vector<double> raw(max_k), normalized(max_k);
  int transfer_policies = 0;
  for (int i = 0; i < n; ++i) {
    if (!std::holds_alternative<rules::Zero>(policies[i].rule())) ++transfer_policies;
  }

  for (std::int64_t t = 1; t <= T; ++t) {
    if (config.record_learner_state) {
      for (int i = 0; i < n; ++i) {
        report.learner_states[i].sigma.push_back(learners[i]->cumulative());
        report.learner_states[i].probs.push_back(learners[i]->Distribution());
      }
    }
    for (int i = 0; i < n; ++i) s[i] = learners[i]->Act();
    const std::int64_t index = space.Index(s);

    game.Utilities(s, u);
    std::fill(pay.begin(), pay.end(), 0.0);
    if (transfer_policies > 0) {
      for (int i = 0; i < n; ++i) {
        if (std::holds_alternative<rules::Zero>(policies[i].rule())) continue;
        policies[i].Payments(s, std::span<double>(pay.data() + i * n, n));
      }
    }
    double welfare = 0.0, agent_total = 0.0;
    for (int i = 0; i < n; ++i) {
      v[i] = u[i];
      for (int j = 0; j < n; ++j) v[i] += pay[j * n + i] - pay[i * n + j];
      if (!std::isfinite(v[i])) throw InvariantError("non-finite agent utility");
      welfare += u[i];
      agent_total += v[i];
    }
    if (std::abs(agent_total - welfare) > 1e-9 * (1.0 + policies.bound())) {
      throw InvariantError("transfers do not conserve welfare");
    }
    const double revenue = game.Revenue(s);
    std::optional<int> winner;
    if (auction) winner = auction->Resolve(s).winner;

    full.Add(index, s, u, v, pay, revenue, winner);
    const bool in_window = t >= window_start;
    if (in_window) window.Add(index, s, u, v, pay, revenue, winner);
    if (config.record_trace) {
      report.trace.actions.insert(report.trace.actions.end(), s.begin(), s.end());
      report.trace.agent_utility.insert(report.trace.agent_utility.end(), v.begin(), v.end());
      report.trace.payments.insert(report.trace.payments.end(), pay.begin(), pay.end());
    }

    // Counterfactual feedback: own action varied, s_{-i} fixed, payments
    // re-evaluated at every counterfactual profile.
    for (int i = 0; i < n; ++i) {
      const int k = space.action_count(i);
      cf = s;
      const double width = report.norm_hi[i] - report.norm_lo[i];
      for (int a = 0; a < k; ++a) {
        if (a == s[i]) {
          raw[a] = v[i];
        } else {
          cf[i] = a;
          raw[a] = AgentUtility(game, policies, i, cf, scratch_u, row);
        }
        double x = (raw[a] - report.norm_lo[i]) / width;
        if (x < 0.0 && x > -kClampSlack) x = 0.0;
        if (x > 1.0 && x < 1.0 + kClampSlack) x = 1.0;
        if (!(x >= 0.0 && x <= 1.0)) {
          throw InvariantError("agent utility outside the normalization range");
        }
        normalized[a] = x;
      }
      const std::span<const double> raw_span(raw.data(), k);
      full.ledger(i).Record(v[i], raw_span);
      if (in_window) window.ledger(i).Record(v[i], raw_span);
      learners[i]->Update(std::span<const double>(normalized.data(), k));
    }
  }

  report.full = full.Finish(report.norm_lo, report.norm_hi);
  report.window = window.Finish(report.norm_lo, report.norm_hi);
  return report;
}

std::vector<double> EmpiricalCdf(const RunReport& report, int player, bool window) {
  if (!report.is_auction) throw InputError("bid CDFs exist only for auction runs");
  const RoundStats& stats = window ? report.window : report.full;
  const std::vector<std::int64_t>& counts = stats.action_counts.at(player);
  std::vector<double> cdf(counts.size());
  std::int64_t acc = 0;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    acc += counts[a];
    cdf[a] = static_cast<double>(acc) / static_cast<double>(stats.rounds);
  }
  cdf.back() = 1.0;
  return cdf;
}

JointDistribution EmpiricalJoint(const RunReport& report, bool window) {
  const ProfileSpace space(report.action_counts);
  if (space.size() > 10'000'000) throw InputError("profile space too large for a dense joint");
  const RoundStats& stats = window ? report.window : report.full;
  std::vector<double> counts(space.size(), 0.0);
  for (const auto& [index, c] : stats.profile_counts) counts[index] = static_cast<double>(c);
  return JointDistribution::FromCounts(space, std::move(counts));
}

DeviationTable DeviationCheck(const RunConfig& config, int player,
                              const std::vector<NamedPolicy>& alternatives, double epsilon,
                              bool use_window) {
  if (!config.game) throw InputError("run config has no game");
  const int n = config.game->num_players();
  if (player < 0 || player >= n) throw InputError("deviating player out of range");
  const PolicyProfile base =
      config.policies ? *config.policies : PolicyProfile::AllZero(config.game->space(), 1.0);

  DeviationTable table;
  table.player = player;
  table.epsilon = epsilon;
  table.window = use_window;
  auto utility = [&](const RunReport& r) {
    return (use_window ? r.window : r.full).agent_utility[player];
  };
  table.baseline = utility(Run(config));
  for (std::size_t k = 0; k < alternatives.size(); ++k) {
    RunConfig alt = config;
    alt.record_trace = false;
    alt.record_learner_state = false;
    alt.seed = config.seed + 7919 * (k + 1);
    alt.policies = std::make_shared<const PolicyProfile>(base.With(player, alternatives[k].policy));
    DeviationRow row;
    row.name = alternatives[k].name;
    row.utility = utility(Run(alt));
    row.delta = row.utility - table.baseline;
    row.profitable = row.delta > epsilon;
    if (row.profitable) table.stable = false;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<NamedPolicy> StandardDeviationFamily(const FiniteGame& game,
                                                 const PolicyProfile& policies, int player,
                                                 const std::vector<double>& amounts) {
  if (game.num_players() != 2) throw InputError("the standard family is for two-player games");
  const int other = 1 - player;
  const double bound = policies.bound();
  std::vector<NamedPolicy> family;
  family.push_back({"zero", PaymentPolicy::Zero(game.space(), player, bound)});
  family.push_back({"cancellation", MakeCancellationPolicy(policies[other], player)});
  for (int a = 0; a < game.space().action_count(other); ++a) {
    for (double amount : amounts) {
      if (amount > bound) continue;
      std::string name = "pay " + std::to_string(amount) + " on " + game.ActionLabel(other, a);
      family.push_back(
          {std::move(name), MakePayOnActionPolicy(game, player, other, a, amount, bound)});
    }
  }
  return family;
}

}  // namespace paygames
