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

#ifndef PAYGAMES_DYNAMICS_H_
#define PAYGAMES_DYNAMICS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "paygames/game.h"
#include "paygames/learner.h"
#include "paygames/payment_policy.h"

namespace paygames {

struct RunConfig {
  std::shared_ptr<const StageGame> game;
  std::shared_ptr<const PolicyProfile> policies;  // null means all zero
  std::vector<LearnerConfig> learners;            // one per player
  std::int64_t horizon = 100000;
  std::uint64_t seed = 0;
  // Summary window = the final ceil(fraction * T) rounds.
  double window_fraction = 0.1;
  bool record_trace = false;
  // Per-round sigma and sampling distribution of every learner. Memory is
  // T x K per agent; meant for short runs.
  bool record_learner_state = false;
};

// Aggregates over a contiguous block of rounds. Means are per round; utility
// and payment figures are in the game's original units.
struct RoundStats {
  std::int64_t first_round = 1;  // 1-based, inclusive
  std::int64_t rounds = 0;
  // Sparse joint counts keyed by profile index, ascending.
  std::vector<std::pair<std::int64_t, std::int64_t>> profile_counts;
  std::vector<std::vector<std::int64_t>> action_counts;  // [player][action]
  std::vector<double> agent_utility;                      // U_i, with transfers
  std::vector<double> stage_utility;                      // u_i, without
  std::vector<double> payments;                           // n x n, row = payer
  double revenue = 0.0;
  double welfare = 0.0;  // sum_i u_i
  std::vector<std::int64_t> wins;  // auctions only
  std::int64_t no_winner = 0;
  // External regret over the block: cumulative (original units) and per round
  // in the learner's normalized units.
  std::vector<double> regret;
  std::vector<double> normalized_regret;

  double ProfileFrequency(std::int64_t profile_index) const;
  double ActionFrequency(int player, int action) const;
  double WinFrequency(int player) const;
  double PaidBy(int player) const;
};

struct RunTrace {
  std::vector<int> actions;          // T x n
  std::vector<double> agent_utility;  // T x n
  std::vector<double> payments;       // T x n x n
};

struct RunReport {
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::vector<int> action_counts;
  bool is_auction = false;
  std::vector<double> bid_grid;  // auctions: bid value of each action
  std::vector<std::string> learners;
  std::vector<double> norm_lo, norm_hi;
  RoundStats full;
  RoundStats window;
  RunTrace trace;  // empty unless recorded
  std::vector<MeanBasedTrace> learner_states;  // empty unless recorded
};

RunReport Run(const RunConfig& config);

// Window CDF of a player's bid on the grid: cdf[a] = Pr[bid index <= a].
// Throws InputError for finite-game reports.
std::vector<double> EmpiricalCdf(const RunReport& report, int player, bool window = true);

// Empirical joint distribution (dense); finite or small auction spaces only.
JointDistribution EmpiricalJoint(const RunReport& report, bool window = true);

struct NamedPolicy {
  std::string name;
  PaymentPolicy policy;
};

struct DeviationRow {
  std::string name;
  double utility = 0.0;
  double delta = 0.0;
  bool profitable = false;
};

struct DeviationTable {
  int player = 0;
  double epsilon = 0.0;
  double baseline = 0.0;
  bool window = true;
  std::vector<DeviationRow> rows;
  bool stable = true;  // no row with delta > epsilon
};

// Reruns the dynamics with player `player`'s policy swapped for each
// alternative, on fresh seeds, and reports the change in that player's window
// agent utility against the unmodified profile (run on the base seed).
// `use_window` false compares full-horizon averages instead.
DeviationTable DeviationCheck(const RunConfig& config, int player,
                              const std::vector<NamedPolicy>& alternatives, double epsilon,
                              bool use_window = true);

// The standard family for a two-player profile: zero, cancellation of the
// opponent, and pay-on-action policies over a coarse amount grid.
std::vector<NamedPolicy> StandardDeviationFamily(const FiniteGame& game,
                                                 const PolicyProfile& policies, int player,
                                                 const std::vector<double>& amounts);

}  // namespace paygames

#endif  // PAYGAMES_DYNAMICS_H_
