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

#ifndef PAYGAMES_EQUILIBRIUM_H_
#define PAYGAMES_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paygames/game.h"
#include "paygames/payment_policy.h"

namespace paygames::analysis {

// Largest joint profile space the CCE programs accept.
inline constexpr std::int64_t kMaxLpProfiles = 100000;
// Feasibility tolerance for LP witnesses.
inline constexpr double kLpTolerance = 1e-9;

// Profiles (as indices) where no unilateral deviation strictly gains.
std::vector<std::int64_t> PureNash(const FiniteGame& game);
bool IsPureNash(const FiniteGame& game, std::int64_t profile);

enum class Direction { kMin, kMax };

struct CceResult {
  double value = 0.0;  // welfare of the witness
  JointDistribution witness;
  double max_violation = 0.0;  // largest positive expected regret of the witness
};

// Extreme welfare over the CCE polytope. `exact` solves in rationals (games
// with at most 4 actions per player).
CceResult CceExtremeWelfare(const FiniteGame& game, Direction direction, bool exact = false);

// Largest expected regret sum_s x_s (u_i(a, s_-i) - u_i(s)) over players and
// deviations; <= 0 for a CCE.
double MaxCceViolation(const FiniteGame& game, const JointDistribution& x);

struct UniquenessCertificate {
  bool unique = false;
  double max_gap = 0.0;            // max_s (max x_s - min x_s) over the polytope
  std::vector<double> lower, upper;  // per-coordinate range
  std::optional<std::int64_t> pure_point;  // set if the unique CCE is a pure profile
};

// Solves min and max of every coordinate over the CCE polytope.
UniquenessCertificate CertifyUniqueCce(const FiniteGame& game, bool exact = false);

// R_i(x, y) = u_i^BR(y) - u_i(x).
double ComparativeRegret(const FiniteGame& game, int player, const JointDistribution& x,
                         const JointDistribution& y);

// k(y) = sum_j u_j^BR(y) - w(y).
double KImplementation(const FiniteGame& game, std::int64_t y);

// External payments that make y a dominant-strategy equilibrium: for each j
// and each s with s_j = y_j, pay j its best-response gap at s, plus `delta`
// unless y_j is already a strict best response there. |S| x n, row = profile,
// column = recipient, original units.
std::vector<double> KImplementationPayments(const FiniteGame& game, std::int64_t y,
                                            double delta);

// Asymptotic per-round cost to player i of inducing y: k(y) - R_i(y, y).
double ManipulationCost(const FiniteGame& game, int player, std::int64_t y);

struct GainCheck {
  double margin = 0.0;  // (w(y) - w(x)) - sum_{j != i} R_j(x, y)
  bool profitable = false;
};

// Margins within this of zero count as not profitable.
inline constexpr double kMarginTolerance = 1e-12;

GainCheck SinglePlayerGainCheck(const FiniteGame& game, int player, const JointDistribution& x,
                                std::int64_t y);

struct PlayerVerdict {
  int player = 0;
  bool profitable = false;
  double margin = 0.0;  // u_i(y*) - u_i(x) if y* is Nash, else the gain-check margin
};

struct WelfareManipulation {
  std::int64_t target = 0;  // y*
  bool degenerate = false;  // welfare tie survived the perturbation
  bool target_is_nash = false;
  std::vector<PlayerVerdict> verdicts;
};

// Welfare-maximizing profile, with ties broken by the perturbation
// w(s) + zeta * index(s).
inline constexpr double kWelfareTieZeta = 1e-9;
std::int64_t WelfareMaximizer(const FiniteGame& game, bool* degenerate = nullptr);

WelfareManipulation OptimalWelfareManipulation(const FiniteGame& game, const JointDistribution& x);

struct StackelbergResult {
  int leader = 0;
  int commit = 0;    // leader action
  int response = 0;  // follower action, ties in the leader's favor
  double value = 0.0;
  std::vector<double> payoffs;  // (u_1, u_2) at the outcome
  // Same under adversarial follower ties.
  int pessimistic_commit = 0;
  int pessimistic_response = 0;
  double pessimistic_value = 0.0;
};

StackelbergResult Stackelberg(const FiniteGame& game, int leader);

struct DominanceOrder {
  std::vector<int> order;
  std::int64_t survivor = 0;
};

// First player order (in lexicographic permutation order) along which each
// player in turn has one strictly dominant action in the remaining subgame.
std::optional<DominanceOrder> IteratedDominanceOrder(const FiniteGame& game);

struct Thm4Verdict {
  bool flagged = false;
  std::string reason;
  std::optional<double> best_ne_welfare;
  std::optional<std::int64_t> best_ne;
  double min_cce_welfare = 0.0;
  std::optional<JointDistribution> witness;
};

struct Thm5Verdict {
  bool applicable = false;  // two-player games only
  bool flagged = false;     // vector reading of "different payoffs"
  bool flagged_leader_reading = false;  // leader-value reading
  std::string reason;
  bool unique_pure_cce = false;
  std::optional<std::int64_t> cce_point;
  std::vector<StackelbergResult> stackelberg;
  bool payoff_pairs_differ = false;
  bool leader_values_differ = false;  // some leader's value differs from her CCE value
  bool leader_gains = false;          // some leader's value exceeds her CCE value
};

struct StabilityReport {
  Thm4Verdict thm4;
  Thm5Verdict thm5;
};

StabilityReport StabilityVerdicts(const FiniteGame& game, bool exact = false);

// The dominance-forcing policy of player `owner` toward y, built on the
// k-implementation payments with strictness margin `delta_normalized` in the
// game's [0,1] units.
PaymentPolicy DominanceForcingPolicy(const FiniteGame& game, int owner, std::int64_t y,
                                     double bound, double delta_normalized = 1e-3);

struct PdEquilibrium {
  std::string name;
  std::optional<int> payer;
  std::int64_t outcome = 0;
  double payment = 0.0;  // on-path payment in the eps -> 0 limit
  double welfare = 0.0;
  std::vector<double> utilities;
};

struct PdEquilibriumReport {
  std::string case_label;
  std::vector<bool> profitable;  // per player: has a profitable one-sided policy
  std::vector<PdEquilibrium> equilibria;
  double opt_welfare = 0.0;
  double poa = 0.0;
  double pos = 0.0;
  bool poa_bounded_by_two = false;
  double equilibrium_welfare_ratio = 1.0;  // best / worst equilibrium welfare
};

PdEquilibriumReport PdPaymentEquilibria(const PdVariant& variant);

struct AnalysisResult {
  std::vector<std::int64_t> pure_nash;
  std::optional<double> best_ne_welfare;
  double opt_welfare = 0.0;
  std::int64_t opt_profile = 0;
  CceResult min_cce;
  CceResult max_cce;
  UniquenessCertificate uniqueness;
  std::vector<StackelbergResult> stackelberg;
  std::optional<DominanceOrder> dominance;
  StabilityReport stability;
  std::vector<double> k_implementation;  // per profile
  struct Deviation {
    int player = 0;
    std::int64_t target = 0;
    double margin = 0.0;
    double cost = 0.0;
  };
  // Profitable single-player manipulations against the min-welfare CCE.
  std::vector<Deviation> profitable_deviations;
  WelfareManipulation welfare_manipulation;
};

AnalysisResult Analyze(const FiniteGame& game, bool exact = false);

}  // namespace paygames::analysis

#endif  // PAYGAMES_EQUILIBRIUM_H_
