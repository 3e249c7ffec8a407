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

#include "paygames/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "paygames/errors.h"
#include "paygames/lp.h"
#include "paygames/lp_exact.h"

namespace paygames::analysis {
namespace {

constexpr double kPayoffTolerance = 1e-12;

void CheckLpSize(const FiniteGame& game) {
  if (game.space().size() > kMaxLpProfiles) {
    throw InputError("game too large for LP: " + std::to_string(game.space().size()) +
                     " joint profiles (limit " + std::to_string(kMaxLpProfiles) + ")");
  }
}

void CheckExactSize(const FiniteGame& game) {
  for (int c : game.space().action_counts()) {
    if (c > 4) throw InputError("exact LP mode supports at most 4 actions per player");
  }
}

template <class Scalar>
Scalar FromDouble(double v);
template <>
double FromDouble<double>(double v) {
  return v;
}
template <>
mpq_class FromDouble<mpq_class>(double v) {
  return lp::Rationalize(v);
}

double ToDouble(double v) { return v; }
double ToDouble(const mpq_class& v) { return v.get_d(); }

template <class Scalar>
lp::LinearProgram<Scalar> BuildCceProgram(const FiniteGame& game) {
  const ProfileSpace& space = game.space();
  const int n = game.num_players();
  const std::int64_t size = space.size();
  std::vector<Scalar> payoff(size * n);
  for (std::int64_t s = 0; s < size; ++s) {
    for (int i = 0; i < n; ++i) payoff[s * n + i] = FromDouble<Scalar>(game.Payoff(s, i));
  }
  lp::LinearProgram<Scalar> program;
  program.num_vars = static_cast<int>(size);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < space.action_count(i); ++a) {
      std::vector<Scalar> row(size);
      bool nonzero = false;
      for (std::int64_t s = 0; s < size; ++s) {
        const std::int64_t dev = space.WithAction(s, i, a);
        row[s] = payoff[dev * n + i] - payoff[s * n + i];
        if (row[s] != Scalar(0)) nonzero = true;
      }
      if (!nonzero) continue;
      program.a_ub.push_back(std::move(row));
      program.b_ub.push_back(Scalar(0));
    }
  }
  program.a_eq.push_back(std::vector<Scalar>(size, Scalar(1)));
  program.b_eq.push_back(Scalar(1));
  return program;
}

template <class Scalar>
std::vector<Scalar> WelfareObjective(const FiniteGame& game) {
  const int n = game.num_players();
  std::vector<Scalar> c(game.space().size(), Scalar(0));
  for (std::int64_t s = 0; s < game.space().size(); ++s) {
    for (int i = 0; i < n; ++i) c[s] += FromDouble<Scalar>(game.Payoff(s, i));
  }
  return c;
}

// Clips rounding negatives and renormalizes.
template <class Scalar>
JointDistribution ToDistribution(const FiniteGame& game, const std::vector<Scalar>& x) {
  std::vector<double> w(x.size());
  double total = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    w[s] = std::max(0.0, ToDouble(x[s]));
    total += w[s];
  }
  if (!(total > 0.0)) throw InvariantError("LP returned an empty distribution");
  for (double& v : w) v /= total;
  return JointDistribution(game.space(), std::move(w));
}

template <class Scalar>
CceResult SolveExtreme(const FiniteGame& game, Direction direction) {
  const lp::FeasibleRegion<Scalar> region(BuildCceProgram<Scalar>(game));
  if (!region.feasible()) throw InvariantError("CCE program infeasible");
  const std::vector<Scalar> c = WelfareObjective<Scalar>(game);
  const lp::Solution<Scalar> sol =
      direction == Direction::kMax ? region.Maximize(c) : region.Minimize(c);
  if (sol.status != lp::Status::kOptimal) throw InvariantError("CCE program not solved");
  CceResult out;
  out.witness = ToDistribution(game, sol.x);
  out.value = Welfare(game, out.witness);
  out.max_violation = MaxCceViolation(game, out.witness);
  return out;
}

template <class Scalar>
UniquenessCertificate SolveRanges(const FiniteGame& game) {
  const lp::FeasibleRegion<Scalar> region(BuildCceProgram<Scalar>(game));
  if (!region.feasible()) throw InvariantError("CCE program infeasible");
  const std::int64_t size = game.space().size();
  UniquenessCertificate out;
  out.lower.resize(size);
  out.upper.resize(size);
  std::vector<Scalar> c(size, Scalar(0));
  for (std::int64_t s = 0; s < size; ++s) {
    c[s] = Scalar(1);
    const lp::Solution<Scalar> lo = region.Minimize(c);
    const lp::Solution<Scalar> hi = region.Maximize(c);
    c[s] = Scalar(0);
    if (lo.status != lp::Status::kOptimal || hi.status != lp::Status::kOptimal) {
      throw InvariantError("coordinate range program not solved");
    }
    out.lower[s] = ToDouble(lo.value);
    out.upper[s] = ToDouble(hi.value);
    out.max_gap = std::max(out.max_gap, out.upper[s] - out.lower[s]);
  }
  out.unique = out.max_gap <= kLpTolerance;
  if (out.unique) {
    for (std::int64_t s = 0; s < size; ++s) {
      if (out.lower[s] >= 1.0 - kLpTolerance) out.pure_point = s;
    }
  }
  return out;
}

int Opponent(int player) { return 1 - player; }

std::int64_t TwoPlayerIndex(const ProfileSpace& space, int p, int a, int b) {
  Profile s(2);
  s[p] = a;
  s[Opponent(p)] = b;
  return space.Index(s);
}

}  // namespace

bool IsPureNash(const FiniteGame& game, std::int64_t profile) {
  const ProfileSpace& space = game.space();
  for (int i = 0; i < game.num_players(); ++i) {
    const double current = game.Payoff(profile, i);
    for (int a = 0; a < space.action_count(i); ++a) {
      if (game.Payoff(space.WithAction(profile, i, a), i) > current) return false;
    }
  }
  return true;
}

std::vector<std::int64_t> PureNash(const FiniteGame& game) {
  std::vector<std::int64_t> out;
  for (std::int64_t s = 0; s < game.space().size(); ++s) {
    if (IsPureNash(game, s)) out.push_back(s);
  }
  return out;
}

double MaxCceViolation(const FiniteGame& game, const JointDistribution& x) {
  const ProfileSpace& space = game.space();
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < game.num_players(); ++i) {
    for (int a = 0; a < space.action_count(i); ++a) {
      double regret = 0.0;
      for (std::int64_t s = 0; s < space.size(); ++s) {
        const double w = x.weight(s);
        if (w == 0.0) continue;
        regret += w * (game.Payoff(space.WithAction(s, i, a), i) - game.Payoff(s, i));
      }
      worst = std::max(worst, regret);
    }
  }
  return worst;
}

CceResult CceExtremeWelfare(const FiniteGame& game, Direction direction, bool exact) {
  CheckLpSize(game);
  if (exact) {
    CheckExactSize(game);
    return SolveExtreme<mpq_class>(game, direction);
  }
  return SolveExtreme<double>(game, direction);
}

UniquenessCertificate CertifyUniqueCce(const FiniteGame& game, bool exact) {
  CheckLpSize(game);
  if (exact) {
    CheckExactSize(game);
    return SolveRanges<mpq_class>(game);
  }
  return SolveRanges<double>(game);
}

double ComparativeRegret(const FiniteGame& game, int player, const JointDistribution& x,
                         const JointDistribution& y) {
  return BestResponseUtility(game, player, y) - ExpectedUtility(game, player, x);
}

double KImplementation(const FiniteGame& game, std::int64_t y) {
  const JointDistribution point = JointDistribution::PointMass(game.space(), game.space().Decode(y));
  double total = 0.0;
  for (int j = 0; j < game.num_players(); ++j) total += BestResponseUtility(game, j, point);
  return total - game.ProfileWelfare(y);
}

std::vector<double> KImplementationPayments(const FiniteGame& game, std::int64_t y,
                                            double delta) {
  if (!(delta >= 0.0)) throw InputError("strictness margin must be >= 0");
  const ProfileSpace& space = game.space();
  const int n = game.num_players();
  std::vector<double> table(space.size() * n, 0.0);
  for (int j = 0; j < n; ++j) {
    const int target = space.ActionOf(y, j);
    for (std::int64_t s = 0; s < space.size(); ++s) {
      if (space.ActionOf(s, j) != target) continue;
      const double own = game.Payoff(s, j);
      double best = own;
      bool strict = true;
      for (int a = 0; a < space.action_count(j); ++a) {
        if (a == target) continue;
        const double alt = game.Payoff(space.WithAction(s, j, a), j);
        best = std::max(best, alt);
        if (alt >= own) strict = false;
      }
      table[s * n + j] = (best - own) + (strict ? 0.0 : delta);
    }
  }
  return table;
}

double ManipulationCost(const FiniteGame& game, int player, std::int64_t y) {
  const JointDistribution point = JointDistribution::PointMass(game.space(), game.space().Decode(y));
  return KImplementation(game, y) - ComparativeRegret(game, player, point, point);
}

GainCheck SinglePlayerGainCheck(const FiniteGame& game, int player, const JointDistribution& x,
                                std::int64_t y) {
  const JointDistribution point = JointDistribution::PointMass(game.space(), game.space().Decode(y));
  double others = 0.0;
  for (int j = 0; j < game.num_players(); ++j) {
    if (j != player) others += ComparativeRegret(game, j, x, point);
  }
  GainCheck out;
  out.margin = (game.ProfileWelfare(y) - Welfare(game, x)) - others;
  out.profitable = out.margin > kMarginTolerance;
  return out;
}

std::int64_t WelfareMaximizer(const FiniteGame& game, bool* degenerate) {
  std::int64_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  bool tie = false;
  for (std::int64_t s = 0; s < game.space().size(); ++s) {
    const double v = game.ProfileWelfare(s) + kWelfareTieZeta * static_cast<double>(s);
    if (v > best_value) {
      best_value = v;
      best = s;
      tie = false;
    } else if (v == best_value) {
      tie = true;
    }
  }
  if (degenerate) *degenerate = tie;
  return best;
}

WelfareManipulation OptimalWelfareManipulation(const FiniteGame& game,
                                               const JointDistribution& x) {
  WelfareManipulation out;
  out.target = WelfareMaximizer(game, &out.degenerate);
  out.target_is_nash = IsPureNash(game, out.target);
  for (int i = 0; i < game.num_players(); ++i) {
    PlayerVerdict verdict;
    verdict.player = i;
    if (out.target_is_nash) {
      verdict.margin = game.Payoff(out.target, i) - ExpectedUtility(game, i, x);
      verdict.profitable = verdict.margin > kMarginTolerance;
    } else {
      const GainCheck check = SinglePlayerGainCheck(game, i, x, out.target);
      verdict.margin = check.margin;
      verdict.profitable = check.profitable;
    }
    out.verdicts.push_back(verdict);
  }
  return out;
}

StackelbergResult Stackelberg(const FiniteGame& game, int leader) {
  if (game.num_players() != 2) throw InputError("Stackelberg values are for two-player games");
  if (leader < 0 || leader > 1) throw InputError("leader must be 0 or 1");
  const ProfileSpace& space = game.space();
  const int follower = Opponent(leader);
  StackelbergResult out;
  out.leader = leader;
  out.value = -std::numeric_limits<double>::infinity();
  out.pessimistic_value = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < space.action_count(leader); ++a) {
    double best_follow = -std::numeric_limits<double>::infinity();
    for (int b = 0; b < space.action_count(follower); ++b) {
      best_follow = std::max(best_follow, game.Payoff(TwoPlayerIndex(space, leader, a, b), follower));
    }
    int optimistic = -1, pessimistic = -1;
    double opt_value = 0.0, pes_value = 0.0;
    for (int b = 0; b < space.action_count(follower); ++b) {
      const std::int64_t s = TwoPlayerIndex(space, leader, a, b);
      if (game.Payoff(s, follower) < best_follow) continue;
      const double lv = game.Payoff(s, leader);
      if (optimistic < 0 || lv > opt_value) {
        optimistic = b;
        opt_value = lv;
      }
      if (pessimistic < 0 || lv < pes_value) {
        pessimistic = b;
        pes_value = lv;
      }
    }
    if (opt_value > out.value) {
      out.value = opt_value;
      out.commit = a;
      out.response = optimistic;
    }
    if (pes_value > out.pessimistic_value) {
      out.pessimistic_value = pes_value;
      out.pessimistic_commit = a;
      out.pessimistic_response = pessimistic;
    }
  }
  const std::int64_t s = TwoPlayerIndex(space, leader, out.commit, out.response);
  out.payoffs = {game.Payoff(s, 0), game.Payoff(s, 1)};
  return out;
}

std::optional<DominanceOrder> IteratedDominanceOrder(const FiniteGame& game) {
  const ProfileSpace& space = game.space();
  const int n = game.num_players();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    std::vector<int> fixed(n, -1);
    bool ok = true;
    for (int p : order) {
      int dominant = -1;
      for (int a = 0; a < space.action_count(p) && dominant < 0; ++a) {
        bool dominates = true;
        for (std::int64_t s = 0; s < space.size() && dominates; ++s) {
          if (space.ActionOf(s, p) != a) continue;
          bool in_subgame = true;
          for (int q = 0; q < n; ++q) {
            if (fixed[q] >= 0 && space.ActionOf(s, q) != fixed[q]) in_subgame = false;
          }
          if (!in_subgame) continue;
          for (int b = 0; b < space.action_count(p); ++b) {
            if (b != a && !(game.Payoff(s, p) > game.Payoff(space.WithAction(s, p, b), p))) {
              dominates = false;
              break;
            }
          }
        }
        if (dominates) dominant = a;
      }
      if (dominant < 0) {
        ok = false;
        break;
      }
      fixed[p] = dominant;
    }
    if (ok) return DominanceOrder{order, space.Index(fixed)};
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

StabilityReport StabilityVerdicts(const FiniteGame& game, bool exact) {
  StabilityReport out;
  const std::vector<std::int64_t> nash = PureNash(game);
  const CceResult min_cce = CceExtremeWelfare(game, Direction::kMin, exact);
  Thm4Verdict& t4 = out.thm4;
  t4.min_cce_welfare = min_cce.value;
  if (nash.empty()) {
    t4.reason = "no pure Nash equilibrium";
  } else {
    for (std::int64_t s : nash) {
      if (!t4.best_ne_welfare || game.ProfileWelfare(s) > *t4.best_ne_welfare) {
        t4.best_ne_welfare = game.ProfileWelfare(s);
        t4.best_ne = s;
      }
    }
    t4.flagged = min_cce.value < *t4.best_ne_welfare - kLpTolerance;
    if (t4.flagged) {
      t4.witness = min_cce.witness;
      t4.reason = "a CCE has lower welfare than the best pure Nash equilibrium";
    } else {
      t4.reason = "minimum CCE welfare equals the best pure Nash welfare";
    }
  }

  Thm5Verdict& t5 = out.thm5;
  if (game.num_players() != 2) {
    t5.reason = "two-player games only";
    return out;
  }
  t5.applicable = true;
  const UniquenessCertificate cert = CertifyUniqueCce(game, exact);
  t5.unique_pure_cce = cert.unique && cert.pure_point.has_value();
  t5.cce_point = cert.pure_point;
  t5.stackelberg = {Stackelberg(game, 0), Stackelberg(game, 1)};
  for (int p = 0; p < 2; ++p) {
    if (std::abs(t5.stackelberg[0].payoffs[p] - t5.stackelberg[1].payoffs[p]) > kPayoffTolerance) {
      t5.payoff_pairs_differ = true;
    }
  }
  if (t5.unique_pure_cce) {
    for (int leader = 0; leader < 2; ++leader) {
      const double cce_value = game.Payoff(*t5.cce_point, leader);
      const double v = t5.stackelberg[leader].value;
      if (std::abs(v - cce_value) > kPayoffTolerance) t5.leader_values_differ = true;
      if (v > cce_value + kPayoffTolerance) t5.leader_gains = true;
    }
  }
  t5.flagged = t5.unique_pure_cce && t5.payoff_pairs_differ && t5.leader_gains;
  t5.flagged_leader_reading = t5.unique_pure_cce && t5.leader_values_differ && t5.leader_gains;
  if (!t5.unique_pure_cce) {
    t5.reason = "CCE is not a unique pure profile";
  } else if (!t5.leader_gains) {
    t5.reason = "no leader gains over the unique CCE";
  } else if (!t5.payoff_pairs_differ) {
    t5.reason = "leader-wise Stackelberg outcomes have equal payoffs";
  } else {
    t5.reason = "unique pure CCE and a leader strictly gains by commitment";
  }
  return out;
}

PaymentPolicy DominanceForcingPolicy(const FiniteGame& game, int owner, std::int64_t y,
                                     double bound, double delta_normalized) {
  const double delta = delta_normalized * game.normalization().scale;
  const std::vector<double> base = KImplementationPayments(game, y, delta);
  const Profile target = game.space().Decode(y);
  return MakeDominanceForcingPolicy(game, owner, target, base, bound);
}

PdEquilibriumReport PdPaymentEquilibria(const PdVariant& variant) {
  const FiniteGame game = BuildPd(variant);
  constexpr int kC = 0, kD = 1;
  const ProfileSpace& space = game.space();
  const std::int64_t dd = space.Index(Profile{kD, kD});

  PdEquilibriumReport out;
  out.profitable.assign(2, false);
  for (int i = 0; i < 2; ++i) {
    Profile target(2);
    target[i] = kD;
    target[Opponent(i)] = kC;
    const std::int64_t y = space.Index(target);
    const double cost = ManipulationCost(game, i, y);
    const double gain = game.Payoff(y, i) - cost - game.Payoff(dd, i);
    if (gain > kMarginTolerance) {
      out.profitable[i] = true;
      PdEquilibrium eq;
      eq.name = "player " + std::to_string(i + 1) + " pays on " +
                game.ActionLabel(Opponent(i), kC) + " with blocking";
      eq.payer = i;
      eq.outcome = y;
      eq.payment = cost;
      eq.welfare = game.ProfileWelfare(y);
      eq.utilities = {game.Payoff(y, 0), game.Payoff(y, 1)};
      eq.utilities[i] -= cost;
      eq.utilities[Opponent(i)] += cost;
      out.equilibria.push_back(std::move(eq));
    }
  }
  const int count = static_cast<int>(out.profitable[0]) + static_cast<int>(out.profitable[1]);
  if (count == 0) {
    PdEquilibrium eq;
    eq.name = "zero payments";
    eq.outcome = dd;
    eq.welfare = game.ProfileWelfare(dd);
    eq.utilities = {game.Payoff(dd, 0), game.Payoff(dd, 1)};
    out.equilibria.push_back(std::move(eq));
    out.case_label = "no player has a profitable payment policy";
  } else if (count == 1) {
    out.case_label = out.profitable[0] ? "only player 1 has a profitable payment policy"
                                       : "only player 2 has a profitable payment policy";
  } else {
    out.case_label = "both players have profitable payment policies";
  }

  const std::int64_t opt = WelfareMaximizer(game);
  out.opt_welfare = game.ProfileWelfare(opt);
  double worst = std::numeric_limits<double>::infinity();
  double best = -std::numeric_limits<double>::infinity();
  for (const PdEquilibrium& eq : out.equilibria) {
    worst = std::min(worst, eq.welfare);
    best = std::max(best, eq.welfare);
  }
  out.poa = out.opt_welfare / worst;
  out.pos = out.opt_welfare / best;
  out.equilibrium_welfare_ratio = best / worst;
  out.poa_bounded_by_two = out.poa <= 2.0 + kPayoffTolerance;
  const bool symmetric = std::holds_alternative<PdSymmetric>(variant);
  if ((symmetric || count < 2) && !out.poa_bounded_by_two) {
    throw InvariantError("price of anarchy above 2 in a case where it must be bounded");
  }
  if (out.pos > 2.0 + kPayoffTolerance) {
    throw InvariantError("price of stability above 2");
  }
  return out;
}

AnalysisResult Analyze(const FiniteGame& game, bool exact) {
  AnalysisResult out;
  out.pure_nash = PureNash(game);
  for (std::int64_t s : out.pure_nash) {
    if (!out.best_ne_welfare || game.ProfileWelfare(s) > *out.best_ne_welfare) {
      out.best_ne_welfare = game.ProfileWelfare(s);
    }
  }
  out.opt_profile = WelfareMaximizer(game);
  out.opt_welfare = game.ProfileWelfare(out.opt_profile);
  out.min_cce = CceExtremeWelfare(game, Direction::kMin, exact);
  out.max_cce = CceExtremeWelfare(game, Direction::kMax, exact);
  out.uniqueness = CertifyUniqueCce(game, exact);
  if (game.num_players() == 2) out.stackelberg = {Stackelberg(game, 0), Stackelberg(game, 1)};
  out.dominance = IteratedDominanceOrder(game);
  out.stability = StabilityVerdicts(game, exact);
  for (std::int64_t y = 0; y < game.space().size(); ++y) {
    out.k_implementation.push_back(KImplementation(game, y));
  }
  for (int i = 0; i < game.num_players(); ++i) {
    for (std::int64_t y = 0; y < game.space().size(); ++y) {
      const GainCheck check = SinglePlayerGainCheck(game, i, out.min_cce.witness, y);
      if (check.profitable) {
        out.profitable_deviations.push_back({i, y, check.margin, ManipulationCost(game, i, y)});
      }
    }
  }
  out.welfare_manipulation = OptimalWelfareManipulation(game, out.min_cce.witness);
  return out;
}

}  // namespace paygames::analysis
