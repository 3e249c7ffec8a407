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

#include "paygames/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "paygames/errors.h"

namespace paygames {

ProfileSpace::ProfileSpace(std::vector<int> action_counts) : counts_(std::move(action_counts)) {
  if (counts_.empty()) throw InputError("profile space needs at least one player");
  strides_.assign(counts_.size(), 1);
  for (int p = num_players() - 1; p >= 0; --p) {
    if (counts_[p] < 1) throw InputError("every action count must be >= 1");
    strides_[p] = size_;
    if (size_ > std::numeric_limits<std::int64_t>::max() / counts_[p]) {
      throw InputError("joint profile space is too large");
    }
    size_ *= counts_[p];
  }
}

void ProfileSpace::Validate(std::span<const int> profile) const {
  if (static_cast<int>(profile.size()) != num_players()) {
    std::ostringstream msg;
    msg << "profile has " << profile.size() << " actions, game has " << num_players()
        << " players";
    throw InputError(msg.str());
  }
  for (int p = 0; p < num_players(); ++p) {
    if (profile[p] < 0 || profile[p] >= counts_[p]) {
      std::ostringstream msg;
      msg << "action " << profile[p] << " out of range for player " << p << " (has "
          << counts_[p] << " actions)";
      throw InputError(msg.str());
    }
  }
}

std::int64_t ProfileSpace::Index(std::span<const int> profile) const {
  std::int64_t index = 0;
  for (int p = 0; p < num_players(); ++p) index += profile[p] * strides_[p];
  return index;
}

Profile ProfileSpace::Decode(std::int64_t index) const {
  Profile profile(counts_.size());
  for (int p = 0; p < num_players(); ++p) profile[p] = ActionOf(index, p);
  return profile;
}

std::string StageGame::ActionLabel(int /*player*/, int action) const {
  return std::to_string(action);
}

std::vector<double> StageGame::EvalPayoffs(std::span<const int> profile) const {
  space_.Validate(profile);
  std::vector<double> out(num_players());
  Utilities(profile, out);
  return out;
}

FiniteGame::FiniteGame(std::vector<int> action_counts, std::vector<double> payoffs,
                       std::vector<std::vector<std::string>> action_names)
    : StageGame(ProfileSpace(std::move(action_counts))),
      original_(std::move(payoffs)),
      names_(std::move(action_names)) {
  const int n = num_players();
  if (n < 2) throw InputError("a finite game needs at least two players");
  if (static_cast<std::int64_t>(original_.size()) != space().size() * n) {
    std::ostringstream msg;
    msg << "payoff tensor has " << original_.size() << " entries, expected "
        << space().size() * n;
    throw InputError(msg.str());
  }
  if (!names_.empty()) {
    if (static_cast<int>(names_.size()) != n) throw InputError("action_names arity mismatch");
    for (int p = 0; p < n; ++p) {
      if (static_cast<int>(names_[p].size()) != space().action_count(p)) {
        throw InputError("action_names size mismatch for player " + std::to_string(p));
      }
    }
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  min_.assign(n, lo);
  max_.assign(n, hi);
  for (std::size_t k = 0; k < original_.size(); ++k) {
    const double u = original_[k];
    if (!std::isfinite(u)) throw InputError("payoffs must be finite");
    const int p = static_cast<int>(k % n);
    min_[p] = std::min(min_[p], u);
    max_[p] = std::max(max_[p], u);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  norm_.offset = lo;
  norm_.scale = hi > lo ? hi - lo : 1.0;
  normalized_.resize(original_.size());
  for (std::size_t k = 0; k < original_.size(); ++k) {
    normalized_[k] = std::clamp(norm_.Apply(original_[k]), 0.0, 1.0);
  }
}

void FiniteGame::Utilities(std::span<const int> profile, std::span<double> out) const {
  const std::int64_t base = space().Index(profile) * num_players();
  for (int p = 0; p < num_players(); ++p) out[p] = original_[base + p];
}

std::string FiniteGame::ActionLabel(int player, int action) const {
  if (names_.empty()) return StageGame::ActionLabel(player, action);
  return names_[player][action];
}

double FiniteGame::ProfileWelfare(std::int64_t profile_index) const {
  double w = 0.0;
  for (int p = 0; p < num_players(); ++p) w += Payoff(profile_index, p);
  return w;
}

namespace {

ProfileSpace AuctionSpace(std::size_t n, int grid_k) {
  if (grid_k < 2) throw InputError("grid_k must be >= 2");
  return ProfileSpace(std::vector<int>(n, grid_k + 1));
}

}  // namespace

AuctionGame::AuctionGame(AuctionFormat format, std::vector<double> values, int grid_k)
    : StageGame(AuctionSpace(values.size(), grid_k)),
      format_(format),
      input_values_(std::move(values)),
      grid_k_(grid_k) {
  const int n = num_players();
  if (n < 2) throw InputError("an auction needs at least two bidders");
  for (int p = 0; p < n; ++p) {
    const double v = input_values_[p];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) throw InputError("values must lie in [0,1]");
    if (p > 0 && v > input_values_[p - 1]) throw InputError("values must be sorted descending");
  }
  top_ = input_values_[0];
  if (!(top_ > 0.0)) throw InputError("the top value v_1 must be positive");
  values_.resize(n);
  value_actions_.resize(n);
  for (int p = 0; p < n; ++p) {
    value_actions_[p] = ActionForBid(input_values_[p]);
    values_[p] = Bid(value_actions_[p]);
  }
  values_[0] = top_;
}

int AuctionGame::ActionForBid(double bid) const {
  const double steps = bid / top_ * grid_k_;
  return std::clamp(static_cast<int>(std::lround(steps)), 0, grid_k_);
}

std::pair<int, int> AuctionGame::WinnerAndPriceAction(std::span<const int> bids) const {
  int winner = 0;
  int best = bids[0];
  int second = -1;
  for (int p = 1; p < num_players(); ++p) {
    if (bids[p] > best) {
      second = best;
      best = bids[p];
      winner = p;
    } else if (bids[p] > second) {
      second = bids[p];
    }
  }
  const int price = format_ == AuctionFormat::kFirstPrice ? best : second;
  return {winner, price};
}

Outcome AuctionGame::Resolve(std::span<const int> bids) const {
  space().Validate(bids);
  auto [winner, price_action] = WinnerAndPriceAction(bids);
  Outcome outcome;
  outcome.winner = winner;
  outcome.price = Bid(price_action);
  outcome.utilities.assign(num_players(), 0.0);
  outcome.utilities[winner] = values_[winner] - outcome.price;
  return outcome;
}

void AuctionGame::Utilities(std::span<const int> profile, std::span<double> out) const {
  auto [winner, price_action] = WinnerAndPriceAction(profile);
  for (int p = 0; p < num_players(); ++p) out[p] = 0.0;
  out[winner] = values_[winner] - Bid(price_action);
}

double AuctionGame::Revenue(std::span<const int> profile) const {
  return Bid(WinnerAndPriceAction(profile).second);
}

std::string AuctionGame::ActionLabel(int /*player*/, int action) const {
  std::ostringstream out;
  out << Bid(action);
  return out.str();
}

FiniteGame AuctionGame::ToFiniteGame() const {
  const int n = num_players();
  std::vector<double> payoffs(space().size() * n);
  std::vector<double> u(n);
  for (std::int64_t s = 0; s < space().size(); ++s) {
    const Profile profile = space().Decode(s);
    Utilities(profile, u);
    std::copy(u.begin(), u.end(), payoffs.begin() + s * n);
  }
  std::vector<std::vector<std::string>> names(n);
  for (int p = 0; p < n; ++p) {
    for (int a = 0; a <= grid_k_; ++a) names[p].push_back(ActionLabel(p, a));
  }
  return FiniteGame(space().action_counts(), std::move(payoffs), std::move(names));
}

JointDistribution::JointDistribution(ProfileSpace space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (static_cast<std::int64_t>(weights_.size()) != space_.size()) {
    throw InputError("distribution size does not match the profile space");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("distribution weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("distribution weights must sum to 1");
}

JointDistribution JointDistribution::PointMass(const ProfileSpace& space,
                                               std::span<const int> profile) {
  space.Validate(profile);
  std::vector<double> w(space.size(), 0.0);
  w[space.Index(profile)] = 1.0;
  return JointDistribution(space, std::move(w));
}

JointDistribution JointDistribution::Uniform(const ProfileSpace& space) {
  return JointDistribution(space,
                           std::vector<double>(space.size(), 1.0 / static_cast<double>(space.size())));
}

JointDistribution JointDistribution::FromCounts(const ProfileSpace& space,
                                                std::vector<double> counts) {
  double total = 0.0;
  for (double c : counts) {
    if (!(c >= 0.0)) throw InputError("counts must be nonnegative");
    total += c;
  }
  if (!(total > 0.0)) throw InputError("counts must not all be zero");
  for (double& c : counts) c /= total;
  // Division can leave the sum a few ulps off; fold the residue into the
  // largest entry.
  const double sum = std::accumulate(counts.begin(), counts.end(), 0.0);
  *std::max_element(counts.begin(), counts.end()) += 1.0 - sum;
  return JointDistribution(space, std::move(counts));
}

JointDistribution JointDistribution::Mix(double alpha, const JointDistribution& x,
                                         const JointDistribution& y) {
  if (!(x.space() == y.space())) throw InputError("mixing distributions over different spaces");
  if (alpha < 0.0 || alpha > 1.0) throw InputError("mixing weight must lie in [0,1]");
  std::vector<double> w(x.weights_.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = alpha * x.weights_[k] + (1 - alpha) * y.weights_[k];
  return JointDistribution(x.space(), std::move(w));
}

std::vector<std::int64_t> JointDistribution::Support(double threshold) const {
  std::vector<std::int64_t> support;
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(weights_.size()); ++s) {
    if (weights_[s] > threshold) support.push_back(s);
  }
  return support;
}

namespace {

void CheckSameSpace(const StageGame& game, const JointDistribution& x) {
  if (!(game.space() == x.space())) throw InputError("distribution is not over this game's profiles");
}

}  // namespace

double ProfileWelfare(const StageGame& game, std::span<const int> profile) {
  const std::vector<double> u = game.EvalPayoffs(profile);
  return std::accumulate(u.begin(), u.end(), 0.0);
}

double Welfare(const StageGame& game, const JointDistribution& x) {
  CheckSameSpace(game, x);
  std::vector<double> u(game.num_players());
  double total = 0.0;
  for (std::int64_t s : x.Support()) {
    game.Utilities(game.space().Decode(s), u);
    total += x.weight(s) * std::accumulate(u.begin(), u.end(), 0.0);
  }
  return total;
}

double ExpectedUtility(const StageGame& game, int player, const JointDistribution& x) {
  CheckSameSpace(game, x);
  if (player < 0 || player >= game.num_players()) throw InputError("player out of range");
  std::vector<double> u(game.num_players());
  double total = 0.0;
  for (std::int64_t s : x.Support()) {
    game.Utilities(game.space().Decode(s), u);
    total += x.weight(s) * u[player];
  }
  return total;
}

double BestResponseUtility(const StageGame& game, int player, const JointDistribution& x) {
  CheckSameSpace(game, x);
  if (player < 0 || player >= game.num_players()) throw InputError("player out of range");
  const ProfileSpace& space = game.space();
  std::vector<double> by_action(space.action_count(player), 0.0);
  std::vector<double> u(game.num_players());
  for (std::int64_t s : x.Support()) {
    Profile profile = space.Decode(s);
    for (int a = 0; a < space.action_count(player); ++a) {
      profile[player] = a;
      game.Utilities(profile, u);
      by_action[a] += x.weight(s) * u[player];
    }
  }
  return *std::max_element(by_action.begin(), by_action.end());
}

FiniteGame BuildPd(const PdVariant& variant) {
  struct Entries {
    double cc1, cc2, cd1, cd2, dc1, dc2, dd1, dd2;
  };
  const Entries e = std::visit(
      [](const auto& v) -> Entries {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PdFigure1>) {
          return {2.0 / 3, 2.0 / 3, 0.0, 1.0, 2.0, 0.0, 1.0 / 3, 1.0 / 3};
        } else if constexpr (std::is_same_v<T, PdSymmetric>) {
          if (!(v.x > v.y && v.y > 1.0)) throw InputError("symmetric PD requires x > y > 1");
          return {v.y, v.y, 0.0, v.x, v.x, 0.0, 1.0, 1.0};
        } else {
          if (!(v.x1 > v.y1 && v.y1 > 1.0 && v.x2 > v.y2 && v.y2 > 1.0)) {
            throw InputError("asymmetric PD requires x_i > y_i > 1");
          }
          return {v.y1, v.y2, 0.0, v.x2, v.x1, 0.0, 1.0, 1.0};
        }
      },
      variant);
  return FiniteGame({2, 2}, {e.cc1, e.cc2, e.cd1, e.cd2, e.dc1, e.dc2, e.dd1, e.dd2},
                    {{"C", "D"}, {"C", "D"}});
}

}  // namespace paygames
