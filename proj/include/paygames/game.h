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

#ifndef PAYGAMES_GAME_H_
#define PAYGAMES_GAME_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace paygames {

// A joint pure action profile: one action index per player.
using Profile = std::vector<int>;

// Row-major enumeration of joint profiles, player 0 most significant.
class ProfileSpace {
 public:
  ProfileSpace() = default;
  explicit ProfileSpace(std::vector<int> action_counts);

  int num_players() const { return static_cast<int>(counts_.size()); }
  int action_count(int player) const { return counts_[player]; }
  const std::vector<int>& action_counts() const { return counts_; }
  std::int64_t size() const { return size_; }
  std::int64_t stride(int player) const { return strides_[player]; }

  // Throws InputError on wrong arity or out-of-range action.
  void Validate(std::span<const int> profile) const;
  std::int64_t Index(std::span<const int> profile) const;
  Profile Decode(std::int64_t index) const;
  int ActionOf(std::int64_t index, int player) const {
    return static_cast<int>((index / strides_[player]) % counts_[player]);
  }
  std::int64_t WithAction(std::int64_t index, int player, int action) const {
    return index + (action - ActionOf(index, player)) * strides_[player];
  }

  bool operator==(const ProfileSpace& other) const { return counts_ == other.counts_; }

 private:
  std::vector<int> counts_;
  std::vector<std::int64_t> strides_;
  std::int64_t size_ = 1;
};

// The stage game played every round. Utilities are reported in the game's
// original units; learners only ever see engine-normalized values.
class StageGame {
 public:
  explicit StageGame(ProfileSpace space) : space_(std::move(space)) {}
  virtual ~StageGame() = default;

  const ProfileSpace& space() const { return space_; }
  int num_players() const { return space_.num_players(); }

  // Unchecked hot path; `out` has one slot per player.
  virtual void Utilities(std::span<const int> profile, std::span<double> out) const = 0;
  // Money collected by a third party (the auctioneer); zero for finite games.
  virtual double Revenue(std::span<const int> /*profile*/) const { return 0.0; }
  // Bounds on a player's stage utility over all profiles.
  virtual double MinUtility(int player) const = 0;
  virtual double MaxUtility(int player) const = 0;
  virtual std::string ActionLabel(int player, int action) const;

  // Validated evaluation (u_1(s), ..., u_n(s)).
  std::vector<double> EvalPayoffs(std::span<const int> profile) const;

 private:
  ProfileSpace space_;
};

// Affine map original -> [0,1], shared by all players of a finite game.
struct Normalization {
  double offset = 0.0;
  double scale = 1.0;
  double Apply(double u) const { return (u - offset) / scale; }
  double Invert(double normalized) const { return normalized * scale + offset; }
};

class FiniteGame final : public StageGame {
 public:
  // `payoffs` is |S| x n in profile order, original units.
  FiniteGame(std::vector<int> action_counts, std::vector<double> payoffs,
             std::vector<std::vector<std::string>> action_names = {});

  void Utilities(std::span<const int> profile, std::span<double> out) const override;
  double MinUtility(int player) const override { return min_[player]; }
  double MaxUtility(int player) const override { return max_[player]; }
  std::string ActionLabel(int player, int action) const override;

  double Payoff(std::int64_t profile_index, int player) const {
    return original_[profile_index * num_players() + player];
  }
  double NormalizedPayoff(std::int64_t profile_index, int player) const {
    return normalized_[profile_index * num_players() + player];
  }
  const Normalization& normalization() const { return norm_; }
  const std::vector<double>& original_payoffs() const { return original_; }
  const std::vector<double>& normalized_payoffs() const { return normalized_; }
  const std::vector<std::vector<std::string>>& action_names() const { return names_; }

  // Welfare of a pure profile in original units.
  double ProfileWelfare(std::int64_t profile_index) const;

 private:
  std::vector<double> original_;
  std::vector<double> normalized_;
  Normalization norm_;
  std::vector<double> min_, max_;
  std::vector<std::vector<std::string>> names_;
};

enum class AuctionFormat { kFirstPrice, kSecondPrice };

struct Outcome {
  std::optional<int> winner;
  double price = 0.0;
  std::vector<double> utilities;
};

// Single-item auction on the bid grid {0, 1/k, ..., 1} * v_1. Ties go to the
// lowest-index bidder. Values are snapped to the grid.
class AuctionGame final : public StageGame {
 public:
  AuctionGame(AuctionFormat format, std::vector<double> values, int grid_k);

  AuctionFormat format() const { return format_; }
  int grid_k() const { return grid_k_; }
  // Values as given to the constructor; `value()` is the snapped value.
  const std::vector<double>& input_values() const { return input_values_; }
  double value(int player) const { return values_[player]; }
  int value_action(int player) const { return value_actions_[player]; }
  double Bid(int action) const { return top_ * action / grid_k_; }
  // Grid index of a currency amount, rounding to the nearest step.
  int ActionForBid(double bid) const;

  Outcome Resolve(std::span<const int> bids) const;
  void Utilities(std::span<const int> profile, std::span<double> out) const override;
  double Revenue(std::span<const int> profile) const override;
  // The full attainable range [-v_1, v_1] for every bidder.
  double MinUtility(int) const override { return -top_; }
  double MaxUtility(int) const override { return top_; }
  std::string ActionLabel(int player, int action) const override;

  // Dense finite-game view; only sensible for small grids.
  FiniteGame ToFiniteGame() const;

 private:
  // Returns (winner, price) for a bid profile.
  std::pair<int, int> WinnerAndPriceAction(std::span<const int> bids) const;

  AuctionFormat format_;
  std::vector<double> input_values_;
  std::vector<double> values_;
  std::vector<int> value_actions_;
  int grid_k_;
  double top_;
};

// Probability weights over the joint profiles of a game.
class JointDistribution {
 public:
  // Validates: size matches, weights >= 0, sum within 1e-12 of 1.
  JointDistribution() = default;
  JointDistribution(ProfileSpace space, std::vector<double> weights);

  static JointDistribution PointMass(const ProfileSpace& space, std::span<const int> profile);
  static JointDistribution Uniform(const ProfileSpace& space);
  // Normalizes nonnegative counts (not all zero).
  static JointDistribution FromCounts(const ProfileSpace& space, std::vector<double> counts);
  static JointDistribution Mix(double alpha, const JointDistribution& x, const JointDistribution& y);

  const ProfileSpace& space() const { return space_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::int64_t index) const { return weights_[index]; }
  std::vector<std::int64_t> Support(double threshold = 0.0) const;

 private:
  ProfileSpace space_;
  std::vector<double> weights_;
};

double ProfileWelfare(const StageGame& game, std::span<const int> profile);
// Expected sum of player utilities under the distribution.
double Welfare(const StageGame& game, const JointDistribution& x);
double ExpectedUtility(const StageGame& game, int player, const JointDistribution& x);
// Best fixed deviation for `player` against the (correlated) play of the
// others under x. On a point mass this is u_i^BR(s).
double BestResponseUtility(const StageGame& game, int player, const JointDistribution& x);

// Prisoner's dilemma constructors. Action 0 is C, action 1 is D.
struct PdFigure1 {};
struct PdSymmetric {
  double x;
  double y;
};
struct PdAsymmetric {
  double x1, y1, x2, y2;
};
using PdVariant = std::variant<PdFigure1, PdSymmetric, PdAsymmetric>;

FiniteGame BuildPd(const PdVariant& variant);

}  // namespace paygames

#endif  // PAYGAMES_GAME_H_
