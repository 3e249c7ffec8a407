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

#ifndef PAYGAMES_PAYMENT_POLICY_H_
#define PAYGAMES_PAYMENT_POLICY_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "paygames/game.h"

namespace paygames {

class PaymentPolicy;

// Structured payment rules. Finite-game policies are dense tables; auction
// policies are predicates over the bid grid evaluated on demand.
namespace rules {

struct Zero {};

// Dense |S| x n table of payments from the owner; column `owner` is zero.
struct Table {
  std::vector<double> payments;
};

// Top bidder pays eps/(n-1) to every j bidding 0 while bidding v_1, and
// M/(n-1) to every j > 0 when bidding anything else.
struct SecondPriceZeroRevenue {
  double eps = 0.0;
  int top_action = 0;
};

// Owner pays eta to `recipient` whenever the recipient bids `floor_action`.
struct FirstPriceEta {
  double eta = 0.0;
  int recipient = 1;
  int floor_action = 0;
};

// Pays back to `opponent` exactly what the opponent's policy pays the owner.
struct Cancellation {
  std::shared_ptr<const PaymentPolicy> opponent;
};

}  // namespace rules

using PolicyRule = std::variant<rules::Zero, rules::Table, rules::SecondPriceZeroRevenue,
                                rules::FirstPriceEta, rules::Cancellation>;

// p_ij(s) for a fixed owner i. Immutable after construction.
class PaymentPolicy {
 public:
  static PaymentPolicy Zero(const ProfileSpace& space, int owner, double bound);
  // `payments` is |S| x n; validated against [0, bound] per entry and per
  // profile total, and a zero self-payment column.
  static PaymentPolicy FromTable(const ProfileSpace& space, int owner,
                                 std::vector<double> payments, double bound);

  int owner() const { return owner_; }
  int num_players() const { return space_.num_players(); }
  const ProfileSpace& space() const { return space_; }
  double bound() const { return bound_; }
  const PolicyRule& rule() const { return rule_; }
  std::string name() const;

  // Writes p_{owner,j}(s) for every j into `out` (out[owner] = 0).
  void Payments(std::span<const int> profile, std::span<double> out) const;
  std::vector<double> Payments(std::span<const int> profile) const;
  // Largest total the owner pays on any profile, and largest amount paid to
  // a given recipient. Used for learner normalization.
  double MaxTotal() const { return max_total_; }
  double MaxTo(int recipient) const { return max_to_[recipient]; }
  bool IsZero() const;

  // Compiles a rule policy into a dense table.
  PaymentPolicy ToTable() const;

 private:
  friend PaymentPolicy MakeSecondPriceZeroRevenuePolicy(const AuctionGame&, double, double);
  friend PaymentPolicy MakeFirstPriceEtaPolicy(const AuctionGame&, double, int, double);
  friend PaymentPolicy MakeCancellationPolicy(std::shared_ptr<const PaymentPolicy>, int);

  PaymentPolicy(ProfileSpace space, int owner, double bound, PolicyRule rule,
                std::vector<double> max_to);

  ProfileSpace space_;
  int owner_;
  double bound_;
  PolicyRule rule_;
  std::vector<double> max_to_;
  double max_total_ = 0.0;
};

// One policy per player, all over the same profile space and bound.
class PolicyProfile {
 public:
  explicit PolicyProfile(std::vector<PaymentPolicy> policies);
  static PolicyProfile AllZero(const ProfileSpace& space, double bound);

  int num_players() const { return static_cast<int>(policies_.size()); }
  const PaymentPolicy& operator[](int player) const { return policies_[player]; }
  const std::vector<PaymentPolicy>& policies() const { return policies_; }
  double bound() const { return policies_.front().bound(); }
  PolicyProfile With(int player, PaymentPolicy policy) const;

  // net[i] = sum_j p_ji(s) - p_ij(s). `scratch` needs n slots.
  void NetTransfers(std::span<const int> profile, std::span<double> net,
                    std::span<double> scratch) const;
  // Full n x n matrix, row = payer.
  std::vector<double> PaymentMatrix(std::span<const int> profile) const;

 private:
  std::vector<PaymentPolicy> policies_;
};

// v_i = u_i(s) + sum_{j != i} (p_ji(s) - p_ij(s)).
std::vector<double> AugmentedUtilities(const StageGame& game, std::span<const int> profile,
                                       const PolicyProfile& policies);

// Smallest constants satisfying M > 2 n v_1 (auctions) and M > n * max payoff
// (finite games).
double DefaultPaymentBound(const AuctionGame& game);
double DefaultPaymentBound(const FiniteGame& game);

// Player 1's zero-revenue policy for the second-price auction. Requires
// 0 < eps < (v_1 - v_2)/n and M > 2 n v_1.
PaymentPolicy MakeSecondPriceZeroRevenuePolicy(const AuctionGame& game, double eps, double bound);

// Player 1 pays eta to player 2 whenever player 2 bids `floor_action` (0 in
// the two-bidder case, the grid index of v_3 otherwise). Requires
// 0 < eta < v_2 - floor bid. A negative bound means M = eta.
PaymentPolicy MakeFirstPriceEtaPolicy(const AuctionGame& game, double eta, int floor_action,
                                      double bound = -1.0);

// Owner `owner` pays back exactly what `opponent` pays her, on every profile.
PaymentPolicy MakeCancellationPolicy(std::shared_ptr<const PaymentPolicy> opponent, int owner);
inline PaymentPolicy MakeCancellationPolicy(const PaymentPolicy& opponent, int owner) {
  return MakeCancellationPolicy(std::make_shared<const PaymentPolicy>(opponent), owner);
}

// Owner pays `amount` to `recipient` on every profile where the recipient
// plays `action`.
PaymentPolicy MakePayOnActionPolicy(const FiniteGame& game, int owner, int recipient, int action,
                                    double amount, double bound);

// Pays `amount` to `recipient` when the recipient plays `recipient_action`
// and the owner does not play `blocked_action`; pays the full bound to the
// recipient whenever the owner plays `blocked_action`.
PaymentPolicy MakeBlockingPolicy(const FiniteGame& game, int owner, int recipient,
                                 int recipient_action, double amount, int blocked_action,
                                 double bound);

// Starts from designer payments `base_payments` (|S| x n, payments *to* each
// player) that implement `target`, drops those directed at `owner`, and adds a
// self-penalty on every profile where the owner leaves target[owner], split
// equally among the others. The penalty is max u_i - min u_i plus the largest
// on-target outlay plus 1, which reduces to max u_i + 1 for utilities in
// [0,1] and keeps target[owner] strictly dominant in general.
PaymentPolicy MakeDominanceForcingPolicy(const FiniteGame& game, int owner,
                                         std::span<const int> target,
                                         std::span<const double> base_payments, double bound);

}  // namespace paygames

#endif  // PAYGAMES_PAYMENT_POLICY_H_
