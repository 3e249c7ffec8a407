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

#include "paygames/payment_policy.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "paygames/errors.h"

namespace paygames {
namespace {

// Allowance for accumulated rounding when checking totals against M.
constexpr double kBoundSlack = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckOwner(const ProfileSpace& space, int owner) {
  if (owner < 0 || owner >= space.num_players()) throw InputError("policy owner out of range");
}

}  // namespace

PaymentPolicy::PaymentPolicy(ProfileSpace space, int owner, double bound, PolicyRule rule,
                             std::vector<double> max_to)
    : space_(std::move(space)),
      owner_(owner),
      bound_(bound),
      rule_(std::move(rule)),
      max_to_(std::move(max_to)) {
  CheckOwner(space_, owner_);
  if (!(bound_ >= 0.0) || !std::isfinite(bound_)) throw InputError("payment bound must be finite and >= 0");
  max_total_ = 0.0;
  if (const auto* table = std::get_if<rules::Table>(&rule_)) {
    const int n = space_.num_players();
    for (std::int64_t s = 0; s < space_.size(); ++s) {
      double total = 0.0;
      for (int j = 0; j < n; ++j) total += table->payments[s * n + j];
      max_total_ = std::max(max_total_, total);
    }
  } else if (std::holds_alternative<rules::SecondPriceZeroRevenue>(rule_)) {
    max_total_ = bound_;
  } else {
    max_total_ = std::accumulate(max_to_.begin(), max_to_.end(), 0.0);
  }
}

PaymentPolicy PaymentPolicy::Zero(const ProfileSpace& space, int owner, double bound) {
  return PaymentPolicy(space, owner, bound, rules::Zero{},
                       std::vector<double>(space.num_players(), 0.0));
}

PaymentPolicy PaymentPolicy::FromTable(const ProfileSpace& space, int owner,
                                       std::vector<double> payments, double bound) {
  CheckOwner(space, owner);
  const int n = space.num_players();
  if (static_cast<std::int64_t>(payments.size()) != space.size() * n) {
    throw InputError("payment table must have |S| x n entries");
  }
  std::vector<double> max_to(n, 0.0);
  for (std::int64_t s = 0; s < space.size(); ++s) {
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p = payments[s * n + j];
      if (!std::isfinite(p) || p < 0.0) throw InputError("payments must be finite and >= 0");
      if (j == owner && p != 0.0) throw InputError("a policy cannot pay its own agent");
      if (p > bound + kBoundSlack) {
        std::ostringstream msg;
        msg << "payment " << p << " exceeds the bound M = " << bound;
        throw ConfigError(msg.str());
      }
      total += p;
      max_to[j] = std::max(max_to[j], p);
    }
    if (total > bound + kBoundSlack) {
      std::ostringstream msg;
      msg << "total payment " << total << " on profile " << s << " exceeds the bound M = " << bound;
      throw ConfigError(msg.str());
    }
  }
  return PaymentPolicy(space, owner, bound, rules::Table{std::move(payments)}, std::move(max_to));
}

std::string PaymentPolicy::name() const {
  return std::visit(Overloaded{
                        [](const rules::Zero&) { return std::string("zero"); },
                        [](const rules::Table&) { return std::string("table"); },
                        [](const rules::SecondPriceZeroRevenue&) {
                          return std::string("second_price_thm1");
                        },
                        [](const rules::FirstPriceEta&) { return std::string("first_price_eta"); },
                        [](const rules::Cancellation&) { return std::string("cancellation"); },
                    },
                    rule_);
}

void PaymentPolicy::Payments(std::span<const int> profile, std::span<double> out) const {
  const int n = num_players();
  std::fill(out.begin(), out.begin() + n, 0.0);
  std::visit(Overloaded{
                 [](const rules::Zero&) {},
                 [&](const rules::Table& t) {
                   const std::int64_t base = space_.Index(profile) * n;
                   for (int j = 0; j < n; ++j) out[j] = t.payments[base + j];
                 },
                 [&](const rules::SecondPriceZeroRevenue& r) {
                   const double share = 1.0 / (n - 1);
                   if (profile[owner_] == r.top_action) {
                     for (int j = 0; j < n; ++j) {
                       if (j != owner_ && profile[j] == 0) out[j] = r.eps * share;
                     }
                   } else {
                     for (int j = 0; j < n; ++j) {
                       if (j != owner_) out[j] = bound_ * share;
                     }
                   }
                 },
                 [&](const rules::FirstPriceEta& r) {
                   if (profile[r.recipient] == r.floor_action) out[r.recipient] = r.eta;
                 },
                 [&](const rules::Cancellation& r) {
                   const int opp = r.opponent->owner();
                   std::array<double, 16> small{};
                   std::vector<double> large;
                   std::span<double> buf(small);
                   if (n > static_cast<int>(small.size())) {
                     large.resize(n);
                     buf = large;
                   }
                   r.opponent->Payments(profile, buf);
                   out[opp] = buf[owner_];
                 },
             },
             rule_);
}

std::vector<double> PaymentPolicy::Payments(std::span<const int> profile) const {
  space_.Validate(profile);
  std::vector<double> out(num_players());
  Payments(profile, out);
  return out;
}

bool PaymentPolicy::IsZero() const {
  if (std::holds_alternative<rules::Zero>(rule_)) return true;
  return max_total_ == 0.0;
}

PaymentPolicy PaymentPolicy::ToTable() const {
  const int n = num_players();
  std::vector<double> table(space_.size() * n);
  for (std::int64_t s = 0; s < space_.size(); ++s) {
    const Profile profile = space_.Decode(s);
    Payments(profile, std::span<double>(table.data() + s * n, n));
  }
  return FromTable(space_, owner_, std::move(table), bound_);
}

PolicyProfile::PolicyProfile(std::vector<PaymentPolicy> policies) : policies_(std::move(policies)) {
  if (policies_.empty()) throw InputError("policy profile is empty");
  const int n = static_cast<int>(policies_.size());
  for (int i = 0; i < n; ++i) {
    const PaymentPolicy& p = policies_[i];
    if (p.owner() != i) throw InputError("policy " + std::to_string(i) + " has the wrong owner");
    if (!(p.space() == policies_[0].space())) throw InputError("policies reference different games");
    if (p.num_players() != n) throw InputError("policy count does not match player count");
    if (p.bound() != policies_[0].bound()) throw InputError("policies must share the bound M");
  }
}

PolicyProfile PolicyProfile::AllZero(const ProfileSpace& space, double bound) {
  std::vector<PaymentPolicy> policies;
  for (int i = 0; i < space.num_players(); ++i) policies.push_back(PaymentPolicy::Zero(space, i, bound));
  return PolicyProfile(std::move(policies));
}

PolicyProfile PolicyProfile::With(int player, PaymentPolicy policy) const {
  std::vector<PaymentPolicy> copy = policies_;
  copy.at(player) = std::move(policy);
  return PolicyProfile(std::move(copy));
}

void PolicyProfile::NetTransfers(std::span<const int> profile, std::span<double> net,
                                 std::span<double> scratch) const {
  const int n = num_players();
  std::fill(net.begin(), net.begin() + n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (std::holds_alternative<rules::Zero>(policies_[i].rule())) continue;
    policies_[i].Payments(profile, scratch);
    for (int j = 0; j < n; ++j) {
      net[i] -= scratch[j];
      net[j] += scratch[j];
    }
  }
}

std::vector<double> PolicyProfile::PaymentMatrix(std::span<const int> profile) const {
  const int n = num_players();
  std::vector<double> matrix(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    policies_[i].Payments(profile, std::span<double>(matrix.data() + i * n, n));
  }
  return matrix;
}

std::vector<double> AugmentedUtilities(const StageGame& game, std::span<const int> profile,
                                       const PolicyProfile& policies) {
  if (policies.num_players() != game.num_players() ||
      !(policies[0].space() == game.space())) {
    throw InputError("policy profile does not match the game");
  }
  std::vector<double> v = game.EvalPayoffs(profile);
  std::vector<double> net(game.num_players()), scratch(game.num_players());
  policies.NetTransfers(profile, net, scratch);
  for (int i = 0; i < game.num_players(); ++i) v[i] += net[i];
  return v;
}

double DefaultPaymentBound(const AuctionGame& game) {
  return 2.0 * game.num_players() * game.value(0) + 1.0;
}

double DefaultPaymentBound(const FiniteGame& game) {
  double top = 0.0;
  for (double u : game.original_payoffs()) top = std::max(top, std::abs(u));
  return game.num_players() * top + 1.0;
}

PaymentPolicy MakeSecondPriceZeroRevenuePolicy(const AuctionGame& game, double eps, double bound) {
  if (game.format() != AuctionFormat::kSecondPrice) {
    throw InputError("the zero-revenue policy is defined for second-price auctions");
  }
  const int n = game.num_players();
  const double v1 = game.value(0);
  const double v2 = game.value(1);
  if (!(eps > 0.0 && eps < (v1 - v2) / n)) {
    std::ostringstream msg;
    msg << "eps must satisfy 0 < eps < (v1 - v2)/n = " << (v1 - v2) / n;
    throw InputError(msg.str());
  }
  if (!(bound > 2.0 * n * v1)) {
    throw InputError("the bound M must exceed 2 n v_1");
  }
  std::vector<double> max_to(n, bound / (n - 1));
  max_to[0] = 0.0;
  return PaymentPolicy(game.space(), 0, bound,
                       rules::SecondPriceZeroRevenue{eps, game.value_action(0)}, std::move(max_to));
}

PaymentPolicy MakeFirstPriceEtaPolicy(const AuctionGame& game, double eta, int floor_action,
                                      double bound) {
  if (game.format() != AuctionFormat::kFirstPrice) {
    throw InputError("the eta policy is defined for first-price auctions");
  }
  if (floor_action < 0 || floor_action > game.grid_k()) throw InputError("floor bid off the grid");
  const double floor_bid = game.Bid(floor_action);
  const double v2 = game.value(1);
  if (!(eta > 0.0 && eta < v2 - floor_bid)) {
    std::ostringstream msg;
    msg << "eta must satisfy 0 < eta < v_2 - floor = " << v2 - floor_bid;
    throw InputError(msg.str());
  }
  if (bound < 0.0) bound = eta;
  if (bound < eta) throw ConfigError("eta exceeds the bound M");
  std::vector<double> max_to(game.num_players(), 0.0);
  max_to[1] = eta;
  return PaymentPolicy(game.space(), 0, bound, rules::FirstPriceEta{eta, 1, floor_action},
                       std::move(max_to));
}

PaymentPolicy MakeCancellationPolicy(std::shared_ptr<const PaymentPolicy> opponent, int owner) {
  if (!opponent) throw InputError("cancellation needs an opponent policy");
  const ProfileSpace& space = opponent->space();
  CheckOwner(space, owner);
  if (owner == opponent->owner()) throw InputError("a policy cannot cancel itself");
  const int n = space.num_players();
  const double owed = opponent->MaxTo(owner);
  if (owed > opponent->bound() + kBoundSlack) {
    throw ConfigError("matching payment exceeds the bound M");
  }
  if (std::holds_alternative<rules::Zero>(opponent->rule()) || owed == 0.0) {
    return PaymentPolicy::Zero(space, owner, opponent->bound());
  }
  std::vector<double> max_to(n, 0.0);
  max_to[opponent->owner()] = owed;
  const double bound = opponent->bound();
  return PaymentPolicy(space, owner, bound, rules::Cancellation{std::move(opponent)},
                       std::move(max_to));
}

PaymentPolicy MakePayOnActionPolicy(const FiniteGame& game, int owner, int recipient, int action,
                                    double amount, double bound) {
  const ProfileSpace& space = game.space();
  CheckOwner(space, owner);
  CheckOwner(space, recipient);
  if (recipient == owner) throw InputError("recipient must differ from the owner");
  if (action < 0 || action >= space.action_count(recipient)) throw InputError("action out of range");
  const int n = space.num_players();
  std::vector<double> table(space.size() * n, 0.0);
  for (std::int64_t s = 0; s < space.size(); ++s) {
    if (space.ActionOf(s, recipient) == action) table[s * n + recipient] = amount;
  }
  return PaymentPolicy::FromTable(space, owner, std::move(table), bound);
}

PaymentPolicy MakeBlockingPolicy(const FiniteGame& game, int owner, int recipient,
                                 int recipient_action, double amount, int blocked_action,
                                 double bound) {
  const ProfileSpace& space = game.space();
  CheckOwner(space, owner);
  CheckOwner(space, recipient);
  if (recipient == owner) throw InputError("recipient must differ from the owner");
  const int n = space.num_players();
  std::vector<double> table(space.size() * n, 0.0);
  for (std::int64_t s = 0; s < space.size(); ++s) {
    if (space.ActionOf(s, owner) == blocked_action) {
      table[s * n + recipient] = bound;
    } else if (space.ActionOf(s, recipient) == recipient_action) {
      table[s * n + recipient] = amount;
    }
  }
  return PaymentPolicy::FromTable(space, owner, std::move(table), bound);
}

PaymentPolicy MakeDominanceForcingPolicy(const FiniteGame& game, int owner,
                                         std::span<const int> target,
                                         std::span<const double> base_payments, double bound) {
  const ProfileSpace& space = game.space();
  CheckOwner(space, owner);
  space.Validate(target);
  const int n = space.num_players();
  if (static_cast<std::int64_t>(base_payments.size()) != space.size() * n) {
    throw InputError("base payments must have |S| x n entries");
  }
  std::vector<double> table(base_payments.begin(), base_payments.end());
  double largest_on_target = 0.0;
  for (std::int64_t s = 0; s < space.size(); ++s) {
    table[s * n + owner] = 0.0;
    if (space.ActionOf(s, owner) == target[owner]) {
      double total = 0.0;
      for (int j = 0; j < n; ++j) total += table[s * n + j];
      largest_on_target = std::max(largest_on_target, total);
    }
  }
  const double penalty = game.MaxUtility(owner) - game.MinUtility(owner) + largest_on_target + 1.0;
  const double share = penalty / (n - 1);
  for (std::int64_t s = 0; s < space.size(); ++s) {
    if (space.ActionOf(s, owner) == target[owner]) continue;
    for (int j = 0; j < n; ++j) {
      if (j != owner) table[s * n + j] += share;
    }
  }
  return PaymentPolicy::FromTable(space, owner, std::move(table), bound);
}

}  // namespace paygames
