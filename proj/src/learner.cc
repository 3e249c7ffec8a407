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

#include "paygames/learner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "paygames/errors.h"

namespace paygames {
namespace {

double LogK(int k) { return std::log(static_cast<double>(k)); }

// Softmax of scale * values into out, stable under large magnitudes.
void Softmax(std::span<const double> values, double scale, std::span<double> out) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : values) top = std::max(top, scale * v);
  double total = 0.0;
  for (std::size_t a = 0; a < values.size(); ++a) {
    out[a] = std::exp(scale * values[a] - top);
    total += out[a];
  }
  for (double& p : out) p /= total;
}

void CheckRate(const std::optional<double>& rate) {
  if (rate && !(*rate > 0.0 && std::isfinite(*rate))) {
    throw InputError("learning rate must be positive and finite");
  }
}

// Round index used by the anytime schedule for the next draw.
double NextRound(std::int64_t steps) { return static_cast<double>(steps + 1); }

}  // namespace

std::string AlgorithmName(Algorithm algo) {
  switch (algo) {
    case Algorithm::kHedge:
      return "hedge";
    case Algorithm::kLinearMw:
      return "linmw";
    case Algorithm::kFtpl:
      return "ftpl";
    case Algorithm::kExp3:
      return "exp3";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "hedge") return Algorithm::kHedge;
  if (name == "linmw") return Algorithm::kLinearMw;
  if (name == "ftpl") return Algorithm::kFtpl;
  if (name == "exp3") return Algorithm::kExp3;
  throw InputError("unknown learner algorithm '" + name + "'");
}

Learner::Learner(int num_actions, std::int64_t horizon, std::uint64_t seed)
    : num_actions_(num_actions), horizon_(horizon), sigma_(num_actions, 0.0), rng_(seed) {
  if (num_actions < 1) throw InputError("a learner needs at least one action");
  if (horizon < 1) throw InputError("horizon must be >= 1");
}

void Learner::Update(std::span<const double> payoffs) {
  if (static_cast<int>(payoffs.size()) != num_actions_) {
    throw InvariantError("payoff vector has the wrong length");
  }
  for (double u : payoffs) {
    if (!(u >= 0.0 && u <= 1.0)) throw InvariantError("learner payoff outside [0,1]");
  }
  for (int a = 0; a < num_actions_; ++a) sigma_[a] += payoffs[a];
  ++steps_;
  DoUpdate(payoffs);
}

std::vector<double> Learner::Distribution() const {
  std::vector<double> out(num_actions_);
  Distribution(out);
  return out;
}

Hedge::Hedge(int num_actions, std::int64_t horizon, std::uint64_t seed, std::optional<double> rate,
             RateSchedule schedule)
    : Learner(num_actions, horizon, seed),
      fixed_rate_(rate),
      schedule_(schedule),
      probs_(num_actions, 1.0 / num_actions) {
  CheckRate(rate);
}

double Hedge::rate() const {
  if (fixed_rate_) return *fixed_rate_;
  const double t = schedule_ == RateSchedule::kAnytime ? NextRound(steps())
                                                       : static_cast<double>(horizon());
  return std::sqrt(8.0 * LogK(num_actions()) / t);
}

void Hedge::Refresh() { Softmax(cumulative(), rate(), probs_); }

int Hedge::Act() {
  const int a = rng().Sample(probs_);
  set_last_action(a);
  return a;
}

void Hedge::Distribution(std::span<double> out) const {
  std::copy(probs_.begin(), probs_.end(), out.begin());
}

void Hedge::DoUpdate(std::span<const double>) { Refresh(); }

LinearMw::LinearMw(int num_actions, std::int64_t horizon, std::uint64_t seed,
                   std::optional<double> rate, RateSchedule schedule)
    : Learner(num_actions, horizon, seed),
      fixed_rate_(rate),
      schedule_(schedule),
      log_weights_(num_actions, 0.0),
      probs_(num_actions, 1.0 / num_actions) {
  CheckRate(rate);
  if (rate && *rate > 1.0) throw InputError("linear MW needs rate <= 1");
}

double LinearMw::rate() const {
  if (fixed_rate_) return *fixed_rate_;
  const double t = schedule_ == RateSchedule::kAnytime ? NextRound(steps())
                                                       : static_cast<double>(horizon());
  return std::min(0.5, std::sqrt(LogK(num_actions()) / t));
}

void LinearMw::Refresh() { Softmax(log_weights_, 1.0, probs_); }

int LinearMw::Act() {
  const int a = rng().Sample(probs_);
  set_last_action(a);
  return a;
}

void LinearMw::Distribution(std::span<double> out) const {
  std::copy(probs_.begin(), probs_.end(), out.begin());
}

void LinearMw::DoUpdate(std::span<const double> payoffs) {
  // The rate for this update is the one that was in effect for the draw.
  const double rho = fixed_rate_ ? *fixed_rate_
                     : schedule_ == RateSchedule::kAnytime
                         ? std::min(0.5, std::sqrt(LogK(num_actions()) / static_cast<double>(steps())))
                         : rate();
  for (int a = 0; a < num_actions(); ++a) log_weights_[a] += std::log1p(rho * payoffs[a]);
  Refresh();
}

Ftpl::Ftpl(int num_actions, std::int64_t horizon, std::uint64_t seed, std::optional<double> rate,
           RateSchedule schedule)
    : Learner(num_actions, horizon, seed), fixed_rate_(rate), schedule_(schedule) {
  CheckRate(rate);
}

double Ftpl::rate() const {
  if (fixed_rate_) return *fixed_rate_;
  const double t = schedule_ == RateSchedule::kAnytime ? NextRound(steps())
                                                       : static_cast<double>(horizon());
  return std::max(std::sqrt(LogK(num_actions()) / t), 1e-12);
}

int Ftpl::Act() {
  const double scale = 1.0 / rate();
  const std::vector<double>& sigma = cumulative();
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < num_actions(); ++a) {
    const double v = sigma[a] + scale * rng().Exponential();
    if (v > best_value) {
      best_value = v;
      best = a;
    }
  }
  set_last_action(best);
  return best;
}

void Ftpl::Distribution(std::span<double>) const {
  throw InputError("FTPL has no closed-form sampling distribution");
}

Exp3::Exp3(int num_actions, std::int64_t horizon, std::uint64_t seed, std::optional<double> rate,
           RateSchedule schedule)
    : Learner(num_actions, horizon, seed),
      fixed_rate_(rate),
      schedule_(schedule),
      log_weights_(num_actions, 0.0),
      probs_(num_actions, 1.0 / num_actions) {
  CheckRate(rate);
  if (rate && *rate > 1.0) throw InputError("EXP3 exploration rate must be <= 1");
}

double Exp3::rate() const {
  if (fixed_rate_) return *fixed_rate_;
  const double k = num_actions();
  const double t = schedule_ == RateSchedule::kAnytime ? NextRound(steps())
                                                       : static_cast<double>(horizon());
  return std::min(1.0, std::sqrt(k * LogK(num_actions()) / ((std::numbers::e - 1.0) * t)));
}

void Exp3::Refresh() {
  const double gamma = rate();
  const double k = num_actions();
  Softmax(log_weights_, 1.0, probs_);
  for (double& p : probs_) p = (1.0 - gamma) * p + gamma / k;
}

int Exp3::Act() {
  const int a = rng().Sample(probs_);
  set_last_action(a);
  return a;
}

void Exp3::Distribution(std::span<double> out) const {
  std::copy(probs_.begin(), probs_.end(), out.begin());
}

void Exp3::DoUpdate(std::span<const double> payoffs) {
  const int a = last_action();
  if (a < 0) throw InvariantError("EXP3 update without a preceding action");
  // gamma / K of the draw is also the weight step size.
  const double gamma = fixed_rate_ ? *fixed_rate_
                       : schedule_ == RateSchedule::kAnytime
                           ? std::min(1.0, std::sqrt(num_actions() * LogK(num_actions()) /
                                                     ((std::numbers::e - 1.0) * steps())))
                           : rate();
  const double estimate = payoffs[a] / probs_[a];
  log_weights_[a] += gamma / num_actions() * estimate;
  Refresh();
}

std::unique_ptr<Learner> MakeLearner(const LearnerConfig& config, int num_actions,
                                     std::int64_t horizon) {
  switch (config.algo) {
    case Algorithm::kHedge:
      return std::make_unique<Hedge>(num_actions, horizon, config.seed, config.rate,
                                     config.schedule);
    case Algorithm::kLinearMw:
      return std::make_unique<LinearMw>(num_actions, horizon, config.seed, config.rate,
                                        config.schedule);
    case Algorithm::kFtpl:
      return std::make_unique<Ftpl>(num_actions, horizon, config.seed, config.rate,
                                    config.schedule);
    case Algorithm::kExp3:
      return std::make_unique<Exp3>(num_actions, horizon, config.seed, config.rate,
                                    config.schedule);
  }
  throw InputError("unknown learner algorithm");
}

RegretLedger::RegretLedger(int num_actions) : counterfactual_(num_actions, 0.0) {}

void RegretLedger::Record(double realized, std::span<const double> counterfactual) {
  realized_ += realized;
  for (std::size_t a = 0; a < counterfactual_.size(); ++a) counterfactual_[a] += counterfactual[a];
  ++rounds_;
}

void RegretLedger::Reset() {
  rounds_ = 0;
  realized_ = 0.0;
  std::fill(counterfactual_.begin(), counterfactual_.end(), 0.0);
}

double ExternalRegret(const RegretLedger& ledger) {
  const auto& cf = ledger.counterfactual();
  return *std::max_element(cf.begin(), cf.end()) - ledger.realized();
}

std::vector<MeanBasedViolation> MeanBasedCheck(const MeanBasedTrace& trace, double gamma,
                                               std::int64_t horizon) {
  if (trace.probs.empty() || trace.probs.size() != trace.sigma.size()) {
    throw InputError("mean-based check needs a recorded distribution for every round");
  }
  const double threshold = gamma * static_cast<double>(horizon);
  std::vector<MeanBasedViolation> out;
  for (std::size_t t = 0; t < trace.sigma.size(); ++t) {
    const std::vector<double>& sigma = trace.sigma[t];
    const std::vector<double>& probs = trace.probs[t];
    if (sigma.size() != probs.size() || sigma.empty()) {
      throw InputError("mean-based trace rows have inconsistent lengths");
    }
    const int leader = static_cast<int>(std::max_element(sigma.begin(), sigma.end()) - sigma.begin());
    for (std::size_t a = 0; a < sigma.size(); ++a) {
      const double gap = sigma[leader] - sigma[a];
      if (gap > threshold && probs[a] > gamma) {
        out.push_back({static_cast<std::int64_t>(t + 1), static_cast<int>(a), leader, gap, probs[a]});
      }
    }
  }
  return out;
}

}  // namespace paygames
