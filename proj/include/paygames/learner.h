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

#ifndef PAYGAMES_LEARNER_H_
#define PAYGAMES_LEARNER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paygames/rng.h"

namespace paygames {

enum class Algorithm { kHedge, kLinearMw, kFtpl, kExp3 };

// How the learning rate depends on the round. kFixed uses the known horizon
// T; kAnytime recomputes the rate from the current round t.
enum class RateSchedule { kFixed, kAnytime };

std::string AlgorithmName(Algorithm algo);
Algorithm ParseAlgorithm(const std::string& name);

struct LearnerConfig {
  Algorithm algo = Algorithm::kHedge;
  // nullopt selects the default tuning for the algorithm.
  std::optional<double> rate;
  RateSchedule schedule = RateSchedule::kFixed;
  std::uint64_t seed = 0;
};

// Experts learner over K actions with payoffs in [0,1]. Act() samples from
// the current distribution; Update() takes the full counterfactual payoff
// vector of the round just played.
class Learner {
 public:
  Learner(int num_actions, std::int64_t horizon, std::uint64_t seed);
  virtual ~Learner() = default;

  virtual Algorithm algorithm() const = 0;
  int num_actions() const { return num_actions_; }
  std::int64_t steps() const { return steps_; }
  std::int64_t horizon() const { return horizon_; }
  // sigma_{t}: cumulative payoff of every action over the updates so far.
  const std::vector<double>& cumulative() const { return sigma_; }
  // Rate in effect for the next Act().
  virtual double rate() const = 0;

  virtual int Act() = 0;
  void Update(std::span<const double> payoffs);

  // Whether the sampling distribution is available in closed form.
  virtual bool HasDistribution() const { return true; }
  // Distribution the next Act() samples from; throws InputError when the
  // algorithm has none (FTPL).
  virtual void Distribution(std::span<double> out) const = 0;
  std::vector<double> Distribution() const;

 protected:
  virtual void DoUpdate(std::span<const double> payoffs) = 0;

  Rng& rng() { return rng_; }
  int last_action() const { return last_action_; }
  void set_last_action(int a) { last_action_ = a; }

 private:
  int num_actions_;
  std::int64_t horizon_;
  std::int64_t steps_ = 0;
  int last_action_ = -1;
  std::vector<double> sigma_;
  Rng rng_;
};

// Exponential weights: p = softmax(rho * sigma). Default rho = sqrt(8 ln K / T),
// or sqrt(8 ln K / t) under the anytime schedule.
class Hedge final : public Learner {
 public:
  Hedge(int num_actions, std::int64_t horizon, std::uint64_t seed, std::optional<double> rate,
        RateSchedule schedule);

  Algorithm algorithm() const override { return Algorithm::kHedge; }
  double rate() const override;
  int Act() override;
  using Learner::Distribution;
  void Distribution(std::span<double> out) const override;

 private:
  void DoUpdate(std::span<const double> payoffs) override;
  void Refresh();

  std::optional<double> fixed_rate_;
  RateSchedule schedule_;
  std::vector<double> probs_;
};

// Multiplicative weights with the linear update w <- w (1 + rho u), stored
// in the log domain. Default rho = min(1/2, sqrt(ln K / T)).
class LinearMw final : public Learner {
 public:
  LinearMw(int num_actions, std::int64_t horizon, std::uint64_t seed, std::optional<double> rate,
           RateSchedule schedule);

  Algorithm algorithm() const override { return Algorithm::kLinearMw; }
  double rate() const override;
  int Act() override;
  using Learner::Distribution;
  void Distribution(std::span<double> out) const override;

 private:
  void DoUpdate(std::span<const double> payoffs) override;
  void Refresh();

  std::optional<double> fixed_rate_;
  RateSchedule schedule_;
  std::vector<double> log_weights_;
  std::vector<double> probs_;
};

// Follow the perturbed leader with fresh Exp(1)/rho perturbations each round.
// Default rho = sqrt(ln K / T). Ties go to the lowest index.
class Ftpl final : public Learner {
 public:
  Ftpl(int num_actions, std::int64_t horizon, std::uint64_t seed, std::optional<double> rate,
       RateSchedule schedule);

  Algorithm algorithm() const override { return Algorithm::kFtpl; }
  double rate() const override;
  int Act() override;
  bool HasDistribution() const override { return false; }
  using Learner::Distribution;
  void Distribution(std::span<double> out) const override;

 private:
  void DoUpdate(std::span<const double>) override {}

  std::optional<double> fixed_rate_;
  RateSchedule schedule_;
};

// EXP3 with uniform exploration gamma. It only ever reads the payoff of the
// action it played, so it runs with bandit feedback even when the engine
// supplies the full vector. Default gamma = min(1, sqrt(K ln K / ((e-1) T)));
// `rate` overrides gamma.
class Exp3 final : public Learner {
 public:
  Exp3(int num_actions, std::int64_t horizon, std::uint64_t seed, std::optional<double> rate,
       RateSchedule schedule);

  Algorithm algorithm() const override { return Algorithm::kExp3; }
  double rate() const override;
  int Act() override;
  using Learner::Distribution;
  void Distribution(std::span<double> out) const override;

 private:
  void DoUpdate(std::span<const double> payoffs) override;
  void Refresh();

  std::optional<double> fixed_rate_;
  RateSchedule schedule_;
  std::vector<double> log_weights_;
  std::vector<double> probs_;
};

std::unique_ptr<Learner> MakeLearner(const LearnerConfig& config, int num_actions,
                                     std::int64_t horizon);

// Realized and counterfactual cumulative payoffs of one agent.
class RegretLedger {
 public:
  explicit RegretLedger(int num_actions);

  void Record(double realized, std::span<const double> counterfactual);
  void Reset();

  std::int64_t rounds() const { return rounds_; }
  double realized() const { return realized_; }
  const std::vector<double>& counterfactual() const { return counterfactual_; }

 private:
  std::int64_t rounds_ = 0;
  double realized_ = 0.0;
  std::vector<double> counterfactual_;
};

// max_a counterfactual(a) - realized. Can be negative.
double ExternalRegret(const RegretLedger& ledger);

// Per-round record needed by the mean-based check: sigma before the round's
// draw and the distribution that was sampled from.
struct MeanBasedTrace {
  std::vector<std::vector<double>> sigma;
  std::vector<std::vector<double>> probs;
};

struct MeanBasedViolation {
  std::int64_t t = 0;  // 1-based round
  int action = 0;      // the trailing action that was played too often
  int leader = 0;      // an action ahead by more than gamma T
  double gap = 0.0;
  double prob = 0.0;
};

// Flags every (t, a, j) with sigma_a < sigma_j - gamma T and p_a > gamma, using
// the leading j. `horizon` is T; an empty result means the trace is
// gamma-mean-based.
std::vector<MeanBasedViolation> MeanBasedCheck(const MeanBasedTrace& trace, double gamma,
                                               std::int64_t horizon);

}  // namespace paygames

#endif  // PAYGAMES_LEARNER_H_
