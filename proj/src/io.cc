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

#include "paygames/io.h"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "paygames/errors.h"

namespace paygames::io {
namespace {

const Json& Require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <class T>
T Get(const Json& j, const char* key) {
  try {
    return Require(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T GetOr(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return Get<T>(j, key);
}

const AuctionGame& AsAuction(const StageGame& game, const std::string& rule) {
  const auto* auction = dynamic_cast<const AuctionGame*>(&game);
  if (!auction) throw InputError("policy rule '" + rule + "' needs an auction game");
  return *auction;
}

const FiniteGame& AsFinite(const StageGame& game, const std::string& rule) {
  const auto* finite = dynamic_cast<const FiniteGame*>(&game);
  if (!finite) throw InputError("policy rule '" + rule + "' needs a finite game");
  return *finite;
}

// An action given either as an index or as one of the game's labels.
int ParseAction(const StageGame& game, int player, const Json& j) {
  if (j.is_number_integer()) {
    const int a = j.get<int>();
    if (a < 0 || a >= game.space().action_count(player)) throw InputError("action out of range");
    return a;
  }
  if (j.is_string()) {
    const std::string label = j.get<std::string>();
    for (int a = 0; a < game.space().action_count(player); ++a) {
      if (game.ActionLabel(player, a) == label) return a;
    }
    throw InputError("unknown action label '" + label + "'");
  }
  throw InputError("actions must be indices or labels");
}

Profile ParseProfile(const StageGame& game, const Json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != game.num_players()) {
    throw InputError("profile must list one action per player");
  }
  Profile s(game.num_players());
  for (int p = 0; p < game.num_players(); ++p) s[p] = ParseAction(game, p, j[p]);
  return s;
}

Json ProfileJson(const ProfileSpace& space, std::int64_t index) { return space.Decode(index); }

}  // namespace

Json LoadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

FiniteGame FiniteGameFromJson(const Json& j) {
  const std::string type = Get<std::string>(j, "type");
  if (type == "pd") {
    const std::string variant = GetOr<std::string>(j, "variant", "figure1");
    if (variant == "figure1") return BuildPd(PdFigure1{});
    if (variant == "symmetric") return BuildPd(PdSymmetric{Get<double>(j, "x"), Get<double>(j, "y")});
    if (variant == "asymmetric") {
      return BuildPd(PdAsymmetric{Get<double>(j, "x1"), Get<double>(j, "y1"), Get<double>(j, "x2"),
                                  Get<double>(j, "y2")});
    }
    throw InputError("unknown PD variant '" + variant + "'");
  }
  if (type != "finite") throw InputError("expected a finite game, got type '" + type + "'");
  const std::vector<int> counts = Get<std::vector<int>>(j, "action_counts");
  const Json& rows = Require(j, "payoffs");
  if (!rows.is_array()) throw InputError("payoffs must be an array of per-profile vectors");
  std::vector<double> payoffs;
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != counts.size()) {
      throw InputError("every payoff entry needs one utility per player");
    }
    for (const Json& u : row) payoffs.push_back(u.get<double>());
  }
  std::vector<std::vector<std::string>> names;
  if (j.contains("action_names")) names = Get<std::vector<std::vector<std::string>>>(j, "action_names");
  if (counts.size() < 2) throw InputError("a finite game needs at least two players");
  return FiniteGame(counts, std::move(payoffs), std::move(names));
}

std::shared_ptr<const StageGame> GameFromJson(const Json& j) {
  const std::string type = Get<std::string>(j, "type");
  if (type == "auction") {
    const std::string format = Get<std::string>(j, "format");
    AuctionFormat f;
    if (format == "first") {
      f = AuctionFormat::kFirstPrice;
    } else if (format == "second") {
      f = AuctionFormat::kSecondPrice;
    } else {
      throw InputError("auction format must be 'first' or 'second'");
    }
    return std::make_shared<AuctionGame>(f, Get<std::vector<double>>(j, "values"),
                                         GetOr<int>(j, "grid_k", 100));
  }
  return std::make_shared<FiniteGame>(FiniteGameFromJson(j));
}

Json GameToJson(const StageGame& game) {
  if (const auto* a = dynamic_cast<const AuctionGame*>(&game)) {
    return Json{{"type", "auction"},
                {"format", a->format() == AuctionFormat::kFirstPrice ? "first" : "second"},
                {"values", a->input_values()},
                {"grid_k", a->grid_k()}};
  }
  const auto& f = dynamic_cast<const FiniteGame&>(game);
  Json rows = Json::array();
  const int n = f.num_players();
  for (std::int64_t s = 0; s < f.space().size(); ++s) {
    Json row = Json::array();
    for (int i = 0; i < n; ++i) row.push_back(f.Payoff(s, i));
    rows.push_back(std::move(row));
  }
  Json out{{"type", "finite"}, {"action_counts", f.space().action_counts()}, {"payoffs", rows}};
  if (!f.action_names().empty()) out["action_names"] = f.action_names();
  return out;
}

double DefaultBound(const StageGame& game) {
  if (const auto* a = dynamic_cast<const AuctionGame*>(&game)) return DefaultPaymentBound(*a);
  return DefaultPaymentBound(dynamic_cast<const FiniteGame&>(game));
}

PaymentPolicy PolicyFromJson(const StageGame& game, const Json& j, int default_owner, double bound,
                             const std::vector<std::shared_ptr<const PaymentPolicy>>& resolved) {
  const std::string type = GetOr<std::string>(j, "type", "rule");
  const int owner = GetOr<int>(j, "owner", default_owner);
  bound = GetOr<double>(j, "bound", bound);
  const ProfileSpace& space = game.space();
  const int n = game.num_players();
  if (type == "table") {
    std::vector<double> table(space.size() * n, 0.0);
    for (const Json& entry : Require(j, "entries")) {
      const Profile s = ParseProfile(game, Require(entry, "profile"));
      const std::vector<double> pay = Get<std::vector<double>>(entry, "payments");
      if (static_cast<int>(pay.size()) != n) throw InputError("payments need one entry per player");
      std::copy(pay.begin(), pay.end(), table.begin() + space.Index(s) * n);
    }
    return PaymentPolicy::FromTable(space, owner, std::move(table), bound);
  }
  if (type != "rule") throw InputError("policy type must be 'table' or 'rule'");
  const std::string name = Get<std::string>(j, "name");
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (name == "zero") return PaymentPolicy::Zero(space, owner, bound);
  if (name == "second_price_thm1") {
    if (owner != 0) throw InputError("second_price_thm1 is player 1's policy");
    return MakeSecondPriceZeroRevenuePolicy(AsAuction(game, name), Get<double>(params, "eps"), bound);
  }
  if (name == "first_price_eta") {
    if (owner != 0) throw InputError("first_price_eta is player 1's policy");
    const AuctionGame& a = AsAuction(game, name);
    int floor_action = 0;
    if (params.contains("floor_action")) {
      floor_action = Get<int>(params, "floor_action");
    } else if (params.contains("floor")) {
      floor_action = a.ActionForBid(Get<double>(params, "floor"));
    } else if (n >= 3) {
      floor_action = a.value_action(2);
    }
    const double floor_bid = a.Bid(floor_action);
    double eta = 0.0;
    const Json& e = Require(params, "eta");
    if (e.is_string()) {
      if (e.get<std::string>() != "optimal") throw InputError("eta must be a number or 'optimal'");
      eta = (a.value(1) - floor_bid) / 2.0;
    } else {
      eta = e.get<double>();
    }
    return MakeFirstPriceEtaPolicy(a, eta, floor_action, bound);
  }
  if (name == "cancellation") {
    std::shared_ptr<const PaymentPolicy> opponent;
    if (params.contains("opponent")) {
      const Json& spec = params.at("opponent");
      const int other = GetOr<int>(spec, "owner", owner == 0 ? 1 : 0);
      opponent = std::make_shared<const PaymentPolicy>(PolicyFromJson(game, spec, other, bound, resolved));
    } else {
      const int of = Get<int>(params, "of");
      if (of < 0 || of >= static_cast<int>(resolved.size()) || !resolved[of]) {
        throw InputError("cancellation refers to an unknown policy");
      }
      opponent = resolved[of];
    }
    return MakeCancellationPolicy(opponent, owner);
  }
  const FiniteGame* finite = dynamic_cast<const FiniteGame*>(&game);
  if (name == "pay_on_action") {
    const FiniteGame& g = AsFinite(game, name);
    const int recipient = Get<int>(params, "recipient");
    return MakePayOnActionPolicy(g, owner, recipient, ParseAction(game, recipient, Require(params, "action")),
                                 Get<double>(params, "amount"), bound);
  }
  if (name == "blocking") {
    const FiniteGame& g = AsFinite(game, name);
    const int recipient = Get<int>(params, "recipient");
    return MakeBlockingPolicy(g, owner, recipient,
                              ParseAction(game, recipient, Require(params, "recipient_action")),
                              Get<double>(params, "amount"),
                              ParseAction(game, owner, Require(params, "blocked_action")), bound);
  }
  if (name == "dominance_forcing") {
    const FiniteGame& g = AsFinite(game, name);
    const Profile target = ParseProfile(game, Require(params, "target"));
    return analysis::DominanceForcingPolicy(g, owner, space.Index(target), bound,
                                            GetOr<double>(params, "delta", 1e-3));
  }
  (void)finite;
  throw InputError("unknown policy rule '" + name + "'");
}

PolicyProfile PolicyProfileFromJson(const StageGame& game, const Json& j, double bound) {
  const int n = game.num_players();
  if (!j.is_null() && !j.is_array()) throw InputError("policies must be a list");
  if (j.is_array() && static_cast<int>(j.size()) > n) throw InputError("more policies than players");
  std::vector<std::shared_ptr<const PaymentPolicy>> built(n);
  auto is_cancellation = [](const Json& spec) {
    return spec.is_object() && spec.value("name", "") == "cancellation" &&
           spec.contains("params") && spec.at("params").contains("of");
  };
  // Two passes: cancellation-by-reference entries after everything else.
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < n; ++i) {
      if (built[i]) continue;
      const bool has_spec = j.is_array() && i < static_cast<int>(j.size()) && !j[i].is_null();
      if (!has_spec) {
        if (pass == 1) built[i] = std::make_shared<const PaymentPolicy>(PaymentPolicy::Zero(game.space(), i, bound));
        continue;
      }
      if (pass == 0 && is_cancellation(j[i])) continue;
      built[i] = std::make_shared<const PaymentPolicy>(PolicyFromJson(game, j[i], i, bound, built));
      if (built[i]->owner() != i) throw InputError("policy " + std::to_string(i) + " has the wrong owner");
    }
  }
  std::vector<PaymentPolicy> policies;
  for (int i = 0; i < n; ++i) {
    if (!built[i]) throw InputError("could not resolve policy " + std::to_string(i));
    policies.push_back(*built[i]);
  }
  return PolicyProfile(std::move(policies));
}

Json PolicyToJson(const StageGame& game, const PaymentPolicy& policy) {
  const int n = policy.num_players();
  Json out;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, rules::Zero>) {
          out = {{"type", "rule"}, {"name", "zero"}};
        } else if constexpr (std::is_same_v<R, rules::Table>) {
          Json entries = Json::array();
          for (std::int64_t s = 0; s < policy.space().size(); ++s) {
            std::vector<double> pay(r.payments.begin() + s * n, r.payments.begin() + (s + 1) * n);
            bool any = false;
            for (double p : pay) any = any || p != 0.0;
            if (any) entries.push_back({{"profile", policy.space().Decode(s)}, {"payments", pay}});
          }
          out = {{"type", "table"}, {"entries", entries}};
        } else if constexpr (std::is_same_v<R, rules::SecondPriceZeroRevenue>) {
          out = {{"type", "rule"}, {"name", "second_price_thm1"}, {"params", {{"eps", r.eps}}}};
        } else if constexpr (std::is_same_v<R, rules::FirstPriceEta>) {
          out = {{"type", "rule"},
                 {"name", "first_price_eta"},
                 {"params", {{"eta", r.eta}, {"floor_action", r.floor_action}}}};
        } else {
          out = {{"type", "rule"},
                 {"name", "cancellation"},
                 {"params", {{"opponent", PolicyToJson(game, *r.opponent)}}}};
        }
      },
      policy.rule());
  out["owner"] = policy.owner();
  out["bound"] = policy.bound();
  return out;
}

LearnerConfig LearnerFromJson(const Json& j) {
  LearnerConfig c;
  if (j.is_null()) return c;
  c.algo = ParseAlgorithm(GetOr<std::string>(j, "algo", "hedge"));
  if (j.contains("rate")) {
    const Json& r = j.at("rate");
    if (r.is_string()) {
      if (r.get<std::string>() != "auto") throw InputError("rate must be 'auto' or a number");
    } else {
      c.rate = r.get<double>();
    }
  }
  const std::string schedule = GetOr<std::string>(j, "schedule", "fixed");
  if (schedule == "fixed") {
    c.schedule = RateSchedule::kFixed;
  } else if (schedule == "anytime") {
    c.schedule = RateSchedule::kAnytime;
  } else {
    throw InputError("schedule must be 'fixed' or 'anytime'");
  }
  c.seed = GetOr<std::uint64_t>(j, "seed", 0);
  return c;
}

Json LearnerToJson(const LearnerConfig& c) {
  Json out{{"algo", AlgorithmName(c.algo)},
           {"schedule", c.schedule == RateSchedule::kFixed ? "fixed" : "anytime"},
           {"seed", c.seed}};
  if (c.rate) {
    out["rate"] = *c.rate;
  } else {
    out["rate"] = "auto";
  }
  return out;
}

Json RoundStatsToJson(const StageGame& game, const RoundStats& st) {
  const int n = game.num_players();
  Json joint = Json::array();
  for (const auto& [index, count] : st.profile_counts) {
    joint.push_back({{"profile", game.space().Decode(index)}, {"count", count}});
  }
  Json payments = Json::array();
  for (int i = 0; i < n; ++i) {
    payments.push_back(std::vector<double>(st.payments.begin() + i * n, st.payments.begin() + (i + 1) * n));
  }
  Json out{{"first_round", st.first_round},
           {"rounds", st.rounds},
           {"agent_utility", st.agent_utility},
           {"stage_utility", st.stage_utility},
           {"payments", payments},
           {"revenue", st.revenue},
           {"welfare", st.welfare},
           {"regret", st.regret},
           {"normalized_regret", st.normalized_regret},
           {"action_counts", st.action_counts},
           {"joint", joint}};
  if (!st.wins.empty() && dynamic_cast<const AuctionGame*>(&game)) {
    std::vector<double> freq;
    for (int i = 0; i < n; ++i) freq.push_back(st.WinFrequency(i));
    out["wins"] = st.wins;
    out["win_frequency"] = freq;
    out["no_winner"] = st.no_winner;
  }
  return out;
}

Json ReportToJson(const StageGame& game, const RunReport& r) {
  Json out{{"horizon", r.horizon},
           {"seed", r.seed},
           {"learners", r.learners},
           {"normalization", {{"lo", r.norm_lo}, {"hi", r.norm_hi}}},
           {"full", RoundStatsToJson(game, r.full)},
           {"window", RoundStatsToJson(game, r.window)}};
  if (r.is_auction) out["bid_grid"] = r.bid_grid;
  return out;
}

void WriteTraceCsv(std::ostream& out, const RunReport& r) {
  const int n = static_cast<int>(r.action_counts.size());
  out << 't';
  for (int i = 0; i < n; ++i) out << ",a_" << i + 1;
  for (int i = 0; i < n; ++i) out << ",v_" << i + 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) out << ",p_" << i + 1 << '_' << j + 1;
    }
  }
  out << '\n' << std::setprecision(17);
  const std::int64_t rounds = static_cast<std::int64_t>(r.trace.actions.size()) / n;
  for (std::int64_t t = 0; t < rounds; ++t) {
    out << t + 1;
    for (int i = 0; i < n; ++i) out << ',' << r.trace.actions[t * n + i];
    for (int i = 0; i < n; ++i) out << ',' << r.trace.agent_utility[t * n + i];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) out << ',' << r.trace.payments[(t * n + i) * n + j];
      }
    }
    out << '\n';
  }
}

void WriteCdfCsv(std::ostream& out, const RunReport& r,
                 const std::vector<std::vector<double>>& theory, bool window) {
  out << "bid,player,F_empirical,F_theory\n" << std::setprecision(17);
  const int n = static_cast<int>(r.action_counts.size());
  for (int i = 0; i < n; ++i) {
    const std::vector<double> cdf = EmpiricalCdf(r, i, window);
    for (std::size_t a = 0; a < cdf.size(); ++a) {
      out << r.bid_grid[a] << ',' << i + 1 << ',' << cdf[a] << ',';
      if (i < static_cast<int>(theory.size()) && !theory[i].empty()) out << theory[i][a];
      out << '\n';
    }
  }
}

Json DeviationToJson(const DeviationTable& t) {
  Json rows = Json::array();
  for (const DeviationRow& row : t.rows) {
    rows.push_back({{"policy", row.name},
                    {"utility", row.utility},
                    {"delta", row.delta},
                    {"profitable", row.profitable}});
  }
  return {{"player", t.player},
          {"epsilon", t.epsilon},
          {"baseline", t.baseline},
          {"block", t.window ? "window" : "full"},
          {"stable", t.stable},
          {"rows", rows}};
}

Json DistributionToJson(const JointDistribution& x) {
  Json out = Json::array();
  for (std::int64_t s = 0; s < x.space().size(); ++s) {
    if (x.weight(s) > 0.0) out.push_back({{"profile", x.space().Decode(s)}, {"weight", x.weight(s)}});
  }
  return out;
}

namespace {

Json StackelbergJson(const analysis::StackelbergResult& s) {
  return {{"leader", s.leader},
          {"commit", s.commit},
          {"response", s.response},
          {"value", s.value},
          {"payoffs", s.payoffs},
          {"pessimistic", {{"commit", s.pessimistic_commit},
                           {"response", s.pessimistic_response},
                           {"value", s.pessimistic_value}}}};
}

}  // namespace

Json AnalysisToJson(const FiniteGame& game, const analysis::AnalysisResult& r) {
  const ProfileSpace& space = game.space();
  Json nash = Json::array();
  for (std::int64_t s : r.pure_nash) nash.push_back(ProfileJson(space, s));
  Json out;
  out["game"] = GameToJson(game);
  out["pure_nash"] = nash;
  out["best_ne_welfare"] = r.best_ne_welfare ? Json(*r.best_ne_welfare) : Json();
  out["opt"] = {{"profile", ProfileJson(space, r.opt_profile)}, {"welfare", r.opt_welfare}};
  out["cce"] = {
      {"min", {{"welfare", r.min_cce.value}, {"witness", DistributionToJson(r.min_cce.witness)},
               {"max_violation", r.min_cce.max_violation}}},
      {"max", {{"welfare", r.max_cce.value}, {"witness", DistributionToJson(r.max_cce.witness)},
               {"max_violation", r.max_cce.max_violation}}},
      {"unique", r.uniqueness.unique},
      {"max_coordinate_gap", r.uniqueness.max_gap},
      {"pure_point", r.uniqueness.pure_point ? ProfileJson(space, *r.uniqueness.pure_point) : Json()}};
  Json stack = Json::array();
  for (const auto& s : r.stackelberg) stack.push_back(StackelbergJson(s));
  out["stackelberg"] = stack;
  if (r.dominance) {
    std::vector<int> order;
    for (int p : r.dominance->order) order.push_back(p + 1);
    out["dominance"] = {{"order", order}, {"survivor", ProfileJson(space, r.dominance->survivor)}};
  } else {
    out["dominance"] = nullptr;
  }
  const auto& t4 = r.stability.thm4;
  const auto& t5 = r.stability.thm5;
  out["stability"] = {
      {"cce_welfare_gap", {{"flagged", t4.flagged},
                           {"reason", t4.reason},
                           {"min_cce_welfare", t4.min_cce_welfare},
                           {"best_ne_welfare", t4.best_ne_welfare ? Json(*t4.best_ne_welfare) : Json()},
                           {"witness", t4.witness ? DistributionToJson(*t4.witness) : Json()}}},
      {"commitment", {{"applicable", t5.applicable},
                      {"flagged", t5.flagged},
                      {"flagged_leader_reading", t5.flagged_leader_reading},
                      {"reason", t5.reason},
                      {"unique_pure_cce", t5.unique_pure_cce},
                      {"cce_point", t5.cce_point ? ProfileJson(space, *t5.cce_point) : Json()},
                      {"payoff_pairs_differ", t5.payoff_pairs_differ},
                      {"leader_values_differ", t5.leader_values_differ},
                      {"leader_gains", t5.leader_gains}}}};
  Json k = Json::array();
  for (std::int64_t s = 0; s < space.size(); ++s) {
    k.push_back({{"profile", ProfileJson(space, s)}, {"k", r.k_implementation[s]}});
  }
  out["k_implementation"] = k;
  Json devs = Json::array();
  for (const auto& d : r.profitable_deviations) {
    devs.push_back({{"player", d.player + 1},
                    {"target", ProfileJson(space, d.target)},
                    {"margin", d.margin},
                    {"cost", d.cost}});
  }
  out["profitable_deviations"] = devs;
  Json verdicts = Json::array();
  for (const auto& v : r.welfare_manipulation.verdicts) {
    verdicts.push_back({{"player", v.player + 1}, {"profitable", v.profitable}, {"margin", v.margin}});
  }
  out["welfare_manipulation"] = {{"target", ProfileJson(space, r.welfare_manipulation.target)},
                                 {"degenerate", r.welfare_manipulation.degenerate},
                                 {"target_is_nash", r.welfare_manipulation.target_is_nash},
                                 {"verdicts", verdicts}};
  return out;
}

}  // namespace paygames::io
