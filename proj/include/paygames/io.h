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

#ifndef PAYGAMES_IO_H_
#define PAYGAMES_IO_H_

#include <filesystem>
#include <memory>
#include <ostream>
#include <vector>

#include "json.hpp"
#include "paygames/dynamics.h"
#include "paygames/equilibrium.h"
#include "paygames/game.h"
#include "paygames/learner.h"
#include "paygames/payment_policy.h"

namespace paygames::io {

using Json = nlohmann::json;

Json LoadJsonFile(const std::filesystem::path& path);

// {"type":"finite","action_counts":[..],"payoffs":[[u_1..u_n] per profile],
//  "action_names":[[..]..]} or {"type":"auction","format":"first"|"second",
//  "values":[..],"grid_k":k}. {"type":"pd","variant":...} builds a PD.
std::shared_ptr<const StageGame> GameFromJson(const Json& j);
FiniteGame FiniteGameFromJson(const Json& j);
Json GameToJson(const StageGame& game);

// A single policy. `bound` applies unless the spec sets its own; `resolved`
// holds the already-built policies of lower-index players so that
// {"name":"cancellation","params":{"of":j}} can refer to them.
PaymentPolicy PolicyFromJson(const StageGame& game, const Json& j, int default_owner, double bound,
                             const std::vector<std::shared_ptr<const PaymentPolicy>>& resolved = {});
Json PolicyToJson(const StageGame& game, const PaymentPolicy& policy);

// A list with one entry per player (missing entries are zero policies).
// Cancellation rules may refer to any other player's entry.
PolicyProfile PolicyProfileFromJson(const StageGame& game, const Json& j, double bound);
double DefaultBound(const StageGame& game);

LearnerConfig LearnerFromJson(const Json& j);
Json LearnerToJson(const LearnerConfig& config);

Json RoundStatsToJson(const StageGame& game, const RoundStats& stats);
Json ReportToJson(const StageGame& game, const RunReport& report);
// t, a_1..a_n, v_1..v_n, p_i_j for i != j.
void WriteTraceCsv(std::ostream& out, const RunReport& report);
// bid, player, F_empirical, F_theory (theory column empty when unknown).
void WriteCdfCsv(std::ostream& out, const RunReport& report,
                 const std::vector<std::vector<double>>& theory, bool window);
Json DeviationToJson(const DeviationTable& table);

Json DistributionToJson(const JointDistribution& x);
Json AnalysisToJson(const FiniteGame& game, const analysis::AnalysisResult& result);

}  // namespace paygames::io

#endif  // PAYGAMES_IO_H_
