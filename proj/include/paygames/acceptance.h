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

#ifndef PAYGAMES_ACCEPTANCE_H_
#define PAYGAMES_ACCEPTANCE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace paygames::acceptance {

struct Options {
  // Directory holding the committed experiment specs.
  std::filesystem::path experiments_dir;
  // Overrides the horizon of every fixed-T dynamics criterion (1, 2, 6-8, 10).
  std::optional<std::int64_t> horizon;
  int workers = 1;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kNumCriteria = 11;

// Errors inside a criterion are caught and reported as a failure of that
// criterion alone.
CriterionResult RunCriterion(int id, const Options& options);

std::vector<CriterionResult> RunAll(const Options& options,
                                    const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS  3 closed_form_numerics (0.1 s): ..." on one line.
std::string FormatLine(const CriterionResult& result);

}  // namespace paygames::acceptance

#endif  // PAYGAMES_ACCEPTANCE_H_
