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

// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: acceptance_test [--horizon T] [--experiments DIR] [--workers N]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "paygames/acceptance.h"
#include "paygames/experiment.h"

int main(int argc, char** argv) {
  paygames::acceptance::Options options;
  options.experiments_dir = PAYGAMES_EXPERIMENTS_DIR;
  int workers = 0;
  for (int i = 1; i < argc; ++i) {
    const bool has_value = i + 1 < argc;
    if (!std::strcmp(argv[i], "--horizon") && has_value) {
      options.horizon = std::atoll(argv[++i]);
    } else if (!std::strcmp(argv[i], "--experiments") && has_value) {
      options.experiments_dir = argv[++i];
    } else if (!std::strcmp(argv[i], "--workers") && has_value) {
      workers = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--horizon T] [--experiments DIR] [--workers N]\n", argv[0]);
      return 2;
    }
  }
  options.workers = paygames::experiment::ResolveWorkers(workers);
  int failed = 0;
  paygames::acceptance::RunAll(options, [&](const paygames::acceptance::CriterionResult& r) {
    std::printf("%s\n", paygames::acceptance::FormatLine(r).c_str());
    std::fflush(stdout);
    failed += !r.pass;
  });
  std::printf("%d/%d criteria passed\n", paygames::acceptance::kNumCriteria - failed,
              paygames::acceptance::kNumCriteria);
  return failed == 0 ? 0 : 1;
}
