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

#ifndef PAYGAMES_ERRORS_H_
#define PAYGAMES_ERRORS_H_

#include <stdexcept>
#include <string>

namespace paygames {

// Malformed or out-of-range caller input (bad profile, parameter ordering,
// unknown field in a description file).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A well-formed request that cannot be realized under the configured limits,
// e.g. a payment that would exceed the bound M.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariant: non-finite utilities, infeasible CCE program,
// learner fed payoffs outside [0,1].
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace paygames

#endif  // PAYGAMES_ERRORS_H_
