// Copyright 2026 The adtred Authors
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

#ifndef ADTRED_BACKEND_HPP_
#define ADTRED_BACKEND_HPP_

#include <optional>
#include <string>

#include "adtred/error.hpp"
#include "adtred/euf.hpp"
#include "adtred/lia.hpp"

namespace adtred {

struct SolverResult {
  enum class Status { kSat, kUnsat, kUnknown };

  Status status = Status::kUnknown;
  IntModel model;      // kSat only
  std::string reason;  // kUnknown only
};

std::string StatusName(SolverResult::Status s);

struct SolverLimits {
  long max_nodes = 200000;  // case splits, including theory combination
  LiaLimits lia;
};

// Case splitting over the Boolean structure with a congruence closure per
// branch; arithmetic is decided at the leaves by SolveLia, and congruence
// between arithmetic terms is restored by splitting on argument equality.
SolverResult SolveBuiltin(const RFormula& f, const SolverLimits& limits = {});

class SpawnError : public BackendError {
 public:
  using BackendError::BackendError;
};

// The solver answered something that is not valid SMT-LIB output.
class ProtocolError : public BackendError {
 public:
  ProtocolError(const std::string& what, std::string raw)
      : BackendError(what), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

// Runs `command` through /bin/sh with `input` on stdin and returns stdout.
// Throws SpawnError; returns nullopt when the timeout expires.
std::optional<std::string> RunProcess(const std::string& command,
                                      const std::string& input,
                                      int timeout_ms);

// Solves with an external SMT-LIB solver process (batch mode). The model is
// read from the get-model response and tabulated at the application points
// of `f`.
SolverResult SolveExternal(const RFormula& f, const std::string& command,
                           int timeout_ms = 10000);

// The command in ADT_SMT_SOLVER, if set and non-empty.
std::optional<std::string> ExternalCommandFromEnv();

struct BackendConfig {
  enum class Kind { kBuiltin, kExternal };

  Kind kind = Kind::kBuiltin;
  std::string command;  // kExternal
  int timeout_ms = 10000;
  SolverLimits limits;
};

SolverResult Solve(const RFormula& f, const BackendConfig& config);

}  // namespace adtred

#endif  // ADTRED_BACKEND_HPP_
