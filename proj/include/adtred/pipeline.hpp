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

#ifndef ADTRED_PIPELINE_HPP_
#define ADTRED_PIPELINE_HPP_

#include <cstddef>
#include <string>

#include "adtred/ast.hpp"
#include "adtred/backend.hpp"
#include "adtred/normalize.hpp"
#include "adtred/reduce.hpp"
#include "adtred/signature.hpp"

namespace adtred {

struct PipelineOptions {
  ReduceOptions reduce;
  bool simplify = true;
  BackendConfig backend;
  int fuel = 100;  // unfolding rounds for formulas with size atoms
};

// Node counts after parsing, after reduction and after simplification. The
// size loop reports the counts of its last round.
struct PipelineStats {
  std::size_t input_nodes = 0;
  std::size_t reduct_nodes = 0;
  std::size_t simplified_nodes = 0;
  int rounds = 0;
};

struct Verdict {
  SolverResult::Status status = SolverResult::Status::kUnknown;
  AdtModel model;      // kSat: all variables of the formula
  std::string reason;  // kUnknown
  PipelineStats stats;
};

struct Reduction {
  FlatFormula flat;
  ReducedFormula reduct;
};

Reduction ReduceFormula(const Signature& sig, const FormulaPtr& f,
                        ReductionMode mode, const ReduceOptions& opts = {});

// Simplifies and solves a reduct. On Sat the model is extended to every
// symbol of the unsimplified reduct and re-checked against it (a failing
// check throws InternalError).
SolverResult SolveReduct(const ReducedFormula& r, const PipelineOptions& o,
                         PipelineStats* stats = nullptr);

// Decides a formula without size atoms by one reduction in depth mode.
// Sat models are reconstructed and checked against `f`.
Verdict DecideDepth(const Signature& sig, const FormulaPtr& f,
                    const PipelineOptions& o = {});

// Depth mode without size atoms, the unfolding loop otherwise.
Verdict Decide(const Signature& sig, const FormulaPtr& f,
               const PipelineOptions& o = {});

}  // namespace adtred

#endif  // ADTRED_PIPELINE_HPP_
