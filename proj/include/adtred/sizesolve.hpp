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

#ifndef ADTRED_SIZESOLVE_HPP_
#define ADTRED_SIZESOLVE_HPP_

#include <map>
#include <string>
#include <vector>

#include "adtred/ast.hpp"
#include "adtred/error.hpp"
#include "adtred/pipeline.hpp"
#include "adtred/signature.hpp"

namespace adtred {

class AlreadyUnfolded : public InputError {
 public:
  using InputError::InputError;
};

class UnknownVariable : public InputError {
 public:
  using InputError::InputError;
};

// The formula after some unfoldings. Unfolding targets are ADT terms over
// the variables of the formula (a variable, or a subterm that flattening
// names); they are identified by their printed form.
struct UnfoldState {
  FormulaPtr formula;
  std::vector<TypedVar> vars;         // free variables, creation order
  std::vector<std::string> unfolded;  // targets in unfolding order
  // Argument variable -> the target whose unfolding introduced it.
  std::map<std::string, std::string> origin;
  // Target -> the input variable it descends from.
  std::map<std::string, std::string> root;
  int round = 0;
  int counter = 0;
};

UnfoldState InitialUnfoldState(const Signature& sig, const FormulaPtr& f);

// Conjoins the constructor cases of `target` with fresh `_u<N>` argument
// variables. Throws AlreadyUnfolded.
UnfoldState UnfoldStep(const Signature& sig, const UnfoldState& s,
                        const TermPtr& target);
// Same for a free variable of the formula; throws UnknownVariable.
UnfoldState UnfoldVariable(const Signature& sig, const UnfoldState& s,
                           const std::string& var);

struct SizeSolveResult {
  Verdict verdict;
  UnfoldState state;  // at termination
  // Unfoldings per input variable (targets counted at their root).
  std::map<std::string, int> unfoldings;
  std::vector<SortId> non_expanding;  // kUnknown after running out of fuel
};

// Reduce in size mode, solve, and unfold until the model is determined by
// the unfolded variables, the reduct is unsat, or `o.fuel` rounds are spent.
SizeSolveResult SolveWithSize(const Signature& sig, const FormulaPtr& f,
                              const PipelineOptions& o = {});

}  // namespace adtred

#endif  // ADTRED_SIZESOLVE_HPP_
