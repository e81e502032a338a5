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

#ifndef ADTRED_MODELS_HPP_
#define ADTRED_MODELS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adtred/ast.hpp"
#include "adtred/euf.hpp"
#include "adtred/normalize.hpp"
#include "adtred/reduce.hpp"
#include "adtred/signature.hpp"

namespace adtred {

// An integer value read as an element of a sort.
struct ValuePair {
  std::int64_t value;
  SortId sort;
  auto operator<=>(const ValuePair&) const = default;
};

struct Reconstruction {
  AdtModel model;
  // Pairs whose term was read off the constructor graphs, in the order they
  // were built, and pairs that received a fresh term.
  std::vector<ValuePair> built;
  std::vector<ValuePair> fresh;
  // Flat variables whose pair was resolved by a fresh term.
  std::vector<std::string> fresh_vars;
};

// Turns a model of the reduct `r` of `flat` into an ADT model of `flat`
// (all its variables, fresh ones included). `m` must satisfy r.formula.
// Throws InternalError if the constructor graphs are cyclic or injectivity
// breaks.
Reconstruction Reconstruct(const Signature& sig, const FlatFormula& flat,
                           const ReducedFormula& r, const IntModel& m);

struct ModelCheck {
  bool ok = true;
  std::string diagnostic;  // first falsified literal when !ok
};

// Evaluates `f` under `m`. Throws UnboundVariable.
ModelCheck CheckModel(const Signature& sig, const AdtModel& m,
                      const FormulaPtr& f);

}  // namespace adtred

#endif  // ADTRED_MODELS_HPP_
