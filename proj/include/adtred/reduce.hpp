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

#ifndef ADTRED_REDUCE_HPP_
#define ADTRED_REDUCE_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "adtred/error.hpp"
#include "adtred/euf.hpp"
#include "adtred/normalize.hpp"
#include "adtred/periodic_set.hpp"
#include "adtred/signature.hpp"

namespace adtred {

enum class ReductionMode { kDepth, kSize };

// A size atom reached the depth-mode reduction.
class ModeMismatch : public InputError {
 public:
  using InputError::InputError;
};

struct ReduceOptions {
  bool guarded_selectors = true;  // no case split under a tester guard
  bool enum_sorts = true;         // enumerations as integer ranges
};

// Where every reduced symbol comes from. Reduced variables keep the names of
// the ADT variables they stand for; constructors and selectors keep their
// names as functions.
struct ReducedSymbolTable {
  std::map<std::string, SortId> adt_vars;  // includes Skolem constants
  std::set<std::string> int_vars;          // source, size and membership vars
  std::map<std::string, CtorId> ctor_functions;
  std::map<std::string, std::pair<CtorId, std::size_t>> selector_functions;
  std::map<std::string, SortId> ctor_id_functions;
  std::map<std::string, SortId> depth_functions;
  std::map<std::string, SortId> size_functions;
  std::vector<std::string> skolems;  // creation order
  std::set<SortId> enum_sorts;       // encoded as integer ranges

  static std::string CtorIdName(const Signature& sig, SortId s);
  static std::string DepthName(const Signature& sig, SortId s);
  static std::string SizeName(const Signature& sig, SortId s);
};

struct ReducedFormula {
  RFormulaPtr formula;
  ReducedSymbolTable table;
  ReductionMode mode = ReductionMode::kDepth;
};

// Applies the reduction rules at the positive positions of a flat NNF
// formula and conjoins the range constraint of every non-Skolem ADT
// variable of finite sort.
ReducedFormula Reduce(const Signature& sig, const FlatFormula& flat,
                      ReductionMode mode, const ReduceOptions& opts = {});

// y in S as a formula, with fresh `_k<N>` variables drawn from `counter`.
RFormulaPtr MembershipFormula(const RExprPtr& y,
                              const EventuallyPeriodicSet& set, int* counter,
                              std::set<std::string>* fresh);

// Every atom is linear with at most two non-constant summands (variables
// or applications), all with coefficient +-1.
bool IsUtvpi(const RFormula& f);

// A variable eliminated by Simplify, to be given a value by ExtendModel:
// `var` is chosen so that `atom` evaluates to `truth`.
struct Elimination {
  std::string var;
  RFormulaPtr atom;
  bool truth = true;
};

struct Simplified {
  RFormulaPtr formula;
  std::vector<Elimination> eliminations;
};

// Constant folding, flattening, rewriting with equations between
// terms and variables/constants inside conjunctions, and elimination of
// variables with a single linear occurrence. Idempotent; the result is
// equisatisfiable and ExtendModel maps its models to models of the input.
Simplified Simplify(const RFormulaPtr& f);

// Extends a model of the simplified formula to the variables of `original`
// (absent ones read 0) and replays the eliminations.
void ExtendModel(const RFormula& original, const Simplified& s, IntModel* m);

}  // namespace adtred

#endif  // ADTRED_REDUCE_HPP_
