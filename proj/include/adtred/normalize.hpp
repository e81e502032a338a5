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

#ifndef ADTRED_NORMALIZE_HPP_
#define ADTRED_NORMALIZE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adtred/ast.hpp"
#include "adtred/signature.hpp"

namespace adtred {

// Pushes negations to atoms and eliminates => and Boolean =. The result
// contains only True, False, And, Or, atoms and negated atoms.
FormulaPtr ToNnf(const FormulaPtr& f);
bool IsNnf(const Formula& f);

// sum(coefs[v] * v) + constant
struct LinExpr {
  std::map<std::string, std::int64_t> coefs;
  std::int64_t constant = 0;
};

struct FlatLiteral {
  enum class Kind {
    kCtor,    // f(vars[1..n]) = vars[0]
    kSel,     // f^index(vars[0]) = vars[1]
    kTester,  // is_f(vars[0]), possibly negated
    kVarEq,   // vars[0] = vars[1], possibly negated
    kSize,    // |vars[0]| = vars[1] with vars[1] an Int variable
    kArith,   // lin rel 0
  };
  enum class Rel { kEq, kNe, kLe, kLt };

  Kind kind;
  bool positive = true;
  CtorId ctor;
  std::size_t index = 0;
  std::vector<std::string> vars;
  LinExpr lin;
  Rel rel = Rel::kEq;
};

struct FlatNode {
  enum class Kind { kTrue, kFalse, kLiteral, kAnd, kOr };
  Kind kind = Kind::kTrue;
  FlatLiteral literal;
  std::vector<FlatNode> children;
};

struct FlatFormula {
  FlatNode root;
  // Every variable with its sort (nullopt for Int), in creation order:
  // free variables of the input first, then fresh ones.
  std::vector<TypedVar> vars;
  // Fresh ADT variable -> the subterm it names.
  std::map<std::string, TermPtr> registry;
  // Fresh Int variable -> the ADT variable whose size it holds.
  std::map<std::string, std::string> size_vars;

  std::optional<SortId> SortOf(const std::string& var) const;
};

// Names every non-variable function subterm by a fresh `_t<N>` variable
// (identical subterms share one name) and every size |x| by a fresh
// `_z<N>` Int variable. Definitions are conjoined locally with the literal
// that needed them. Input must be in NNF.
FlatFormula Flatten(const Signature& sig, const FormulaPtr& nnf);

// Structural invariants of flat formulas; returns an empty string when they
// hold and a description of the first violation otherwise.
std::string CheckFlat(const Signature& sig, const FlatFormula& f);

// Back to the general AST (for printing and evaluation).
FormulaPtr ToFormula(const Signature& sig, const FlatFormula& f);
FormulaPtr LiteralToFormula(const Signature& sig, const FlatFormula& f,
                            const FlatLiteral& lit);

// Extends a model of the input's free variables to the fresh variables.
AdtModel ExtendToFresh(const Signature& sig, const FlatFormula& f,
                       const AdtModel& m);

// Number of constructor, selector, tester and size occurrences.
std::size_t CountFunctionOccurrences(const Formula& f);

}  // namespace adtred

#endif  // ADTRED_NORMALIZE_HPP_
