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

#ifndef ADTRED_AST_HPP_
#define ADTRED_AST_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adtred/signature.hpp"

namespace adtred {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { kVar, kCtor, kSel };

  Kind kind;
  std::string name;       // variables only
  SortId sort;            // sort of the whole term
  CtorId ctor;            // constructor, or the constructor owning a selector
  std::size_t index = 0;  // selector slot
  std::vector<TermPtr> args;

  bool IsGround() const;
  // Number of constructor occurrences; only meaningful for ground terms.
  std::size_t Size() const;
};

TermPtr MakeVar(std::string name, SortId sort);
// Checks arity and argument sorts; throws TypeError.
TermPtr MakeCtor(const Signature& sig, CtorId c, std::vector<TermPtr> args);
TermPtr MakeSel(const Signature& sig, CtorId c, std::size_t index, TermPtr arg);

// Total structural order; equal iff structurally identical.
int CompareTerms(const Term& a, const Term& b);
struct TermLess {
  bool operator()(const TermPtr& a, const TermPtr& b) const {
    return CompareTerms(*a, *b) < 0;
  }
};
inline bool SameTerm(const TermPtr& a, const TermPtr& b) {
  return CompareTerms(*a, *b) == 0;
}

struct IntExpr;
using IntExprPtr = std::shared_ptr<const IntExpr>;

struct IntExpr {
  // kSub with one argument is negation. kMul multiplies its arguments, at
  // most one of which is non-constant.
  enum class Kind { kConst, kVar, kSize, kAdd, kSub, kMul };

  Kind kind;
  std::int64_t value = 0;
  std::string name;
  TermPtr term;
  std::vector<IntExprPtr> args;
};

IntExprPtr MakeIntConst(std::int64_t v);
IntExprPtr MakeIntVar(std::string name);
IntExprPtr MakeSizeOf(TermPtr t);
IntExprPtr MakeIntOp(IntExpr::Kind kind, std::vector<IntExprPtr> args);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class CmpOp { kEq, kLe, kLt, kGe, kGt };

struct Formula {
  enum class Kind {
    kTrue, kFalse, kTester, kEq, kCmp, kNot, kAnd, kOr, kImplies, kIff
  };

  Kind kind;
  CtorId ctor;              // kTester
  TermPtr lhs, rhs;         // kTester uses lhs; kEq both
  CmpOp op = CmpOp::kEq;    // kCmp
  IntExprPtr ilhs, irhs;    // kCmp
  std::vector<FormulaPtr> args;

  bool IsAtom() const {
    return kind == Kind::kTester || kind == Kind::kEq || kind == Kind::kCmp;
  }
};

FormulaPtr MakeTrue();
FormulaPtr MakeFalse();
FormulaPtr MakeTester(const Signature& sig, CtorId c, TermPtr t);
FormulaPtr MakeEq(TermPtr a, TermPtr b);
FormulaPtr MakeCmp(CmpOp op, IntExprPtr a, IntExprPtr b);
FormulaPtr MakeNot(FormulaPtr f);
FormulaPtr MakeAnd(std::vector<FormulaPtr> args);
FormulaPtr MakeOr(std::vector<FormulaPtr> args);
FormulaPtr MakeImplies(FormulaPtr a, FormulaPtr b);
FormulaPtr MakeIff(FormulaPtr a, FormulaPtr b);

// Structural equality of formulas.
bool SameFormula(const Formula& a, const Formula& b);

// A variable with its sort; Int variables have no SortId.
struct TypedVar {
  std::string name;
  std::optional<SortId> sort;
  auto operator<=>(const TypedVar&) const = default;
};

std::set<TypedVar> FreeVars(const Formula& f);
void CollectVars(const Term& t, std::set<TypedVar>* out);
bool HasSizeAtoms(const Formula& f);
// Number of sub-expressions (terms, integer expressions and formulas).
std::size_t NodeCount(const Formula& f);

// Value assignment for the free variables of a formula. Selectors applied to
// terms with a different head symbol read `selector_values` first and fall
// back to the default witness of the target sort.
struct AdtModel {
  using SelectorKey = std::pair<CtorId, std::size_t>;

  std::map<std::string, TermPtr> adt;
  std::map<std::string, std::int64_t> ints;
  std::map<SelectorKey, std::map<TermPtr, TermPtr, TermLess>> selector_values;
};

// Evaluates a term to a ground constructor term. Throws UnboundVariable.
TermPtr EvaluateTerm(const Signature& sig, const AdtModel& m, const Term& t);
std::int64_t EvaluateInt(const Signature& sig, const AdtModel& m,
                         const IntExpr& e);
bool Evaluate(const Signature& sig, const AdtModel& m, const Formula& f);

// SMT-LIB rendering.
std::string ToString(const Signature& sig, const Term& t);
std::string ToString(const Signature& sig, const IntExpr& e);
std::string ToString(const Signature& sig, const Formula& f);
std::string CmpOpName(CmpOp op);
// One `(define-fun ...)` line per variable, in name order.
std::string ModelToString(const Signature& sig, const AdtModel& m,
                          const std::set<TypedVar>& vars);

}  // namespace adtred

#endif  // ADTRED_AST_HPP_
