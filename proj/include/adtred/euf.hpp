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

#ifndef ADTRED_EUF_HPP_
#define ADTRED_EUF_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adtred/sexpr.hpp"

// Quantifier-free EUF+LIA over a single sort Int: the target language of the
// reduction.
namespace adtred {

struct RExpr;
using RExprPtr = std::shared_ptr<const RExpr>;

struct RExpr {
  // kMul is args[0] * args[1] with args[0] a constant.
  enum class Kind { kConst, kVar, kApp, kAdd, kMul };

  Kind kind;
  std::int64_t value = 0;
  std::string name;  // variable or function
  std::vector<RExprPtr> args;
};

RExprPtr RConst(std::int64_t v);
RExprPtr RVar(std::string name);
RExprPtr RApp(std::string fn, std::vector<RExprPtr> args);
RExprPtr RAdd(std::vector<RExprPtr> args);
RExprPtr RMul(std::int64_t k, RExprPtr e);
RExprPtr RSub(RExprPtr a, RExprPtr b);

struct RFormula;
using RFormulaPtr = std::shared_ptr<const RFormula>;

struct RFormula {
  enum class Kind { kTrue, kFalse, kEq, kLe, kLt, kNot, kAnd, kOr };

  Kind kind;
  RExprPtr lhs, rhs;  // kEq, kLe, kLt
  std::vector<RFormulaPtr> args;

  bool IsAtom() const {
    return kind == Kind::kEq || kind == Kind::kLe || kind == Kind::kLt;
  }
};

RFormulaPtr RTrue();
RFormulaPtr RFalse();
RFormulaPtr REq(RExprPtr a, RExprPtr b);
RFormulaPtr RNe(RExprPtr a, RExprPtr b);
RFormulaPtr RLe(RExprPtr a, RExprPtr b);
RFormulaPtr RLt(RExprPtr a, RExprPtr b);
RFormulaPtr RNot(RFormulaPtr f);
// No simplification: the Boolean skeleton is kept as given.
RFormulaPtr RAnd(std::vector<RFormulaPtr> args);
RFormulaPtr ROr(std::vector<RFormulaPtr> args);

int CompareRExpr(const RExpr& a, const RExpr& b);
bool SameRExpr(const RExpr& a, const RExpr& b);
bool SameRFormula(const RFormula& a, const RFormula& b);

// Declared symbols of a reduced formula: Int variables, and functions with
// their arity.
struct RSignature {
  std::set<std::string> vars;
  std::map<std::string, std::size_t> functions;
};

// Collects variables and functions; throws InternalError when a function is
// used with two arities.
void CollectSymbols(const RFormula& f, RSignature* out);
void CollectSymbols(const RExpr& e, RSignature* out);
std::size_t NodeCount(const RFormula& f);

// Integer interpretation: variable values and, per function, a finite graph
// with a default value elsewhere.
struct FunctionGraph {
  std::map<std::vector<std::int64_t>, std::int64_t> table;
  std::int64_t default_value = 0;
};

struct IntModel {
  std::map<std::string, std::int64_t> vars;
  std::map<std::string, FunctionGraph> functions;

  // Unknown functions and missing points read the default 0.
  std::int64_t Apply(const std::string& fn,
                     const std::vector<std::int64_t>& args) const;
};

// Independent evaluator. Throws UnboundVariable for unassigned variables and
// ResourceError on 64-bit overflow.
std::int64_t EvaluateR(const IntModel& m, const RExpr& e);
bool EvaluateR(const IntModel& m, const RFormula& f);

// Adds the graph entries of every application in `f` that `m` leaves to the
// default, so that the model lists all application points explicitly.
void TabulateApplications(const RFormula& f, IntModel* m);

// SMT-LIB rendering; symbols that are not simple or clash with reserved
// words are written |quoted|.
std::string QuoteSymbol(const std::string& name);
std::string ToSmtLib(const RExpr& e);
std::string ToSmtLib(const RFormula& f);
// Full QF_UFLIA script: declarations, one assert, check-sat, get-model.
std::string EmitScript(const RFormula& f);
std::string IntModelToString(const IntModel& m);

// Reads an SMT-LIB Int/Bool term over `sig`. Supports let, ite on formulas,
// =>, distinct, >=, >, and n-ary arithmetic. Throws InputError.
RFormulaPtr ParseRFormula(const SExpr& s, const RSignature& sig);
RExprPtr ParseRExpr(const SExpr& s, const RSignature& sig);

struct RScript {
  RSignature sig;
  RFormulaPtr formula;  // conjunction of all assertions
};
RScript ParseRScript(const std::string& text);

}  // namespace adtred

#endif  // ADTRED_EUF_HPP_
