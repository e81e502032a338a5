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

#ifndef ADTRED_PARSER_HPP_
#define ADTRED_PARSER_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adtred/ast.hpp"
#include "adtred/sexpr.hpp"
#include "adtred/signature.hpp"

namespace adtred {

struct Command {
  enum class Kind {
    kSetLogic,
    kSetOption,
    kSetInfo,
    kDeclareDatatypes,
    kDeclareDatatype,
    kDeclareConst,
    kAssert,
    kCheckSat,
    kGetModel,
    kExit
  };

  Kind kind;
  std::string raw;                  // set-logic/set-option/set-info payload
  std::vector<SortSpec> datatypes;  // declare-datatype(s)
  TypedVar var;                     // declare-const
  FormulaPtr formula;               // assert
};

using VarScope = std::map<std::string, std::optional<SortId>>;

struct Script {
  Signature sig;
  std::vector<Command> commands;
  std::vector<TypedVar> consts;  // declaration order
  std::vector<FormulaPtr> assertions;

  VarScope Scope() const;
  // Conjunction of all assertions (true if none).
  FormulaPtr Conjunction() const;
};

// Parses the SMT-LIB subset: declare-datatypes, declare-datatype,
// declare-const (and nullary declare-fun), assert, check-sat, get-model,
// set-logic, set-option, set-info, exit. Throws SyntaxError, TypeError,
// UnknownSymbol, SignatureError.
Script ParseScript(const std::string& text);

// Parses a single formula against a signature and variable scope.
FormulaPtr ParseFormula(const Signature& sig, const VarScope& scope,
                        const std::string& text);
FormulaPtr ParseFormula(const Signature& sig, const VarScope& scope,
                        const SExpr& e);

// One command per line.
std::string PrintScript(const Script& script);
std::string PrintDatatypes(const std::vector<SortSpec>& specs);

}  // namespace adtred

#endif  // ADTRED_PARSER_HPP_
