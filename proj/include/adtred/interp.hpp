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

#ifndef ADTRED_INTERP_HPP_
#define ADTRED_INTERP_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>

#include "adtred/ast.hpp"
#include "adtred/backend.hpp"
#include "adtred/euf.hpp"
#include "adtred/pipeline.hpp"
#include "adtred/reduce.hpp"
#include "adtred/signature.hpp"

namespace adtred {

struct InterpolationProblem {
  FormulaPtr a;
  FormulaPtr b;

  std::set<TypedVar> Shared() const;
};

// A reduced interpolant that has no ADT reading.
class Untranslatable : public Error {
 public:
  Untranslatable(const std::string& what, std::string raw)
      : Error(what), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

// The interpolation command answered with an error.
class BackendUnsupported : public BackendError {
 public:
  BackendUnsupported(const std::string& what, std::string raw)
      : BackendError(what), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

// Maps a formula over reduced symbols back to the ADT vocabulary: ctorId
// comparisons become testers, integers compared with enumeration variables
// become constructors, size_σ becomes |.|. Atoms doing arithmetic over
// ctorId values or enumeration terms are expanded over the constructor
// indices. `vars` gives the sort of every source variable that may occur.
// Throws Untranslatable.
FormulaPtr BackTranslate(const Signature& sig, const RFormula& f,
                         const ReducedSymbolTable& table,
                         const std::set<TypedVar>& vars);

struct InterpolantCheck {
  bool ok = true;
  std::string reason;
};

// Vocabulary containment, A => I and B => not I, each decided by the
// pipeline (the size loop when size atoms occur).
InterpolantCheck ValidateInterpolant(const Signature& sig,
                                     const FormulaPtr& interpolant,
                                     const InterpolationProblem& prob,
                                     const PipelineOptions& o = {});

struct InterpolationResult {
  enum class Kind { kInterpolant, kNotUnsat, kUnknown };

  Kind kind = Kind::kUnknown;
  FormulaPtr interpolant;  // kInterpolant, validated
  RFormulaPtr reduced;     // the backend's answer
  AdtModel model;          // kNotUnsat
  std::string reason;      // kUnknown
};

// An SMT-LIB process that reads a script on stdin. The two dialects differ
// in how get-interpolant is asked and answered:
//   kZ3:   (get-interpolant A B), replying with the formula;
//   kCvc5: (assert A) (get-interpolant I (not B)), replying with a
//          define-fun.
struct InterpolationBackend {
  enum class Dialect { kZ3, kCvc5 };

  std::string command;
  Dialect dialect = Dialect::kZ3;
  int timeout_ms = 120000;
};

// Reduces A and B separately in size mode, asks the backend for an
// interpolant of the reducts, translates it back and validates it; an
// interpolant that fails validation throws InternalError.
InterpolationResult Interpolate(const Signature& sig,
                                const InterpolationProblem& prob,
                                const InterpolationBackend& backend,
                                const PipelineOptions& o = {});

// ADT_INTERPOLATION_SOLVER if set (dialect from ADT_INTERPOLATION_DIALECT,
// "z3" or "cvc5", else guessed from the command), else z3 from PATH, else
// the bundled cvc5 adapter when the cvc5 Python module is importable.
std::optional<InterpolationBackend> DefaultInterpolationBackend();

}  // namespace adtred

#endif  // ADTRED_INTERP_HPP_
