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

#include "adtred/models.hpp"

#include <set>

#include "adtred/parser.hpp"
#include "adtred/pipeline.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "generator.hpp"

namespace adtred {
namespace {

using Status = SolverResult::Status;

struct Problem {
  Script script;
  FormulaPtr formula;
  Reduction red;
};

Problem Load(const std::string& text,
             ReductionMode mode = ReductionMode::kDepth) {
  Problem p{ParseScript(text), nullptr, {}};
  p.formula = p.script.Conjunction();
  p.red = ReduceFormula(p.script.sig, p.formula, mode);
  return p;
}

TEST_CASE("running example model reconstructs") {
  const Problem p =
      Load(testing::ReadFile(testing::DataPath("running.smt2")));
  PipelineOptions o;
  const SolverResult res = SolveReduct(p.red.reduct, o);
  REQUIRE(res.status == Status::kSat);
  const Reconstruction rec =
      Reconstruct(p.script.sig, p.red.flat, p.red.reduct, res.model);
  const ModelCheck ok = CheckModel(p.script.sig, rec.model, p.formula);
  CHECK_MESSAGE(ok.ok, ok.diagnostic);
  // x is a cons cell whose head is not blue.
  const TermPtr x = rec.model.adt.at("x");
  CHECK(p.script.sig.ctor(x->ctor).name == "cons");
}

TEST_CASE("the example model from the text checks") {
  const Script s = ParseScript(testing::ReadFile(testing::DataPath("running.smt2")));
  const Signature& sig = s.sig;
  AdtModel m;
  const auto c = [&](const char* n) { return *sig.FindCtor(n); };
  m.adt["x"] = MakeCtor(sig, c("cons"),
                        {MakeCtor(sig, c("red"), {}), MakeCtor(sig, c("nil"), {})});
  m.adt["y"] = MakeCtor(sig, c("green"), {});
  CHECK(CheckModel(sig, m, s.Conjunction()).ok);
}

TEST_CASE("disequal lists get distinct fresh terms") {
  const Problem p = Load(std::string(testing::kListDecl) +
                         "(declare-const x CList)(declare-const z CList)"
                         "(assert (not (= x z)))");
  IntModel m;
  m.vars["x"] = 0;
  m.vars["z"] = 1;
  REQUIRE(EvaluateR(m, *p.red.reduct.formula));
  const Reconstruction rec =
      Reconstruct(p.script.sig, p.red.flat, p.red.reduct, m);
  const Signature& sig = p.script.sig;
  CHECK(ToString(sig, *rec.model.adt.at("x")) == "nil");
  CHECK(ToString(sig, *rec.model.adt.at("z")) == "(cons red nil)");
  CHECK(CheckModel(sig, rec.model, p.formula).ok);
}

TEST_CASE("three distinct colours use all of them") {
  const Problem p =
      Load(std::string(testing::kListDecl) +
           "(declare-const a Colour)(declare-const b Colour)"
           "(declare-const c Colour)"
           "(assert (and (not (= a b)) (not (= b c)) (not (= a c))))");
  const SolverResult res = SolveReduct(p.red.reduct, {});
  REQUIRE(res.status == Status::kSat);
  const Reconstruction rec =
      Reconstruct(p.script.sig, p.red.flat, p.red.reduct, res.model);
  std::set<std::string> names;
  for (const char* v : {"a", "b", "c"}) {
    names.insert(ToString(p.script.sig, *rec.model.adt.at(v)));
  }
  CHECK(names == std::set<std::string>{"red", "green", "blue"});
}

TEST_CASE("cyclic constructor graphs are not followed") {
  // cons(0, x) = x with no depth decrease must not be read as a term.
  const Problem p = Load(std::string(testing::kListDecl) +
                         "(declare-const x CList)(assert (= x x))");
  IntModel m;
  m.vars["x"] = 4;
  m.functions["ctorId_CList"].table[{4}] = 1;
  m.functions["head"].table[{4}] = 0;
  m.functions["tail"].table[{4}] = 4;
  m.functions["cons"].table[{0, 4}] = 4;
  const Reconstruction rec =
      Reconstruct(p.script.sig, p.red.flat, p.red.reduct, m);
  CHECK(rec.fresh.size() == 1);
  CHECK(ToString(p.script.sig, *rec.model.adt.at("x")) == "nil");
}

TEST_CASE("check_model names the failing literal") {
  const Signature sig = testing::SigOf(testing::kListDecl);
  VarScope scope{{"x", sig.FindSort("CList")}};
  AdtModel m;
  m.adt["x"] = MakeCtor(sig, *sig.FindCtor("nil"), {});
  const ModelCheck bad =
      CheckModel(sig, m, ParseFormula(sig, scope, "((_ is cons) x)"));
  CHECK_FALSE(bad.ok);
  CHECK(bad.diagnostic == "((_ is cons) x)");
  const ModelCheck nested = CheckModel(
      sig, m,
      ParseFormula(sig, scope, "(and (= x nil) (not ((_ is nil) x)))"));
  CHECK(nested.diagnostic == "(not ((_ is nil) x))");

  m.adt["x"] = MakeCtor(sig, *sig.FindCtor("cons"),
                        {MakeCtor(sig, *sig.FindCtor("blue"), {}),
                         MakeCtor(sig, *sig.FindCtor("nil"), {})});
  CHECK(CheckModel(sig, m, ParseFormula(sig, scope, "(= (adt.size x) 3)")).ok);
  CHECK_THROWS_AS(
      CheckModel(sig, AdtModel{}, ParseFormula(sig, scope, "((_ is nil) x)")),
      UnboundVariable);
}

TEST_CASE("selector values on other constructors are honoured") {
  // head x = red with x = nil needs the junk value of head at nil.
  const Problem p = Load(std::string(testing::kListDecl) +
                         "(declare-const x CList)"
                         "(assert (and (= x nil) (= (head x) blue)))");
  const Verdict v = DecideDepth(p.script.sig, p.formula);
  REQUIRE(v.status == Status::kSat);
  CHECK(CheckModel(p.script.sig, v.model, p.formula).ok);
  CHECK(v.model.selector_values.size() == 1);
}

TEST_CASE("reconstructed models satisfy random formulas") {
  for (const char* decl : {testing::kListDecl, testing::kTreeDecl,
                           testing::kTwoCycleDecl, testing::kPairDecl}) {
    const Signature sig = testing::SigOf(decl);
    std::vector<TypedVar> vars;
    for (std::uint32_t s = 0; s < sig.num_sorts(); ++s) {
      vars.push_back({"v" + std::to_string(s), SortId{s}});
      vars.push_back({"w" + std::to_string(s), SortId{s}});
    }
    testing::Generator gen(sig, vars, 13);
    gen.allow_sizes = false;
    gen.allow_arith = false;
    for (int i = 0; i < 120; ++i) {
      const FormulaPtr f = gen.RandFormula(3);
      for (bool opt : {true, false}) {
        PipelineOptions o;
        o.reduce.guarded_selectors = o.reduce.enum_sorts = opt;
        // DecideDepth throws if the reconstruction fails its check.
        const Verdict v = DecideDepth(sig, f, o);
        CHECK(v.status != Status::kUnknown);
        if (v.status == Status::kSat) {
          CHECK(CheckModel(sig, v.model, f).ok);
        }
      }
    }
  }
}

}  // namespace
}  // namespace adtred
