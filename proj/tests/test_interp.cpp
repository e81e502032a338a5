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

#include "adtred/interp.hpp"

#include "adtred/parser.hpp"
#include "doctest.h"
#include "fixtures.hpp"

namespace adtred {
namespace {

struct Problem {
  Signature sig;
  InterpolationProblem prob;
};

Problem Load(const char* decl, const std::string& consts, const char* a,
             const char* b) {
  const Script s = ParseScript(std::string(decl) + consts);
  const VarScope scope = s.Scope();
  return {s.sig,
          {ParseFormula(s.sig, scope, a), ParseFormula(s.sig, scope, b)}};
}

const char* kXyz =
    "(declare-const x CList)(declare-const y CList)(declare-const z CList)"
    "(declare-const c Colour)";

ReducedSymbolTable ListTable(const Signature& sig) {
  ReducedSymbolTable t;
  const SortId list = *sig.FindSort("CList");
  t.ctor_id_functions[ReducedSymbolTable::CtorIdName(sig, list)] = list;
  t.size_functions[ReducedSymbolTable::SizeName(sig, list)] = list;
  t.depth_functions[ReducedSymbolTable::DepthName(sig, list)] = list;
  t.enum_sorts.insert(*sig.FindSort("Colour"));
  return t;
}

std::set<TypedVar> ListVars(const Signature& sig) {
  return {{"x", sig.FindSort("CList")}, {"y", sig.FindSort("Colour")},
          {"n", std::nullopt}};
}

TEST_CASE("back-translation of ctorId, enumeration values and sizes") {
  const Signature sig = testing::SigOf(testing::kListDecl);
  const SortId list = *sig.FindSort("CList");
  const ReducedSymbolTable t = ListTable(sig);
  const std::set<TypedVar> vars = ListVars(sig);
  auto back = [&](const RFormulaPtr& f) {
    return ToString(sig, *BackTranslate(sig, *f, t, vars));
  };
  const RExprPtr id =
      RApp(ReducedSymbolTable::CtorIdName(sig, list), {RVar("x")});
  CHECK(back(REq(id, RConst(1))) == "((_ is cons) x)");
  CHECK(back(RNot(REq(RConst(0), id))) == "(not ((_ is nil) x))");
  CHECK(back(REq(RVar("y"), RConst(2))) == "(= y blue)");
  CHECK(back(RLe(RVar("y"), RConst(0))) == "(= y red)");
  CHECK(back(RLt(RConst(0), RVar("y"))) == "(or (= y green) (= y blue))");
  CHECK(back(RLe(RConst(3), RApp(ReducedSymbolTable::SizeName(sig, list),
                                 {RVar("x")}))) == "(<= 3 (adt.size x))");
  CHECK(back(REq(RApp("head", {RVar("x")}), RVar("y"))) == "(= (head x) y)");
  CHECK(back(RLe(RVar("n"), RConst(4))) == "(<= n 4)");
  // Arithmetic over finite positions is expanded over constructor indices.
  CHECK(back(REq(RAdd({RApp("head", {RVar("x")}), RMul(-1, id)}), RConst(0))) ==
        "(or (and (= (head x) red) ((_ is nil) x)) "
        "(and (= (head x) green) ((_ is cons) x)))");
  CHECK(back(RLe(RVar("y"), RAdd({RVar("n"), RConst(1)}))) ==
        "(or (and (= y red) (<= 0 (+ n 1))) (and (= y green) (<= 1 (+ n 1))) "
        "(and (= y blue) (<= 2 (+ n 1))))");

  CHECK_THROWS_AS(back(REq(RVar("w"), RConst(0))), Untranslatable);
  CHECK_THROWS_AS(back(REq(id, RConst(5))), Untranslatable);
  CHECK_THROWS_AS(
      back(RLe(RApp(ReducedSymbolTable::DepthName(sig, list), {RVar("x")}),
               RConst(2))),
      Untranslatable);
  CHECK_THROWS_AS(back(RLe(RVar("x"), RConst(2))), Untranslatable);
  CHECK_THROWS_AS(back(REq(RAdd({RVar("x"), RConst(1)}), RConst(2))),
                  Untranslatable);
}

TEST_CASE("enumeration values round-trip through the reduction") {
  const Signature sig = testing::SigOf(testing::kListDecl);
  const ReducedSymbolTable t = ListTable(sig);
  const std::set<TypedVar> vars = ListVars(sig);
  for (std::int64_t k = 0; k < 3; ++k) {
    const FormulaPtr f = BackTranslate(sig, *REq(RVar("y"), RConst(k)), t, vars);
    AdtModel m;
    m.adt["y"] = MakeCtor(sig, sig.CtorByIndex(*sig.FindSort("Colour"), k), {});
    CHECK(Evaluate(sig, m, *f));
    const Verdict v = Decide(sig, f);
    REQUIRE(v.status == SolverResult::Status::kSat);
    CHECK(ToString(sig, *v.model.adt.at("y")) ==
          sig.ctor(sig.CtorByIndex(*sig.FindSort("Colour"), k)).name);
  }
}

TEST_CASE("interpolant validation") {
  const Problem p =
      Load(testing::kListDecl, kXyz,
           "(and (= z (tail x)) ((_ is cons) z) "
           "(not (= (head x) (head z))))",
           "(= x (cons c (cons c y)))");
  const VarScope scope{{"x", p.sig.FindSort("CList")},
                       {"z", p.sig.FindSort("CList")}};
  auto parse = [&](const char* s) { return ParseFormula(p.sig, scope, s); };
  CHECK(p.prob.Shared() == std::set<TypedVar>{{"x", p.sig.FindSort("CList")}});

  const InterpolantCheck good = ValidateInterpolant(
      p.sig, parse("(not (= (head x) (head (tail x))))"), p.prob);
  CHECK(good.ok);
  CHECK_FALSE(ValidateInterpolant(p.sig, parse("(= z (tail x))"), p.prob).ok);
  const InterpolantCheck falsity =
      ValidateInterpolant(p.sig, MakeFalse(), p.prob);
  CHECK_FALSE(falsity.ok);
  CHECK(falsity.reason == "A does not imply I");
  CHECK_FALSE(ValidateInterpolant(p.sig, MakeTrue(), p.prob).ok);
}

TEST_CASE("interpolation refuses a satisfiable conjunction") {
  const Problem p = Load(testing::kListDecl, kXyz, "((_ is cons) x)",
                         "(= x (cons c y))");
  const InterpolationResult r = Interpolate(p.sig, p.prob, {"false"});
  CHECK(r.kind == InterpolationResult::Kind::kNotUnsat);
  CHECK(Evaluate(p.sig, r.model, *MakeAnd({p.prob.a, p.prob.b})));
}

TEST_CASE("backend errors surface with the raw reply") {
  const Problem p = Load(testing::kListDecl, kXyz, "((_ is nil) x)",
                         "((_ is cons) x)");
  using Dialect = InterpolationBackend::Dialect;
  try {
    Interpolate(p.sig, p.prob, {"echo '(error \"no interpolants\")'"});
    FAIL("expected BackendUnsupported");
  } catch (const BackendUnsupported& e) {
    CHECK(e.raw().find("no interpolants") != std::string::npos);
  }
  // Canned correct answers exercise both reply formats and validation.
  const std::string id = ReducedSymbolTable::CtorIdName(
      p.sig, *p.sig.FindSort("CList"));
  const InterpolationResult r = Interpolate(
      p.sig, p.prob,
      {"echo '(define-fun I () Bool (= (" + id + " x) 0))'", Dialect::kCvc5});
  REQUIRE(r.kind == InterpolationResult::Kind::kInterpolant);
  CHECK(ToString(p.sig, *r.interpolant) == "((_ is nil) x)");
  const InterpolationResult z = Interpolate(
      p.sig, p.prob, {"echo '(< (" + id + " x) 1)'", Dialect::kZ3});
  REQUIRE(z.kind == InterpolationResult::Kind::kInterpolant);
  CHECK(ToString(p.sig, *z.interpolant) == "((_ is nil) x)");
  CHECK_THROWS_AS(
      Interpolate(p.sig, p.prob,
                  {"echo '(define-fun I () Bool true)'", Dialect::kCvc5}),
      InternalError);
  CHECK_THROWS_AS(Interpolate(p.sig, p.prob, {"echo '(= (tail x) x'"}),
                  ProtocolError);
}

TEST_CASE("interpolants from the configured backend") {
  const auto cmd = DefaultInterpolationBackend();
  if (!cmd) {
    MESSAGE("no interpolation backend; skipped");
    return;
  }
  const Problem lists =
      Load(testing::kListDecl, kXyz,
           "(and (= z (tail x)) ((_ is cons) z) "
           "(not (= (head x) (head z))))",
           "(= x (cons c (cons c y)))");
  const InterpolationResult r = Interpolate(lists.sig, lists.prob, *cmd);
  INFO(r.reason);
  REQUIRE(r.kind == InterpolationResult::Kind::kInterpolant);
  for (const auto& v : FreeVars(*r.interpolant)) CHECK(v.name == "x");
  CHECK(ValidateInterpolant(lists.sig, r.interpolant, lists.prob).ok);

  const Problem testers = Load(testing::kListDecl, kXyz, "((_ is nil) x)",
                               "(= x (cons c y))");
  const InterpolationResult t = Interpolate(testers.sig, testers.prob, *cmd);
  REQUIRE(t.kind == InterpolationResult::Kind::kInterpolant);
  MESSAGE("interpolant: " << ToString(testers.sig, *t.interpolant));
}

}  // namespace
}  // namespace adtred
