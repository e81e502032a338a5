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

#include "adtred/reduce.hpp"

#include <string>

#include "adtred/analysis.hpp"
#include "adtred/backend.hpp"
#include "adtred/normalize.hpp"
#include "adtred/parser.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "generator.hpp"

namespace adtred {
namespace {

const char* kVars =
    "(declare-const x CList)(declare-const z CList)"
    "(declare-const y Colour)(declare-const n Int)\n";

ReducedFormula ReduceText(const std::string& assertion, ReductionMode mode,
                          bool opts = true) {
  const Script s = ParseScript(std::string(testing::kListDecl) + kVars +
                               "(assert " + assertion + ")");
  ReduceOptions o;
  o.guarded_selectors = o.enum_sorts = opts;
  return Reduce(s.sig, Flatten(s.sig, ToNnf(s.Conjunction())), mode, o);
}

std::string Text(const ReducedFormula& r) { return ToSmtLib(*r.formula); }

bool Contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

TEST_CASE("positive tester is a Skolemized constructor specification") {
  CHECK(Text(ReduceText("((_ is cons) x)", ReductionMode::kDepth, false)) ==
        "(and (= (cons _s1 _s2) x) (= (ctorId_CList x) 1) (= (head x) _s1) "
        "(= (tail x) _s2) (< (depth_Colour _s1) (depth_CList x)) "
        "(< (depth_CList _s2) (depth_CList x)) (and (<= 0 _s1) (< _s1 3)))");
  // With enum sorts as integers the Colour child has no depth.
  CHECK(Text(ReduceText("((_ is cons) x)", ReductionMode::kDepth)) ==
        "(and (= (cons _s1 _s2) x) (= (ctorId_CList x) 1) (= (head x) _s1) "
        "(= (tail x) _s2) (< (depth_CList _s2) (depth_CList x)) "
        "(and (<= 0 _s1) (< _s1 3)))");
}

TEST_CASE("negative tester lists the other constructors") {
  CHECK(Text(ReduceText("(not ((_ is cons) x))", ReductionMode::kDepth)) ==
        "(and (= nil x) (= (ctorId_CList x) 0))");
  CHECK(Text(ReduceText("(not ((_ is cons) x))", ReductionMode::kSize)) ==
        "(and (= nil x) (= (ctorId_CList x) 0) (= (size_CList x) 1))");
}

TEST_CASE("unguarded selector gets the constructor case split") {
  const ReducedFormula r = ReduceText("(= (head x) y)", ReductionMode::kDepth);
  CHECK(Text(r) ==
        "(and (and (= (head x) y) (or (and (= nil x) (= (ctorId_CList x) 0)) "
        "(and (= (cons _s1 _s2) x) (= (ctorId_CList x) 1) (= (head x) _s1) "
        "(= (tail x) _s2) (< (depth_CList _s2) (depth_CList x)) "
        "(and (<= 0 _s1) (< _s1 3))))) (and (<= 0 y) (< y 3)))");
  CHECK(r.table.skolems == std::vector<std::string>{"_s1", "_s2"});
}

TEST_CASE("guarded selector is a plain equation") {
  const std::string in = "(and ((_ is nil) x) (= (tail x) z))";
  CHECK(Text(ReduceText(in, ReductionMode::kDepth)) ==
        "(and (and (= nil x) (= (ctorId_CList x) 0)) (= (tail x) z))");
  CHECK(Contains(Text(ReduceText(in, ReductionMode::kDepth, false)), "(or "));
  // A guard in a sibling disjunct does not count.
  CHECK(Contains(
      Text(ReduceText("(or ((_ is nil) x) (= (tail x) z))",
                      ReductionMode::kDepth)),
      "_s1"));
}

TEST_CASE("enumeration constructors become their ids") {
  CHECK(Text(ReduceText("(= y blue)", ReductionMode::kDepth)) ==
        "(and (= 2 y) (and (<= 0 y) (< y 3)))");
  CHECK(Text(ReduceText("(= y blue)", ReductionMode::kDepth, false)) ==
        "(and (and (= blue y) (= (ctorId_Colour y) 2)) "
        "(and (<= 0 y) (< y 3)))");
  const ReducedFormula r = ReduceText("((_ is green) y)", ReductionMode::kDepth);
  CHECK(Text(r) == "(and (= y 1) (and (<= 0 y) (< y 3)))");
  CHECK(r.table.enum_sorts.size() == 1);
}

TEST_CASE("variable (dis)equalities carry over") {
  CHECK(Text(ReduceText("(not (= x z))", ReductionMode::kDepth)) ==
        "(not (= x z))");
  CHECK(Text(ReduceText("(= x z)", ReductionMode::kDepth)) == "(= x z)");
}

TEST_CASE("the running example has the expected reduct shape") {
  const std::string running =
      "(and ((_ is cons) x) (not (= y blue)) "
      "(or (= (head x) red) (= x (cons y nil))))";
  const ReducedFormula plain = ReduceText(running, ReductionMode::kDepth, false);
  const std::string p = Text(plain);
  for (const char* part :
       {"(= (ctorId_CList x) 1)", "(= (ctorId_Colour _t1) 2)",
        "(< (depth_CList _s2) (depth_CList x))", "(and (<= 0 y) (< y 3))",
        "(= (cons _s3 _s4) x)", "(= (ctorId_CList _t3) 0)"}) {
    CHECK_MESSAGE(Contains(p, part), part);
  }
  CHECK(plain.table.skolems.size() == 4);

  const ReducedFormula opt = ReduceText(running, ReductionMode::kDepth);
  const std::string o = Text(opt);
  // head x is guarded by the tester: no case split, no extra Skolems.
  CHECK_FALSE(Contains(o, "_s3"));
  CHECK_FALSE(Contains(o, "(= nil x)"));
  CHECK_FALSE(Contains(o, "ctorId_Colour"));
  CHECK(opt.table.skolems.size() == 2);
  CHECK(Contains(o, "(= 2 _t1)"));
  CHECK(IsUtvpi(*plain.formula));
  CHECK(IsUtvpi(*opt.formula));
}

TEST_CASE("size literals get the size image conjunct") {
  const ReducedFormula r = ReduceText("(= (adt.size x) n)", ReductionMode::kSize);
  CHECK(Text(r) ==
        "(and (and (= (size_CList x) _z1) "
        "(and (<= 0 _z1) (= _z1 (+ 1 (* 2 _k1))) (<= 0 _k1))) "
        "(= (+ _z1 (* (- 1) n)) 0))");
  CHECK_THROWS_AS(ReduceText("(= (adt.size x) n)", ReductionMode::kDepth),
                  ModeMismatch);
  // Enumerations have size 1.
  CHECK(Contains(Text(ReduceText("(= (adt.size y) n)", ReductionMode::kSize)),
                 "(= 1 _z1)"));
}

TEST_CASE("variables may not clash with reduced function names") {
  const Script s = ParseScript(std::string(testing::kListDecl) +
                               "(declare-const ctorId_CList CList)"
                               "(assert ((_ is nil) ctorId_CList))");
  CHECK_THROWS_AS(Reduce(s.sig, Flatten(s.sig, ToNnf(s.Conjunction())),
                         ReductionMode::kDepth),
                  InputError);
}

TEST_CASE("membership formula agrees with the set") {
  const EventuallyPeriodicSet sets[] = {
      SizeImage(testing::SigOf(testing::kListDecl), SortId{1}),
      SizeImage(testing::SigOf(testing::kTreeDecl), SortId{0}),
      SizeImage(testing::SigOf(testing::kNatDecl), SortId{0}),
      SizeImage(testing::SigOf(testing::kListDecl), SortId{0}),
  };
  for (const auto& set : sets) {
    int counter = 0;
    std::set<std::string> fresh;
    const RFormulaPtr in = MembershipFormula(RVar("y"), set, &counter, &fresh);
    for (int y = -2; y < 30; ++y) {
      const RFormulaPtr f = RAnd({in, REq(RVar("y"), RConst(y))});
      const bool sat =
          SolveBuiltin(*f).status == SolverResult::Status::kSat;
      CHECK_MESSAGE(sat == (y >= 0 && set.Contains(y)),
                    set.ToString() << " " << y);
    }
  }
}

TEST_CASE("depth-mode reducts are UTVPI") {
  for (const char* decl :
       {testing::kListDecl, testing::kTreeDecl, testing::kTwoCycleDecl,
        testing::kPairDecl}) {
    const Signature sig = testing::SigOf(decl);
    std::vector<TypedVar> vars;
    for (std::uint32_t s = 0; s < sig.num_sorts(); ++s) {
      vars.push_back({"v" + std::to_string(s), SortId{s}});
      vars.push_back({"w" + std::to_string(s), SortId{s}});
    }
    testing::Generator gen(sig, vars, 41);
    gen.allow_sizes = false;
    gen.allow_arith = false;
    for (int i = 0; i < 150; ++i) {
      const FlatFormula flat = Flatten(sig, ToNnf(gen.RandFormula(3)));
      for (bool opt : {true, false}) {
        ReduceOptions o;
        o.guarded_selectors = o.enum_sorts = opt;
        CHECK(IsUtvpi(*Reduce(sig, flat, ReductionMode::kDepth, o).formula));
      }
    }
  }
}

TEST_CASE("simplify folds contradictions") {
  const RFormulaPtr f = RAnd({REq(RConst(0), RVar("t2")),
                              REq(RVar("t2"), RVar("y")),
                              RNe(RVar("y"), RConst(0))});
  CHECK(Simplify(f).formula->kind == RFormula::Kind::kFalse);
  const RFormulaPtr g = ROr({RLe(RConst(1), RConst(0)), RTrue()});
  CHECK(Simplify(g).formula->kind == RFormula::Kind::kTrue);
  // f(a) = b, a = c rewrites f(c) to b.
  const RFormulaPtr h =
      RAnd({REq(RApp("f", {RVar("a")}), RVar("b")), REq(RVar("a"), RVar("c")),
            RNot(REq(RApp("f", {RVar("c")}), RVar("b")))});
  CHECK(Simplify(h).formula->kind == RFormula::Kind::kFalse);
}

TEST_CASE("simplify is idempotent and models extend back") {
  const Signature sig = testing::SigOf(testing::kListDecl);
  const std::vector<TypedVar> vars = {{"n", std::nullopt},
                                      {"x", sig.FindSort("CList")},
                                      {"y", sig.FindSort("Colour")},
                                      {"z", sig.FindSort("CList")}};
  testing::Generator gen(sig, vars, 7);
  gen.allow_sizes = false;
  int sat = 0;
  for (int i = 0; i < 200; ++i) {
    const FlatFormula flat = Flatten(sig, ToNnf(gen.RandFormula(3)));
    const ReducedFormula r = Reduce(sig, flat, ReductionMode::kDepth);
    const Simplified s = Simplify(r.formula);
    CHECK(SameRFormula(*Simplify(s.formula).formula, *s.formula));
    SolverResult res = SolveBuiltin(*s.formula);
    REQUIRE(res.status != SolverResult::Status::kUnknown);
    const bool raw_sat =
        SolveBuiltin(*r.formula).status == SolverResult::Status::kSat;
    CHECK(raw_sat == (res.status == SolverResult::Status::kSat));
    if (res.status == SolverResult::Status::kSat) {
      ++sat;
      ExtendModel(*r.formula, s, &res.model);
      CHECK(EvaluateR(res.model, *r.formula));
    }
  }
  CHECK(sat > 20);
}

}  // namespace
}  // namespace adtred
