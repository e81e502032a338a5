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

#include "adtred/normalize.hpp"

#include "adtred/ast.hpp"
#include "adtred/parser.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "generator.hpp"

namespace adtred {
namespace {

std::vector<TypedVar> ListVars(const Signature& sig) {
  return {{"n", std::nullopt},
          {"x", sig.FindSort("CList")},
          {"y", sig.FindSort("Colour")},
          {"z", sig.FindSort("CList")}};
}

FormulaPtr Parse(const Signature& sig, const std::string& text) {
  VarScope scope;
  for (const auto& v : ListVars(sig)) scope[v.name] = v.sort;
  return ParseFormula(sig, scope, text);
}

std::size_t FreshCount(const FlatFormula& f, std::size_t free_vars) {
  return f.vars.size() - free_vars;
}

TEST_CASE("nnf pushes negation to atoms") {
  const Signature sig = testing::SigOf(testing::kListDecl);
  const FormulaPtr f = Parse(
      sig, "(not (=> ((_ is cons) x) (and (= y red) (not (<= n 3)))))");
  const FormulaPtr g = ToNnf(f);
  CHECK(IsNnf(*g));
  CHECK(ToString(sig, *g) ==
        "(and ((_ is cons) x) (or (not (= y red)) (<= n 3)))");
  CHECK_FALSE(IsNnf(*f));
  CHECK(ToString(sig, *ToNnf(Parse(sig, "(not true)"))) == "false");
}

TEST_CASE("nnf preserves truth") {
  const Signature sig = testing::SigOf(testing::kListDecl);
  testing::Generator gen(sig, ListVars(sig), 3);
  for (int i = 0; i < 400; ++i) {
    const FormulaPtr f = gen.RandFormula(4);
    const FormulaPtr g = ToNnf(f);
    REQUIRE(IsNnf(*g));
    for (int j = 0; j < 5; ++j) {
      const AdtModel m = gen.RandModel(5);
      CHECK(Evaluate(sig, m, *f) == Evaluate(sig, m, *g));
    }
  }
}

TEST_CASE("flattening the running example") {
  const Signature sig = testing::SigOf(testing::kListDecl);
  const FormulaPtr f = Parse(
      sig,
      "(and ((_ is cons) x) (not (= y blue)) "
      "(or (= (head x) red) (= x (cons y nil))))");
  const FlatFormula flat = Flatten(sig, ToNnf(f));
  CHECK(CheckFlat(sig, flat).empty());
  CHECK(ToString(sig, *ToFormula(sig, flat)) ==
        "(and ((_ is cons) x) (= blue _t1) (not (= y _t1)) "
        "(or (and (= red _t2) (= (head x) _t2)) "
        "(and (= nil _t3) (= (cons y _t3) x))))");
  REQUIRE(flat.vars.size() == 5);
  CHECK(flat.vars[2].name == "_t1");
  CHECK(flat.vars[4].name == "_t3");
  CHECK(ToString(sig, *flat.registry.at("_t2")) == "red");
}

TEST_CASE("identical subterms share a name") {
  const Signature sig = testing::SigOf(testing::kListDecl);
  const FormulaPtr f =
      Parse(sig, "(or (= (tail (tail x)) z) (not (= (tail (tail x)) nil)))");
  const FlatFormula flat = Flatten(sig, ToNnf(f));
  CHECK(flat.registry.size() == 3);  // tail x, tail (tail x), nil
  CHECK(ToString(sig, *ToFormula(sig, flat)) ==
        "(or (and (= (tail x) _t1) (= (tail _t1) z)) "
        "(and (= (tail x) _t1) (= (tail _t1) _t2) (= nil _t3) "
        "(not (= _t2 _t3))))");
}

TEST_CASE("sizes and arithmetic") {
  const Signature sig = testing::SigOf(testing::kListDecl);
  const FormulaPtr f = Parse(
      sig, "(and (>= (adt.size (tail x)) 2) (not (< (* 2 n) (adt.size x))))");
  const FlatFormula flat = Flatten(sig, ToNnf(f));
  CHECK(CheckFlat(sig, flat).empty());
  CHECK(flat.size_vars.at("_z1") == "_t1");
  CHECK(flat.size_vars.at("_z2") == "x");
  CHECK(ToString(sig, *ToFormula(sig, flat)) ==
        "(and (= (tail x) _t1) (= (adt.size _t1) _z1) "
        "(<= (+ (* (- 1) _z1) 2) 0) "
        "(= (adt.size x) _z2) (<= (+ _z2 (* (- 2) n)) 0))");
}

void CheckEquisatisfiable(const Signature& sig,
                          const std::vector<TypedVar>& vars,
                          std::uint32_t seed, int rounds) {
  testing::Generator gen(sig, vars, seed);
  for (int i = 0; i < rounds; ++i) {
    const FormulaPtr f = gen.RandFormula(3);
    const FlatFormula flat = Flatten(sig, ToNnf(f));
    REQUIRE(CheckFlat(sig, flat) == "");
    CHECK(FreshCount(flat, FreeVars(*f).size()) <=
          CountFunctionOccurrences(*f));
    const FormulaPtr back = ToFormula(sig, flat);
    for (int j = 0; j < 4; ++j) {
      const AdtModel m = gen.RandModel(5);
      const bool truth = Evaluate(sig, m, *f);
      CHECK(truth == Evaluate(sig, ExtendToFresh(sig, flat, m), *back));
      // Arbitrary values for the fresh variables can only make the
      // flattened formula true where the input is true.
      AdtModel junk = m;
      for (const auto& v : flat.vars) {
        if (m.adt.count(v.name) || m.ints.count(v.name)) continue;
        if (v.sort) {
          const auto terms = EnumerateTerms(sig, *v.sort, 3);
          junk.adt[v.name] = terms[gen.Pick(terms.size())];
        } else {
          junk.ints[v.name] = static_cast<int>(gen.Pick(6));
        }
      }
      if (Evaluate(sig, junk, *back)) CHECK(truth);
    }
  }
}

TEST_CASE("flattening is equisatisfiable on random formulas") {
  const Signature list = testing::SigOf(testing::kListDecl);
  CheckEquisatisfiable(list, ListVars(list), 17, 400);
  const Signature tree = testing::SigOf(testing::kTreeDecl);
  CheckEquisatisfiable(tree,
                       {{"k", std::nullopt},
                        {"s", tree.FindSort("Tree")},
                        {"t", tree.FindSort("Tree")}},
                       23, 300);
  const Signature cyc = testing::SigOf(testing::kTwoCycleDecl);
  CheckEquisatisfiable(cyc,
                       {{"a", cyc.FindSort("S1")},
                        {"b", cyc.FindSort("S2")},
                        {"l", cyc.FindSort("CList")}},
                       29, 300);
}

}  // namespace
}  // namespace adtred
