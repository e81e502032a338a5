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

#include "adtred/sizesolve.hpp"

#include "adtred/analysis.hpp"
#include "adtred/models.hpp"
#include "adtred/oracle.hpp"
#include "adtred/parser.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "generator.hpp"

namespace adtred {
namespace {

using Status = SolverResult::Status;

struct Input {
  Signature sig;
  FormulaPtr formula;
};

Input Load(const char* decl, const std::string& rest) {
  const Script s = ParseScript(std::string(decl) + rest);
  return {s.sig, s.Conjunction()};
}

const char* kNatPair = "(declare-const x Nat)(declare-const y Nat)";

TEST_CASE("unfolding adds the constructor cases") {
  const Input in = Load(testing::kNatDecl, std::string(kNatPair) +
                                               "(assert (not (= x y)))");
  UnfoldState s = InitialUnfoldState(in.sig, in.formula);
  s = UnfoldVariable(in.sig, s, "x");
  CHECK(ToString(in.sig, *s.formula) ==
        "(and (not (= x y)) (or (= one x) (= (succ _u1) x)))");
  CHECK(s.unfolded == std::vector<std::string>{"x"});
  CHECK(s.origin.at("_u1") == "x");
  CHECK_THROWS_AS(UnfoldVariable(in.sig, s, "x"), AlreadyUnfolded);
  CHECK_THROWS_AS(UnfoldVariable(in.sig, s, "w"), UnknownVariable);
  s = UnfoldVariable(in.sig, s, "_u1");
  CHECK(s.root.at("_u1") == "x");
  CHECK(s.round == 2);

  const Input list = Load(testing::kListDecl,
                          "(declare-const x CList)(assert ((_ is nil) x))");
  const UnfoldState l =
      UnfoldVariable(list.sig, InitialUnfoldState(list.sig, list.formula), "x");
  CHECK(ToString(list.sig, *l.formula) ==
        "(and ((_ is nil) x) (or (= nil x) (= (cons _u1 _u2) x)))");
}

TEST_CASE("size three list with a blue head") {
  const Input in = Load(testing::kListDecl,
                        "(declare-const x CList)"
                        "(assert (and (= (adt.size x) 3) "
                        "(not (= (head x) red)) (not (= (head x) green))))");
  const SizeSolveResult r = SolveWithSize(in.sig, in.formula);
  REQUIRE(r.verdict.status == Status::kSat);
  CHECK(ToString(in.sig, *r.verdict.model.adt.at("x")) == "(cons blue nil)");
  // It is the only model: the oracle sees exactly one.
  int models = 0;
  for (const auto& t : EnumerateTerms(in.sig, SortId{1}, 7)) {
    AdtModel m;
    m.adt["x"] = t;
    models += Evaluate(in.sig, m, *in.formula);
  }
  CHECK(models == 1);
}

TEST_CASE("even list sizes are unsat without unfolding") {
  const Input in = Load(testing::kListDecl,
                        "(declare-const x CList)(declare-const k Int)"
                        "(assert (= (adt.size x) (* 2 k)))");
  const SizeSolveResult r = SolveWithSize(in.sig, in.formula);
  CHECK(r.verdict.status == Status::kUnsat);
  CHECK(r.state.round == 0);
}

TEST_CASE("bounded Nat sizes are refuted by unfolding") {
  const Input in = Load(testing::kNatDecl,
                        std::string(kNatPair) +
                            "(assert (and (not (= x y)) "
                            "(= (adt.size x) (adt.size y)) "
                            "(<= (adt.size x) 3)))");
  const SizeSolveResult r = SolveWithSize(in.sig, in.formula);
  CHECK(r.verdict.status == Status::kUnsat);
  CHECK(r.unfoldings.at("x") <= 3);
  CHECK(r.unfoldings.at("y") <= 3);
  CHECK_FALSE(BoundedSearch(in.sig, in.formula).found);
}

TEST_CASE("unbounded Nat sizes run out of fuel") {
  const Input in = Load(testing::kNatDecl,
                        std::string(kNatPair) +
                            "(assert (and (not (= x y)) "
                            "(= (adt.size x) (adt.size y))))");
  PipelineOptions o;
  o.fuel = 20;
  const SizeSolveResult r = SolveWithSize(in.sig, in.formula, o);
  CHECK(r.verdict.status == Status::kUnknown);
  CHECK(r.state.round == 20);
  REQUIRE(r.non_expanding.size() == 1);
  CHECK(in.sig.sort(r.non_expanding[0]).name == "Nat");
  CHECK(r.verdict.reason.find("Nat: non-expanding (cycle: Nat -> succ -> Nat)") !=
        std::string::npos);
  // Fairness: both variables keep being unfolded.
  CHECK(r.unfoldings.at("x") >= 5);
  CHECK(r.unfoldings.at("y") >= 5);
}

TEST_CASE("completeness report") {
  CHECK(CompletenessReport(testing::SigOf(testing::kListDecl))
            .find("decision procedure complete") != std::string::npos);
  const std::string nat = CompletenessReport(testing::SigOf(testing::kNatDecl));
  CHECK(nat.find("Nat -> succ -> Nat") != std::string::npos);
  const std::string mixed =
      CompletenessReport(testing::SigOf(std::string(
          "(declare-datatypes ((Colour 0) (CList 0) (Nat 0)) "
          "(((red) (green) (blue)) ((nil) (cons (head Colour) (tail CList))) "
          "((one) (succ (pred Nat)))))")));
  CHECK(mixed.find("Nat -> succ -> Nat") != std::string::npos);
  CHECK(mixed.find("CList ->") == std::string::npos);
}

TEST_CASE("size loop agrees with the oracle") {
  for (const char* decl : {testing::kListDecl, testing::kTreeDecl}) {
    const Signature sig = testing::SigOf(decl);
    const SortId last{static_cast<std::uint32_t>(sig.num_sorts() - 1)};
    testing::Generator gen(sig,
                           {{"n", std::nullopt}, {"x", last}, {"z", last}},
                           61);
    int decided = 0;
    for (int i = 0; i < 80; ++i) {
      const FormulaPtr f = gen.RandFormula(2, 1);
      if (!HasSizeAtoms(*f)) continue;
      PipelineOptions o;
      o.fuel = 12;
      const SizeSolveResult r = SolveWithSize(sig, f, o);
      OracleLimits lim;
      lim.max_term_size = 5;
      const bool found = BoundedSearch(sig, f, lim).found;
      if (r.verdict.status == Status::kUnsat) CHECK_FALSE(found);
      if (found) CHECK(r.verdict.status != Status::kUnsat);
      if (r.verdict.status == Status::kSat) {
        CHECK(CheckModel(sig, r.verdict.model, f).ok);
      }
      decided += r.verdict.status != Status::kUnknown;
    }
    CHECK(decided > 10);
  }
}

}  // namespace
}  // namespace adtred
