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

#include <map>
#include <set>

#include "adtred/analysis.hpp"
#include "adtred/parser.hpp"
#include "adtred/signature.hpp"
#include "doctest.h"
#include "fixtures.hpp"

namespace adtred {
namespace {

using testing::SigOf;

SortId Sort(const Signature& sig, const std::string& name) {
  return *sig.FindSort(name);
}
CtorId Ctor(const Signature& sig, const std::string& name) {
  return *sig.FindCtor(name);
}

std::vector<std::string> AllDecls() {
  return {testing::kListDecl,       testing::kNatDecl,  testing::kTwoCycleDecl,
          testing::kThreeCycleDecl, testing::kTreeDecl, testing::kPairDecl};
}

// Counts by brute-force enumeration: independent of the counting DP.
std::map<std::size_t, std::size_t> CountByEnumeration(const Signature& sig,
                                                      SortId s,
                                                      std::size_t max) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& t : EnumerateTerms(sig, s, max)) ++out[t->Size()];
  return out;
}

TEST_CASE("validate") {
  CHECK(Validate(SigOf(testing::kListDecl).ToSpecs()).empty());
  CHECK(Validate(SigOf(testing::kNatDecl).ToSpecs()).empty());

  std::vector<SortSpec> empty{{"S", {{"f", {{"s", "S"}}}}}};
  auto problems = Validate(empty);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].kind == SignatureError::Kind::kEmptySort);
  CHECK(problems[0].symbol == "S");
  CHECK_THROWS_AS(Signature::Build(empty), SignatureError);

  std::vector<SortSpec> dup{{"A", {{"a", {}}, {"a", {}}}}};
  problems = Validate(dup);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].kind == SignatureError::Kind::kDuplicateName);
  CHECK(problems[0].symbol == "a");

  std::vector<SortSpec> unknown{{"A", {{"a", {{"x", "B"}}}, {"b", {}}}}};
  problems = Validate(unknown);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].kind == SignatureError::Kind::kUnknownSort);
  CHECK(problems[0].symbol == "B");

  // Non-emptiness needs the fixpoint: B is inhabited only through A.
  std::vector<SortSpec> chain{{"B", {{"mkb", {{"x", "A"}}}}},
                              {"A", {{"a", {}}}}};
  CHECK(Validate(chain).empty());
}

TEST_CASE("constructor indices are zero-based") {
  const Signature sig = SigOf(testing::kListDecl);
  CHECK(sig.CtorIndex(Ctor(sig, "cons")) == 1);
  CHECK(sig.CtorIndex(Ctor(sig, "nil")) == 0);
  CHECK(sig.CtorIndex(Ctor(sig, "blue")) == 2);
  CHECK(sig.NumCtors(Sort(sig, "Colour")) == 3);
  for (const auto& decl : AllDecls()) {
    const Signature s = SigOf(decl);
    for (std::size_t i = 0; i < s.num_sorts(); ++i) {
      std::set<std::size_t> ids;
      for (CtorId c : s.sorts()[i].ctors) ids.insert(s.CtorIndex(c));
      CHECK(ids.size() == s.sorts()[i].ctors.size());
      CHECK(*ids.rbegin() == ids.size() - 1);
    }
  }
}

TEST_CASE("cardinality") {
  const Signature list = SigOf(testing::kListDecl);
  CHECK(ComputeCardinality(list, Sort(list, "Colour")) ==
        Cardinality::Finite(3));
  CHECK_FALSE(ComputeCardinality(list, Sort(list, "CList")).is_finite());
  const Signature pair = SigOf(testing::kPairDecl);
  // Enumerate all P terms.
  const auto ps = EnumerateTerms(pair, Sort(pair, "P"), 10);
  CHECK(ps.size() == 9);
  CHECK(ComputeCardinality(pair, Sort(pair, "P")) == Cardinality::Finite(9));

  // Finite(n) iff the cumulative count stabilizes at n.
  for (const auto& decl : AllDecls()) {
    const Signature s = SigOf(decl);
    for (std::size_t i = 0; i < s.num_sorts(); ++i) {
      const SortId id{std::uint32_t(i)};
      mpz_class total = 0, at20 = 0;
      for (std::uint64_t b = 0; b <= 40; ++b) {
        total += CountTermsOfSize(s, id, b);
        if (b == 20) at20 = total;
      }
      const Cardinality card = ComputeCardinality(s, id);
      if (card.is_finite()) {
        CHECK(total == card.count());
        CHECK(at20 == total);
      } else {
        CHECK(total > at20);
      }
    }
  }
}

TEST_CASE("dependency graph of lists") {
  const Signature sig = SigOf(testing::kListDecl);
  const DependencyGraph g = BuildDependencyGraph(sig);
  CHECK(g.vertices.size() == 7);
  // CList->nil, CList->cons, cons->Colour, cons->CList, Colour->3 colours.
  CHECK(g.edges.size() == 7);
  for (const auto& [from, to] : g.edges) CHECK(from.is_sort != to.is_sort);
}

TEST_CASE("size images") {
  const Signature list = SigOf(testing::kListDecl);
  CHECK(SizeImage(list, Sort(list, "CList")) ==
        EventuallyPeriodicSet::Progression(1, 2));
  CHECK(SizeImage(list, Sort(list, "Colour")) ==
        EventuallyPeriodicSet::Finite({1}));
  const Signature nat = SigOf(testing::kNatDecl);
  CHECK(SizeImage(nat, Sort(nat, "Nat")) ==
        EventuallyPeriodicSet::Progression(1, 1));

  CHECK(RelativizedSizeImage(nat, Sort(nat, "Nat"), Ctor(nat, "succ")) ==
        EventuallyPeriodicSet::Finite({1}));
  CHECK(RelativizedSizeImage(list, Sort(list, "CList"), Ctor(list, "cons")) ==
        EventuallyPeriodicSet::Finite({1}));
  CHECK(RelativizedSizeImage(list, Sort(list, "CList"), Ctor(list, "nil")) ==
        EventuallyPeriodicSet::Progression(3, 2));
  CHECK_THROWS_AS(
      RelativizedSizeImage(list, Sort(list, "CList"), Ctor(list, "red")),
      TypeError);

  // Membership agrees with counting for every b <= 25.
  for (const auto& decl : AllDecls()) {
    const Signature s = SigOf(decl);
    const auto images = SizeImages(s);
    for (std::size_t i = 0; i < s.num_sorts(); ++i) {
      const SortId id{std::uint32_t(i)};
      for (std::uint64_t b = 0; b <= 25; ++b) {
        CHECK(images[i].Contains(b) == (CountTermsOfSize(s, id, b) > 0));
      }
      // Relativized images against enumeration by head symbol.
      for (CtorId f : s.sort(id).ctors) {
        const auto rel = RelativizedSizeImage(s, id, f);
        std::set<std::size_t> sizes;
        for (const auto& t : EnumerateTerms(s, id, 12)) {
          if (t->ctor != f) sizes.insert(t->Size());
        }
        for (std::uint64_t b = 0; b <= 12; ++b) {
          CHECK(rel.Contains(b) == (sizes.count(b) > 0));
        }
      }
    }
  }
}

TEST_CASE("term counts") {
  const Signature list = SigOf(testing::kListDecl);
  CHECK(CountTermsOfSize(list, Sort(list, "CList"), 3) == 3);
  CHECK(CountTermsOfSize(list, Sort(list, "Colour"), 1) == 3);
  const Signature nat = SigOf(testing::kNatDecl);
  CHECK(CountTermsOfSize(nat, Sort(nat, "Nat"), 5) == 1);
  CHECK_THROWS_AS(CountTermsOfSize(nat, Sort(nat, "Nat"), 10, 5),
                  ResourceError);

  for (const auto& decl : AllDecls()) {
    const Signature s = SigOf(decl);
    for (std::size_t i = 0; i < s.num_sorts(); ++i) {
      const SortId id{std::uint32_t(i)};
      const auto brute = CountByEnumeration(s, id, 9);
      for (std::uint64_t b = 1; b <= 9; ++b) {
        auto it = brute.find(b);
        const std::size_t expected = it == brute.end() ? 0 : it->second;
        CHECK(CountTermsOfSize(s, id, b) == expected);
      }
    }
  }
}

TEST_CASE("enumeration order") {
  const Signature sig = SigOf(testing::kListDecl);
  auto names = [&](const std::vector<TermPtr>& ts) {
    std::vector<std::string> out;
    for (const auto& t : ts) out.push_back(ToString(sig, *t));
    return out;
  };
  CHECK(names(EnumerateTerms(sig, Sort(sig, "Colour"), 1)) ==
        std::vector<std::string>{"red", "green", "blue"});
  CHECK(names(EnumerateTerms(sig, Sort(sig, "CList"), 1)) ==
        std::vector<std::string>{"nil"});
  CHECK(names(EnumerateTerms(sig, Sort(sig, "CList"), 3)) ==
        std::vector<std::string>{"nil", "(cons red nil)", "(cons green nil)",
                                 "(cons blue nil)"});
  CHECK(ToString(sig, *DefaultWitness(sig, Sort(sig, "CList"))) == "nil");

  for (const auto& decl : AllDecls()) {
    const Signature s = SigOf(decl);
    for (std::size_t i = 0; i < s.num_sorts(); ++i) {
      const auto ts = EnumerateTerms(s, SortId{std::uint32_t(i)}, 8);
      for (std::size_t j = 1; j < ts.size(); ++j) {
        CHECK(EnumerationLess(s, *ts[j - 1], *ts[j]));
      }
      CHECK(SameTerm(ts.front(), DefaultWitness(s, SortId{std::uint32_t(i)})));
    }
  }
  CHECK_THROWS_AS(EnumerateTerms(SigOf(testing::kTreeDecl), SortId{0}, 30, 1000),
                  ResourceError);
}

TEST_CASE("expandingness") {
  const Signature nat = SigOf(testing::kNatDecl);
  ExpandingReport r = CheckExpanding(nat);
  CHECK_FALSE(r.verdicts[0].expanding);
  CHECK(r.CycleToString(nat, r.verdicts[0]) == "Nat -> succ -> Nat");
  CHECK(r.ToString(nat) == "Nat: non-expanding (cycle: Nat -> succ -> Nat)\n");
  CHECK(WitnessSatisfiesConditions(nat, r.verdicts[0].cycle));

  const Signature list = SigOf(testing::kListDecl);
  r = CheckExpanding(list);
  CHECK(r.AllExpanding());

  const Signature two = SigOf(testing::kTwoCycleDecl);
  r = CheckExpanding(two);
  const auto& s1 = r.verdicts[Sort(two, "S1").value];
  CHECK_FALSE(s1.expanding);
  CHECK(r.CycleToString(two, s1) == "S1 -> f1 -> S2 -> f2 -> S1");
  CHECK(WitnessSatisfiesConditions(two, s1.cycle));
  CHECK(r.verdicts[Sort(two, "CList").value].expanding);

  const Signature three = SigOf(testing::kThreeCycleDecl);
  r = CheckExpanding(three);
  CHECK(r.AllExpanding());
  // The 3-cycle itself fails condition 3.
  std::vector<DependencyGraph::Vertex> c3{
      {true, Sort(three, "S1").value},  {false, Ctor(three, "f1").value},
      {true, Sort(three, "S2").value},  {false, Ctor(three, "f2").value},
      {true, Sort(three, "S3").value},  {false, Ctor(three, "f3").value},
      {true, Sort(three, "S1").value}};
  CHECK_FALSE(WitnessSatisfiesConditions(three, c3));

  CHECK(CompletenessReport(list).find("complete") != std::string::npos);
  const std::string mixed = CompletenessReport(SigOf(
      "(declare-datatypes ((Colour 0) (CList 0) (Nat 0)) "
      "(((red) (green) (blue)) ((nil) (cons (head Colour) (tail CList))) "
      "((one) (succ (pred Nat)))))"));
  CHECK(mixed.find("incomplete") != std::string::npos);
  CHECK(mixed.find("Nat -> succ -> Nat") != std::string::npos);
  CHECK(mixed.find("CList:") == std::string::npos);
}

TEST_CASE("expandingness is consistent with counting") {
  // Non-expanding sorts: along the cycle-weight progression there is a
  // residue class with positive, bounded counts.
  struct Case {
    const char* decl;
    const char* sort;
    bool expanding;
  };
  const Case cases[] = {
      {testing::kNatDecl, "Nat", false},
      {testing::kTwoCycleDecl, "S1", false},
      {testing::kTwoCycleDecl, "S2", false},
      {testing::kListDecl, "CList", true},
      {testing::kThreeCycleDecl, "S1", true},
      {testing::kTreeDecl, "Tree", true},
  };
  for (const auto& c : cases) {
    const Signature sig = SigOf(c.decl);
    const SortId s = Sort(sig, c.sort);
    const auto report = CheckExpanding(sig);
    CHECK(report.verdicts[s.value].expanding == c.expanding);
    std::vector<mpz_class> counts;
    for (std::uint64_t b = 0; b <= 48; ++b) {
      counts.push_back(CountTermsOfSize(sig, s, b));
    }
    if (!c.expanding) {
      const std::uint64_t n = (report.verdicts[s.value].cycle.size() - 1) / 2;
      bool found = false;
      for (std::uint64_t r = 0; r < n && !found; ++r) {
        bool bounded = true;
        for (std::uint64_t b = 20 + r; b <= 48; b += n) {
          bounded = bounded && counts[b] > 0 && counts[b] < 3;
        }
        found = bounded;
      }
      CHECK(found);
    } else {
      mpz_class prev = 0;
      for (std::uint64_t lo = 2; lo <= 30; ++lo) {
        mpz_class min = -1;
        for (std::uint64_t b = lo; b <= 48; ++b) {
          if (counts[b] > 0 && (min < 0 || counts[b] < min)) min = counts[b];
        }
        CHECK(min >= prev);
        prev = min;
      }
    }
  }
}

}  // namespace
}  // namespace adtred
