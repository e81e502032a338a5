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

// Acceptance run: one PASS/FAIL/SKIP line per criterion. Exits non-zero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "adtred/analysis.hpp"
#include "adtred/corpus.hpp"
#include "adtred/interp.hpp"
#include "adtred/models.hpp"
#include "adtred/parser.hpp"
#include "adtred/pipeline.hpp"
#include "adtred/sizesolve.hpp"
#include "fixtures.hpp"

namespace {

using namespace adtred;
using Status = SolverResult::Status;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kExampleSeconds = 1.0;
constexpr double kHornSeconds = 5.0;
constexpr double kInstanceSeconds = 1.0;
constexpr double kBlowupBound = 16.0;  // C in reduct <= C * n * |phi|
constexpr std::uint64_t kImageBound = 25;
constexpr int kMaxUnfoldingsPerVar = 3;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  enum { kPass, kFail, kSkip } state = kPass;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && state != kFail) {
      state = kFail;
      detail = what;
    }
  }
};

struct Input {
  Signature sig;
  VarScope scope;
};

Input Declare(const std::string& text) {
  const Script s = ParseScript(text);
  return {s.sig, s.Scope()};
}

FormulaPtr F(const Input& in, const std::string& text) {
  return ParseFormula(in.sig, in.scope, text);
}

bool Contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const std::string kListVars =
    "(declare-const x CList)(declare-const y CList)(declare-const r CList)"
    "(declare-const z CList)(declare-const c Colour)(declare-const e Colour)"
    "(declare-const n Int)(declare-const k Int)(declare-const nx Int)"
    "(declare-const ny Int)(declare-const nr Int)";

const char* kRunning =
    "(and ((_ is cons) x) (not (= e blue)) "
    "(or (= (head x) red) (= x (cons e nil))))";

Outcome RunningExample() {
  Outcome o;
  const Input in = Declare(std::string(testing::kListDecl) + kListVars);
  const FormulaPtr f = F(in, kRunning);
  const auto t0 = Clock::now();
  const Verdict v = Decide(in.sig, f);
  const double secs = Since(t0);
  o.Require(v.status == Status::kSat, "example is not sat");
  if (v.status == Status::kSat) {
    const ModelCheck c = CheckModel(in.sig, v.model, f);
    o.Require(c.ok, "model check: " + c.diagnostic);
  }
  o.Require(secs < kExampleSeconds, "took " + std::to_string(secs) + " s");
  const Reduction r = ReduceFormula(in.sig, f, ReductionMode::kDepth);
  const std::string text = EmitScript(*r.reduct.formula);
  for (const char* part : {"(ctorId_CList x)", "(depth_CList x)",
                           "(and (<= 0 e) (< e 3))", "_s1", "(cons _s1 _s2)"}) {
    o.Require(Contains(text, part), std::string("reduct lacks ") + part);
  }
  std::ostringstream d;
  d << "sat in " << secs << " s, reduct " << NodeCount(*r.reduct.formula)
    << " nodes";
  if (o.state == Outcome::kPass) o.detail = d.str();
  return o;
}

Outcome Optimizations(const CorpusSummary& corpus) {
  Outcome o;
  const Input in = Declare(std::string(testing::kListDecl) + kListVars);
  const FormulaPtr f = F(in, kRunning);
  const Reduction opt = ReduceFormula(in.sig, f, ReductionMode::kDepth);
  const Reduction plain =
      ReduceFormula(in.sig, f, ReductionMode::kDepth, {false, false});
  const std::string t = ToSmtLib(*opt.reduct.formula);
  o.Require(Contains(ToSmtLib(*plain.reduct.formula), "(= nil x)"),
            "unoptimized reduct has no case split");
  o.Require(!Contains(t, "(= nil x)"), "guarded selector still split");
  o.Require(opt.reduct.table.skolems.size() <
                plain.reduct.table.skolems.size(),
            "no Skolem constants removed");
  o.Require(corpus.opt_disagreements == 0,
            std::to_string(corpus.opt_disagreements) +
                " corpus verdicts differ under --no-opt");
  if (o.state == Outcome::kPass) {
    o.detail = "Skolems " + std::to_string(plain.reduct.table.skolems.size()) +
               " -> " + std::to_string(opt.reduct.table.skolems.size()) +
               ", corpus opt/no-opt disagreements 0";
  }
  return o;
}

Outcome HornClauses() {
  Outcome o;
  const Input in = Declare(std::string(testing::kListDecl) + kListVars);
  // Concatenation invariant C(x, y, r) and its size-based variant.
  auto c = [](const std::string& x, const std::string& y,
              const std::string& r) {
    return "(or (= " + r + " " + y + ") (= (head " + r + ") (head " + x +
           ")))";
  };
  auto cs = [](const std::string& x, const std::string& y,
               const std::string& r) {
    return "(= (+ (adt.size " + x + ") (adt.size " + y + ")) (+ (adt.size " +
           r + ") 1))";
  };
  auto l = [](const std::string& x, const std::string& n) {
    return "(= (adt.size " + x + ") (+ (* 2 " + n + ") 1))";
  };
  const std::vector<std::pair<std::string, std::string>> negations = {
      {"C1", "(not " + c("nil", "y", "y") + ")"},
      {"C2", "(and " + c("x", "y", "r") + " (not " +
                 c("(cons c x)", "y", "(cons c r)") + "))"},
      {"P1", "(and (not (= r nil)) " + c("x", "y", "r") +
                 " (not (or (= (head r) (head x)) (= (head r) (head y)))))"},
      {"C1'", "(not " + cs("nil", "y", "y") + ")"},
      {"C2'", "(and " + cs("x", "y", "r") + " (not " +
                  cs("(cons c x)", "y", "(cons c r)") + "))"},
      {"C3", "(not " + l("nil", "0") + ")"},
      {"C4", "(and " + l("x", "n") + " (not " + l("(cons c x)", "(+ n 1)") +
                 "))"},
      {"P2", "(and " + cs("x", "y", "r") + " " + l("x", "nx") + " " +
                 l("y", "ny") + " " + l("r", "nr") +
                 " (not (= nr (+ nx ny))))"},
  };
  const auto t0 = Clock::now();
  for (const auto& [name, text] : negations) {
    const Verdict v = Decide(in.sig, F(in, text));
    o.Require(v.status == Status::kUnsat,
              "negated " + name + " is " + StatusName(v.status));
  }
  const double secs = Since(t0);
  o.Require(secs < kHornSeconds, "took " + std::to_string(secs) + " s");
  if (o.state == Outcome::kPass) {
    o.detail = std::to_string(negations.size()) + " negated clauses unsat in " +
               std::to_string(secs) + " s";
  }
  return o;
}

std::vector<Signature> TestSignatures() {
  std::vector<Signature> sigs;
  for (const char* d :
       {testing::kListDecl, testing::kNatDecl, testing::kTwoCycleDecl,
        testing::kThreeCycleDecl, testing::kTreeDecl, testing::kPairDecl}) {
    sigs.push_back(testing::SigOf(d));
  }
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    sigs.push_back(RandomSignature(seed));
  }
  return sigs;
}

Outcome SizeImageChecks() {
  Outcome o;
  const Signature list = testing::SigOf(testing::kListDecl);
  const auto images = adtred::SizeImages(list);
  const SortId clist = *list.FindSort("CList");
  const SortId colour = *list.FindSort("Colour");
  o.Require(images[clist.value] == EventuallyPeriodicSet::Progression(1, 2),
            "CList sizes " + images[clist.value].ToString());
  o.Require(images[colour.value] == EventuallyPeriodicSet::Finite({1}),
            "Colour sizes " + images[colour.value].ToString());

  const Input in = Declare(std::string(testing::kListDecl) + kListVars);
  const SizeSolveResult even =
      SolveWithSize(in.sig, F(in, "(= (adt.size x) (* 2 k))"));
  o.Require(even.verdict.status == Status::kUnsat, "|x| = 2k is not unsat");
  o.Require(even.state.unfolded.empty(), "|x| = 2k needed unfoldings");

  std::size_t checked = 0;
  for (const Signature& sig : TestSignatures()) {
    const auto img = adtred::SizeImages(sig);
    for (std::uint32_t s = 0; s < sig.num_sorts(); ++s) {
      for (std::uint64_t b = 0; b <= kImageBound; ++b) {
        const bool counted = CountTermsOfSize(sig, SortId{s}, b) > 0;
        o.Require(counted == img[s].Contains(b),
                  sig.sort(SortId{s}).name + " size " + std::to_string(b));
        ++checked;
      }
    }
  }
  if (o.state == Outcome::kPass) {
    o.detail = "CList " + images[clist.value].ToString() + ", Colour " +
               images[colour.value].ToString() + ", " +
               std::to_string(checked) + " counts agree";
  }
  return o;
}

Outcome Expandingness() {
  Outcome o;
  auto verdict = [](const char* decl, const char* sort) {
    const Signature sig = testing::SigOf(decl);
    return CheckExpanding(sig).verdicts[sig.FindSort(sort)->value];
  };
  const ExpandingVerdict nat = verdict(testing::kNatDecl, "Nat");
  o.Require(!nat.expanding && !nat.cycle.empty(), "Nat not non-expanding");
  const Signature ns = testing::SigOf(testing::kNatDecl);
  o.Require(CheckExpanding(ns).ToString(ns) ==
                "Nat: non-expanding (cycle: Nat -> succ -> Nat)\n",
            "Nat report: " + CheckExpanding(ns).ToString(ns));
  o.Require(WitnessSatisfiesConditions(ns, nat.cycle), "Nat witness invalid");
  o.Require(verdict(testing::kListDecl, "Colour").expanding,
            "Colour non-expanding");
  o.Require(verdict(testing::kListDecl, "CList").expanding,
            "CList non-expanding");
  o.Require(!verdict(testing::kTwoCycleDecl, "S1").expanding,
            "two-cycle S1 expanding");
  o.Require(verdict(testing::kThreeCycleDecl, "S1").expanding,
            "three-cycle S1 non-expanding");
  if (o.state == Outcome::kPass) {
    o.detail = "Nat, 2-cycle non-expanding; Colour, CList, 3-cycle expanding";
  }
  return o;
}

Outcome Unfolding() {
  Outcome o;
  const Input in =
      Declare(std::string(testing::kNatDecl) +
              "(declare-const x Nat)(declare-const y Nat)");
  const SizeSolveResult bounded = SolveWithSize(
      in.sig, F(in, "(and (not (= x y)) (= (adt.size x) (adt.size y)) "
                    "(<= (adt.size x) 3))"));
  o.Require(bounded.verdict.status == Status::kUnsat, "bounded case not unsat");
  int most = 0;
  for (const auto& [var, count] : bounded.unfoldings) {
    most = std::max(most, count);
  }
  o.Require(most <= kMaxUnfoldingsPerVar,
            std::to_string(most) + " unfoldings of one variable");

  PipelineOptions fuel;
  fuel.fuel = 20;
  const SizeSolveResult open = SolveWithSize(
      in.sig, F(in, "(and (not (= x y)) (= (adt.size x) (adt.size y)))"),
      fuel);
  o.Require(open.verdict.status == Status::kUnknown, "open case not unknown");
  o.Require(Contains(open.verdict.reason,
                     "Nat: non-expanding (cycle: Nat -> succ -> Nat)"),
            "diagnosis missing: " + open.verdict.reason);
  if (o.state == Outcome::kPass) {
    o.detail = "bounded unsat with at most " + std::to_string(most) +
               " unfoldings per variable; fuel 20 -> unknown with diagnosis";
  }
  return o;
}

Outcome Interpolation() {
  Outcome o;
  const Input in = Declare(std::string(testing::kListDecl) + kListVars);
  const InterpolationProblem prob{
      F(in, "(and (= z (tail x)) ((_ is cons) z) "
            "(not (= (head x) (head z))))"),
      F(in, "(= x (cons c (cons c y)))")};
  const InterpolantCheck known = ValidateInterpolant(
      in.sig, F(in, "(not (= (head x) (head (tail x))))"), prob);
  o.Require(known.ok, "head(x) != head(tail x) rejected: " + known.reason);
  const auto backend = DefaultInterpolationBackend();
  if (!backend) {
    if (o.state == Outcome::kPass) {
      o.state = Outcome::kSkip;
      o.detail = "no interpolation backend; known interpolant validated";
    }
    return o;
  }
  const InterpolationResult r = Interpolate(in.sig, prob, *backend);
  o.Require(r.kind == InterpolationResult::Kind::kInterpolant,
            "no interpolant: " + r.reason);
  if (r.kind == InterpolationResult::Kind::kInterpolant) {
    for (const auto& v : FreeVars(*r.interpolant)) {
      o.Require(v.name == "x", "interpolant mentions " + v.name);
    }
    if (o.state == Outcome::kPass) {
      o.detail = "I = " + ToString(in.sig, *r.interpolant);
    }
  }
  return o;
}

Outcome PropertySuite(const CorpusSummary& s) {
  Outcome o;
  o.Require(s.total >= 500, "only " + std::to_string(s.total) + " instances");
  o.Require(s.inconsistent == 0,
            std::to_string(s.inconsistent) + " oracle disagreements");
  o.Require(s.model_failures == 0,
            std::to_string(s.model_failures) + " model failures");
  o.Require(s.non_utvpi == 0, std::to_string(s.non_utvpi) + " non-UTVPI");
  o.Require(s.errors == 0, std::to_string(s.errors) + " errors");
  o.Require(s.unknown == 0, std::to_string(s.unknown) + " unknown");
  o.Require(s.blowup <= kBlowupBound,
            "blow-up C = " + std::to_string(s.blowup));
  o.Require(s.max_seconds < kInstanceSeconds,
            "slowest instance " + std::to_string(s.max_seconds) + " s");
  if (o.state == Outcome::kPass) {
    std::ostringstream d;
    d << s.total << " instances (" << s.sat << " sat), C = " << s.blowup
      << " <= " << kBlowupBound << ", slowest " << s.max_seconds << " s";
    o.detail = d.str();
  }
  return o;
}

Outcome RoundTrip(const std::vector<InstanceOutcome>& outcomes) {
  Outcome o;
  std::size_t sat = 0;
  for (const auto& r : outcomes) {
    o.Require(r.error.empty(), "error: " + r.error);
    if (r.status == Status::kSat) {
      ++sat;
      o.Require(r.model_ok, "reconstructed model fails its check");
    }
  }
  if (o.state == Outcome::kPass) {
    o.detail = std::to_string(sat) + " sat instances reconstructed and checked";
  }
  return o;
}

}  // namespace

int main() {
  CorpusConfig config;  // seed 1: 5 signatures x 100 formulas
  const Corpus corpus = GenerateCorpus(config);
  const std::vector<InstanceOutcome> outcomes =
      RunCorpusParallel(corpus, config);
  const CorpusSummary summary = Summarize(outcomes);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> all = {
      {"running example", RunningExample},
      {"optimizations", [&] { return Optimizations(summary); }},
      {"Horn model checks", HornClauses},
      {"size images", SizeImageChecks},
      {"expandingness", Expandingness},
      {"unfolding loop", Unfolding},
      {"interpolation", Interpolation},
      {"property suite", [&] { return PropertySuite(summary); }},
      {"model round trip", [&] { return RoundTrip(outcomes); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Outcome o;
    try {
      o = all[i].second();
    } catch (const std::exception& e) {
      o.state = Outcome::kFail;
      o.detail = std::string("exception: ") + e.what();
    }
    const char* tag = o.state == Outcome::kPass   ? "PASS"
                      : o.state == Outcome::kSkip ? "SKIP"
                                                  : "FAIL";
    if (o.state == Outcome::kFail) ++failed;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, tag, all[i].first,
                o.detail.c_str());
  }
  return failed ? 1 : 0;
}
