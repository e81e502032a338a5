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

#ifndef ADTRED_GENERATOR_HPP_
#define ADTRED_GENERATOR_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "adtred/analysis.hpp"
#include "adtred/ast.hpp"

namespace adtred {

// Random well-typed formulas over an arbitrary signature and a fixed set of
// variables.
class FormulaGenerator {
 public:
  FormulaGenerator(const Signature& sig, std::vector<TypedVar> vars,
            std::uint32_t seed)
      : sig_(sig), vars_(std::move(vars)), rng_(seed) {
    for (const auto& v : vars_) {
      if (v.sort) {
        if (!adt_sorts_.empty() && adt_sorts_.back() == *v.sort) continue;
        bool seen = false;
        for (SortId s : adt_sorts_) seen = seen || s == *v.sort;
        if (!seen) adt_sorts_.push_back(*v.sort);
      } else {
        int_vars_.push_back(v.name);
      }
    }
  }

  bool allow_sizes = true;
  bool allow_arith = true;

  TermPtr RandTerm(SortId s, int depth) {
    std::vector<std::string> vars;
    for (const auto& v : vars_) {
      if (v.sort == s) vars.push_back(v.name);
    }
    std::vector<std::pair<CtorId, std::size_t>> sels;
    for (std::uint32_t c = 0; c < sig_.num_ctors_total(); ++c) {
      const CtorDecl& d = sig_.ctor(CtorId{c});
      for (std::size_t i = 0; i < d.arity(); ++i) {
        if (d.args[i].sort == s) sels.emplace_back(CtorId{c}, i);
      }
    }
    std::size_t choice = Pick(depth <= 0 ? 2 : 4);
    if (choice == 0 && vars.empty()) choice = 1;
    if (choice == 3 && sels.empty()) choice = 1;
    if (choice == 0) return MakeVar(vars[Pick(vars.size())], s);
    if (choice == 1 || choice == 2) {
      const auto& ctors = sig_.sort(s).ctors;
      CtorId c = ctors[Pick(ctors.size())];
      // Bottom out on the least constructor (smallest witness head).
      if (depth <= 0) c = DefaultWitness(sig_, s)->ctor;
      std::vector<TermPtr> args;
      for (const auto& a : sig_.ctor(c).args) {
        args.push_back(RandTerm(a.sort, depth - 1));
      }
      return MakeCtor(sig_, c, args);
    }
    const auto [c, i] = sels[Pick(sels.size())];
    return MakeSel(sig_, c, i, RandTerm(sig_.ctor(c).sort, depth - 1));
  }

  IntExprPtr RandInt(int depth) {
    switch (Pick(depth <= 0 ? 3 : 6)) {
      case 0:
        return MakeIntConst(static_cast<int>(Pick(11)) - 5);
      case 1:
        if (!int_vars_.empty()) {
          return MakeIntVar(int_vars_[Pick(int_vars_.size())]);
        }
        return MakeIntConst(static_cast<int>(Pick(5)));
      case 2:
        if (allow_sizes) return MakeSizeOf(RandTerm(RandSort(), 1));
        return MakeIntConst(static_cast<int>(Pick(5)));
      case 3:
        return MakeIntOp(IntExpr::Kind::kAdd,
                         {RandInt(depth - 1), RandInt(depth - 1)});
      case 4:
        return MakeIntOp(IntExpr::Kind::kSub,
                         {RandInt(depth - 1), RandInt(depth - 1)});
      default:
        return MakeIntOp(IntExpr::Kind::kMul,
                         {MakeIntConst(static_cast<int>(Pick(4))),
                          RandInt(depth - 1)});
    }
  }

  FormulaPtr RandAtom(int term_depth = 2) {
    const std::size_t n = allow_arith ? 3 : 2;
    switch (Pick(n)) {
      case 0: {
        const SortId s = RandSort();
        return MakeEq(RandTerm(s, term_depth), RandTerm(s, term_depth));
      }
      case 1: {
        const SortId s = RandSort();
        const auto& ctors = sig_.sort(s).ctors;
        return MakeTester(sig_, ctors[Pick(ctors.size())],
                          RandTerm(s, term_depth));
      }
      default:
        return MakeCmp(static_cast<CmpOp>(Pick(5)), RandInt(1), RandInt(1));
    }
  }

  FormulaPtr RandFormula(int depth, int term_depth = 2) {
    switch (Pick(depth <= 0 ? 1 : 8)) {
      case 0:
        return RandAtom(term_depth);
      case 1:
      case 2:
        return MakeNot(RandFormula(depth - 1, term_depth));
      case 3:
        return MakeAnd({RandFormula(depth - 1, term_depth),
                        RandFormula(depth - 1, term_depth)});
      case 4:
        return MakeOr({RandFormula(depth - 1, term_depth),
                       RandFormula(depth - 1, term_depth),
                       RandFormula(depth - 1, term_depth)});
      case 5:
        return MakeAnd({RandFormula(depth - 1, term_depth),
                        RandFormula(depth - 1, term_depth),
                        RandFormula(depth - 1, term_depth)});
      case 6:
        return MakeImplies(RandFormula(depth - 1, term_depth),
                           RandFormula(depth - 1, term_depth));
      default:
        return MakeIff(RandFormula(depth - 1, term_depth),
                       RandFormula(depth - 1, term_depth));
    }
  }

  // Assigns every variable a random value: ADT variables a term of size at
  // most `max_size`, Int variables a value in [-lo, hi].
  AdtModel RandModel(std::size_t max_size, int lo = 5, int hi = 8) {
    AdtModel m;
    for (const auto& v : vars_) {
      if (v.sort) {
        const auto terms = EnumerateTerms(sig_, *v.sort, max_size);
        m.adt[v.name] = terms[Pick(terms.size())];
      } else {
        m.ints[v.name] = static_cast<int>(Pick(lo + hi + 1)) - lo;
      }
    }
    return m;
  }

  std::size_t Pick(std::size_t n) { return rng_() % n; }

 private:
  SortId RandSort() { return adt_sorts_[Pick(adt_sorts_.size())]; }

  const Signature& sig_;
  std::vector<TypedVar> vars_;
  std::vector<SortId> adt_sorts_;
  std::vector<std::string> int_vars_;
  std::mt19937 rng_;
};

}  // namespace adtred

#endif  // ADTRED_GENERATOR_HPP_
