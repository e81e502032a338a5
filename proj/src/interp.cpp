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

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "adtred/normalize.hpp"
#include "adtred/sexpr.hpp"

#ifndef ADTRED_TOOLS_DIR
#define ADTRED_TOOLS_DIR "tools"
#endif

namespace adtred {
namespace {

// A translated sub-expression: an ADT term, ctorId of a term, an integer
// expression, or a bare constant (whose reading depends on the context).
struct Val {
  enum class Kind { kTerm, kCtorId, kInt, kConst };
  Kind kind;
  TermPtr term;
  IntExprPtr ie;
  std::int64_t value = 0;
  SortId sort;
};

class BackTranslator {
 public:
  BackTranslator(const Signature& sig, const RFormula& root,
                 const ReducedSymbolTable& table,
                 const std::set<TypedVar>& vars)
      : sig_(sig), table_(table), raw_(ToSmtLib(root)) {
    for (const auto& v : vars) sorts_[v.name] = v.sort;
  }

  FormulaPtr Formula(const RFormula& f) {
    switch (f.kind) {
      case RFormula::Kind::kTrue: return MakeTrue();
      case RFormula::Kind::kFalse: return MakeFalse();
      case RFormula::Kind::kNot: return MakeNot(Formula(*f.args[0]));
      case RFormula::Kind::kAnd:
      case RFormula::Kind::kOr: {
        std::vector<FormulaPtr> args;
        for (const auto& a : f.args) args.push_back(Formula(*a));
        if (args.empty()) {
          return f.kind == RFormula::Kind::kAnd ? MakeTrue() : MakeFalse();
        }
        if (args.size() == 1) return args[0];
        return f.kind == RFormula::Kind::kAnd ? MakeAnd(std::move(args))
                                              : MakeOr(std::move(args));
      }
      default:
        return Atom(f);
    }
  }

 private:
  [[noreturn]] void Fail(const std::string& why) const {
    throw Untranslatable("untranslatable interpolant: " + why, raw_);
  }

  bool IsEnum(SortId s) const { return table_.enum_sorts.count(s) > 0; }

  Val Expr(const RExpr& e) {
    if (!fixed_.empty()) {
      if (auto it = fixed_.find(ToSmtLib(e)); it != fixed_.end()) {
        return {Val::Kind::kConst, nullptr, MakeIntConst(it->second),
                it->second, {}};
      }
    }
    switch (e.kind) {
      case RExpr::Kind::kConst:
        return {Val::Kind::kConst, nullptr, MakeIntConst(e.value), e.value, {}};
      case RExpr::Kind::kVar: {
        auto it = sorts_.find(e.name);
        if (it == sorts_.end()) Fail("'" + e.name + "' is not shared");
        if (!it->second) {
          return {Val::Kind::kInt, nullptr, MakeIntVar(e.name), 0, {}};
        }
        return {Val::Kind::kTerm, MakeVar(e.name, *it->second), nullptr, 0,
                *it->second};
      }
      case RExpr::Kind::kApp:
        return App(e);
      case RExpr::Kind::kAdd: {
        std::vector<IntExprPtr> args;
        for (const auto& a : e.args) args.push_back(Int(Expr(*a)));
        return {Val::Kind::kInt, nullptr,
                MakeIntOp(IntExpr::Kind::kAdd, std::move(args)), 0, {}};
      }
      case RExpr::Kind::kMul: {
        IntExprPtr k = MakeIntConst(e.args[0]->value);
        return {Val::Kind::kInt, nullptr,
                MakeIntOp(IntExpr::Kind::kMul, {k, Int(Expr(*e.args[1]))}), 0,
                {}};
      }
    }
    Fail("unknown expression");
  }

  Val App(const RExpr& e) {
    if (auto c = sig_.FindCtor(e.name)) {
      const CtorDecl& d = sig_.ctor(*c);
      if (d.arity() != e.args.size()) Fail("bad arity of " + e.name);
      std::vector<TermPtr> args;
      for (std::size_t i = 0; i < d.arity(); ++i) {
        args.push_back(AsTerm(Expr(*e.args[i]), d.args[i].sort));
      }
      return {Val::Kind::kTerm, MakeCtor(sig_, *c, std::move(args)), nullptr,
              0, d.sort};
    }
    if (auto sel = sig_.FindSelector(e.name)) {
      const CtorDecl& d = sig_.ctor(sel->first);
      const TermPtr arg = AsTerm(Expr(*e.args.at(0)), d.sort);
      return {Val::Kind::kTerm, MakeSel(sig_, sel->first, sel->second, arg),
              nullptr, 0, d.args[sel->second].sort};
    }
    if (auto it = table_.ctor_id_functions.find(e.name);
        it != table_.ctor_id_functions.end()) {
      return {Val::Kind::kCtorId, AsTerm(Expr(*e.args.at(0)), it->second),
              nullptr, 0, it->second};
    }
    if (auto it = table_.size_functions.find(e.name);
        it != table_.size_functions.end()) {
      return {Val::Kind::kInt, nullptr,
              MakeSizeOf(AsTerm(Expr(*e.args.at(0)), it->second)), 0, {}};
    }
    if (table_.depth_functions.count(e.name)) {
      Fail("depth function '" + e.name + "' has no ADT counterpart");
    }
    Fail("unknown function '" + e.name + "'");
  }

  TermPtr AsTerm(const Val& v, SortId s) {
    if (v.kind == Val::Kind::kTerm && v.sort == s) return v.term;
    if (v.kind == Val::Kind::kConst && IsEnum(s) && v.value >= 0 &&
        static_cast<std::size_t>(v.value) < sig_.NumCtors(s)) {
      return MakeCtor(sig_, sig_.CtorByIndex(s, v.value), {});
    }
    Fail("expected a term of sort " + sig_.sort(s).name);
  }

  IntExprPtr Int(const Val& v) {
    if (v.kind == Val::Kind::kInt || v.kind == Val::Kind::kConst) return v.ie;
    Fail("arithmetic on ADT terms");
  }

  static bool Holds(RFormula::Kind op, std::int64_t a, std::int64_t b) {
    if (op == RFormula::Kind::kEq) return a == b;
    if (op == RFormula::Kind::kLe) return a <= b;
    return a < b;
  }

  // A finite-valued integer position: ctorId of a term, or a term of an
  // enumeration sort.
  struct Leaf {
    std::string key;
    Val val;
  };

  void CollectLeaves(const RExprPtr& e, std::vector<Leaf>* out) {
    if (e->kind == RExpr::Kind::kConst) return;
    if (e->kind == RExpr::Kind::kAdd || e->kind == RExpr::Kind::kMul) {
      for (const auto& a : e->args) CollectLeaves(a, out);
      return;
    }
    const Val v = Expr(*e);
    if (v.kind == Val::Kind::kCtorId ||
        (v.kind == Val::Kind::kTerm && IsEnum(v.sort))) {
      const std::string key = ToSmtLib(*e);
      for (const auto& l : *out) {
        if (l.key == key) return;
      }
      out->push_back({key, v});
    }
  }

  FormulaPtr LeafIs(const Val& v, std::size_t i) const {
    const CtorId c = sig_.CtorByIndex(v.sort, i);
    return v.kind == Val::Kind::kCtorId ? MakeTester(sig_, c, v.term)
                                        : MakeEq(v.term, MakeCtor(sig_, c, {}));
  }

  static FormulaPtr Conj(std::vector<FormulaPtr> parts) {
    if (parts.empty()) return MakeTrue();
    if (parts.size() == 1) return parts[0];
    return MakeAnd(std::move(parts));
  }

  static bool Ground(const IntExpr& e) {
    if (e.kind == IntExpr::Kind::kVar || e.kind == IntExpr::Kind::kSize) {
      return false;
    }
    for (const auto& a : e.args) {
      if (!Ground(*a)) return false;
    }
    return true;
  }

  IntExprPtr Fold(const IntExprPtr& e) const {
    if (e->kind == IntExpr::Kind::kConst || !Ground(*e)) return e;
    return MakeIntConst(EvaluateInt(sig_, AdtModel{}, *e));
  }

  FormulaPtr Compare(RFormula::Kind op, const RFormula& f) {
    const IntExprPtr a = Fold(Int(Expr(*f.lhs)));
    const IntExprPtr b = Fold(Int(Expr(*f.rhs)));
    if (a->kind == IntExpr::Kind::kConst && b->kind == IntExpr::Kind::kConst) {
      return Holds(op, a->value, b->value) ? MakeTrue() : MakeFalse();
    }
    switch (op) {
      case RFormula::Kind::kEq: return MakeCmp(CmpOp::kEq, a, b);
      case RFormula::Kind::kLe: return MakeCmp(CmpOp::kLe, a, b);
      default: return MakeCmp(CmpOp::kLt, a, b);
    }
  }

  bool OutOfRangeId(const Val& id, const Val& k) const {
    return id.kind == Val::Kind::kCtorId && k.kind == Val::Kind::kConst &&
           (k.value < 0 ||
            static_cast<std::size_t>(k.value) >= sig_.NumCtors(id.sort));
  }

  FormulaPtr Atom(const RFormula& f) {
    auto arith = [](const RExpr& e) {
      return e.kind == RExpr::Kind::kAdd || e.kind == RExpr::Kind::kMul;
    };
    if (!arith(*f.lhs) && !arith(*f.rhs)) {
      const Val l = Expr(*f.lhs);
      const Val r = Expr(*f.rhs);
      if (l.kind == Val::Kind::kTerm && r.kind == Val::Kind::kTerm &&
          f.kind == RFormula::Kind::kEq) {
        if (l.sort != r.sort) Fail("comparison across sorts");
        return MakeEq(l.term, r.term);
      }
      if (f.kind == RFormula::Kind::kEq &&
          (OutOfRangeId(l, r) || OutOfRangeId(r, l))) {
        Fail("ctorId compared with a value that is no constructor index");
      }
    }
    // Finite positions are expanded over their constructor indices; what
    // remains is integer arithmetic.
    std::vector<Leaf> leaves;
    CollectLeaves(f.lhs, &leaves);
    CollectLeaves(f.rhs, &leaves);
    std::size_t combos = 1;
    for (const auto& leaf : leaves) {
      combos *= sig_.NumCtors(leaf.val.sort);
      if (combos > 4096) Fail("too many enumeration cases");
    }
    std::vector<FormulaPtr> cases;
    std::vector<std::size_t> idx(leaves.size(), 0);
    for (std::size_t n = 0; n < combos; ++n) {
      std::size_t rest = n;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        const std::size_t k = sig_.NumCtors(leaves[i].val.sort);
        idx[i] = rest % k;
        rest /= k;
        fixed_[leaves[i].key] = static_cast<std::int64_t>(idx[i]);
      }
      FormulaPtr residual = Compare(f.kind, f);
      if (residual->kind == Formula::Kind::kFalse) continue;
      std::vector<FormulaPtr> parts;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        parts.push_back(LeafIs(leaves[i].val, idx[i]));
      }
      if (residual->kind != Formula::Kind::kTrue) parts.push_back(residual);
      cases.push_back(Conj(std::move(parts)));
    }
    fixed_.clear();
    if (cases.empty()) return MakeFalse();
    if (cases.size() == 1) return cases[0];
    return MakeOr(std::move(cases));
  }

  const Signature& sig_;
  const ReducedSymbolTable& table_;
  std::string raw_;
  std::map<std::string, std::optional<SortId>> sorts_;
  std::map<std::string, std::int64_t> fixed_;  // leaf values being expanded
};

RExprPtr RenameExpr(const RExprPtr& e,
                    const std::map<std::string, std::string>& names) {
  if (e->kind == RExpr::Kind::kConst) return e;
  auto copy = std::make_shared<RExpr>(*e);
  if (auto it = names.find(e->name); it != names.end()) copy->name = it->second;
  for (auto& a : copy->args) a = RenameExpr(a, names);
  return copy;
}

RFormulaPtr Rename(const RFormulaPtr& f,
                   const std::map<std::string, std::string>& names) {
  auto copy = std::make_shared<RFormula>(*f);
  if (copy->lhs) copy->lhs = RenameExpr(copy->lhs, names);
  if (copy->rhs) copy->rhs = RenameExpr(copy->rhs, names);
  for (auto& a : copy->args) a = Rename(a, names);
  return copy;
}

// Reduct of one partition with its own fresh symbols tagged by `tag`. In
// depth mode the depth functions are private to the partition too.
RFormulaPtr ReducePartition(const Signature& sig, const FormulaPtr& f,
                            const std::string& tag, ReductionMode mode,
                            const ReduceOptions& opts,
                            const std::set<std::string>& taken,
                            ReducedSymbolTable* table) {
  const Reduction red = ReduceFormula(sig, f, mode, opts);
  RSignature syms;
  CollectSymbols(*red.reduct.formula, &syms);
  std::set<std::string> source;
  for (const auto& v : FreeVars(*f)) source.insert(v.name);
  std::map<std::string, std::string> names;
  for (const auto& v : syms.vars) {
    if (source.count(v)) continue;
    const std::string fresh = tag + v;
    if (taken.count(fresh)) {
      throw InputError("variable name '" + fresh + "' is reserved");
    }
    names[v] = fresh;
  }
  const ReducedSymbolTable& t = red.reduct.table;
  for (const auto& [fn, sort] : t.depth_functions) names[fn] = tag + fn;
  table->ctor_functions.insert(t.ctor_functions.begin(),
                               t.ctor_functions.end());
  table->selector_functions.insert(t.selector_functions.begin(),
                                   t.selector_functions.end());
  table->ctor_id_functions.insert(t.ctor_id_functions.begin(),
                                  t.ctor_id_functions.end());
  table->size_functions.insert(t.size_functions.begin(),
                               t.size_functions.end());
  table->enum_sorts.insert(t.enum_sorts.begin(), t.enum_sorts.end());
  return Rename(red.reduct.formula, names);
}

}  // namespace

std::set<TypedVar> InterpolationProblem::Shared() const {
  const std::set<TypedVar> va = FreeVars(*a);
  const std::set<TypedVar> vb = FreeVars(*b);
  std::set<TypedVar> out;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                        std::inserter(out, out.begin()));
  return out;
}

FormulaPtr BackTranslate(const Signature& sig, const RFormula& f,
                         const ReducedSymbolTable& table,
                         const std::set<TypedVar>& vars) {
  return BackTranslator(sig, f, table, vars).Formula(f);
}

InterpolantCheck ValidateInterpolant(const Signature& sig,
                                     const FormulaPtr& interpolant,
                                     const InterpolationProblem& prob,
                                     const PipelineOptions& o) {
  const std::set<TypedVar> shared = prob.Shared();
  for (const auto& v : FreeVars(*interpolant)) {
    if (!shared.count(v)) return {false, "'" + v.name + "' is not shared"};
  }
  const struct {
    FormulaPtr query;
    const char* what;
  } checks[] = {
      {MakeAnd({prob.a, MakeNot(interpolant)}), "A does not imply I"},
      {MakeAnd({prob.b, interpolant}), "B is consistent with I"},
  };
  for (const auto& c : checks) {
    const Verdict v = Decide(sig, c.query, o);
    if (v.status == SolverResult::Status::kSat) return {false, c.what};
    if (v.status == SolverResult::Status::kUnknown) {
      return {false, std::string(c.what) + "? unknown: " + v.reason};
    }
  }
  return {};
}

InterpolationResult Interpolate(const Signature& sig,
                                const InterpolationProblem& prob,
                                const InterpolationBackend& backend,
                                const PipelineOptions& o) {
  InterpolationResult out;
  const Verdict joint = Decide(sig, MakeAnd({prob.a, prob.b}), o);
  if (joint.status == SolverResult::Status::kSat) {
    out.kind = InterpolationResult::Kind::kNotUnsat;
    out.model = joint.model;
    return out;
  }

  std::set<std::string> taken;
  for (const auto& v : FreeVars(*prob.a)) taken.insert(v.name);
  for (const auto& v : FreeVars(*prob.b)) taken.insert(v.name);
  ReducedSymbolTable table;
  // Size mode, so that interpolants speak about |.| rather than depth.
  const ReductionMode mode = ReductionMode::kSize;
  const RFormulaPtr ra =
      ReducePartition(sig, prob.a, "_A", mode, o.reduce, taken, &table);
  const RFormulaPtr rb =
      ReducePartition(sig, prob.b, "_B", mode, o.reduce, taken, &table);
  if (SolveBuiltin(*RAnd({ra, rb}), o.backend.limits).status !=
      SolverResult::Status::kUnsat) {
    out.reason = "reduced conjunction is not unsat";
    return out;
  }

  RSignature syms;
  CollectSymbols(*ra, &syms);
  CollectSymbols(*rb, &syms);
  const bool z3 = backend.dialect == InterpolationBackend::Dialect::kZ3;
  std::ostringstream script;
  if (!z3) script << "(set-option :produce-interpolants true)\n";
  script << "(set-logic QF_UFLIA)\n";
  for (const auto& v : syms.vars) {
    script << "(declare-fun " << QuoteSymbol(v) << " () Int)\n";
  }
  for (const auto& [fn, arity] : syms.functions) {
    script << "(declare-fun " << QuoteSymbol(fn) << " (";
    for (std::size_t i = 0; i < arity; ++i) script << (i ? " Int" : "Int");
    script << ") Int)\n";
  }
  if (z3) {
    script << "(get-interpolant " << ToSmtLib(*ra) << " " << ToSmtLib(*rb)
           << ")\n";
  } else {
    script << "(assert " << ToSmtLib(*ra) << ")\n"
           << "(get-interpolant I (not " << ToSmtLib(*rb) << "))\n";
  }

  const auto reply =
      RunProcess(backend.command, script.str(), backend.timeout_ms);
  if (!reply) {
    out.reason = "interpolation backend timed out";
    return out;
  }
  std::vector<SExpr> items;
  try {
    items = ParseSExprs(*reply);
  } catch (const SyntaxError& e) {
    throw ProtocolError(std::string("unreadable interpolant: ") + e.what(),
                        *reply);
  }
  const SExpr* body = nullptr;
  for (const auto& s : items) {
    if (s.IsList() && !s.items.empty() && s.items[0].IsSymbol("error")) {
      throw BackendUnsupported("interpolation backend error", *reply);
    }
    if (!z3 && s.IsList() && s.items.size() == 5 &&
        s.items[0].IsSymbol("define-fun")) {
      body = &s.items[4];
    }
  }
  if (z3 && items.size() == 1) body = &items[0];
  if (!body) throw BackendUnsupported("no interpolant in reply", *reply);
  try {
    out.reduced = ParseRFormula(*body, syms);
  } catch (const InputError& e) {
    throw ProtocolError(std::string("unreadable interpolant: ") + e.what(),
                        *reply);
  }

  out.interpolant = BackTranslate(sig, *out.reduced, table, prob.Shared());
  const InterpolantCheck check =
      ValidateInterpolant(sig, out.interpolant, prob, o);
  if (!check.ok) {
    throw InternalError("interpolant " + ToString(sig, *out.interpolant) +
                        " failed validation: " + check.reason);
  }
  out.kind = InterpolationResult::Kind::kInterpolant;
  return out;
}

std::optional<InterpolationBackend> DefaultInterpolationBackend() {
  using Dialect = InterpolationBackend::Dialect;
  if (const char* env = std::getenv("ADT_INTERPOLATION_SOLVER");
      env && *env) {
    InterpolationBackend b{env};
    const char* dialect = std::getenv("ADT_INTERPOLATION_DIALECT");
    if (dialect && *dialect) {
      const std::string d = dialect;
      if (d != "z3" && d != "cvc5") {
        throw InputError("ADT_INTERPOLATION_DIALECT must be z3 or cvc5");
      }
      b.dialect = d == "z3" ? Dialect::kZ3 : Dialect::kCvc5;
    } else if (b.command.find("cvc5") != std::string::npos) {
      b.dialect = Dialect::kCvc5;
    }
    return b;
  }
  auto probe = [](const std::string& cmd) {
    try {
      const auto out = RunProcess(cmd + " 2>/dev/null", "", 20000);
      return out && out->rfind("ok", 0) == 0;
    } catch (const SpawnError&) {
      return false;
    }
  };
  if (probe("command -v z3 >/dev/null && echo ok")) {
    return InterpolationBackend{"z3 -in", Dialect::kZ3};
  }
  if (probe("python3 -c 'import cvc5; print(\"ok\")'")) {
    return InterpolationBackend{
        std::string("python3 '") + ADTRED_TOOLS_DIR "/cvc5_smtlib.py'",
        Dialect::kCvc5};
  }
  return std::nullopt;
}

}  // namespace adtred
