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

#include "adtred/ast.hpp"

#include <sstream>

#include "adtred/analysis.hpp"
#include "adtred/error.hpp"

namespace adtred {

bool Term::IsGround() const {
  if (kind != Kind::kCtor) return false;
  for (const auto& a : args) {
    if (!a->IsGround()) return false;
  }
  return true;
}

std::size_t Term::Size() const {
  std::size_t n = kind == Kind::kCtor ? 1 : 0;
  for (const auto& a : args) n += a->Size();
  return n;
}

TermPtr MakeVar(std::string name, SortId sort) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::kVar;
  t->name = std::move(name);
  t->sort = sort;
  return t;
}

TermPtr MakeCtor(const Signature& sig, CtorId c, std::vector<TermPtr> args) {
  const CtorDecl& decl = sig.ctor(c);
  if (args.size() != decl.arity()) {
    throw TypeError("constructor '" + decl.name + "' expects " +
                    std::to_string(decl.arity()) + " arguments, got " +
                    std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i]->sort != decl.args[i].sort) {
      throw TypeError("argument " + std::to_string(i + 1) + " of '" +
                      decl.name + "': expected " +
                      sig.sort(decl.args[i].sort).name + ", found " +
                      sig.sort(args[i]->sort).name);
    }
  }
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::kCtor;
  t->sort = decl.sort;
  t->ctor = c;
  t->args = std::move(args);
  return t;
}

TermPtr MakeSel(const Signature& sig, CtorId c, std::size_t index,
                TermPtr arg) {
  const CtorDecl& decl = sig.ctor(c);
  if (index >= decl.arity()) throw TypeError("selector index out of range");
  if (arg->sort != decl.sort) {
    throw TypeError("selector '" + decl.args[index].name + "': expected " +
                    sig.sort(decl.sort).name + ", found " +
                    sig.sort(arg->sort).name);
  }
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::kSel;
  t->sort = decl.args[index].sort;
  t->ctor = c;
  t->index = index;
  t->args = {std::move(arg)};
  return t;
}

int CompareTerms(const Term& a, const Term& b) {
  if (&a == &b) return 0;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.sort != b.sort) return a.sort < b.sort ? -1 : 1;
  if (a.kind == Term::Kind::kVar) return a.name.compare(b.name);
  if (a.ctor != b.ctor) return a.ctor < b.ctor ? -1 : 1;
  if (a.index != b.index) return a.index < b.index ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const int c = CompareTerms(*a.args[i], *b.args[i]);
    if (c != 0) return c;
  }
  return 0;
}

IntExprPtr MakeIntConst(std::int64_t v) {
  auto e = std::make_shared<IntExpr>();
  e->kind = IntExpr::Kind::kConst;
  e->value = v;
  return e;
}

IntExprPtr MakeIntVar(std::string name) {
  auto e = std::make_shared<IntExpr>();
  e->kind = IntExpr::Kind::kVar;
  e->name = std::move(name);
  return e;
}

IntExprPtr MakeSizeOf(TermPtr t) {
  auto e = std::make_shared<IntExpr>();
  e->kind = IntExpr::Kind::kSize;
  e->term = std::move(t);
  return e;
}

IntExprPtr MakeIntOp(IntExpr::Kind kind, std::vector<IntExprPtr> args) {
  if (kind == IntExpr::Kind::kMul) {
    int non_const = 0;
    for (const auto& a : args) {
      if (a->kind != IntExpr::Kind::kConst) ++non_const;
    }
    if (non_const > 1) throw TypeError("non-linear multiplication");
  }
  auto e = std::make_shared<IntExpr>();
  e->kind = kind;
  e->args = std::move(args);
  return e;
}

namespace {

FormulaPtr MakeNode(Formula::Kind kind, std::vector<FormulaPtr> args = {}) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->args = std::move(args);
  return f;
}

}  // namespace

FormulaPtr MakeTrue() {
  static const FormulaPtr t = MakeNode(Formula::Kind::kTrue);
  return t;
}

FormulaPtr MakeFalse() {
  static const FormulaPtr f = MakeNode(Formula::Kind::kFalse);
  return f;
}

FormulaPtr MakeTester(const Signature& sig, CtorId c, TermPtr t) {
  if (t->sort != sig.ctor(c).sort) {
    throw TypeError("tester for '" + sig.ctor(c).name + "' applied to " +
                    sig.sort(t->sort).name);
  }
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::kTester;
  f->ctor = c;
  f->lhs = std::move(t);
  return f;
}

FormulaPtr MakeEq(TermPtr a, TermPtr b) {
  if (a->sort != b->sort) throw TypeError("equation between different sorts");
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::kEq;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr MakeCmp(CmpOp op, IntExprPtr a, IntExprPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::kCmp;
  f->op = op;
  f->ilhs = std::move(a);
  f->irhs = std::move(b);
  return f;
}

FormulaPtr MakeNot(FormulaPtr f) {
  return MakeNode(Formula::Kind::kNot, {std::move(f)});
}
FormulaPtr MakeAnd(std::vector<FormulaPtr> args) {
  return MakeNode(Formula::Kind::kAnd, std::move(args));
}
FormulaPtr MakeOr(std::vector<FormulaPtr> args) {
  return MakeNode(Formula::Kind::kOr, std::move(args));
}
FormulaPtr MakeImplies(FormulaPtr a, FormulaPtr b) {
  return MakeNode(Formula::Kind::kImplies, {std::move(a), std::move(b)});
}
FormulaPtr MakeIff(FormulaPtr a, FormulaPtr b) {
  return MakeNode(Formula::Kind::kIff, {std::move(a), std::move(b)});
}

namespace {

bool SameIntExpr(const IntExpr& a, const IntExpr& b) {
  if (a.kind != b.kind || a.value != b.value || a.name != b.name) return false;
  if ((a.term == nullptr) != (b.term == nullptr)) return false;
  if (a.term && CompareTerms(*a.term, *b.term) != 0) return false;
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!SameIntExpr(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

}  // namespace

bool SameFormula(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Formula::Kind::kTester:
      return a.ctor == b.ctor && CompareTerms(*a.lhs, *b.lhs) == 0;
    case Formula::Kind::kEq:
      return CompareTerms(*a.lhs, *b.lhs) == 0 &&
             CompareTerms(*a.rhs, *b.rhs) == 0;
    case Formula::Kind::kCmp:
      return a.op == b.op && SameIntExpr(*a.ilhs, *b.ilhs) &&
             SameIntExpr(*a.irhs, *b.irhs);
    default:
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!SameFormula(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

void CollectVars(const Term& t, std::set<TypedVar>* out) {
  if (t.kind == Term::Kind::kVar) {
    out->insert(TypedVar{t.name, t.sort});
    return;
  }
  for (const auto& a : t.args) CollectVars(*a, out);
}

namespace {

void CollectIntVars(const IntExpr& e, std::set<TypedVar>* out) {
  if (e.kind == IntExpr::Kind::kVar) out->insert(TypedVar{e.name, {}});
  if (e.term) CollectVars(*e.term, out);
  for (const auto& a : e.args) CollectIntVars(*a, out);
}

void CollectFormulaVars(const Formula& f, std::set<TypedVar>* out) {
  if (f.lhs) CollectVars(*f.lhs, out);
  if (f.rhs) CollectVars(*f.rhs, out);
  if (f.ilhs) CollectIntVars(*f.ilhs, out);
  if (f.irhs) CollectIntVars(*f.irhs, out);
  for (const auto& a : f.args) CollectFormulaVars(*a, out);
}

bool IntHasSize(const IntExpr& e) {
  if (e.kind == IntExpr::Kind::kSize) return true;
  for (const auto& a : e.args) {
    if (IntHasSize(*a)) return true;
  }
  return false;
}

std::size_t TermNodes(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args) n += TermNodes(*a);
  return n;
}

std::size_t IntNodes(const IntExpr& e) {
  std::size_t n = 1;
  if (e.term) n += TermNodes(*e.term);
  for (const auto& a : e.args) n += IntNodes(*a);
  return n;
}

}  // namespace

std::set<TypedVar> FreeVars(const Formula& f) {
  std::set<TypedVar> out;
  CollectFormulaVars(f, &out);
  return out;
}

bool HasSizeAtoms(const Formula& f) {
  if (f.kind == Formula::Kind::kCmp) {
    return IntHasSize(*f.ilhs) || IntHasSize(*f.irhs);
  }
  for (const auto& a : f.args) {
    if (HasSizeAtoms(*a)) return true;
  }
  return false;
}

std::size_t NodeCount(const Formula& f) {
  std::size_t n = 1;
  if (f.lhs) n += TermNodes(*f.lhs);
  if (f.rhs) n += TermNodes(*f.rhs);
  if (f.ilhs) n += IntNodes(*f.ilhs);
  if (f.irhs) n += IntNodes(*f.irhs);
  for (const auto& a : f.args) n += NodeCount(*a);
  return n;
}

TermPtr EvaluateTerm(const Signature& sig, const AdtModel& m, const Term& t) {
  switch (t.kind) {
    case Term::Kind::kVar: {
      auto it = m.adt.find(t.name);
      if (it == m.adt.end()) throw UnboundVariable(t.name);
      return it->second;
    }
    case Term::Kind::kCtor: {
      std::vector<TermPtr> args;
      for (const auto& a : t.args) args.push_back(EvaluateTerm(sig, m, *a));
      return MakeCtor(sig, t.ctor, std::move(args));
    }
    case Term::Kind::kSel: {
      TermPtr v = EvaluateTerm(sig, m, *t.args[0]);
      if (v->ctor == t.ctor) return v->args[t.index];
      auto table = m.selector_values.find({t.ctor, t.index});
      if (table != m.selector_values.end()) {
        auto it = table->second.find(v);
        if (it != table->second.end()) return it->second;
      }
      return DefaultWitness(sig, t.sort);
    }
  }
  throw InternalError("bad term kind");
}

std::int64_t EvaluateInt(const Signature& sig, const AdtModel& m,
                         const IntExpr& e) {
  switch (e.kind) {
    case IntExpr::Kind::kConst:
      return e.value;
    case IntExpr::Kind::kVar: {
      auto it = m.ints.find(e.name);
      if (it == m.ints.end()) throw UnboundVariable(e.name);
      return it->second;
    }
    case IntExpr::Kind::kSize:
      return static_cast<std::int64_t>(EvaluateTerm(sig, m, *e.term)->Size());
    case IntExpr::Kind::kAdd: {
      std::int64_t s = 0;
      for (const auto& a : e.args) s += EvaluateInt(sig, m, *a);
      return s;
    }
    case IntExpr::Kind::kSub: {
      if (e.args.size() == 1) return -EvaluateInt(sig, m, *e.args[0]);
      std::int64_t s = EvaluateInt(sig, m, *e.args[0]);
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        s -= EvaluateInt(sig, m, *e.args[i]);
      }
      return s;
    }
    case IntExpr::Kind::kMul: {
      std::int64_t p = 1;
      for (const auto& a : e.args) p *= EvaluateInt(sig, m, *a);
      return p;
    }
  }
  throw InternalError("bad integer expression kind");
}

bool Evaluate(const Signature& sig, const AdtModel& m, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::kTrue:
      return true;
    case Formula::Kind::kFalse:
      return false;
    case Formula::Kind::kTester:
      return EvaluateTerm(sig, m, *f.lhs)->ctor == f.ctor;
    case Formula::Kind::kEq:
      return SameTerm(EvaluateTerm(sig, m, *f.lhs),
                      EvaluateTerm(sig, m, *f.rhs));
    case Formula::Kind::kCmp: {
      const std::int64_t a = EvaluateInt(sig, m, *f.ilhs);
      const std::int64_t b = EvaluateInt(sig, m, *f.irhs);
      switch (f.op) {
        case CmpOp::kEq: return a == b;
        case CmpOp::kLe: return a <= b;
        case CmpOp::kLt: return a < b;
        case CmpOp::kGe: return a >= b;
        case CmpOp::kGt: return a > b;
      }
      return false;
    }
    case Formula::Kind::kNot:
      return !Evaluate(sig, m, *f.args[0]);
    case Formula::Kind::kAnd:
      for (const auto& a : f.args) {
        if (!Evaluate(sig, m, *a)) return false;
      }
      return true;
    case Formula::Kind::kOr:
      for (const auto& a : f.args) {
        if (Evaluate(sig, m, *a)) return true;
      }
      return false;
    case Formula::Kind::kImplies:
      return !Evaluate(sig, m, *f.args[0]) || Evaluate(sig, m, *f.args[1]);
    case Formula::Kind::kIff:
      return Evaluate(sig, m, *f.args[0]) == Evaluate(sig, m, *f.args[1]);
  }
  throw InternalError("bad formula kind");
}

std::string ToString(const Signature& sig, const Term& t) {
  switch (t.kind) {
    case Term::Kind::kVar:
      return t.name;
    case Term::Kind::kCtor: {
      const std::string& name = sig.ctor(t.ctor).name;
      if (t.args.empty()) return name;
      std::string out = "(" + name;
      for (const auto& a : t.args) out += " " + ToString(sig, *a);
      return out + ")";
    }
    case Term::Kind::kSel:
      return "(" + sig.ctor(t.ctor).args[t.index].name + " " +
             ToString(sig, *t.args[0]) + ")";
  }
  return "?";
}

std::string ToString(const Signature& sig, const IntExpr& e) {
  auto nary = [&](const char* op) {
    std::string out = std::string("(") + op;
    for (const auto& a : e.args) out += " " + ToString(sig, *a);
    return out + ")";
  };
  switch (e.kind) {
    case IntExpr::Kind::kConst:
      return e.value < 0 ? "(- " + std::to_string(-e.value) + ")"
                         : std::to_string(e.value);
    case IntExpr::Kind::kVar:
      return e.name;
    case IntExpr::Kind::kSize:
      return "(adt.size " + ToString(sig, *e.term) + ")";
    case IntExpr::Kind::kAdd:
      return nary("+");
    case IntExpr::Kind::kSub:
      return nary("-");
    case IntExpr::Kind::kMul:
      return nary("*");
  }
  return "?";
}

std::string CmpOpName(CmpOp op) {
  switch (op) {
    case CmpOp::kEq: return "=";
    case CmpOp::kLe: return "<=";
    case CmpOp::kLt: return "<";
    case CmpOp::kGe: return ">=";
    case CmpOp::kGt: return ">";
  }
  return "?";
}

std::string ToString(const Signature& sig, const Formula& f) {
  auto nary = [&](const char* op) {
    std::string out = std::string("(") + op;
    for (const auto& a : f.args) out += " " + ToString(sig, *a);
    return out + ")";
  };
  switch (f.kind) {
    case Formula::Kind::kTrue:
      return "true";
    case Formula::Kind::kFalse:
      return "false";
    case Formula::Kind::kTester:
      return "((_ is " + sig.ctor(f.ctor).name + ") " +
             ToString(sig, *f.lhs) + ")";
    case Formula::Kind::kEq:
      return "(= " + ToString(sig, *f.lhs) + " " + ToString(sig, *f.rhs) +
             ")";
    case Formula::Kind::kCmp:
      return "(" + CmpOpName(f.op) + " " + ToString(sig, *f.ilhs) + " " +
             ToString(sig, *f.irhs) + ")";
    case Formula::Kind::kNot:
      return nary("not");
    case Formula::Kind::kAnd:
      return f.args.empty() ? "true" : nary("and");
    case Formula::Kind::kOr:
      return f.args.empty() ? "false" : nary("or");
    case Formula::Kind::kImplies:
      return nary("=>");
    case Formula::Kind::kIff:
      return nary("=");
  }
  return "?";
}

std::string ModelToString(const Signature& sig, const AdtModel& m,
                          const std::set<TypedVar>& vars) {
  std::ostringstream out;
  for (const auto& v : vars) {
    if (v.sort) {
      auto it = m.adt.find(v.name);
      if (it == m.adt.end()) throw UnboundVariable(v.name);
      out << "(define-fun " << v.name << " () " << sig.sort(*v.sort).name
          << " " << ToString(sig, *it->second) << ")\n";
    } else {
      auto it = m.ints.find(v.name);
      if (it == m.ints.end()) throw UnboundVariable(v.name);
      out << "(define-fun " << v.name << " () Int "
          << ToString(sig, *MakeIntConst(it->second)) << ")\n";
    }
  }
  return out.str();
}

}  // namespace adtred
