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

#include <functional>
#include <set>

#include "adtred/error.hpp"

namespace adtred {
namespace {

using FK = Formula::Kind;

FormulaPtr Nnf(const FormulaPtr& f, bool negate) {
  switch (f->kind) {
    case FK::kTrue:
      return negate ? MakeFalse() : f;
    case FK::kFalse:
      return negate ? MakeTrue() : f;
    case FK::kTester:
    case FK::kEq:
    case FK::kCmp:
      return negate ? MakeNot(f) : f;
    case FK::kNot:
      return Nnf(f->args[0], !negate);
    case FK::kAnd:
    case FK::kOr: {
      std::vector<FormulaPtr> args;
      for (const auto& a : f->args) args.push_back(Nnf(a, negate));
      const bool conj = (f->kind == FK::kAnd) != negate;
      return conj ? MakeAnd(std::move(args)) : MakeOr(std::move(args));
    }
    case FK::kImplies:
      // a => b  ==  !a | b
      if (negate) {
        return MakeAnd({Nnf(f->args[0], false), Nnf(f->args[1], true)});
      }
      return MakeOr({Nnf(f->args[0], true), Nnf(f->args[1], false)});
    case FK::kIff: {
      // a <=> b  ==  (a & b) | (!a & !b);  !(a <=> b)  ==  (a & !b) | (!a & b)
      const auto& a = f->args[0];
      const auto& b = f->args[1];
      return MakeOr({MakeAnd({Nnf(a, false), Nnf(b, negate)}),
                     MakeAnd({Nnf(a, true), Nnf(b, !negate)})});
    }
  }
  throw InternalError("bad formula kind");
}

LinExpr Scale(LinExpr e, std::int64_t k) {
  if (k == 0) return LinExpr{};
  for (auto& [v, c] : e.coefs) c *= k;
  e.constant *= k;
  return e;
}

void AddInto(LinExpr* acc, const LinExpr& e) {
  for (const auto& [v, c] : e.coefs) {
    acc->coefs[v] += c;
    if (acc->coefs[v] == 0) acc->coefs.erase(v);
  }
  acc->constant += e.constant;
}

class Flattener {
 public:
  explicit Flattener(const Signature& sig) : sig_(sig) {}

  FlatFormula Run(const FormulaPtr& nnf) {
    for (const auto& v : FreeVars(*nnf)) {
      out_.vars.push_back(v);
      declared_.insert(v.name);
    }
    out_.root = Node(*nnf);
    return std::move(out_);
  }

 private:
  using Defs = std::vector<FlatNode>;

  struct Named {
    std::string name;
    Defs defs;  // definitions of the name and of its named subterms
  };

  static FlatNode Leaf(FlatLiteral lit) {
    FlatNode n;
    n.kind = FlatNode::Kind::kLiteral;
    n.literal = std::move(lit);
    return n;
  }

  static FlatNode Junction(FlatNode::Kind kind, std::vector<FlatNode> kids) {
    FlatNode n;
    n.kind = kind;
    for (auto& k : kids) {
      if (k.kind == kind) {
        for (auto& g : k.children) n.children.push_back(std::move(g));
      } else {
        n.children.push_back(std::move(k));
      }
    }
    return n;
  }

  FlatNode Node(const Formula& f) {
    switch (f.kind) {
      case FK::kTrue:
        return FlatNode{FlatNode::Kind::kTrue, {}, {}};
      case FK::kFalse:
        return FlatNode{FlatNode::Kind::kFalse, {}, {}};
      case FK::kAnd:
      case FK::kOr: {
        std::vector<FlatNode> kids;
        for (const auto& a : f.args) kids.push_back(Node(*a));
        return Junction(f.kind == FK::kAnd ? FlatNode::Kind::kAnd
                                           : FlatNode::Kind::kOr,
                        std::move(kids));
      }
      case FK::kNot:
        if (!f.args[0]->IsAtom()) throw InternalError("flatten: input not NNF");
        return Atom(*f.args[0], false);
      case FK::kTester:
      case FK::kEq:
      case FK::kCmp:
        return Atom(f, true);
      default:
        throw InternalError("flatten: input not NNF");
    }
  }

  void Declare(const std::string& name, std::optional<SortId> sort) {
    if (declared_.insert(name).second) {
      out_.vars.push_back(TypedVar{name, sort});
    }
  }

  static void Append(Defs* defs, const Defs& more) {
    for (const auto& d : more) {
      bool dup = false;
      for (const auto& e : *defs) {
        const auto& a = d.literal;
        const auto& b = e.literal;
        dup = dup || (a.kind == b.kind && a.vars == b.vars &&
                      a.ctor == b.ctor && a.index == b.index);
      }
      if (!dup) defs->push_back(d);
    }
  }

  // Literal stating that the compound term `t`, with its arguments already
  // named, equals the variable `result`.
  FlatLiteral Direct(const TermPtr& t, const std::string& result, Defs* defs) {
    FlatLiteral lit;
    lit.ctor = t->ctor;
    if (t->kind == Term::Kind::kCtor) {
      lit.kind = FlatLiteral::Kind::kCtor;
      lit.vars.push_back(result);
      for (const auto& a : t->args) lit.vars.push_back(NameOf(a, defs));
    } else {
      lit.kind = FlatLiteral::Kind::kSel;
      lit.index = t->index;
      lit.vars = {NameOf(t->args[0], defs), result};
    }
    return lit;
  }

  std::string NameOf(const TermPtr& t, Defs* defs) {
    if (t->kind == Term::Kind::kVar) return t->name;
    const std::string key = ToString(sig_, *t);
    auto it = names_.find(key);
    if (it == names_.end()) {
      Named named;
      FlatLiteral def;
      // Arguments are named before the term itself.
      Defs inner;
      if (t->kind == Term::Kind::kCtor) {
        std::vector<std::string> args;
        for (const auto& a : t->args) args.push_back(NameOf(a, &inner));
        named.name = "_t" + std::to_string(++fresh_terms_);
        def.kind = FlatLiteral::Kind::kCtor;
        def.ctor = t->ctor;
        def.vars.push_back(named.name);
        def.vars.insert(def.vars.end(), args.begin(), args.end());
      } else {
        const std::string arg = NameOf(t->args[0], &inner);
        named.name = "_t" + std::to_string(++fresh_terms_);
        def.kind = FlatLiteral::Kind::kSel;
        def.ctor = t->ctor;
        def.index = t->index;
        def.vars = {arg, named.name};
      }
      Declare(named.name, t->sort);
      out_.registry[named.name] = t;
      named.defs = std::move(inner);
      named.defs.push_back(Leaf(def));
      it = names_.emplace(key, std::move(named)).first;
    }
    Append(defs, it->second.defs);
    return it->second.name;
  }

  std::string SizeVar(const TermPtr& t, Defs* defs) {
    const std::string x = NameOf(t, defs);
    auto it = sizes_.find(x);
    if (it == sizes_.end()) {
      const std::string z = "_z" + std::to_string(++fresh_sizes_);
      Declare(z, std::nullopt);
      out_.size_vars[z] = x;
      it = sizes_.emplace(x, z).first;
    }
    FlatLiteral lit;
    lit.kind = FlatLiteral::Kind::kSize;
    lit.vars = {x, it->second};
    Append(defs, {Leaf(lit)});
    return it->second;
  }

  LinExpr Linear(const IntExpr& e, Defs* defs) {
    LinExpr out;
    switch (e.kind) {
      case IntExpr::Kind::kConst:
        out.constant = e.value;
        break;
      case IntExpr::Kind::kVar:
        out.coefs[e.name] = 1;
        break;
      case IntExpr::Kind::kSize:
        out.coefs[SizeVar(e.term, defs)] = 1;
        break;
      case IntExpr::Kind::kAdd:
        for (const auto& a : e.args) AddInto(&out, Linear(*a, defs));
        break;
      case IntExpr::Kind::kSub:
        if (e.args.size() == 1) return Scale(Linear(*e.args[0], defs), -1);
        out = Linear(*e.args[0], defs);
        for (std::size_t i = 1; i < e.args.size(); ++i) {
          AddInto(&out, Scale(Linear(*e.args[i], defs), -1));
        }
        break;
      case IntExpr::Kind::kMul: {
        std::int64_t k = 1;
        std::optional<LinExpr> var_part;
        for (const auto& a : e.args) {
          if (a->kind == IntExpr::Kind::kConst) {
            k *= a->value;
          } else {
            var_part = Linear(*a, defs);
          }
        }
        if (var_part) return Scale(*var_part, k);
        out.constant = k;
        break;
      }
    }
    return out;
  }

  FlatNode Atom(const Formula& f, bool positive) {
    Defs defs;
    FlatLiteral lit;
    lit.positive = positive;
    switch (f.kind) {
      case FK::kTester:
        lit.kind = FlatLiteral::Kind::kTester;
        lit.ctor = f.ctor;
        lit.vars = {NameOf(f.lhs, &defs)};
        break;
      case FK::kEq: {
        const bool lvar = f.lhs->kind == Term::Kind::kVar;
        const bool rvar = f.rhs->kind == Term::Kind::kVar;
        if (!positive || (lvar && rvar)) {
          lit.kind = FlatLiteral::Kind::kVarEq;
          const std::string a = NameOf(f.lhs, &defs);
          const std::string b = NameOf(f.rhs, &defs);
          lit.vars = {a, b};
        } else if (lvar) {
          lit = Direct(f.rhs, f.lhs->name, &defs);
        } else if (rvar) {
          lit = Direct(f.lhs, f.rhs->name, &defs);
        } else {
          const std::string r = NameOf(f.rhs, &defs);
          lit = Direct(f.lhs, r, &defs);
        }
        break;
      }
      case FK::kCmp: {
        LinExpr l = Linear(*f.ilhs, &defs);
        LinExpr r = Linear(*f.irhs, &defs);
        lit.kind = FlatLiteral::Kind::kArith;
        lit.positive = true;
        using R = FlatLiteral::Rel;
        auto diff = [](LinExpr a, const LinExpr& b) {
          AddInto(&a, Scale(b, -1));
          return a;
        };
        switch (f.op) {
          case CmpOp::kEq:
            lit.lin = diff(l, r);
            lit.rel = positive ? R::kEq : R::kNe;
            break;
          case CmpOp::kLe:  // l <= r;  !: r < l
            lit.lin = positive ? diff(l, r) : diff(r, l);
            lit.rel = positive ? R::kLe : R::kLt;
            break;
          case CmpOp::kLt:  // l < r;  !: r <= l
            lit.lin = positive ? diff(l, r) : diff(r, l);
            lit.rel = positive ? R::kLt : R::kLe;
            break;
          case CmpOp::kGe:  // r <= l;  !: l < r
            lit.lin = positive ? diff(r, l) : diff(l, r);
            lit.rel = positive ? R::kLe : R::kLt;
            break;
          case CmpOp::kGt:  // r < l;  !: l <= r
            lit.lin = positive ? diff(r, l) : diff(l, r);
            lit.rel = positive ? R::kLt : R::kLe;
            break;
        }
        break;
      }
      default:
        throw InternalError("flatten: not an atom");
    }
    if (defs.empty()) return Leaf(std::move(lit));
    defs.push_back(Leaf(std::move(lit)));
    return Junction(FlatNode::Kind::kAnd, std::move(defs));
  }

  const Signature& sig_;
  FlatFormula out_;
  std::set<std::string> declared_;
  std::map<std::string, Named> names_;
  std::map<std::string, std::string> sizes_;
  int fresh_terms_ = 0;
  int fresh_sizes_ = 0;
};

std::size_t TermOccurrences(const Term& t) {
  std::size_t n = t.kind == Term::Kind::kVar ? 0 : 1;
  for (const auto& a : t.args) n += TermOccurrences(*a);
  return n;
}

std::size_t IntOccurrences(const IntExpr& e) {
  std::size_t n = 0;
  if (e.term) n += 1 + TermOccurrences(*e.term);
  for (const auto& a : e.args) n += IntOccurrences(*a);
  return n;
}

}  // namespace

FormulaPtr ToNnf(const FormulaPtr& f) { return Nnf(f, false); }

bool IsNnf(const Formula& f) {
  switch (f.kind) {
    case FK::kTrue:
    case FK::kFalse:
    case FK::kTester:
    case FK::kEq:
    case FK::kCmp:
      return true;
    case FK::kNot:
      return f.args[0]->IsAtom();
    case FK::kAnd:
    case FK::kOr:
      for (const auto& a : f.args) {
        if (!IsNnf(*a)) return false;
      }
      return true;
    default:
      return false;
  }
}

std::optional<SortId> FlatFormula::SortOf(const std::string& var) const {
  for (const auto& v : vars) {
    if (v.name == var) return v.sort;
  }
  throw UnboundVariable(var);
}

FlatFormula Flatten(const Signature& sig, const FormulaPtr& nnf) {
  if (!IsNnf(*nnf)) throw InternalError("flatten: input not in NNF");
  return Flattener(sig).Run(nnf);
}

std::string CheckFlat(const Signature& sig, const FlatFormula& f) {
  std::map<std::string, std::optional<SortId>> sorts;
  for (const auto& v : f.vars) {
    if (!sorts.emplace(v.name, v.sort).second) {
      return "variable declared twice: " + v.name;
    }
  }
  auto adt = [&](const std::string& v, SortId s) {
    auto it = sorts.find(v);
    return it != sorts.end() && it->second == s;
  };
  auto is_int = [&](const std::string& v) {
    auto it = sorts.find(v);
    return it != sorts.end() && !it->second;
  };
  std::string problem;
  std::function<void(const FlatNode&)> visit = [&](const FlatNode& n) {
    if (!problem.empty()) return;
    if (n.kind != FlatNode::Kind::kLiteral) {
      for (const auto& c : n.children) visit(c);
      return;
    }
    const FlatLiteral& l = n.literal;
    using K = FlatLiteral::Kind;
    bool ok = true;
    switch (l.kind) {
      case K::kCtor: {
        const CtorDecl& d = sig.ctor(l.ctor);
        ok = l.positive && l.vars.size() == d.arity() + 1 &&
             adt(l.vars[0], d.sort);
        for (std::size_t i = 0; ok && i < d.arity(); ++i) {
          ok = adt(l.vars[i + 1], d.args[i].sort);
        }
        break;
      }
      case K::kSel: {
        const CtorDecl& d = sig.ctor(l.ctor);
        ok = l.positive && l.vars.size() == 2 && l.index < d.arity() &&
             adt(l.vars[0], d.sort) && adt(l.vars[1], d.args[l.index].sort);
        break;
      }
      case K::kTester:
        ok = l.vars.size() == 1 && adt(l.vars[0], sig.ctor(l.ctor).sort);
        break;
      case K::kVarEq:
        ok = l.vars.size() == 2 && sorts.count(l.vars[0]) &&
             sorts.count(l.vars[1]) && sorts[l.vars[0]] &&
             sorts[l.vars[0]] == sorts[l.vars[1]];
        break;
      case K::kSize:
        ok = l.positive && l.vars.size() == 2 && sorts.count(l.vars[0]) &&
             sorts[l.vars[0]].has_value() && is_int(l.vars[1]);
        break;
      case K::kArith:
        ok = l.positive;
        for (const auto& [v, c] : l.lin.coefs) ok = ok && is_int(v) && c != 0;
        break;
    }
    if (!ok) problem = "ill-formed flat literal";
  };
  visit(f.root);
  if (!problem.empty()) return problem;
  for (const auto& [name, term] : f.registry) {
    if (term->kind == Term::Kind::kVar) return "registry names a variable";
    std::set<TypedVar> inner;
    CollectVars(*term, &inner);
    for (const auto& v : inner) {
      if (f.registry.count(v.name)) return "cyclic registry entry " + name;
    }
  }
  return "";
}

FormulaPtr LiteralToFormula(const Signature& sig, const FlatFormula& f,
                            const FlatLiteral& l) {
  auto var = [&](const std::string& v) { return MakeVar(v, *f.SortOf(v)); };
  using K = FlatLiteral::Kind;
  FormulaPtr atom;
  switch (l.kind) {
    case K::kCtor: {
      std::vector<TermPtr> args;
      for (std::size_t i = 1; i < l.vars.size(); ++i) {
        args.push_back(var(l.vars[i]));
      }
      atom = MakeEq(MakeCtor(sig, l.ctor, args), var(l.vars[0]));
      break;
    }
    case K::kSel:
      atom = MakeEq(MakeSel(sig, l.ctor, l.index, var(l.vars[0])),
                    var(l.vars[1]));
      break;
    case K::kTester:
      atom = MakeTester(sig, l.ctor, var(l.vars[0]));
      break;
    case K::kVarEq:
      atom = MakeEq(var(l.vars[0]), var(l.vars[1]));
      break;
    case K::kSize:
      atom = MakeCmp(CmpOp::kEq, MakeSizeOf(var(l.vars[0])),
                     MakeIntVar(l.vars[1]));
      break;
    case K::kArith: {
      std::vector<IntExprPtr> parts;
      for (const auto& [v, c] : l.lin.coefs) {
        parts.push_back(c == 1 ? MakeIntVar(v)
                               : MakeIntOp(IntExpr::Kind::kMul,
                                           {MakeIntConst(c), MakeIntVar(v)}));
      }
      if (l.lin.constant != 0 || parts.empty()) {
        parts.push_back(MakeIntConst(l.lin.constant));
      }
      IntExprPtr lhs = parts.size() == 1
                           ? parts[0]
                           : MakeIntOp(IntExpr::Kind::kAdd, parts);
      using R = FlatLiteral::Rel;
      const CmpOp op = l.rel == R::kLe   ? CmpOp::kLe
                       : l.rel == R::kLt ? CmpOp::kLt
                                         : CmpOp::kEq;
      atom = MakeCmp(op, lhs, MakeIntConst(0));
      if (l.rel == R::kNe) atom = MakeNot(atom);
      return atom;
    }
  }
  return l.positive ? atom : MakeNot(atom);
}

FormulaPtr ToFormula(const Signature& sig, const FlatFormula& f) {
  std::function<FormulaPtr(const FlatNode&)> conv =
      [&](const FlatNode& n) -> FormulaPtr {
    switch (n.kind) {
      case FlatNode::Kind::kTrue:
        return MakeTrue();
      case FlatNode::Kind::kFalse:
        return MakeFalse();
      case FlatNode::Kind::kLiteral:
        return LiteralToFormula(sig, f, n.literal);
      case FlatNode::Kind::kAnd:
      case FlatNode::Kind::kOr: {
        std::vector<FormulaPtr> kids;
        for (const auto& c : n.children) kids.push_back(conv(c));
        return n.kind == FlatNode::Kind::kAnd ? MakeAnd(kids) : MakeOr(kids);
      }
    }
    return nullptr;
  };
  return conv(f.root);
}

AdtModel ExtendToFresh(const Signature& sig, const FlatFormula& f,
                       const AdtModel& m) {
  AdtModel out = m;
  for (const auto& [name, term] : f.registry) {
    out.adt[name] = EvaluateTerm(sig, m, *term);
  }
  for (const auto& [z, x] : f.size_vars) {
    out.ints[z] = static_cast<std::int64_t>(out.adt.at(x)->Size());
  }
  return out;
}

std::size_t CountFunctionOccurrences(const Formula& f) {
  std::size_t n = 0;
  if (f.kind == FK::kTester) ++n;
  if (f.lhs) n += TermOccurrences(*f.lhs);
  if (f.rhs) n += TermOccurrences(*f.rhs);
  if (f.ilhs) n += IntOccurrences(*f.ilhs);
  if (f.irhs) n += IntOccurrences(*f.irhs);
  for (const auto& a : f.args) n += CountFunctionOccurrences(*a);
  return n;
}

}  // namespace adtred
