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

#include <functional>
#include <sstream>

#include "adtred/analysis.hpp"

namespace adtred {

std::string ReducedSymbolTable::CtorIdName(const Signature& sig, SortId s) {
  return "ctorId_" + sig.sort(s).name;
}
std::string ReducedSymbolTable::DepthName(const Signature& sig, SortId s) {
  return "depth_" + sig.sort(s).name;
}
std::string ReducedSymbolTable::SizeName(const Signature& sig, SortId s) {
  return "size_" + sig.sort(s).name;
}

RFormulaPtr MembershipFormula(const RExprPtr& y,
                              const EventuallyPeriodicSet& set, int* counter,
                              std::set<std::string>* fresh) {
  std::vector<RFormulaPtr> cases;
  for (std::uint64_t a : set.exceptions()) {
    cases.push_back(REq(y, RConst(static_cast<std::int64_t>(a))));
  }
  const auto residues = set.residues();
  const auto threshold = static_cast<std::int64_t>(set.threshold());
  const auto period = static_cast<std::int64_t>(set.period());
  if (period == 1 && !residues.empty()) {
    cases.push_back(RLe(RConst(threshold), y));
  } else {
    for (std::uint64_t r : residues) {
      const std::string k = "_k" + std::to_string(++*counter);
      fresh->insert(k);
      cases.push_back(RAnd(
          {RLe(RConst(threshold), y),
           REq(y, RAdd({RConst(static_cast<std::int64_t>(r)),
                        RMul(period, RVar(k))})),
           RLe(RConst(0), RVar(k))}));
    }
  }
  return cases.size() == 1 ? cases[0] : ROr(std::move(cases));
}

namespace {

using FLK = FlatLiteral::Kind;

class Reducer {
 public:
  Reducer(const Signature& sig, const FlatFormula& flat, ReductionMode mode,
          const ReduceOptions& opts)
      : sig_(sig), flat_(flat), opts_(opts) {
    out_.mode = mode;
    if (mode == ReductionMode::kSize) images_ = SizeImages(sig);
    for (std::uint32_t s = 0; s < sig.num_sorts(); ++s) {
      if (IsEnum(SortId{s})) out_.table.enum_sorts.insert(SortId{s});
    }
  }

  ReducedFormula Run() {
    std::vector<RFormulaPtr> parts{Node(flat_.root, {})};
    for (const auto& v : flat_.vars) {
      if (!v.sort) {
        out_.table.int_vars.insert(v.name);
        continue;
      }
      out_.table.adt_vars[v.name] = *v.sort;
      if (RFormulaPtr in = In(RVar(v.name), *v.sort)) parts.push_back(in);
    }
    out_.formula = RAnd(std::move(parts));
    CheckNames();
    return std::move(out_);
  }

 private:
  bool IsEnum(SortId s) const {
    return opts_.enum_sorts && sig_.IsEnumeration(s);
  }
  bool SizeMode() const { return out_.mode == ReductionMode::kSize; }

  RExprPtr App(const std::string& fn, std::vector<RExprPtr> args) {
    return RApp(fn, std::move(args));
  }
  RExprPtr CtorIdOf(SortId s, RExprPtr x) {
    const std::string fn = ReducedSymbolTable::CtorIdName(sig_, s);
    out_.table.ctor_id_functions[fn] = s;
    return App(fn, {std::move(x)});
  }
  RExprPtr DepthOf(SortId s, RExprPtr x) {
    const std::string fn = ReducedSymbolTable::DepthName(sig_, s);
    out_.table.depth_functions[fn] = s;
    return App(fn, {std::move(x)});
  }
  RExprPtr SizeOf(SortId s, RExprPtr x) {
    if (IsEnum(s)) return RConst(1);
    const std::string fn = ReducedSymbolTable::SizeName(sig_, s);
    out_.table.size_functions[fn] = s;
    return App(fn, {std::move(x)});
  }
  RExprPtr Selector(CtorId c, std::size_t j, RExprPtr x) {
    const std::string& fn = sig_.ctor(c).args[j].name;
    out_.table.selector_functions[fn] = {c, j};
    return App(fn, {std::move(x)});
  }
  RExprPtr IdOf(CtorId c) {
    return RConst(static_cast<std::int64_t>(sig_.CtorIndex(c)));
  }

  // 0 <= x < |T_s| for finite sorts, null otherwise.
  RFormulaPtr In(const RExprPtr& x, SortId s) {
    const Cardinality card = ComputeCardinality(sig_, s);
    if (!card.is_finite()) return nullptr;
    if (!card.count().fits_slong_p()) {
      throw ResourceError("cardinality of " + sig_.sort(s).name +
                          " exceeds 64 bits");
    }
    return RAnd({RLe(RConst(0), x), RLt(x, RConst(card.count().get_si()))});
  }

  RFormulaPtr Member(const RExprPtr& y, SortId s) {
    const std::string key = ToSmtLib(*y) + "#" + std::to_string(s.value);
    auto it = member_memo_.find(key);
    if (it != member_memo_.end()) return it->second;
    RFormulaPtr f = MembershipFormula(y, images_[s.value], &fresh_ints_,
                                      &out_.table.int_vars);
    member_memo_[key] = f;
    return f;
  }

  RFormulaPtr CtorSpec(CtorId f, const RExprPtr& x0,
                       const std::vector<RExprPtr>& xs) {
    const CtorDecl& d = sig_.ctor(f);
    if (IsEnum(d.sort)) return REq(IdOf(f), x0);
    out_.table.ctor_functions[d.name] = f;
    std::vector<RFormulaPtr> parts{REq(App(d.name, xs), x0),
                                   REq(CtorIdOf(d.sort, x0), IdOf(f))};
    for (std::size_t j = 0; j < d.arity(); ++j) {
      parts.push_back(REq(Selector(f, j, x0), xs[j]));
    }
    if (SizeMode()) {
      std::vector<RExprPtr> sum{RConst(1)};
      for (std::size_t j = 0; j < d.arity(); ++j) {
        sum.push_back(SizeOf(d.args[j].sort, xs[j]));
      }
      parts.push_back(REq(SizeOf(d.sort, x0), RAdd(std::move(sum))));
      for (std::size_t j = 0; j < d.arity(); ++j) {
        const SortId sj = d.args[j].sort;
        if (!IsEnum(sj)) parts.push_back(Member(SizeOf(sj, xs[j]), sj));
      }
    } else {
      for (std::size_t j = 0; j < d.arity(); ++j) {
        const SortId sj = d.args[j].sort;
        if (!IsEnum(sj)) {
          parts.push_back(RLt(DepthOf(sj, xs[j]), DepthOf(d.sort, x0)));
        }
      }
    }
    return RAnd(std::move(parts));
  }

  RFormulaPtr ExCtorSpec(CtorId g, const std::string& x) {
    const CtorDecl& d = sig_.ctor(g);
    std::vector<RExprPtr> skolems;
    std::vector<RFormulaPtr> ins;
    for (const auto& a : d.args) {
      const std::string s = "_s" + std::to_string(++fresh_skolems_);
      out_.table.adt_vars[s] = a.sort;
      out_.table.skolems.push_back(s);
      skolems.push_back(RVar(s));
      if (RFormulaPtr in = In(skolems.back(), a.sort)) ins.push_back(in);
    }
    RFormulaPtr spec = CtorSpec(g, RVar(x), skolems);
    if (ins.empty()) return spec;
    std::vector<RFormulaPtr> parts;
    if (spec->kind == RFormula::Kind::kAnd) {
      parts = spec->args;
    } else {
      parts.push_back(spec);
    }
    for (auto& in : ins) parts.push_back(in);
    return RAnd(std::move(parts));
  }

  RFormulaPtr AnyCtor(SortId s, const std::string& x,
                      std::optional<CtorId> except) {
    std::vector<RFormulaPtr> cases;
    for (CtorId g : sig_.sort(s).ctors) {
      if (g != except) cases.push_back(ExCtorSpec(g, x));
    }
    return ROr(std::move(cases));
  }

  static void AddGuards(const FlatNode& n, std::set<std::string>* guards) {
    for (const auto& c : n.children) {
      if (c.kind == FlatNode::Kind::kAnd) AddGuards(c, guards);
      if (c.kind != FlatNode::Kind::kLiteral) continue;
      const FlatLiteral& l = c.literal;
      if (l.kind == FLK::kTester || (l.kind == FLK::kCtor && l.positive)) {
        guards->insert(l.vars[0]);
      }
    }
  }

  RFormulaPtr Node(const FlatNode& n, const std::set<std::string>& guards) {
    switch (n.kind) {
      case FlatNode::Kind::kTrue:
        return RTrue();
      case FlatNode::Kind::kFalse:
        return RFalse();
      case FlatNode::Kind::kLiteral:
        return Literal(n.literal, guards);
      case FlatNode::Kind::kAnd: {
        std::set<std::string> inner = guards;
        if (opts_.guarded_selectors) AddGuards(n, &inner);
        std::vector<RFormulaPtr> kids;
        for (const auto& c : n.children) kids.push_back(Node(c, inner));
        return RAnd(std::move(kids));
      }
      case FlatNode::Kind::kOr: {
        std::vector<RFormulaPtr> kids;
        for (const auto& c : n.children) kids.push_back(Node(c, guards));
        return ROr(std::move(kids));
      }
    }
    throw InternalError("bad flat node");
  }

  RExprPtr Linear(const LinExpr& e) {
    std::vector<RExprPtr> terms;
    for (const auto& [v, c] : e.coefs) {
      terms.push_back(c == 1 ? RVar(v) : RMul(c, RVar(v)));
    }
    if (terms.size() == 1) return terms[0];
    return RAdd(std::move(terms));
  }

  RFormulaPtr Literal(const FlatLiteral& l,
                      const std::set<std::string>& guards) {
    if (l.kind == FLK::kSize && !SizeMode()) {
      throw ModeMismatch("size constraint in depth-mode reduction");
    }
    const bool guarded = l.kind == FLK::kSel && guards.count(l.vars[0]);
    std::ostringstream key;
    key << static_cast<int>(l.kind) << l.positive << guarded << l.ctor.value
        << "/" << l.index;
    for (const auto& v : l.vars) key << " " << v;
    if (l.kind == FLK::kArith) {
      key << static_cast<int>(l.rel) << " " << l.lin.constant;
      for (const auto& [v, c] : l.lin.coefs) key << " " << c << "*" << v;
    }
    auto it = memo_.find(key.str());
    if (it != memo_.end()) return it->second;
    RFormulaPtr r = ReduceLiteral(l, guarded);
    memo_[key.str()] = r;
    return r;
  }

  RFormulaPtr ReduceLiteral(const FlatLiteral& l, bool guarded) {
    switch (l.kind) {
      case FLK::kCtor: {
        std::vector<RExprPtr> xs;
        for (std::size_t i = 1; i < l.vars.size(); ++i) {
          xs.push_back(RVar(l.vars[i]));
        }
        return CtorSpec(l.ctor, RVar(l.vars[0]), xs);
      }
      case FLK::kSel: {  // guarded selectors skip the case split
        const RFormulaPtr eq =
            REq(Selector(l.ctor, l.index, RVar(l.vars[0])), RVar(l.vars[1]));
        if (guarded) return eq;
        return RAnd({eq, AnyCtor(sig_.ctor(l.ctor).sort, l.vars[0], {})});
      }
      case FLK::kTester: {  // rules (3) and (4)
        const SortId s = sig_.ctor(l.ctor).sort;
        if (IsEnum(s)) {
          const RFormulaPtr eq = REq(RVar(l.vars[0]), IdOf(l.ctor));
          return l.positive ? eq : RNot(eq);
        }
        if (l.positive) return ExCtorSpec(l.ctor, l.vars[0]);
        return AnyCtor(s, l.vars[0], l.ctor);
      }
      case FLK::kVarEq: {  // rules (5) and (6)
        const RFormulaPtr eq = REq(RVar(l.vars[0]), RVar(l.vars[1]));
        return l.positive ? eq : RNot(eq);
      }
      case FLK::kSize: {
        const SortId s = flat_.SortOf(l.vars[0]).value();
        const RExprPtr y = RVar(l.vars[1]);
        if (IsEnum(s)) return REq(RConst(1), y);
        return RAnd({REq(SizeOf(s, RVar(l.vars[0])), y), Member(y, s)});
      }
      case FLK::kArith: {
        const RExprPtr lhs = Linear(l.lin);
        const RExprPtr rhs = RConst(-l.lin.constant);
        switch (l.rel) {
          case FlatLiteral::Rel::kEq:
            return REq(lhs, rhs);
          case FlatLiteral::Rel::kNe:
            return RNot(REq(lhs, rhs));
          case FlatLiteral::Rel::kLe:
            return RLe(lhs, rhs);
          case FlatLiteral::Rel::kLt:
            return RLt(lhs, rhs);
        }
      }
    }
    throw InternalError("bad flat literal");
  }

  void CheckNames() {
    RSignature syms;
    CollectSymbols(*out_.formula, &syms);
    for (const auto& v : syms.vars) {
      if (syms.functions.count(v)) {
        throw InputError("variable '" + v +
                         "' clashes with a reduced function symbol");
      }
    }
  }

  const Signature& sig_;
  const FlatFormula& flat_;
  ReduceOptions opts_;
  ReducedFormula out_;
  std::vector<EventuallyPeriodicSet> images_;
  std::map<std::string, RFormulaPtr> memo_;
  std::map<std::string, RFormulaPtr> member_memo_;
  int fresh_skolems_ = 0;
  int fresh_ints_ = 0;
};

// Linear view of an expression: constant plus coefficients of maximal
// non-arithmetic subterms (variables and applications), keyed by their
// rendering.
struct Lin {
  __int128 constant = 0;
  std::map<std::string, std::pair<__int128, RExprPtr>> terms;
};

void Linearize(const RExprPtr& e, __int128 scale, Lin* out) {
  switch (e->kind) {
    case RExpr::Kind::kConst:
      out->constant += scale * e->value;
      return;
    case RExpr::Kind::kAdd:
      for (const auto& a : e->args) Linearize(a, scale, out);
      return;
    case RExpr::Kind::kMul:
      Linearize(e->args[1], scale * e->args[0]->value, out);
      return;
    default: {
      auto& slot = out->terms[ToSmtLib(*e)];
      slot.first += scale;
      slot.second = e;
      if (slot.first == 0) out->terms.erase(ToSmtLib(*e));
    }
  }
}

Lin AtomLin(const RFormula& atom) {
  Lin l;
  Linearize(atom.lhs, 1, &l);
  Linearize(atom.rhs, -1, &l);
  return l;
}

bool Fits(__int128 v) {
  return v >= INT64_MIN && v <= INT64_MAX;
}

}  // namespace

ReducedFormula Reduce(const Signature& sig, const FlatFormula& flat,
                      ReductionMode mode, const ReduceOptions& opts) {
  return Reducer(sig, flat, mode, opts).Run();
}

bool IsUtvpi(const RFormula& f) {
  if (f.IsAtom()) {
    const Lin l = AtomLin(f);
    if (l.terms.size() > 2) return false;
    for (const auto& [k, t] : l.terms) {
      if (t.first != 1 && t.first != -1) return false;
    }
    return true;
  }
  for (const auto& a : f.args) {
    if (!IsUtvpi(*a)) return false;
  }
  return true;
}

namespace {

struct Rule {
  RExprPtr from;
  RExprPtr to;
};

RExprPtr RewriteExpr(const RExprPtr& e, const Rule& r) {
  if (SameRExpr(*e, *r.from)) return r.to;
  if (e->args.empty()) return e;
  std::vector<RExprPtr> args;
  bool changed = false;
  for (const auto& a : e->args) {
    args.push_back(RewriteExpr(a, r));
    changed = changed || args.back() != a;
  }
  if (!changed) return e;
  auto out = std::make_shared<RExpr>(*e);
  out->args = std::move(args);
  return out;
}

RFormulaPtr RewriteFormula(const RFormulaPtr& f, const Rule& r) {
  if (f->IsAtom()) {
    RExprPtr a = RewriteExpr(f->lhs, r);
    RExprPtr b = RewriteExpr(f->rhs, r);
    if (a == f->lhs && b == f->rhs) return f;
    auto out = std::make_shared<RFormula>(*f);
    out->lhs = std::move(a);
    out->rhs = std::move(b);
    return out;
  }
  if (f->args.empty()) return f;
  std::vector<RFormulaPtr> args;
  bool changed = false;
  for (const auto& a : f->args) {
    args.push_back(RewriteFormula(a, r));
    changed = changed || args.back() != a;
  }
  if (!changed) return f;
  auto out = std::make_shared<RFormula>(*f);
  out->args = std::move(args);
  return out;
}

bool IsLeaf(const RExprPtr& e) {
  return e->kind == RExpr::Kind::kVar || e->kind == RExpr::Kind::kConst;
}

std::optional<Rule> RuleOf(const RFormula& f) {
  if (f.kind != RFormula::Kind::kEq) return std::nullopt;
  RExprPtr a = f.lhs;
  RExprPtr b = f.rhs;
  using K = RExpr::Kind;
  // Orient so that `a` is the side to be replaced.
  auto rank = [](const RExprPtr& e) {
    switch (e->kind) {
      case K::kApp:
        return 2;
      case K::kVar:
        return 1;
      case K::kConst:
        return 0;
      default:
        return -1;
    }
  };
  if (rank(a) < 0 || rank(b) < 0) return std::nullopt;
  if (rank(a) < rank(b)) std::swap(a, b);
  if (a->kind == K::kApp) {
    if (!IsLeaf(b)) return std::nullopt;
    return Rule{a, b};
  }
  if (a->kind == K::kVar && b->kind == K::kVar) {
    if (a->name == b->name) return std::nullopt;
    if (a->name < b->name) std::swap(a, b);
    return Rule{a, b};
  }
  if (a->kind == K::kVar && b->kind == K::kConst) return Rule{a, b};
  return std::nullopt;
}

class Simplifier {
 public:
  Simplified Run(const RFormulaPtr& input) {
    RFormulaPtr f = input;
    for (int round = 0; round < 1000; ++round) {
      RFormulaPtr g = Fold(f);
      g = Eliminate(g);
      if (SameRFormula(*g, *f)) break;
      f = g;
    }
    return Simplified{f, std::move(elims_)};
  }

 private:
  RFormulaPtr Fold(const RFormulaPtr& f) {
    using K = RFormula::Kind;
    switch (f->kind) {
      case K::kTrue:
      case K::kFalse:
        return f;
      case K::kEq:
      case K::kLe:
      case K::kLt: {
        const Lin l = AtomLin(*f);
        if (!l.terms.empty() || !Fits(l.constant)) return f;
        const bool v = f->kind == K::kEq   ? l.constant == 0
                       : f->kind == K::kLe ? l.constant <= 0
                                           : l.constant < 0;
        return v ? RTrue() : RFalse();
      }
      case K::kNot: {
        RFormulaPtr a = Fold(f->args[0]);
        if (a->kind == K::kTrue) return RFalse();
        if (a->kind == K::kFalse) return RTrue();
        if (a->kind == K::kNot) return a->args[0];
        return a == f->args[0] ? f : RNot(a);
      }
      case K::kAnd:
      case K::kOr:
        return Junction(f);
    }
    return f;
  }

  RFormulaPtr Junction(const RFormulaPtr& f) {
    using K = RFormula::Kind;
    const bool conj = f->kind == K::kAnd;
    const K unit = conj ? K::kTrue : K::kFalse;
    const K zero = conj ? K::kFalse : K::kTrue;
    std::vector<RFormulaPtr> kids;
    std::set<std::string> seen;
    std::function<bool(const RFormulaPtr&)> add = [&](const RFormulaPtr& a) {
      if (a->kind == unit) return true;
      if (a->kind == zero) return false;
      if (a->kind == f->kind) {
        for (const auto& g : a->args) {
          if (!add(g)) return false;
        }
        return true;
      }
      if (seen.insert(ToSmtLib(*a)).second) kids.push_back(a);
      return true;
    };
    for (const auto& a : f->args) {
      if (!add(Fold(a))) return conj ? RFalse() : RTrue();
    }
    if (conj) {
      // Each equation rewrites its siblings.
      for (std::size_t i = 0; i < kids.size(); ++i) {
        const auto rule = RuleOf(*kids[i]);
        if (!rule) continue;
        for (std::size_t j = 0; j < kids.size(); ++j) {
          if (j == i) continue;
          RFormulaPtr r = RewriteFormula(kids[j], *rule);
          if (r != kids[j]) kids[j] = Fold(r);
        }
      }
      std::vector<RFormulaPtr> rewritten;
      rewritten.swap(kids);
      seen.clear();
      for (const auto& a : rewritten) {
        if (!add(a)) return RFalse();
      }
    }
    if (kids.empty()) return conj ? RTrue() : RFalse();
    if (kids.size() == 1) return kids[0];
    return conj ? RAnd(std::move(kids)) : ROr(std::move(kids));
  }

  static void CountVars(const RExpr& e, std::map<std::string, int>* n) {
    if (e.kind == RExpr::Kind::kVar) ++(*n)[e.name];
    for (const auto& a : e.args) CountVars(*a, n);
  }
  static void CountVars(const RFormula& f, std::map<std::string, int>* n) {
    if (f.lhs) CountVars(*f.lhs, n);
    if (f.rhs) CountVars(*f.rhs, n);
    for (const auto& a : f.args) CountVars(*a, n);
  }

  RFormulaPtr Eliminate(const RFormulaPtr& f) {
    counts_.clear();
    CountVars(*f, &counts_);
    return Eliminate(f, true);
  }

  RFormulaPtr Eliminate(const RFormulaPtr& f, bool positive) {
    if (f->IsAtom()) {
      const Lin l = AtomLin(*f);
      for (const auto& [key, t] : l.terms) {
        const RExprPtr& e = t.second;
        if (e->kind != RExpr::Kind::kVar || counts_[e->name] != 1) continue;
        const bool unit = t.first == 1 || t.first == -1;
        if (f->kind == RFormula::Kind::kEq && positive && !unit) continue;
        elims_.push_back(Elimination{e->name, f, positive});
        return positive ? RTrue() : RFalse();
      }
      return f;
    }
    if (f->args.empty()) return f;
    const bool inner = f->kind == RFormula::Kind::kNot ? !positive : positive;
    std::vector<RFormulaPtr> args;
    bool changed = false;
    for (const auto& a : f->args) {
      args.push_back(Eliminate(a, inner));
      changed = changed || args.back() != a;
    }
    if (!changed) return f;
    auto out = std::make_shared<RFormula>(*f);
    out->args = std::move(args);
    return out;
  }

  std::vector<Elimination> elims_;
  std::map<std::string, int> counts_;
};

std::int64_t FloorDiv(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  if (!Fits(q)) throw ResourceError("value out of range in model extension");
  return static_cast<std::int64_t>(q);
}

void Choose(const Elimination& e, IntModel* m) {
  m->vars[e.var] = 0;
  const Lin l = AtomLin(*e.atom);
  __int128 coef = 0;
  for (const auto& [key, t] : l.terms) {
    if (t.second->kind == RExpr::Kind::kVar && t.second->name == e.var) {
      coef = t.first;
    }
  }
  if (coef == 0) throw InternalError("eliminated variable vanished");
  // With var = 0 the atom's difference lhs - rhs is `rest`.
  const __int128 rest = static_cast<__int128>(EvaluateR(*m, *e.atom->lhs)) -
                        EvaluateR(*m, *e.atom->rhs);
  const std::int64_t q = FloorDiv(-rest, coef);
  for (std::int64_t d : {0, 1, -1, 2, -2, 3, -3}) {
    m->vars[e.var] = q + d;
    if (EvaluateR(*m, *e.atom) == e.truth) return;
  }
  throw InternalError("no value satisfies eliminated atom");
}

}  // namespace

Simplified Simplify(const RFormulaPtr& f) { return Simplifier().Run(f); }

void ExtendModel(const RFormula& original, const Simplified& s, IntModel* m) {
  RSignature syms;
  CollectSymbols(original, &syms);
  for (const auto& v : syms.vars) m->vars.emplace(v, 0);
  for (auto it = s.eliminations.rbegin(); it != s.eliminations.rend(); ++it) {
    Choose(*it, m);
  }
}

}  // namespace adtred
