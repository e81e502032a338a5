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

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "adtred/backend.hpp"

namespace adtred {
namespace {

struct TermNode {
  enum class Kind { kVar, kConst, kApp, kPurified };
  Kind kind;
  std::string name;
  std::int64_t value = 0;
  std::vector<int> args;
  int fn = -1;  // applications: dense function id
};

// sum(coefs) + constant
struct LinearTerm {
  std::map<int, __int128> coefs;
  __int128 constant = 0;
};

struct Literal {
  enum class Kind { kEq, kNe, kLe };  // atomic: a (= | !=) b; else lin rel 0
  Kind kind;
  bool atomic = false;
  int a = -1;
  int b = -1;
  LinearTerm lin;
};

struct FNode {
  enum class Kind { kTrue, kFalse, kLit, kAnd, kOr };
  Kind kind;
  int lit = -1;
  std::vector<int> kids;
};

// Shared, immutable after construction.
struct Problem {
  std::vector<TermNode> terms;
  std::map<std::string, int> term_index;
  std::vector<int> apps;
  std::map<std::string, int> functions;
  std::vector<Literal> lits;
  std::vector<FNode> nodes;
  int root = -1;
  std::vector<int> purification;  // arithmetic literals asserted globally
};

class Builder {
 public:
  explicit Builder(Problem* p) : p_(*p) {}

  int Node(const RFormula& f, bool positive) {
    using K = RFormula::Kind;
    switch (f.kind) {
      case K::kTrue:
        return Const(positive);
      case K::kFalse:
        return Const(!positive);
      case K::kNot:
        return Node(*f.args[0], !positive);
      case K::kAnd:
      case K::kOr: {
        FNode n;
        n.kind = (f.kind == K::kAnd) == positive ? FNode::Kind::kAnd
                                                  : FNode::Kind::kOr;
        for (const auto& a : f.args) n.kids.push_back(Node(*a, positive));
        return Add(std::move(n));
      }
      case K::kEq:
      case K::kLe:
      case K::kLt: {
        FNode n;
        n.kind = FNode::Kind::kLit;
        n.lit = Atom(f, positive);
        return Add(std::move(n));
      }
    }
    throw InternalError("bad formula kind");
  }

 private:
  int Add(FNode n) {
    p_.nodes.push_back(std::move(n));
    return static_cast<int>(p_.nodes.size()) - 1;
  }

  int Const(bool v) {
    FNode n;
    n.kind = v ? FNode::Kind::kTrue : FNode::Kind::kFalse;
    return Add(std::move(n));
  }

  int Intern(TermNode t, const std::string& key) {
    auto it = p_.term_index.find(key);
    if (it != p_.term_index.end()) return it->second;
    const int id = static_cast<int>(p_.terms.size());
    if (t.kind == TermNode::Kind::kApp) {
      p_.apps.push_back(id);
      t.fn = p_.functions.emplace(t.name, static_cast<int>(p_.functions.size()))
                 .first->second;
    }
    p_.terms.push_back(std::move(t));
    p_.term_index[key] = id;
    return id;
  }

  static bool IsAtomic(const RExpr& e) {
    return e.kind == RExpr::Kind::kVar || e.kind == RExpr::Kind::kConst ||
           e.kind == RExpr::Kind::kApp;
  }

  // Term id for an expression usable inside applications.
  int TermOf(const RExprPtr& e) {
    switch (e->kind) {
      case RExpr::Kind::kVar:
        return Intern(TermNode{TermNode::Kind::kVar, e->name, 0, {}},
                      "v:" + e->name);
      case RExpr::Kind::kConst:
        return Intern(TermNode{TermNode::Kind::kConst, "", e->value, {}},
                      "c:" + std::to_string(e->value));
      case RExpr::Kind::kApp: {
        TermNode t{TermNode::Kind::kApp, e->name, 0, {}};
        std::string key = "a:" + e->name;
        for (const auto& a : e->args) {
          t.args.push_back(TermOf(a));
          key += " " + std::to_string(t.args.back());
        }
        return Intern(std::move(t), key);
      }
      default: {
        const std::string key = "p:" + ToSmtLib(*e);
        auto it = p_.term_index.find(key);
        if (it != p_.term_index.end()) return it->second;
        const int id = Intern(
            TermNode{TermNode::Kind::kPurified, key, 0, {}}, key);
        Literal l;
        l.kind = Literal::Kind::kEq;
        l.lin = Linear(e, 1);
        l.lin.coefs[id] -= 1;
        p_.lits.push_back(std::move(l));
        p_.purification.push_back(static_cast<int>(p_.lits.size()) - 1);
        return id;
      }
    }
  }

  LinearTerm Linear(const RExprPtr& e, __int128 scale) {
    LinearTerm out;
    AddLinear(e, scale, &out);
    return out;
  }

  void AddLinear(const RExprPtr& e, __int128 scale, LinearTerm* out) {
    switch (e->kind) {
      case RExpr::Kind::kConst:
        out->constant += scale * e->value;
        return;
      case RExpr::Kind::kAdd:
        for (const auto& a : e->args) AddLinear(a, scale, out);
        return;
      case RExpr::Kind::kMul:
        AddLinear(e->args[1], scale * e->args[0]->value, out);
        return;
      default: {
        const int id = TermOf(e);
        out->coefs[id] += scale;
        if (out->coefs[id] == 0) out->coefs.erase(id);
      }
    }
  }

  int Atom(const RFormula& f, bool positive) {
    Literal l;
    if (f.kind == RFormula::Kind::kEq) {
      l.kind = positive ? Literal::Kind::kEq : Literal::Kind::kNe;
      if (IsAtomic(*f.lhs) && IsAtomic(*f.rhs)) {
        l.atomic = true;
        l.a = TermOf(f.lhs);
        l.b = TermOf(f.rhs);
      } else {
        l.lin = Linear(f.lhs, 1);
        AddLinear(f.rhs, -1, &l.lin);
      }
    } else {
      // a <= b: a - b <= 0;  a < b: a - b + 1 <= 0.
      // not (a <= b): b - a + 1 <= 0;  not (a < b): b - a <= 0.
      l.kind = Literal::Kind::kLe;
      const bool strict = (f.kind == RFormula::Kind::kLt) == positive;
      const RExprPtr& x = positive ? f.lhs : f.rhs;
      const RExprPtr& y = positive ? f.rhs : f.lhs;
      l.lin = Linear(x, 1);
      AddLinear(y, -1, &l.lin);
      if (strict) l.lin.constant += 1;
    }
    p_.lits.push_back(std::move(l));
    return static_cast<int>(p_.lits.size()) - 1;
  }

  Problem& p_;
};

// Congruence closure with disequalities; copied per branch.
class Closure {
 public:
  explicit Closure(const Problem* p) : p_(p) {
    parent_.resize(p->terms.size());
    for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = i;
  }

  int Find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool conflict() const { return conflict_; }

  void Merge(int a, int b) {
    std::vector<std::pair<int, int>> queue{{a, b}};
    while (!queue.empty() && !conflict_) {
      auto [x, y] = queue.back();
      queue.pop_back();
      x = Find(x);
      y = Find(y);
      if (x == y) continue;
      const int cx = ConstOf(x);
      const int cy = ConstOf(y);
      if (cx >= 0 && cy >= 0) {
        conflict_ = true;  // distinct constants are interned apart
        return;
      }
      // Keep the constant (if any) as representative.
      if (cy >= 0) std::swap(x, y);
      parent_[y] = x;
      if (cx < 0 && cy >= 0) const_root_[x] = cy;
      for (const auto& [u, v] : diseqs_) {
        if (Find(u) == Find(v)) {
          conflict_ = true;
          return;
        }
      }
      // Congruence: equal signatures must be in one class.
      std::map<std::vector<int>, int> sig;
      for (int app : p_->apps) {
        const TermNode& t = p_->terms[app];
        std::vector<int> key{t.fn};
        for (int arg : t.args) key.push_back(Find(arg));
        auto [it, fresh] = sig.emplace(std::move(key), app);
        if (!fresh && Find(it->second) != Find(app)) {
          queue.emplace_back(it->second, app);
        }
      }
    }
  }

  void AddDiseq(int a, int b) {
    if (Find(a) == Find(b)) {
      conflict_ = true;
      return;
    }
    diseqs_.emplace_back(a, b);
  }

  bool Disequal(int a, int b) const {
    const int x = Find(a);
    const int y = Find(b);
    if (x == y) return false;
    if (ConstOf(x) >= 0 && ConstOf(y) >= 0) return true;
    for (const auto& [u, v] : diseqs_) {
      const int fu = Find(u);
      const int fv = Find(v);
      if ((fu == x && fv == y) || (fu == y && fv == x)) return true;
    }
    return false;
  }

  // Constant term of the class of root r, or -1.
  int ConstOf(int r) const {
    if (p_->terms[r].kind == TermNode::Kind::kConst) return r;
    auto it = const_root_.find(r);
    return it == const_root_.end() ? -1 : it->second;
  }

  const std::vector<std::pair<int, int>>& diseqs() const { return diseqs_; }

 private:
  const Problem* p_;
  std::vector<int> parent_;
  std::map<int, int> const_root_;
  std::vector<std::pair<int, int>> diseqs_;
  bool conflict_ = false;
};

struct State {
  Closure cc;
  std::vector<int> arith;    // literal ids
  std::vector<int> pending;  // Or node ids
  std::size_t checked_arith = 0;
};

enum class Truth { kTrue, kFalse, kUnknown };

class Search {
 public:
  Search(const Problem& p, const SolverLimits& limits)
      : p_(p), limits_(limits) {}

  SolverResult Run() {
    SolverResult out;
    State s{Closure(&p_), {}, {}, 0};
    for (int l : p_.purification) s.arith.push_back(l);
    try {
      if (Solve(std::move(s), {p_.root})) {
        out.status = SolverResult::Status::kSat;
        out.model = std::move(model_);
      } else if (incomplete_) {
        out.status = SolverResult::Status::kUnknown;
        out.reason = "integer search budget exhausted";
      } else {
        out.status = SolverResult::Status::kUnsat;
      }
    } catch (const ResourceError& e) {
      out.status = SolverResult::Status::kUnknown;
      out.reason = e.what();
    }
    return out;
  }

 private:
  Truth LitTruth(const State& s, const Literal& l) const {
    if (l.atomic) {
      bool eq = s.cc.Find(l.a) == s.cc.Find(l.b);
      bool ne = !eq && s.cc.Disequal(l.a, l.b);
      if (l.kind == Literal::Kind::kNe) std::swap(eq, ne);
      return eq ? Truth::kTrue : ne ? Truth::kFalse : Truth::kUnknown;
    }
    __int128 sum = l.lin.constant;
    for (const auto& [t, c] : l.lin.coefs) {
      const int k = s.cc.ConstOf(s.cc.Find(t));
      if (k < 0) return Truth::kUnknown;
      sum += c * p_.terms[k].value;
    }
    bool v = l.kind == Literal::Kind::kEq   ? sum == 0
             : l.kind == Literal::Kind::kNe ? sum != 0
                                            : sum <= 0;
    return v ? Truth::kTrue : Truth::kFalse;
  }

  Truth NodeTruth(const State& s, int id) const {
    const FNode& n = p_.nodes[id];
    switch (n.kind) {
      case FNode::Kind::kTrue:
        return Truth::kTrue;
      case FNode::Kind::kFalse:
        return Truth::kFalse;
      case FNode::Kind::kLit:
        return LitTruth(s, p_.lits[n.lit]);
      case FNode::Kind::kAnd:
      case FNode::Kind::kOr: {
        const bool conj = n.kind == FNode::Kind::kAnd;
        bool all = true;
        for (int k : n.kids) {
          const Truth t = NodeTruth(s, k);
          if (t == (conj ? Truth::kFalse : Truth::kTrue)) return t;
          all = all && t == (conj ? Truth::kTrue : Truth::kFalse);
        }
        if (all) return conj ? Truth::kTrue : Truth::kFalse;
        return Truth::kUnknown;
      }
    }
    return Truth::kUnknown;
  }

  // Asserts nodes; false on conflict.
  bool Assert(State* s, std::vector<int> todo) const {
    while (!todo.empty()) {
      const int id = todo.back();
      todo.pop_back();
      const FNode& n = p_.nodes[id];
      switch (n.kind) {
        case FNode::Kind::kTrue:
          break;
        case FNode::Kind::kFalse:
          return false;
        case FNode::Kind::kAnd:
          for (auto it = n.kids.rbegin(); it != n.kids.rend(); ++it) {
            todo.push_back(*it);
          }
          break;
        case FNode::Kind::kOr:
          s->pending.push_back(id);
          break;
        case FNode::Kind::kLit: {
          const Literal& l = p_.lits[n.lit];
          if (!l.atomic) {
            if (LitTruth(*s, l) == Truth::kFalse) return false;
            s->arith.push_back(n.lit);
          } else if (l.kind == Literal::Kind::kEq) {
            s->cc.Merge(l.a, l.b);
          } else {
            s->cc.AddDiseq(l.a, l.b);
          }
          if (s->cc.conflict()) return false;
        }
      }
    }
    return true;
  }

  // Unit propagation over the pending disjunctions; false on conflict.
  bool Propagate(State* s) const {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> keep;
      for (std::size_t i = 0; i < s->pending.size(); ++i) {
        const int id = s->pending[i];
        int live = -1;
        int count = 0;
        bool done = false;
        for (int k : p_.nodes[id].kids) {
          const Truth t = NodeTruth(*s, k);
          if (t == Truth::kTrue) {
            done = true;
            break;
          }
          if (t == Truth::kUnknown) {
            ++count;
            live = k;
          }
        }
        if (done) continue;
        if (count == 0) return false;
        if (count == 1) {
          std::vector<int> rest(s->pending.begin() + i + 1, s->pending.end());
          s->pending.clear();
          if (!Assert(s, {live})) return false;
          keep.insert(keep.end(), rest.begin(), rest.end());
          keep.insert(keep.end(), s->pending.begin(), s->pending.end());
          s->pending = std::move(keep);
          keep.clear();
          changed = true;
          break;
        }
        keep.push_back(id);
      }
      if (!changed) s->pending = std::move(keep);
    }
    return true;
  }

  void Tick() {
    if (++nodes_ > limits_.max_nodes) {
      throw ResourceError("case-split budget exhausted");
    }
  }

  bool Solve(State s, std::vector<int> todo) {
    Tick();
    if (!Assert(&s, std::move(todo)) || !Propagate(&s)) return false;
    if (s.pending.empty()) return Leaf(s);
    if (s.arith.size() > s.checked_arith) {
      s.checked_arith = s.arith.size();
      std::map<int, mpz_class> unused;
      if (Arithmetic(s, &unused) == LiaResult::Status::kUnsat) return false;
    }
    // Branch on the disjunction with the fewest undecided disjuncts.
    int best = -1;
    std::vector<int> best_live;
    for (int id : s.pending) {
      std::vector<int> live;
      for (int k : p_.nodes[id].kids) {
        if (NodeTruth(s, k) == Truth::kUnknown) live.push_back(k);
      }
      if (best < 0 || live.size() < best_live.size()) {
        best = id;
        best_live = std::move(live);
      }
    }
    s.pending.erase(std::find(s.pending.begin(), s.pending.end(), best));
    for (int k : best_live) {
      if (Solve(s, {k})) return true;
    }
    return false;
  }

  // Roots that take part in arithmetic.
  std::set<int> ArithRoots(const State& s) const {
    std::set<int> roots;
    for (int l : s.arith) {
      for (const auto& [t, c] : p_.lits[l].lin.coefs) roots.insert(s.cc.Find(t));
    }
    for (std::size_t t = 0; t < p_.terms.size(); ++t) {
      if (p_.terms[t].kind == TermNode::Kind::kConst) {
        roots.insert(s.cc.Find(static_cast<int>(t)));
      }
    }
    return roots;
  }

  LiaResult::Status Arithmetic(const State& s,
                               std::map<int, mpz_class>* values) {
    const std::set<int> roots = ArithRoots(s);
    std::map<int, int> var;
    for (int r : roots) var.emplace(r, static_cast<int>(var.size()));
    std::vector<LinearConstraint> cs;
    auto to_mpz = [](__int128 v) {
      const bool neg = v < 0;
      unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
      mpz_class hi(static_cast<unsigned long>(u >> 64));
      mpz_class lo(static_cast<unsigned long>(u & ~0UL));
      mpz_class out = (hi << 64) + lo;
      return neg ? mpz_class(-out) : out;
    };
    for (int r : roots) {
      const int k = s.cc.ConstOf(r);
      if (k < 0) continue;
      LinearConstraint c;
      c.kind = LinearConstraint::Kind::kEq;
      c.coefs[var[r]] = 1;
      c.constant = -mpz_class(static_cast<long>(p_.terms[k].value));
      cs.push_back(std::move(c));
    }
    for (int l : s.arith) {
      const Literal& lit = p_.lits[l];
      LinearConstraint c;
      c.kind = lit.kind == Literal::Kind::kEq   ? LinearConstraint::Kind::kEq
               : lit.kind == Literal::Kind::kNe ? LinearConstraint::Kind::kNe
                                                : LinearConstraint::Kind::kLe;
      for (const auto& [t, a] : lit.lin.coefs) {
        mpz_class& slot = c.coefs[var[s.cc.Find(t)]];
        slot += to_mpz(a);
        if (slot == 0) c.coefs.erase(var[s.cc.Find(t)]);
      }
      c.constant = to_mpz(lit.lin.constant);
      cs.push_back(std::move(c));
    }
    for (const auto& [a, b] : s.cc.diseqs()) {
      const int x = s.cc.Find(a);
      const int y = s.cc.Find(b);
      if (!roots.count(x) || !roots.count(y)) continue;
      LinearConstraint c;
      c.kind = LinearConstraint::Kind::kNe;
      c.coefs[var[x]] = 1;
      c.coefs[var[y]] = -1;
      cs.push_back(std::move(c));
    }
    const LiaResult r =
        SolveLia(static_cast<int>(var.size()), cs, limits_.lia);
    if (r.status == LiaResult::Status::kUnknown) incomplete_ = true;
    if (r.status == LiaResult::Status::kSat) {
      for (const auto& [root, v] : var) (*values)[root] = r.values[v];
    }
    return r.status;
  }

  bool Leaf(const State& s) {
    std::map<int, mpz_class> big;
    if (Arithmetic(s, &big) != LiaResult::Status::kSat) return false;
    std::map<int, std::int64_t> value;
    mpz_class top = 0;
    for (const auto& [r, v] : big) {
      if (!v.fits_slong_p()) throw ResourceError("model value exceeds 64 bits");
      value[r] = v.get_si();
      top = std::max(top, mpz_class(abs(v)));
    }
    // Classes without arithmetic get pairwise distinct values above all
    // arithmetic ones, so they satisfy every disequality.
    std::int64_t next = top.get_si() + 1;
    for (std::size_t t = 0; t < p_.terms.size(); ++t) {
      const int r = s.cc.Find(static_cast<int>(t));
      if (!value.count(r)) value[r] = next++;
    }
    auto val = [&](int t) { return value.at(s.cc.Find(t)); };
    std::map<std::pair<std::string, std::vector<std::int64_t>>, int> graph;
    for (int app : p_.apps) {
      const TermNode& t = p_.terms[app];
      std::vector<std::int64_t> args;
      for (int a : t.args) args.push_back(val(a));
      auto [it, fresh] = graph.emplace(std::make_pair(t.name, args), app);
      if (fresh || val(it->second) == val(app)) continue;
      // Same arguments, different results: either the results are equal or
      // some argument pair differs.
      const int other = it->second;
      {
        State branch = s;
        branch.cc.Merge(other, app);
        if (!branch.cc.conflict() && Solve(std::move(branch), {})) return true;
      }
      const TermNode& o = p_.terms[other];
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (s.cc.Find(t.args[i]) == s.cc.Find(o.args[i])) continue;
        State branch = s;
        branch.cc.AddDiseq(t.args[i], o.args[i]);
        if (!branch.cc.conflict() && Solve(std::move(branch), {})) return true;
      }
      return false;
    }
    IntModel m;
    for (std::size_t t = 0; t < p_.terms.size(); ++t) {
      const TermNode& n = p_.terms[t];
      if (n.kind == TermNode::Kind::kVar) m.vars[n.name] = val(t);
      if (n.kind == TermNode::Kind::kApp) {
        std::vector<std::int64_t> args;
        for (int a : n.args) args.push_back(val(a));
        m.functions[n.name].table[args] = val(t);
      }
    }
    model_ = std::move(m);
    return true;
  }

  const Problem& p_;
  SolverLimits limits_;
  long nodes_ = 0;
  bool incomplete_ = false;
  IntModel model_;
};

}  // namespace

std::string StatusName(SolverResult::Status s) {
  switch (s) {
    case SolverResult::Status::kSat:
      return "sat";
    case SolverResult::Status::kUnsat:
      return "unsat";
    case SolverResult::Status::kUnknown:
      return "unknown";
  }
  return "unknown";
}

SolverResult SolveBuiltin(const RFormula& f, const SolverLimits& limits) {
  Problem p;
  p.root = Builder(&p).Node(f, true);
  SolverResult r = Search(p, limits).Run();
  if (r.status == SolverResult::Status::kSat && !EvaluateR(r.model, f)) {
    throw InternalError("built-in solver produced a non-model");
  }
  return r;
}

}  // namespace adtred
