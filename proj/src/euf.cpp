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

#include "adtred/euf.hpp"

#include <cctype>
#include <functional>
#include <iterator>
#include <sstream>

#include "adtred/error.hpp"

namespace adtred {
namespace {

using RK = RFormula::Kind;
using EK = RExpr::Kind;

RFormulaPtr MakeR(RK kind, RExprPtr a = nullptr, RExprPtr b = nullptr,
                  std::vector<RFormulaPtr> args = {}) {
  auto f = std::make_shared<RFormula>();
  f->kind = kind;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  f->args = std::move(args);
  return f;
}

std::int64_t Checked(bool overflow, std::int64_t v) {
  if (overflow) throw ResourceError("integer overflow in evaluation");
  return v;
}

std::string ConstString(std::int64_t v) {
  if (v >= 0) return std::to_string(v);
  // -v overflows for INT64_MIN, so print the magnitude by hand.
  std::string digits = std::to_string(v).substr(1);
  return "(- " + digits + ")";
}

}  // namespace

RExprPtr RConst(std::int64_t v) {
  auto e = std::make_shared<RExpr>();
  e->kind = EK::kConst;
  e->value = v;
  return e;
}

RExprPtr RVar(std::string name) {
  auto e = std::make_shared<RExpr>();
  e->kind = EK::kVar;
  e->name = std::move(name);
  return e;
}

RExprPtr RApp(std::string fn, std::vector<RExprPtr> args) {
  auto e = std::make_shared<RExpr>();
  e->kind = EK::kApp;
  e->name = std::move(fn);
  e->args = std::move(args);
  return e;
}

RExprPtr RAdd(std::vector<RExprPtr> args) {
  auto e = std::make_shared<RExpr>();
  e->kind = EK::kAdd;
  e->args = std::move(args);
  return e;
}

RExprPtr RMul(std::int64_t k, RExprPtr x) {
  auto e = std::make_shared<RExpr>();
  e->kind = EK::kMul;
  e->args = {RConst(k), std::move(x)};
  return e;
}

RExprPtr RSub(RExprPtr a, RExprPtr b) {
  return RAdd({std::move(a), RMul(-1, std::move(b))});
}

RFormulaPtr RTrue() { return MakeR(RK::kTrue); }
RFormulaPtr RFalse() { return MakeR(RK::kFalse); }
RFormulaPtr REq(RExprPtr a, RExprPtr b) {
  return MakeR(RK::kEq, std::move(a), std::move(b));
}
RFormulaPtr RNe(RExprPtr a, RExprPtr b) {
  return RNot(REq(std::move(a), std::move(b)));
}
RFormulaPtr RLe(RExprPtr a, RExprPtr b) {
  return MakeR(RK::kLe, std::move(a), std::move(b));
}
RFormulaPtr RLt(RExprPtr a, RExprPtr b) {
  return MakeR(RK::kLt, std::move(a), std::move(b));
}
RFormulaPtr RNot(RFormulaPtr f) {
  return MakeR(RK::kNot, nullptr, nullptr, {std::move(f)});
}
RFormulaPtr RAnd(std::vector<RFormulaPtr> args) {
  return MakeR(RK::kAnd, nullptr, nullptr, std::move(args));
}
RFormulaPtr ROr(std::vector<RFormulaPtr> args) {
  return MakeR(RK::kOr, nullptr, nullptr, std::move(args));
}

int CompareRExpr(const RExpr& a, const RExpr& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.value != b.value) return a.value < b.value ? -1 : 1;
  if (int c = a.name.compare(b.name); c != 0) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) {
    return a.args.size() < b.args.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (int c = CompareRExpr(*a.args[i], *b.args[i]); c != 0) return c;
  }
  return 0;
}

bool SameRExpr(const RExpr& a, const RExpr& b) {
  return CompareRExpr(a, b) == 0;
}

bool SameRFormula(const RFormula& a, const RFormula& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if (a.IsAtom() &&
      (!SameRExpr(*a.lhs, *b.lhs) || !SameRExpr(*a.rhs, *b.rhs))) {
    return false;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!SameRFormula(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

void CollectSymbols(const RExpr& e, RSignature* out) {
  if (e.kind == EK::kVar) out->vars.insert(e.name);
  if (e.kind == EK::kApp) {
    auto [it, fresh] = out->functions.emplace(e.name, e.args.size());
    if (!fresh && it->second != e.args.size()) {
      throw InternalError("function '" + e.name + "' used with two arities");
    }
  }
  for (const auto& a : e.args) CollectSymbols(*a, out);
}

void CollectSymbols(const RFormula& f, RSignature* out) {
  if (f.lhs) CollectSymbols(*f.lhs, out);
  if (f.rhs) CollectSymbols(*f.rhs, out);
  for (const auto& a : f.args) CollectSymbols(*a, out);
}

namespace {
std::size_t ExprNodes(const RExpr& e) {
  std::size_t n = 1;
  for (const auto& a : e.args) n += ExprNodes(*a);
  return n;
}
}  // namespace

std::size_t NodeCount(const RFormula& f) {
  std::size_t n = 1;
  if (f.lhs) n += ExprNodes(*f.lhs);
  if (f.rhs) n += ExprNodes(*f.rhs);
  for (const auto& a : f.args) n += NodeCount(*a);
  return n;
}

std::int64_t IntModel::Apply(const std::string& fn,
                             const std::vector<std::int64_t>& args) const {
  auto it = functions.find(fn);
  if (it == functions.end()) return 0;
  auto jt = it->second.table.find(args);
  return jt == it->second.table.end() ? it->second.default_value : jt->second;
}

std::int64_t EvaluateR(const IntModel& m, const RExpr& e) {
  switch (e.kind) {
    case EK::kConst:
      return e.value;
    case EK::kVar: {
      auto it = m.vars.find(e.name);
      if (it == m.vars.end()) throw UnboundVariable(e.name);
      return it->second;
    }
    case EK::kApp: {
      std::vector<std::int64_t> args;
      for (const auto& a : e.args) args.push_back(EvaluateR(m, *a));
      return m.Apply(e.name, args);
    }
    case EK::kAdd: {
      std::int64_t sum = 0;
      for (const auto& a : e.args) {
        std::int64_t r = 0;
        const bool over = __builtin_add_overflow(sum, EvaluateR(m, *a), &r);
        sum = Checked(over, r);
      }
      return sum;
    }
    case EK::kMul: {
      std::int64_t r = 0;
      const bool over =
          __builtin_mul_overflow(e.args[0]->value, EvaluateR(m, *e.args[1]), &r);
      return Checked(over, r);
    }
  }
  throw InternalError("bad expression kind");
}

bool EvaluateR(const IntModel& m, const RFormula& f) {
  switch (f.kind) {
    case RK::kTrue:
      return true;
    case RK::kFalse:
      return false;
    case RK::kEq:
      return EvaluateR(m, *f.lhs) == EvaluateR(m, *f.rhs);
    case RK::kLe:
      return EvaluateR(m, *f.lhs) <= EvaluateR(m, *f.rhs);
    case RK::kLt:
      return EvaluateR(m, *f.lhs) < EvaluateR(m, *f.rhs);
    case RK::kNot:
      return !EvaluateR(m, *f.args[0]);
    case RK::kAnd:
      for (const auto& a : f.args) {
        if (!EvaluateR(m, *a)) return false;
      }
      return true;
    case RK::kOr:
      for (const auto& a : f.args) {
        if (EvaluateR(m, *a)) return true;
      }
      return false;
  }
  throw InternalError("bad formula kind");
}

void TabulateApplications(const RFormula& f, IntModel* m) {
  std::function<void(const RExpr&)> expr = [&](const RExpr& e) {
    for (const auto& a : e.args) expr(*a);
    if (e.kind != EK::kApp) return;
    std::vector<std::int64_t> args;
    for (const auto& a : e.args) args.push_back(EvaluateR(*m, *a));
    const std::int64_t v = m->Apply(e.name, args);
    m->functions[e.name].table.emplace(args, v);
  };
  std::function<void(const RFormula&)> form = [&](const RFormula& g) {
    if (g.lhs) expr(*g.lhs);
    if (g.rhs) expr(*g.rhs);
    for (const auto& a : g.args) form(*a);
  };
  form(f);
}

std::string QuoteSymbol(const std::string& name) {
  static const std::set<std::string> kReserved = {
      "and", "or",  "not", "=>",       "=",      "distinct", "ite", "let",
      "forall", "exists", "true", "false", "+", "-", "*", "<=", "<", ">=",
      ">", "div", "mod", "abs", "par", "_", "!", "as", "xor", "Int", "Bool",
      "NUMERAL", "DECIMAL", "STRING", "BINARY", "HEXADECIMAL"};
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) &&
        std::string("~!@$%^&*_-+=<>.?/").find(c) == std::string::npos) {
      simple = false;
    }
  }
  if (simple && !kReserved.count(name)) return name;
  return "|" + name + "|";
}

std::string ToSmtLib(const RExpr& e) {
  switch (e.kind) {
    case EK::kConst:
      return ConstString(e.value);
    case EK::kVar:
      return QuoteSymbol(e.name);
    case EK::kApp: {
      if (e.args.empty()) return QuoteSymbol(e.name);
      std::string s = "(" + QuoteSymbol(e.name);
      for (const auto& a : e.args) s += " " + ToSmtLib(*a);
      return s + ")";
    }
    case EK::kAdd: {
      if (e.args.empty()) return "0";
      if (e.args.size() == 1) return ToSmtLib(*e.args[0]);
      std::string s = "(+";
      for (const auto& a : e.args) s += " " + ToSmtLib(*a);
      return s + ")";
    }
    case EK::kMul:
      return "(* " + ToSmtLib(*e.args[0]) + " " + ToSmtLib(*e.args[1]) + ")";
  }
  return "";
}

std::string ToSmtLib(const RFormula& f) {
  switch (f.kind) {
    case RK::kTrue:
      return "true";
    case RK::kFalse:
      return "false";
    case RK::kEq:
      return "(= " + ToSmtLib(*f.lhs) + " " + ToSmtLib(*f.rhs) + ")";
    case RK::kLe:
      return "(<= " + ToSmtLib(*f.lhs) + " " + ToSmtLib(*f.rhs) + ")";
    case RK::kLt:
      return "(< " + ToSmtLib(*f.lhs) + " " + ToSmtLib(*f.rhs) + ")";
    case RK::kNot:
      return "(not " + ToSmtLib(*f.args[0]) + ")";
    case RK::kAnd:
    case RK::kOr: {
      const bool conj = f.kind == RK::kAnd;
      if (f.args.empty()) return conj ? "true" : "false";
      if (f.args.size() == 1) return ToSmtLib(*f.args[0]);
      std::string s = conj ? "(and" : "(or";
      for (const auto& a : f.args) s += " " + ToSmtLib(*a);
      return s + ")";
    }
  }
  return "";
}

std::string EmitScript(const RFormula& f) {
  RSignature sig;
  CollectSymbols(f, &sig);
  std::ostringstream out;
  out << "(set-logic QF_UFLIA)\n";
  for (const auto& v : sig.vars) {
    out << "(declare-fun " << QuoteSymbol(v) << " () Int)\n";
  }
  for (const auto& [fn, arity] : sig.functions) {
    out << "(declare-fun " << QuoteSymbol(fn) << " (";
    for (std::size_t i = 0; i < arity; ++i) out << (i ? " Int" : "Int");
    out << ") Int)\n";
  }
  out << "(assert " << ToSmtLib(f) << ")\n(check-sat)\n(get-model)\n";
  return out.str();
}

std::string IntModelToString(const IntModel& m) {
  std::ostringstream out;
  for (const auto& [v, val] : m.vars) {
    out << "(define-fun " << QuoteSymbol(v) << " () Int " << ConstString(val)
        << ")\n";
  }
  for (const auto& [fn, g] : m.functions) {
    const std::size_t arity =
        g.table.empty() ? 0 : g.table.begin()->first.size();
    out << "(define-fun " << QuoteSymbol(fn) << " (";
    for (std::size_t i = 0; i < arity; ++i) {
      out << (i ? " " : "") << "(a" << i << " Int)";
    }
    out << ") Int";
    std::string body = ConstString(g.default_value);
    for (auto it = g.table.rbegin(); it != g.table.rend(); ++it) {
      std::string cond;
      for (std::size_t i = 0; i < arity; ++i) {
        cond += " (= a" + std::to_string(i) + " " +
                ConstString(it->first[i]) + ")";
      }
      if (arity == 0) {
        body = ConstString(it->second);
        continue;
      }
      if (arity > 1) cond = " (and" + cond + ")";
      body = "(ite" + cond + " " + ConstString(it->second) + " " + body + ")";
    }
    out << " " << body << ")\n";
  }
  return out.str();
}

namespace {

// SMT-LIB reader for reduced formulas, with parallel `let` scoping.
class RReader {
 public:
  explicit RReader(const RSignature& sig) : sig_(sig) {}

  RFormulaPtr Formula(const SExpr& s) {
    if (s.kind == SExpr::Kind::kSymbol) {
      if (s.text == "true") return RTrue();
      if (s.text == "false") return RFalse();
      if (const Binding* b = Lookup(s.text)) return BoundFormula(*b);
      Fail(s, "expected a Boolean term");
    }
    if (!s.IsList() || s.items.empty() ||
        s.items[0].kind != SExpr::Kind::kSymbol) {
      Fail(s, "expected a Boolean term");
    }
    const std::string& head = s.items[0].text;
    const std::size_t n = s.items.size() - 1;
    auto sub = [&](std::size_t i) { return Formula(s.items[i]); };
    if (head == "let") return Let(s, true).first;
    if (head == "not") {
      Arity(s, n == 1);
      return RNot(sub(1));
    }
    if (head == "and" || head == "or") {
      std::vector<RFormulaPtr> args;
      for (std::size_t i = 1; i <= n; ++i) args.push_back(sub(i));
      return head == "and" ? RAnd(std::move(args)) : ROr(std::move(args));
    }
    if (head == "=>") {
      Arity(s, n >= 2);
      RFormulaPtr f = sub(n);
      for (std::size_t i = n - 1; i >= 1; --i) f = ROr({RNot(sub(i)), f});
      return f;
    }
    if (head == "xor") {
      Arity(s, n == 2);
      const auto a = sub(1);
      const auto b = sub(2);
      return ROr({RAnd({a, RNot(b)}), RAnd({RNot(a), b})});
    }
    if (head == "ite") {
      Arity(s, n == 3);
      const auto c = sub(1);
      return ROr({RAnd({c, sub(2)}), RAnd({RNot(c), sub(3)})});
    }
    if (head == "=" || head == "distinct") {
      Arity(s, n >= 2);
      if (IsBool(s.items[1])) {
        if (head == "distinct" && n != 2) Fail(s, "Boolean distinct arity");
        std::vector<RFormulaPtr> parts;
        for (std::size_t i = 1; i < n; ++i) {
          const auto a = sub(i);
          const auto b = sub(i + 1);
          parts.push_back(ROr({RAnd({a, b}), RAnd({RNot(a), RNot(b)})}));
        }
        RFormulaPtr f = parts.size() == 1 ? parts[0] : RAnd(parts);
        return head == "=" ? f : RNot(f);
      }
      std::vector<RExprPtr> xs;
      for (std::size_t i = 1; i <= n; ++i) xs.push_back(Expr(s.items[i]));
      std::vector<RFormulaPtr> parts;
      if (head == "=") {
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
          parts.push_back(REq(xs[i], xs[i + 1]));
        }
      } else {
        for (std::size_t i = 0; i < xs.size(); ++i) {
          for (std::size_t j = i + 1; j < xs.size(); ++j) {
            parts.push_back(RNe(xs[i], xs[j]));
          }
        }
      }
      return parts.size() == 1 ? parts[0] : RAnd(parts);
    }
    if (head == "<=" || head == "<" || head == ">=" || head == ">") {
      Arity(s, n >= 2);
      std::vector<RExprPtr> xs;
      for (std::size_t i = 1; i <= n; ++i) xs.push_back(Expr(s.items[i]));
      std::vector<RFormulaPtr> parts;
      for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const auto& a = xs[i];
        const auto& b = xs[i + 1];
        if (head == "<=") parts.push_back(RLe(a, b));
        if (head == "<") parts.push_back(RLt(a, b));
        if (head == ">=") parts.push_back(RLe(b, a));
        if (head == ">") parts.push_back(RLt(b, a));
      }
      return parts.size() == 1 ? parts[0] : RAnd(parts);
    }
    Fail(s, "unsupported Boolean operator '" + head + "'");
  }

  RExprPtr Expr(const SExpr& s) {
    if (s.kind == SExpr::Kind::kNumeral) return RConst(Numeral(s));
    if (s.kind == SExpr::Kind::kSymbol) {
      if (const Binding* b = Lookup(s.text)) return BoundExpr(*b);
      if (sig_.vars.count(s.text)) return RVar(s.text);
      auto it = sig_.functions.find(s.text);
      if (it != sig_.functions.end() && it->second == 0) return RApp(s.text, {});
      throw UnknownSymbol(s.text);
    }
    if (!s.IsList() || s.items.empty() ||
        s.items[0].kind != SExpr::Kind::kSymbol) {
      Fail(s, "expected an integer term");
    }
    const std::string& head = s.items[0].text;
    const std::size_t n = s.items.size() - 1;
    if (head == "let") return Let(s, false).second;
    if (head == "+") {
      std::vector<RExprPtr> args;
      for (std::size_t i = 1; i <= n; ++i) args.push_back(Expr(s.items[i]));
      return RAdd(std::move(args));
    }
    if (head == "-") {
      Arity(s, n >= 1);
      if (n == 1) {
        if (s.items[1].kind == SExpr::Kind::kNumeral) {
          return RConst(-Numeral(s.items[1]));
        }
        return RMul(-1, Expr(s.items[1]));
      }
      std::vector<RExprPtr> args{Expr(s.items[1])};
      for (std::size_t i = 2; i <= n; ++i) {
        args.push_back(RMul(-1, Expr(s.items[i])));
      }
      return RAdd(std::move(args));
    }
    if (head == "*") {
      Arity(s, n >= 2);
      std::int64_t k = 1;
      RExprPtr var_part;
      for (std::size_t i = 1; i <= n; ++i) {
        RExprPtr e = Expr(s.items[i]);
        if (e->kind == EK::kConst) {
          k *= e->value;
        } else if (var_part) {
          Fail(s, "non-linear multiplication");
        } else {
          var_part = e;
        }
      }
      return var_part ? RMul(k, var_part) : RConst(k);
    }
    auto it = sig_.functions.find(head);
    if (it == sig_.functions.end()) {
      if (head == "ite" || head == "div" || head == "mod" || head == "abs") {
        Fail(s, "unsupported integer operator '" + head + "'");
      }
      throw UnknownSymbol(head);
    }
    Arity(s, it->second == n);
    std::vector<RExprPtr> args;
    for (std::size_t i = 1; i <= n; ++i) args.push_back(Expr(s.items[i]));
    return RApp(head, std::move(args));
  }

 private:
  struct Binding {
    const SExpr* term;
    std::size_t depth;  // number of frames visible to the bound term
    mutable RFormulaPtr formula;
    mutable RExprPtr expr;
  };
  using Frame = std::map<std::string, Binding>;

  [[noreturn]] static void Fail(const SExpr& s, const std::string& what) {
    throw SyntaxError(s.line, s.col, what);
  }

  static void Arity(const SExpr& s, bool ok) {
    if (!ok) Fail(s, "wrong number of arguments");
  }

  static std::int64_t Numeral(const SExpr& s) {
    try {
      return std::stoll(s.text);
    } catch (const std::exception&) {
      Fail(s, "numeral out of range");
    }
  }

  const Binding* Lookup(const std::string& name) const {
    for (std::size_t i = frames_.size(); i-- > 0;) {
      auto it = frames_[i].find(name);
      if (it != frames_[i].end()) return &it->second;
    }
    return nullptr;
  }

  template <typename F>
  auto InScope(std::size_t depth, F&& body) {
    std::vector<Frame> saved(std::make_move_iterator(frames_.begin() + depth),
                             std::make_move_iterator(frames_.end()));
    frames_.resize(depth);
    struct Restore {
      std::vector<Frame>& frames;
      std::vector<Frame>& saved;
      ~Restore() {
        for (auto& f : saved) frames.push_back(std::move(f));
      }
    } restore{frames_, saved};
    return body();
  }

  RFormulaPtr BoundFormula(const Binding& b) {
    if (!b.formula) {
      b.formula = InScope(b.depth, [&] { return Formula(*b.term); });
    }
    return b.formula;
  }

  RExprPtr BoundExpr(const Binding& b) {
    if (!b.expr) b.expr = InScope(b.depth, [&] { return Expr(*b.term); });
    return b.expr;
  }

  std::pair<RFormulaPtr, RExprPtr> Let(const SExpr& s, bool boolean) {
    Arity(s, s.items.size() == 3 && s.items[1].IsList());
    Frame frame;
    for (const auto& b : s.items[1].items) {
      if (!b.IsList() || b.items.size() != 2 ||
          b.items[0].kind != SExpr::Kind::kSymbol) {
        Fail(b, "malformed let binding");
      }
      frame[b.items[0].text] = Binding{&b.items[1], frames_.size(), {}, {}};
    }
    frames_.push_back(std::move(frame));
    std::pair<RFormulaPtr, RExprPtr> out;
    try {
      if (boolean) {
        out.first = Formula(s.items[2]);
      } else {
        out.second = Expr(s.items[2]);
      }
    } catch (...) {
      frames_.pop_back();
      throw;
    }
    frames_.pop_back();
    return out;
  }

  bool IsBool(const SExpr& s) {
    if (s.kind == SExpr::Kind::kSymbol) {
      if (s.text == "true" || s.text == "false") return true;
      if (const Binding* b = Lookup(s.text)) {
        return InScope(b->depth, [&] { return IsBool(*b->term); });
      }
      return false;
    }
    if (!s.IsList() || s.items.empty() ||
        s.items[0].kind != SExpr::Kind::kSymbol) {
      return false;
    }
    static const std::set<std::string> kBool = {
        "and", "or", "not", "=>", "xor", "=", "distinct", "<=", "<", ">=",
        ">"};
    const std::string& head = s.items[0].text;
    if (kBool.count(head)) return true;
    if (head == "ite" && s.items.size() == 4) return IsBool(s.items[2]);
    if (head == "let" && s.items.size() == 3 && s.items[1].IsList()) {
      Frame frame;
      for (const auto& b : s.items[1].items) {
        if (b.IsList() && b.items.size() == 2) {
          frame[b.items[0].text] = Binding{&b.items[1], frames_.size(), {}, {}};
        }
      }
      frames_.push_back(std::move(frame));
      const bool r = IsBool(s.items[2]);
      frames_.pop_back();
      return r;
    }
    return false;
  }

  const RSignature& sig_;
  std::vector<Frame> frames_;
};

}  // namespace

RFormulaPtr ParseRFormula(const SExpr& s, const RSignature& sig) {
  return RReader(sig).Formula(s);
}

RExprPtr ParseRExpr(const SExpr& s, const RSignature& sig) {
  return RReader(sig).Expr(s);
}

RScript ParseRScript(const std::string& text) {
  RScript script;
  std::vector<RFormulaPtr> asserts;
  const auto cmds = ParseSExprs(text);
  for (const auto& c : cmds) {
    if (!c.IsList() || c.items.empty() ||
        c.items[0].kind != SExpr::Kind::kSymbol) {
      throw SyntaxError(c.line, c.col, "expected a command");
    }
    const std::string& head = c.items[0].text;
    if (head == "declare-fun" || head == "declare-const") {
      const bool fun = head == "declare-fun";
      if (c.items.size() != (fun ? 4u : 3u) ||
          c.items[1].kind != SExpr::Kind::kSymbol ||
          !c.items.back().IsSymbol("Int")) {
        throw SyntaxError(c.line, c.col, "only Int declarations are supported");
      }
      const std::string& name = c.items[1].text;
      const std::size_t arity = fun ? c.items[2].items.size() : 0;
      // Nullary declarations are variables.
      if (arity == 0) {
        script.sig.vars.insert(name);
      } else {
        script.sig.functions[name] = arity;
      }
    } else if (head == "assert") {
      if (c.items.size() != 2) throw SyntaxError(c.line, c.col, "bad assert");
      asserts.push_back(ParseRFormula(c.items[1], script.sig));
    } else if (head == "set-logic" || head == "set-option" ||
               head == "set-info" || head == "check-sat" ||
               head == "get-model" || head == "exit") {
      continue;
    } else {
      throw SyntaxError(c.line, c.col, "unsupported command '" + head + "'");
    }
  }
  script.formula = asserts.size() == 1 ? asserts[0] : RAnd(asserts);
  return script;
}

}  // namespace adtred
