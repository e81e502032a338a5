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

#include "adtred/parser.hpp"

#include <cerrno>
#include <cstdlib>
#include <sstream>

#include "adtred/error.hpp"

namespace adtred {
namespace {

std::string Pos(const SExpr& e) {
  return std::to_string(e.line) + ":" + std::to_string(e.col) + ": ";
}

[[noreturn]] void Fail(const SExpr& e, const std::string& what) {
  throw SyntaxError(e.line, e.col, what);
}

struct Parsed {
  enum class Kind { kTerm, kInt, kBool } kind;
  TermPtr term;
  IntExprPtr expr;
  FormulaPtr formula;
};

class ExprParser {
 public:
  ExprParser(const Signature& sig, const VarScope& scope)
      : sig_(sig), scope_(scope) {}

  FormulaPtr Formula(const SExpr& e) {
    Parsed p = Any(e);
    if (p.kind != Parsed::Kind::kBool) {
      throw TypeError(Pos(e) + "expected Bool, found " + KindName(p));
    }
    return p.formula;
  }

 private:
  std::string KindName(const Parsed& p) const {
    switch (p.kind) {
      case Parsed::Kind::kTerm:
        return sig_.sort(p.term->sort).name;
      case Parsed::Kind::kInt:
        return "Int";
      case Parsed::Kind::kBool:
        return "Bool";
    }
    return "?";
  }

  TermPtr TermOf(const SExpr& e) {
    Parsed p = Any(e);
    if (p.kind != Parsed::Kind::kTerm) {
      throw TypeError(Pos(e) + "expected a datatype term, found " +
                      KindName(p));
    }
    return p.term;
  }

  IntExprPtr IntOf(const SExpr& e) {
    Parsed p = Any(e);
    if (p.kind != Parsed::Kind::kInt) {
      throw TypeError(Pos(e) + "expected Int, found " + KindName(p));
    }
    return p.expr;
  }

  static Parsed Term(TermPtr t) { return {Parsed::Kind::kTerm, t, {}, {}}; }
  static Parsed Int(IntExprPtr i) { return {Parsed::Kind::kInt, {}, i, {}}; }
  static Parsed Bool(FormulaPtr f) {
    return {Parsed::Kind::kBool, {}, {}, f};
  }

  Parsed Atom(const SExpr& e) {
    if (e.kind == SExpr::Kind::kNumeral) {
      char* end = nullptr;
      errno = 0;
      const long long v = std::strtoll(e.text.c_str(), &end, 10);
      if (errno != 0) Fail(e, "numeral out of range");
      return Int(MakeIntConst(v));
    }
    if (e.kind != SExpr::Kind::kSymbol) Fail(e, "unexpected token");
    if (e.text == "true") return Bool(MakeTrue());
    if (e.text == "false") return Bool(MakeFalse());
    auto v = scope_.find(e.text);
    if (v != scope_.end()) {
      if (v->second) return Term(MakeVar(e.text, *v->second));
      return Int(MakeIntVar(e.text));
    }
    if (auto c = sig_.FindCtor(e.text)) {
      return Term(MakeCtor(sig_, *c, {}));
    }
    throw UnknownSymbol(e.text);
  }

  std::vector<Parsed> Args(const SExpr& e) {
    std::vector<Parsed> out;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      out.push_back(Any(e.items[i]));
    }
    return out;
  }

  void Arity(const SExpr& e, std::size_t n) {
    if (e.items.size() - 1 != n) {
      Fail(e, "'" + e.items[0].text + "' expects " + std::to_string(n) +
                  " argument(s)");
    }
  }

  void MinArity(const SExpr& e, std::size_t n) {
    if (e.items.size() - 1 < n) {
      Fail(e, "'" + e.items[0].text + "' expects at least " +
                  std::to_string(n) + " argument(s)");
    }
  }

  std::vector<FormulaPtr> Bools(const SExpr& e) {
    std::vector<FormulaPtr> out;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      out.push_back(Formula(e.items[i]));
    }
    return out;
  }

  std::vector<IntExprPtr> Ints(const SExpr& e) {
    std::vector<IntExprPtr> out;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      out.push_back(IntOf(e.items[i]));
    }
    return out;
  }

  // (= a b c ...) and distinct, over any one kind.
  Parsed Equality(const SExpr& e, bool distinct) {
    MinArity(e, 2);
    std::vector<Parsed> args = Args(e);
    for (const auto& a : args) {
      if (a.kind != args[0].kind ||
          (a.kind == Parsed::Kind::kTerm && a.term->sort != args[0].term->sort)) {
        throw TypeError(Pos(e) + "'" + e.items[0].text +
                        "' arguments of different sorts: " +
                        KindName(args[0]) + " and " + KindName(a));
      }
    }
    auto eq = [&](const Parsed& a, const Parsed& b) -> FormulaPtr {
      switch (a.kind) {
        case Parsed::Kind::kTerm:
          return MakeEq(a.term, b.term);
        case Parsed::Kind::kInt:
          return MakeCmp(CmpOp::kEq, a.expr, b.expr);
        case Parsed::Kind::kBool:
          return MakeIff(a.formula, b.formula);
      }
      return nullptr;
    };
    std::vector<FormulaPtr> parts;
    if (distinct) {
      for (std::size_t i = 0; i < args.size(); ++i) {
        for (std::size_t j = i + 1; j < args.size(); ++j) {
          parts.push_back(MakeNot(eq(args[i], args[j])));
        }
      }
    } else {
      for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        parts.push_back(eq(args[i], args[i + 1]));
      }
    }
    return Bool(parts.size() == 1 ? parts[0] : MakeAnd(parts));
  }

  Parsed Any(const SExpr& e) {
    if (!e.IsList()) return Atom(e);
    if (e.items.empty()) Fail(e, "empty application");
    const SExpr& head = e.items[0];
    if (head.IsList()) {
      // ((_ is c) t)
      if (head.items.size() == 3 && head.items[0].IsSymbol("_") &&
          head.items[1].IsSymbol("is")) {
        Arity(e, 1);
        auto c = sig_.FindCtor(head.items[2].text);
        if (!c) throw UnknownSymbol(head.items[2].text);
        return Bool(MakeTester(sig_, *c, TermOf(e.items[1])));
      }
      Fail(head, "unsupported indexed operator");
    }
    if (head.kind != SExpr::Kind::kSymbol) Fail(head, "expected operator");
    const std::string& op = head.text;

    if (op == "not") {
      Arity(e, 1);
      return Bool(MakeNot(Formula(e.items[1])));
    }
    if (op == "and") return Bool(MakeAnd(Bools(e)));
    if (op == "or") return Bool(MakeOr(Bools(e)));
    if (op == "=>") {
      MinArity(e, 2);
      auto args = Bools(e);
      // Right-associative.
      FormulaPtr f = args.back();
      for (std::size_t i = args.size() - 1; i-- > 0;) {
        f = MakeImplies(args[i], f);
      }
      return Bool(f);
    }
    if (op == "=") return Equality(e, false);
    if (op == "distinct") return Equality(e, true);
    if (op == "<=" || op == "<" || op == ">=" || op == ">") {
      Arity(e, 2);
      const CmpOp cmp = op == "<=" ? CmpOp::kLe
                        : op == "<" ? CmpOp::kLt
                        : op == ">=" ? CmpOp::kGe
                                     : CmpOp::kGt;
      return Bool(MakeCmp(cmp, IntOf(e.items[1]), IntOf(e.items[2])));
    }
    if (op == "+") {
      MinArity(e, 2);
      return Int(MakeIntOp(IntExpr::Kind::kAdd, Ints(e)));
    }
    if (op == "-") {
      MinArity(e, 1);
      if (e.items.size() == 2 && e.items[1].kind == SExpr::Kind::kNumeral) {
        IntExprPtr v = IntOf(e.items[1]);
        return Int(MakeIntConst(-v->value));
      }
      return Int(MakeIntOp(IntExpr::Kind::kSub, Ints(e)));
    }
    if (op == "*") {
      MinArity(e, 2);
      try {
        return Int(MakeIntOp(IntExpr::Kind::kMul, Ints(e)));
      } catch (const TypeError& err) {
        throw TypeError(Pos(e) + err.what());
      }
    }
    if (op == "adt.size") {
      Arity(e, 1);
      return Int(MakeSizeOf(TermOf(e.items[1])));
    }
    if (op.rfind("is-", 0) == 0) {
      if (auto c = sig_.FindCtor(op.substr(3))) {
        Arity(e, 1);
        return Bool(MakeTester(sig_, *c, TermOf(e.items[1])));
      }
    }
    if (auto c = sig_.FindCtor(op)) {
      std::vector<TermPtr> args;
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        args.push_back(TermOf(e.items[i]));
      }
      try {
        return Term(MakeCtor(sig_, *c, std::move(args)));
      } catch (const TypeError& err) {
        throw TypeError(Pos(e) + err.what());
      }
    }
    if (auto s = sig_.FindSelector(op)) {
      Arity(e, 1);
      try {
        return Term(MakeSel(sig_, s->first, s->second, TermOf(e.items[1])));
      } catch (const TypeError& err) {
        throw TypeError(Pos(e) + err.what());
      }
    }
    throw UnknownSymbol(op);
  }

  const Signature& sig_;
  const VarScope& scope_;
};

void CheckUserName(const SExpr& e) {
  if (e.kind != SExpr::Kind::kSymbol) Fail(e, "expected a symbol");
  if (!e.text.empty() && e.text[0] == '_') {
    throw InputError(Pos(e) + "symbol '" + e.text +
                     "' is reserved (names starting with '_' are used for "
                     "fresh symbols)");
  }
}

std::vector<SortSpec::Ctor> ParseCtorList(const SExpr& e) {
  if (!e.IsList()) Fail(e, "expected constructor list");
  std::vector<SortSpec::Ctor> out;
  for (const auto& c : e.items) {
    if (!c.IsList() || c.items.empty()) Fail(c, "expected (ctor fields...)");
    CheckUserName(c.items[0]);
    SortSpec::Ctor ctor{c.items[0].text, {}};
    for (std::size_t i = 1; i < c.items.size(); ++i) {
      const SExpr& field = c.items[i];
      if (!field.IsList() || field.items.size() != 2 ||
          field.items[1].kind != SExpr::Kind::kSymbol) {
        Fail(field, "expected (selector Sort)");
      }
      CheckUserName(field.items[0]);
      ctor.args.emplace_back(field.items[0].text, field.items[1].text);
    }
    out.push_back(std::move(ctor));
  }
  return out;
}

std::string PrintCtors(const SortSpec& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.ctors.size(); ++i) {
    if (i) out += " ";
    out += "(" + s.ctors[i].name;
    for (const auto& [sel, sort] : s.ctors[i].args) {
      out += " (" + sel + " " + sort + ")";
    }
    out += ")";
  }
  return out + ")";
}

}  // namespace

VarScope Script::Scope() const {
  VarScope scope;
  for (const auto& v : consts) scope[v.name] = v.sort;
  return scope;
}

FormulaPtr Script::Conjunction() const {
  if (assertions.empty()) return MakeTrue();
  if (assertions.size() == 1) return assertions[0];
  return MakeAnd(assertions);
}

Script ParseScript(const std::string& text) {
  Script script;
  std::vector<SortSpec> specs;
  VarScope scope;
  for (const SExpr& cmd : ParseSExprs(text)) {
    if (!cmd.IsList() || cmd.items.empty() ||
        cmd.items[0].kind != SExpr::Kind::kSymbol) {
      Fail(cmd, "expected a command");
    }
    const std::string& name = cmd.items[0].text;
    Command c;
    if (name == "set-logic" || name == "set-option" || name == "set-info") {
      c.kind = name == "set-logic"    ? Command::Kind::kSetLogic
               : name == "set-option" ? Command::Kind::kSetOption
                                      : Command::Kind::kSetInfo;
      c.raw = cmd.ToString();
    } else if (name == "declare-datatypes") {
      if (cmd.items.size() != 3 || !cmd.items[1].IsList() ||
          !cmd.items[2].IsList() ||
          cmd.items[1].items.size() != cmd.items[2].items.size()) {
        Fail(cmd, "malformed declare-datatypes");
      }
      c.kind = Command::Kind::kDeclareDatatypes;
      for (std::size_t i = 0; i < cmd.items[1].items.size(); ++i) {
        const SExpr& decl = cmd.items[1].items[i];
        if (!decl.IsList() || decl.items.size() != 2) {
          Fail(decl, "expected (Sort arity)");
        }
        if (decl.items[1].text != "0") {
          Fail(decl.items[1], "parametric datatypes are not supported");
        }
        CheckUserName(decl.items[0]);
        c.datatypes.push_back(
            SortSpec{decl.items[0].text, ParseCtorList(cmd.items[2].items[i])});
      }
    } else if (name == "declare-datatype") {
      if (cmd.items.size() != 3) Fail(cmd, "malformed declare-datatype");
      CheckUserName(cmd.items[1]);
      c.kind = Command::Kind::kDeclareDatatype;
      c.datatypes.push_back(
          SortSpec{cmd.items[1].text, ParseCtorList(cmd.items[2])});
    } else if (name == "declare-const" || name == "declare-fun") {
      std::size_t sort_pos = 2;
      if (name == "declare-fun") {
        if (cmd.items.size() != 4 || !cmd.items[2].IsList() ||
            !cmd.items[2].items.empty()) {
          Fail(cmd, "only nullary declare-fun is supported");
        }
        sort_pos = 3;
      } else if (cmd.items.size() != 3) {
        Fail(cmd, "malformed declare-const");
      }
      CheckUserName(cmd.items[1]);
      const SExpr& sort = cmd.items[sort_pos];
      c.kind = Command::Kind::kDeclareConst;
      c.var.name = cmd.items[1].text;
      if (sort.IsSymbol("Int")) {
        c.var.sort = std::nullopt;
      } else {
        auto s = script.sig.FindSort(sort.text);
        if (!s) throw UnknownSymbol(sort.text);
        c.var.sort = *s;
      }
      if (scope.count(c.var.name) || script.sig.FindCtor(c.var.name) ||
          script.sig.FindSelector(c.var.name)) {
        throw InputError(Pos(cmd) + "duplicate declaration of '" +
                         c.var.name + "'");
      }
      scope[c.var.name] = c.var.sort;
      script.consts.push_back(c.var);
    } else if (name == "assert") {
      if (cmd.items.size() != 2) Fail(cmd, "assert expects one formula");
      c.kind = Command::Kind::kAssert;
      c.formula = ExprParser(script.sig, scope).Formula(cmd.items[1]);
      script.assertions.push_back(c.formula);
    } else if (name == "check-sat") {
      c.kind = Command::Kind::kCheckSat;
    } else if (name == "get-model") {
      c.kind = Command::Kind::kGetModel;
    } else if (name == "exit") {
      c.kind = Command::Kind::kExit;
    } else {
      Fail(cmd, "unsupported command '" + name + "'");
    }
    if (!c.datatypes.empty()) {
      if (!script.consts.empty()) {
        Fail(cmd, "datatypes must be declared before constants");
      }
      specs.insert(specs.end(), c.datatypes.begin(), c.datatypes.end());
      script.sig = Signature::Build(specs);
    }
    script.commands.push_back(std::move(c));
  }
  return script;
}

FormulaPtr ParseFormula(const Signature& sig, const VarScope& scope,
                        const SExpr& e) {
  return ExprParser(sig, scope).Formula(e);
}

FormulaPtr ParseFormula(const Signature& sig, const VarScope& scope,
                        const std::string& text) {
  auto exprs = ParseSExprs(text);
  if (exprs.size() != 1) throw SyntaxError(1, 1, "expected one formula");
  return ParseFormula(sig, scope, exprs[0]);
}

std::string PrintDatatypes(const std::vector<SortSpec>& specs) {
  std::string out = "(declare-datatypes (";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out += (i ? " (" : "(") + specs[i].name + " 0)";
  }
  out += ") (";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out += (i ? " " : "") + PrintCtors(specs[i]);
  }
  return out + "))";
}

std::string PrintScript(const Script& script) {
  std::ostringstream out;
  for (const Command& c : script.commands) {
    switch (c.kind) {
      case Command::Kind::kSetLogic:
      case Command::Kind::kSetOption:
      case Command::Kind::kSetInfo:
        out << c.raw;
        break;
      case Command::Kind::kDeclareDatatypes:
        out << PrintDatatypes(c.datatypes);
        break;
      case Command::Kind::kDeclareDatatype:
        out << "(declare-datatype " << c.datatypes[0].name << " "
            << PrintCtors(c.datatypes[0]) << ")";
        break;
      case Command::Kind::kDeclareConst:
        out << "(declare-const " << c.var.name << " "
            << (c.var.sort ? script.sig.sort(*c.var.sort).name : "Int")
            << ")";
        break;
      case Command::Kind::kAssert:
        out << "(assert " << ToString(script.sig, *c.formula) << ")";
        break;
      case Command::Kind::kCheckSat:
        out << "(check-sat)";
        break;
      case Command::Kind::kGetModel:
        out << "(get-model)";
        break;
      case Command::Kind::kExit:
        out << "(exit)";
        break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace adtred
