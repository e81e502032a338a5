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

#include "adtred/models.hpp"

#include <map>
#include <optional>
#include <set>

#include "adtred/analysis.hpp"
#include "adtred/error.hpp"

namespace adtred {
namespace {

// Largest term size tried when looking for a fresh term.
constexpr std::size_t kMaxFreshSize = 64;

class Builder {
 public:
  Builder(const Signature& sig, const FlatFormula& flat,
          const ReducedFormula& r, const IntModel& m)
      : sig_(sig), flat_(flat), r_(r), m_(m) {}

  Reconstruction Run() {
    for (const auto& v : flat_.vars) {
      if (v.sort) AddPair({ValueOf(v.name), *v.sort});
    }
    Resolve();

    for (const auto& v : flat_.vars) {
      if (v.sort) {
        const ValuePair p{ValueOf(v.name), *v.sort};
        out_.model.adt[v.name] = gamma_.at(p);
        if (fresh_.count(p)) out_.fresh_vars.push_back(v.name);
      } else {
        out_.model.ints[v.name] = ValueOf(v.name);
      }
    }
    AddSelectorValues(flat_.root);
    return std::move(out_);
  }

 private:
  struct Dep {
    CtorId ctor;
    std::vector<ValuePair> children;
  };

  std::int64_t ValueOf(const std::string& var) const {
    auto it = m_.vars.find(var);
    return it == m_.vars.end() ? 0 : it->second;
  }

  bool IsEnum(SortId s) const { return r_.table.enum_sorts.count(s) > 0; }

  bool InRange(const ValuePair& p) {
    auto it = cards_.find(p.sort);
    if (it == cards_.end()) {
      it = cards_.emplace(p.sort, ComputeCardinality(sig_, p.sort)).first;
    }
    if (!it->second.is_finite()) return true;
    return p.value >= 0 && mpz_class(p.value) < it->second.count();
  }

  std::int64_t Measure(const ValuePair& p) const {
    if (IsEnum(p.sort)) return 1;
    const std::string fn =
        r_.mode == ReductionMode::kDepth
            ? ReducedSymbolTable::DepthName(sig_, p.sort)
            : ReducedSymbolTable::SizeName(sig_, p.sort);
    return m_.Apply(fn, {p.value});
  }

  // Head symbol and children of `p` as fixed by the constructor graphs, if
  // they describe a well-founded constructor application.
  std::optional<Dep> ComputeDep(const ValuePair& p) {
    const std::size_t n = sig_.NumCtors(p.sort);
    if (IsEnum(p.sort)) {
      if (p.value < 0 || static_cast<std::size_t>(p.value) >= n) {
        return std::nullopt;
      }
      return Dep{sig_.CtorByIndex(p.sort, p.value), {}};
    }
    const std::int64_t id = m_.Apply(
        ReducedSymbolTable::CtorIdName(sig_, p.sort), {p.value});
    if (id < 0 || static_cast<std::size_t>(id) >= n) return std::nullopt;
    Dep dep{sig_.CtorByIndex(p.sort, id), {}};
    const CtorDecl& decl = sig_.ctor(dep.ctor);
    std::vector<std::int64_t> args;
    for (const auto& slot : decl.args) {
      const ValuePair c{m_.Apply(slot.name, {p.value}), slot.sort};
      if (!InRange(c)) return std::nullopt;
      dep.children.push_back(c);
      args.push_back(c.value);
    }
    if (m_.Apply(decl.name, args) != p.value) return std::nullopt;

    const std::int64_t mine = Measure(p);
    std::int64_t sum = 1;
    for (const auto& c : dep.children) {
      const std::int64_t sub = Measure(c);
      if (r_.mode == ReductionMode::kDepth) {
        if (!IsEnum(c.sort) && sub >= mine) return std::nullopt;
      } else {
        if (sub < 1) return std::nullopt;
        sum += sub;
      }
    }
    if (r_.mode == ReductionMode::kSize && sum != mine) return std::nullopt;
    return dep;
  }

  void AddPair(const ValuePair& start) {
    std::vector<ValuePair> work{start};
    while (!work.empty()) {
      const ValuePair p = work.back();
      work.pop_back();
      if (deps_.count(p)) continue;
      order_.push_back(p);
      auto dep = ComputeDep(p);
      if (dep) {
        for (const auto& c : dep->children) work.push_back(c);
      }
      deps_.emplace(p, std::move(dep));
    }
  }

  void Assign(const ValuePair& p, TermPtr t, bool fresh) {
    if (!range_.insert(t).second) {
      throw InternalError("model reconstruction: term " + ToString(sig_, *t) +
                          " assigned twice");
    }
    gamma_.emplace(p, std::move(t));
    if (fresh) {
      fresh_.insert(p);
      out_.fresh.push_back(p);
    } else {
      out_.built.push_back(p);
    }
  }

  // Builds every pair whose children are all resolved; true if any was.
  bool BuildReady() {
    bool any = false;
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& p : order_) {
        const auto& dep = deps_.at(p);
        if (gamma_.count(p) || !dep) continue;
        std::vector<TermPtr> args;
        for (const auto& c : dep->children) {
          auto it = gamma_.find(c);
          if (it == gamma_.end()) break;
          args.push_back(it->second);
        }
        if (args.size() != dep->children.size()) continue;
        Assign(p, MakeCtor(sig_, dep->ctor, std::move(args)), false);
        progress = any = true;
      }
    }
    return any;
  }

  // Smallest term of `s` (in enumeration order) not yet used.
  TermPtr FreshTerm(SortId s) {
    auto& [bound, terms] = enum_cache_[s.value];
    for (;;) {
      for (const auto& t : terms) {
        if (!range_.count(t)) return t;
      }
      const auto card = ComputeCardinality(sig_, s);
      if ((card.is_finite() && card.count() == terms.size()) ||
          bound >= kMaxFreshSize) {
        return nullptr;
      }
      ++bound;
      terms = EnumerateTerms(sig_, s, bound);
    }
  }

  void Resolve() {
    for (;;) {
      BuildReady();
      std::optional<ValuePair> best;
      TermPtr best_term;
      bool blocked = false;
      for (const auto& p : order_) {
        if (gamma_.count(p)) continue;
        if (deps_.at(p)) {
          blocked = true;
          continue;
        }
        TermPtr t = FreshTerm(p.sort);
        if (!t) {
          throw InternalError("model reconstruction: no unused term of sort " +
                              sig_.sort(p.sort).name);
        }
        if (!best || t->Size() < best_term->Size()) {
          best = p;
          best_term = t;
        }
      }
      if (!best) {
        if (blocked) {
          throw InternalError("model reconstruction: cyclic constructor graph");
        }
        return;
      }
      Assign(*best, best_term, true);
    }
  }

  void AddSelectorValues(const FlatNode& n) {
    for (const auto& c : n.children) AddSelectorValues(c);
    if (n.kind != FlatNode::Kind::kLiteral) return;
    const FlatLiteral& lit = n.literal;
    if (lit.kind != FlatLiteral::Kind::kSel) return;
    const CtorDecl& decl = sig_.ctor(lit.ctor);
    const std::int64_t a = ValueOf(lit.vars[0]);
    const std::int64_t b = ValueOf(lit.vars[1]);
    if (m_.Apply(decl.args[lit.index].name, {a}) != b) return;
    const TermPtr& x = gamma_.at({a, decl.sort});
    if (x->ctor == lit.ctor) return;
    out_.model.selector_values[{lit.ctor, lit.index}][x] =
        gamma_.at({b, decl.args[lit.index].sort});
  }

  const Signature& sig_;
  const FlatFormula& flat_;
  const ReducedFormula& r_;
  const IntModel& m_;

  std::map<ValuePair, std::optional<Dep>> deps_;
  std::vector<ValuePair> order_;
  std::map<ValuePair, TermPtr> gamma_;
  std::set<TermPtr, TermLess> range_;
  std::set<ValuePair> fresh_;
  std::map<SortId, Cardinality> cards_;
  std::map<std::uint32_t, std::pair<std::size_t, std::vector<TermPtr>>>
      enum_cache_;
  Reconstruction out_;
};

// Descends into a false NNF formula to a false literal.
const Formula* FirstFalse(const Signature& sig, const AdtModel& m,
                          const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::kAnd:
      for (const auto& a : f->args) {
        if (!Evaluate(sig, m, *a)) return FirstFalse(sig, m, a);
      }
      return f.get();
    case Formula::Kind::kOr:
      return f->args.empty() ? f.get() : FirstFalse(sig, m, f->args[0]);
    default:
      return f.get();
  }
}

}  // namespace

Reconstruction Reconstruct(const Signature& sig, const FlatFormula& flat,
                           const ReducedFormula& r, const IntModel& m) {
  return Builder(sig, flat, r, m).Run();
}

ModelCheck CheckModel(const Signature& sig, const AdtModel& m,
                      const FormulaPtr& f) {
  if (Evaluate(sig, m, *f)) return {};
  const FormulaPtr nnf = ToNnf(f);
  return {false, ToString(sig, *FirstFalse(sig, m, nnf))};
}

}  // namespace adtred
