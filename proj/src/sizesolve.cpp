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

#include "adtred/sizesolve.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "adtred/analysis.hpp"
#include "adtred/models.hpp"

namespace adtred {
namespace {

std::string KeyOf(const Signature& sig, const TermPtr& t) {
  return ToString(sig, *t);
}

bool HasVar(const UnfoldState& s, const std::string& name) {
  return std::any_of(s.vars.begin(), s.vars.end(),
                     [&](const TypedVar& v) { return v.name == name; });
}

bool ConstructorsOnly(const Term& t) {
  if (t.kind != Term::Kind::kCtor) return false;
  for (const auto& a : t.args) {
    if (!ConstructorsOnly(*a)) return false;
  }
  return true;
}

// A flat variable of the current round and the term it stands for.
struct Candidate {
  std::string var;
  std::string key;
  TermPtr term;
  SortId sort;
  std::int64_t value = 0;
};

}  // namespace

UnfoldState InitialUnfoldState(const Signature& sig, const FormulaPtr& f) {
  (void)sig;
  UnfoldState s;
  s.formula = f;
  for (const auto& v : FreeVars(*f)) {
    s.vars.push_back(v);
    if (v.sort) s.root[v.name] = v.name;
  }
  return s;
}

UnfoldState UnfoldStep(const Signature& sig, const UnfoldState& s,
                        const TermPtr& target) {
  const std::string key = KeyOf(sig, target);
  if (std::find(s.unfolded.begin(), s.unfolded.end(), key) !=
      s.unfolded.end()) {
    throw AlreadyUnfolded("'" + key + "' is already unfolded");
  }
  std::set<TypedVar> used;
  CollectVars(*target, &used);
  for (const auto& v : used) {
    if (!HasVar(s, v.name)) throw UnknownVariable("unknown variable '" +
                                                  v.name + "'");
  }

  UnfoldState out = s;
  // Variable-free targets (selectors of constructor terms) count as their
  // own root.
  const std::string root =
      used.empty() ? key : s.root.at(used.begin()->name);
  out.root[key] = root;
  std::vector<FormulaPtr> cases;
  for (CtorId c : sig.sort(target->sort).ctors) {
    std::vector<TermPtr> args;
    for (const auto& slot : sig.ctor(c).args) {
      std::string name;
      do {
        name = "_u" + std::to_string(++out.counter);
      } while (HasVar(out, name));
      out.vars.push_back({name, slot.sort});
      out.origin[name] = key;
      out.root[name] = root;
      args.push_back(MakeVar(name, slot.sort));
    }
    cases.push_back(MakeEq(MakeCtor(sig, c, std::move(args)), target));
  }
  out.formula = MakeAnd({s.formula, MakeOr(std::move(cases))});
  out.unfolded.push_back(key);
  ++out.round;
  return out;
}

UnfoldState UnfoldVariable(const Signature& sig, const UnfoldState& s,
                           const std::string& var) {
  for (const auto& v : s.vars) {
    if (v.name != var) continue;
    if (!v.sort) throw UnknownVariable("'" + var + "' is not an ADT variable");
    return UnfoldStep(sig, s, MakeVar(var, *v.sort));
  }
  throw UnknownVariable("unknown variable '" + var + "'");
}

SizeSolveResult SolveWithSize(const Signature& sig, const FormulaPtr& f,
                              const PipelineOptions& o) {
  SizeSolveResult out;
  out.state = InitialUnfoldState(sig, f);
  Verdict& v = out.verdict;
  v.stats.input_nodes = NodeCount(*f);
  // Targets in the order they were first seen, for fairness and ties.
  std::vector<std::string> seen;

  auto finish = [&]() {
    for (const auto& key : out.state.unfolded) {
      ++out.unfoldings[out.state.root.at(key)];
    }
    return out;
  };

  for (;;) {
    ++v.stats.rounds;
    const Reduction red =
        ReduceFormula(sig, out.state.formula, ReductionMode::kSize, o.reduce);
    const SolverResult res = SolveReduct(red.reduct, o, &v.stats);
    if (res.status != SolverResult::Status::kSat) {
      v.status = res.status;
      v.reason = res.reason;
      return finish();
    }

    std::vector<Candidate> cands;
    std::map<SortId, std::set<std::int64_t>> unfolded_values;
    for (const auto& fv : red.flat.vars) {
      if (!fv.sort || red.reduct.table.enum_sorts.count(*fv.sort)) continue;
      Candidate c;
      c.var = fv.name;
      c.sort = *fv.sort;
      auto it = red.flat.registry.find(fv.name);
      c.term = it != red.flat.registry.end() ? it->second
                                             : MakeVar(fv.name, *fv.sort);
      // Constructor terms are fixed by their constructor literals.
      if (ConstructorsOnly(*c.term)) continue;
      c.key = KeyOf(sig, c.term);
      auto val = res.model.vars.find(fv.name);
      c.value = val == res.model.vars.end() ? 0 : val->second;
      if (std::find(seen.begin(), seen.end(), c.key) == seen.end()) {
        seen.push_back(c.key);
      }
      const auto& u = out.state.unfolded;
      if (std::find(u.begin(), u.end(), c.key) != u.end()) {
        unfolded_values[c.sort].insert(c.value);
      }
      cands.push_back(std::move(c));
    }
    std::vector<const Candidate*> unmatched;
    for (const auto& c : cands) {
      if (!unfolded_values[c.sort].count(c.value)) unmatched.push_back(&c);
    }

    // Accept when every variable is determined by an unfolded
    // one, so reconstruction never needs a fresh term for them. Otherwise
    // the reconstruction may still happen to satisfy `f`, which is checked.
    const Reconstruction rec =
        Reconstruct(sig, red.flat, red.reduct, res.model);
    if (unmatched.empty()) {
      for (const auto& c : cands) {
        const auto& fresh = rec.fresh_vars;
        if (std::find(fresh.begin(), fresh.end(), c.var) != fresh.end()) {
          throw InternalError("unfolded model left '" + c.var +
                              "' undetermined");
        }
      }
    }
    const ModelCheck ok = CheckModel(sig, rec.model, f);
    if (unmatched.empty() && !ok.ok) {
      throw InternalError("reconstructed model falsifies " + ok.diagnostic);
    }
    if (ok.ok) {
      v.status = SolverResult::Status::kSat;
      for (const auto& fv : FreeVars(*f)) {
        if (fv.sort) {
          v.model.adt[fv.name] = rec.model.adt.at(fv.name);
        } else {
          v.model.ints[fv.name] = rec.model.ints.at(fv.name);
        }
      }
      v.model.selector_values = rec.model.selector_values;
      return finish();
    }

    if (out.state.round >= o.fuel) {
      std::ostringstream why;
      why << "fuel exhausted after " << out.state.round << " unfoldings";
      const ExpandingReport rep = CheckExpanding(sig);
      for (const auto& verdict : rep.verdicts) {
        if (!verdict.expanding) out.non_expanding.push_back(verdict.sort);
      }
      std::istringstream lines(rep.ToString(sig));
      for (std::string line; std::getline(lines, line);) {
        if (line.find("non-expanding") != std::string::npos) {
          why << "\n" << line;
        }
      }
      if (out.non_expanding.empty()) why << "\nall sorts expanding";
      why << "\nundetermined:";
      for (const auto* c : unmatched) {
        why << " " << c->key << "=" << c->value;
      }
      v.status = SolverResult::Status::kUnknown;
      v.reason = why.str();
      return finish();
    }

    auto rank = [&](const std::string& key) {
      return std::find(seen.begin(), seen.end(), key) - seen.begin();
    };
    const Candidate* pick = nullptr;
    if ((out.state.round + 1) % 4 == 0) {
      // Fairness: the oldest target not yet unfolded.
      const auto& u = out.state.unfolded;
      for (const auto& c : cands) {
        if (std::find(u.begin(), u.end(), c.key) != u.end()) continue;
        if (!pick || rank(c.key) < rank(pick->key)) pick = &c;
      }
    }
    if (!pick) {
      std::int64_t best = 0;
      for (const auto* c : unmatched) {
        const std::int64_t size = res.model.Apply(
            ReducedSymbolTable::SizeName(sig, c->sort), {c->value});
        if (!pick || size < best ||
            (size == best && rank(c->key) < rank(pick->key))) {
          pick = c;
          best = size;
        }
      }
    }
    out.state = UnfoldStep(sig, out.state, pick->term);
  }
}

}  // namespace adtred
