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

#include "adtred/signature.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace adtred {
namespace {

std::string JoinProblems(const std::vector<SignatureError::Problem>& ps) {
  std::string out = "invalid signature:";
  for (const auto& p : ps) out += " " + SignatureError::Describe(p) + ";";
  return out;
}

}  // namespace

std::string Cardinality::ToString() const {
  return is_finite() ? "finite(" + count_->get_str() + ")" : "infinite";
}

std::vector<DependencyGraph::Vertex> DependencyGraph::Successors(
    Vertex v) const {
  std::vector<Vertex> out;
  for (const auto& [from, to] : edges) {
    if (from == v) out.push_back(to);
  }
  return out;
}

SignatureError::SignatureError(std::vector<Problem> problems)
    : InputError(JoinProblems(problems)), problems_(std::move(problems)) {}

std::string SignatureError::Describe(const Problem& p) {
  switch (p.kind) {
    case Kind::kEmptySort:
      return "EmptySort(" + p.symbol + ")";
    case Kind::kDuplicateName:
      return "DuplicateName(" + p.symbol + ")";
    case Kind::kUnknownSort:
      return "UnknownSort(" + p.symbol + ")";
  }
  return "?";
}

std::vector<SignatureError::Problem> Validate(
    const std::vector<SortSpec>& specs) {
  using Kind = SignatureError::Kind;
  std::vector<SignatureError::Problem> problems;
  std::set<std::string> sort_names;
  for (const auto& s : specs) {
    if (!sort_names.insert(s.name).second) {
      problems.push_back({Kind::kDuplicateName, s.name});
    }
  }
  std::set<std::string> fun_names;
  for (const auto& s : specs) {
    for (const auto& c : s.ctors) {
      if (!fun_names.insert(c.name).second) {
        problems.push_back({Kind::kDuplicateName, c.name});
      }
      for (const auto& [sel, arg_sort] : c.args) {
        if (!fun_names.insert(sel).second) {
          problems.push_back({Kind::kDuplicateName, sel});
        }
        if (!sort_names.count(arg_sort)) {
          problems.push_back({Kind::kUnknownSort, arg_sort});
        }
      }
    }
  }
  // Least fixpoint of non-emptiness.
  std::set<std::string> inhabited;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& s : specs) {
      if (inhabited.count(s.name)) continue;
      for (const auto& c : s.ctors) {
        const bool all = std::all_of(
            c.args.begin(), c.args.end(),
            [&](const auto& a) { return inhabited.count(a.second) > 0; });
        if (all) {
          inhabited.insert(s.name);
          changed = true;
          break;
        }
      }
    }
  }
  std::set<std::string> reported;
  for (const auto& s : specs) {
    if (!inhabited.count(s.name) && reported.insert(s.name).second) {
      problems.push_back({Kind::kEmptySort, s.name});
    }
  }
  return problems;
}

Signature Signature::Build(const std::vector<SortSpec>& specs) {
  auto problems = Validate(specs);
  if (!problems.empty()) throw SignatureError(std::move(problems));
  Signature sig;
  std::map<std::string, SortId> ids;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    ids[specs[i].name] = SortId{static_cast<std::uint32_t>(i)};
    sig.sorts_.push_back(SortDecl{specs[i].name, {}});
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (const auto& c : specs[i].ctors) {
      CtorDecl decl{c.name, SortId{static_cast<std::uint32_t>(i)}, {}};
      for (const auto& [sel, arg_sort] : c.args) {
        decl.args.push_back(SelectorSlot{sel, ids.at(arg_sort)});
      }
      sig.sorts_[i].ctors.push_back(
          CtorId{static_cast<std::uint32_t>(sig.ctors_.size())});
      sig.ctors_.push_back(std::move(decl));
    }
  }
  return sig;
}

std::optional<SortId> Signature::FindSort(const std::string& name) const {
  for (std::size_t i = 0; i < sorts_.size(); ++i) {
    if (sorts_[i].name == name) return SortId{static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

std::optional<CtorId> Signature::FindCtor(const std::string& name) const {
  for (std::size_t i = 0; i < ctors_.size(); ++i) {
    if (ctors_[i].name == name) return CtorId{static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

std::optional<std::pair<CtorId, std::size_t>> Signature::FindSelector(
    const std::string& name) const {
  for (std::size_t i = 0; i < ctors_.size(); ++i) {
    for (std::size_t j = 0; j < ctors_[i].args.size(); ++j) {
      if (ctors_[i].args[j].name == name) {
        return std::make_pair(CtorId{static_cast<std::uint32_t>(i)}, j);
      }
    }
  }
  return std::nullopt;
}

std::size_t Signature::CtorIndex(CtorId c) const {
  const auto& list = sort(ctor(c).sort).ctors;
  return static_cast<std::size_t>(std::find(list.begin(), list.end(), c) -
                                  list.begin());
}

bool Signature::IsEnumeration(SortId s) const {
  const auto& list = sort(s).ctors;
  return std::all_of(list.begin(), list.end(),
                     [&](CtorId c) { return ctor(c).args.empty(); });
}

std::size_t Signature::SizeMeasure() const {
  std::size_t n = sorts_.size() + ctors_.size();
  for (const auto& c : ctors_) n += c.args.size();
  return n;
}

std::vector<SortSpec> Signature::ToSpecs() const {
  std::vector<SortSpec> out;
  for (const auto& s : sorts_) {
    SortSpec spec{s.name, {}};
    for (CtorId c : s.ctors) {
      SortSpec::Ctor cs{ctor(c).name, {}};
      for (const auto& a : ctor(c).args) {
        cs.args.emplace_back(a.name, sort(a.sort).name);
      }
      spec.ctors.push_back(std::move(cs));
    }
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace adtred
