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

#ifndef ADTRED_SIGNATURE_HPP_
#define ADTRED_SIGNATURE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "adtred/error.hpp"
#include "adtred/periodic_set.hpp"

namespace adtred {

struct SortId {
  std::uint32_t value = 0;
  auto operator<=>(const SortId&) const = default;
};

struct CtorId {
  std::uint32_t value = 0;
  auto operator<=>(const CtorId&) const = default;
};

struct SelectorSlot {
  std::string name;
  SortId sort;
};

struct CtorDecl {
  std::string name;
  SortId sort;
  std::vector<SelectorSlot> args;

  std::size_t arity() const { return args.size(); }
};

struct SortDecl {
  std::string name;
  std::vector<CtorId> ctors;  // in declaration order
};

// Declaration as written by the user, before name resolution.
struct SortSpec {
  struct Ctor {
    std::string name;
    std::vector<std::pair<std::string, std::string>> args;  // selector, sort
  };
  std::string name;
  std::vector<Ctor> ctors;
};

class Cardinality {
 public:
  static Cardinality Finite(mpz_class count) {
    return Cardinality(std::move(count));
  }
  static Cardinality Infinite() { return Cardinality(); }

  bool is_finite() const { return count_.has_value(); }
  // Precondition: is_finite().
  const mpz_class& count() const { return *count_; }
  bool operator==(const Cardinality& o) const { return count_ == o.count_; }
  std::string ToString() const;

 private:
  Cardinality() = default;
  explicit Cardinality(mpz_class c) : count_(std::move(c)) {}
  std::optional<mpz_class> count_;
};

// Bipartite sort/constructor graph: edges sort -> ctor for every constructor
// of the sort, and ctor -> sort for every argument sort. Duplicate edges
// (two arguments of the same sort) are collapsed.
struct DependencyGraph {
  struct Vertex {
    bool is_sort;
    std::uint32_t index;  // SortId or CtorId value
    auto operator<=>(const Vertex&) const = default;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<Vertex, Vertex>> edges;  // sorted, unique

  std::vector<Vertex> Successors(Vertex v) const;
};

// An ADT signature: an ordered list of sorts and a global ordered list of
// constructors. Immutable after construction.
class Signature {
 public:
  // Resolves names and checks that names are unique, every referenced sort is
  // declared, and every sort has at least one constructor term. Throws
  // SignatureError listing every problem found.
  static Signature Build(const std::vector<SortSpec>& specs);

  std::size_t num_sorts() const { return sorts_.size(); }
  std::size_t num_ctors_total() const { return ctors_.size(); }
  const SortDecl& sort(SortId s) const { return sorts_.at(s.value); }
  const CtorDecl& ctor(CtorId c) const { return ctors_.at(c.value); }
  const std::vector<SortDecl>& sorts() const { return sorts_; }
  const std::vector<CtorDecl>& ctors() const { return ctors_; }

  std::optional<SortId> FindSort(const std::string& name) const;
  std::optional<CtorId> FindCtor(const std::string& name) const;
  // Selector name -> (constructor, zero-based argument index).
  std::optional<std::pair<CtorId, std::size_t>> FindSelector(
      const std::string& name) const;

  // #Ctor of a sort.
  std::size_t NumCtors(SortId s) const { return sort(s).ctors.size(); }
  // Zero-based position of the constructor among the constructors of its
  // sort.
  std::size_t CtorIndex(CtorId c) const;
  CtorId CtorByIndex(SortId s, std::size_t index) const {
    return sort(s).ctors.at(index);
  }
  // All constructors of the sort are nullary.
  bool IsEnumeration(SortId s) const;

  // Number of sorts + constructors + selector slots; the "n" in blow-up
  // bounds.
  std::size_t SizeMeasure() const;

  // Specs equivalent to this signature (for printing).
  std::vector<SortSpec> ToSpecs() const;

 private:
  std::vector<SortDecl> sorts_;
  std::vector<CtorDecl> ctors_;
};

class SignatureError : public InputError {
 public:
  enum class Kind { kEmptySort, kDuplicateName, kUnknownSort };
  struct Problem {
    Kind kind;
    std::string symbol;
  };
  explicit SignatureError(std::vector<Problem> problems);
  const std::vector<Problem>& problems() const { return problems_; }

  static std::string Describe(const Problem& p);

 private:
  std::vector<Problem> problems_;
};

// Returns the problems that Signature::Build would report; empty iff the
// specs describe a well-defined signature.
std::vector<SignatureError::Problem> Validate(
    const std::vector<SortSpec>& specs);

}  // namespace adtred

#endif  // ADTRED_SIGNATURE_HPP_
