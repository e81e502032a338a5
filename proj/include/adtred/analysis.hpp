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

#ifndef ADTRED_ANALYSIS_HPP_
#define ADTRED_ANALYSIS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "adtred/ast.hpp"
#include "adtred/periodic_set.hpp"
#include "adtred/signature.hpp"

namespace adtred {

Cardinality ComputeCardinality(const Signature& sig, SortId s);
DependencyGraph BuildDependencyGraph(const Signature& sig);

// The set of sizes of ground terms of a sort.
EventuallyPeriodicSet SizeImage(const Signature& sig, SortId s);
// Sizes of terms of sort `s` whose head symbol is not `f`. Throws TypeError if
// `f` does not construct `s`.
EventuallyPeriodicSet RelativizedSizeImage(const Signature& sig, SortId s,
                                           CtorId f);
// All size images at once, indexed by SortId.
std::vector<EventuallyPeriodicSet> SizeImages(const Signature& sig);

inline constexpr std::uint64_t kDefaultCountCap = 4096;
// Number of ground terms of sort `s` with exactly `size` constructors.
// Throws ResourceError if `size` exceeds `cap`.
mpz_class CountTermsOfSize(const Signature& sig, SortId s, std::uint64_t size,
                           std::uint64_t cap = kDefaultCountCap);

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;
// All ground terms of sort `s` with at most `max_size` constructors, ordered
// by size, then by constructor declaration order, then by arguments
// left to right in this same order.
std::vector<TermPtr> EnumerateTerms(const Signature& sig, SortId s,
                                    std::size_t max_size,
                                    std::size_t cap = kDefaultEnumerationCap);
// First term of EnumerateTerms for the sort.
TermPtr DefaultWitness(const Signature& sig, SortId s);
// Orders ground terms like EnumerateTerms does.
bool EnumerationLess(const Signature& sig, const Term& a, const Term& b);

struct ExpandingVerdict {
  SortId sort;
  bool expanding = true;
  // Alternating sort/constructor vertices, starting and ending with the same
  // sort, e.g. Nat -> succ -> Nat.
  std::vector<DependencyGraph::Vertex> cycle;
  // Set when the sort is not on the cycle itself but reaches it.
  bool via_reachable_cycle = false;
};

struct ExpandingReport {
  std::vector<ExpandingVerdict> verdicts;  // indexed by SortId

  bool AllExpanding() const;
  std::string CycleToString(const Signature& sig,
                            const ExpandingVerdict& v) const;
  // One line per sort, e.g. "Nat: non-expanding (cycle: Nat -> succ -> Nat)".
  std::string ToString(const Signature& sig) const;
};

ExpandingReport CheckExpanding(const Signature& sig);

// Re-checks the three conditions of a witness cycle directly on the
// definition: the cycle is the only way back to its first sort, its
// constructors are unary after removing single-term sorts, and the cycle's
// contribution to the size image never saturates.
bool WitnessSatisfiesConditions(const Signature& sig,
                                const std::vector<DependencyGraph::Vertex>& c);

// Human-readable completeness verdict of the unfolding procedure.
std::string CompletenessReport(const Signature& sig);

}  // namespace adtred

#endif  // ADTRED_ANALYSIS_HPP_
