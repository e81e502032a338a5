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

#ifndef ADTRED_PERIODIC_SET_HPP_
#define ADTRED_PERIODIC_SET_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace adtred {

// A subset of the naturals given by finitely many exceptions below a
// threshold, and by a residue pattern modulo a period from the threshold on.
// This is the executable form of a semilinear subset of N.
//
// Instances are always kept canonical: the period is minimal, and the
// threshold is the smallest one for which the residue pattern holds, so two
// sets are equal iff their representations are equal.
class EventuallyPeriodicSet {
 public:
  // The empty set.
  EventuallyPeriodicSet();

  static EventuallyPeriodicSet Finite(const std::set<std::uint64_t>& elements);
  // {start + k * step | k >= 0}; step == 0 yields {start}.
  static EventuallyPeriodicSet Progression(std::uint64_t start,
                                           std::uint64_t step);
  // Builds the set whose membership below `threshold` is `member(n)`, and
  // from `threshold` on is `member(n)` as well, under the promise that
  // `member` is periodic with `period` there.
  static EventuallyPeriodicSet FromMembership(
      std::uint64_t threshold, std::uint64_t period,
      const std::function<bool(std::uint64_t)>& member);

  bool Contains(std::uint64_t n) const;
  bool IsEmpty() const;
  bool IsFinite() const;
  std::optional<std::uint64_t> Min() const;

  // Members strictly below the threshold.
  const std::vector<std::uint64_t>& exceptions() const { return exceptions_; }
  std::uint64_t threshold() const { return threshold_; }
  std::uint64_t period() const { return period_; }
  // Residues r in [0, period) such that every n >= threshold with
  // n mod period == r is a member.
  std::vector<std::uint64_t> residues() const;

  EventuallyPeriodicSet Union(const EventuallyPeriodicSet& other) const;
  // {n + c | n in this}.
  EventuallyPeriodicSet Shift(std::uint64_t c) const;
  // this + c * {0, ..., k}.
  EventuallyPeriodicSet AddMultiplesUpTo(std::uint64_t c,
                                         std::uint64_t k) const;
  // this + c * N.
  EventuallyPeriodicSet AddAllMultiples(std::uint64_t c) const;

  bool operator==(const EventuallyPeriodicSet& other) const;
  bool operator!=(const EventuallyPeriodicSet& other) const {
    return !(*this == other);
  }

  // Human-readable form, e.g. "{1} + {n >= 3 | n mod 2 in {1}}".
  std::string ToString() const;

 private:
  void Canonicalize();

  std::vector<std::uint64_t> exceptions_;
  std::uint64_t threshold_ = 0;
  std::uint64_t period_ = 1;
  std::vector<bool> pattern_;  // indexed by n mod period_
};

}  // namespace adtred

#endif  // ADTRED_PERIODIC_SET_HPP_
