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

#include "adtred/periodic_set.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "adtred/error.hpp"

namespace adtred {
namespace {

constexpr std::uint64_t kMaxPeriod = 1u << 20;

std::uint64_t CheckedLcm(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t l = std::lcm(a, b);
  if (l > kMaxPeriod) {
    throw ResourceError("eventually periodic set: period exceeds limit");
  }
  return l;
}

}  // namespace

EventuallyPeriodicSet::EventuallyPeriodicSet() : pattern_{false} {}

EventuallyPeriodicSet EventuallyPeriodicSet::Finite(
    const std::set<std::uint64_t>& elements) {
  EventuallyPeriodicSet s;
  s.exceptions_.assign(elements.begin(), elements.end());
  s.threshold_ = elements.empty() ? 0 : *elements.rbegin() + 1;
  s.Canonicalize();
  return s;
}

EventuallyPeriodicSet EventuallyPeriodicSet::Progression(std::uint64_t start,
                                                         std::uint64_t step) {
  if (step == 0) return Finite({start});
  return FromMembership(start, step, [start, step](std::uint64_t n) {
    return n >= start && (n - start) % step == 0;
  });
}

EventuallyPeriodicSet EventuallyPeriodicSet::FromMembership(
    std::uint64_t threshold, std::uint64_t period,
    const std::function<bool(std::uint64_t)>& member) {
  if (period == 0) throw InternalError("period must be positive");
  if (period > kMaxPeriod) {
    throw ResourceError("eventually periodic set: period exceeds limit");
  }
  EventuallyPeriodicSet s;
  s.threshold_ = threshold;
  s.period_ = period;
  s.pattern_.assign(period, false);
  for (std::uint64_t n = 0; n < threshold; ++n) {
    if (member(n)) s.exceptions_.push_back(n);
  }
  for (std::uint64_t i = 0; i < period; ++i) {
    const std::uint64_t n = threshold + i;
    s.pattern_[n % period] = member(n);
  }
  s.Canonicalize();
  return s;
}

void EventuallyPeriodicSet::Canonicalize() {
  // Minimal period: the smallest divisor d of the period under which the
  // pattern is invariant.
  for (std::uint64_t d = 1; d < period_; ++d) {
    if (period_ % d != 0) continue;
    bool ok = true;
    for (std::uint64_t r = 0; r < period_ && ok; ++r) {
      ok = pattern_[r] == pattern_[r % d];
    }
    if (ok) {
      // Residues modulo d are read off at positions >= threshold, which all
      // agree with pattern_[r % d] by the invariance just checked.
      std::vector<bool> reduced(d);
      for (std::uint64_t r = 0; r < d; ++r) reduced[r] = pattern_[r];
      pattern_ = std::move(reduced);
      period_ = d;
      break;
    }
  }
  // Minimal threshold.
  std::set<std::uint64_t> exc(exceptions_.begin(), exceptions_.end());
  while (threshold_ > 0) {
    const std::uint64_t n = threshold_ - 1;
    const bool periodic = pattern_[n % period_];
    if (periodic != (exc.count(n) > 0)) break;
    exc.erase(n);
    --threshold_;
  }
  exceptions_.assign(exc.begin(), exc.end());
}

bool EventuallyPeriodicSet::Contains(std::uint64_t n) const {
  if (n >= threshold_) return pattern_[n % period_];
  return std::binary_search(exceptions_.begin(), exceptions_.end(), n);
}

bool EventuallyPeriodicSet::IsFinite() const {
  return std::none_of(pattern_.begin(), pattern_.end(),
                      [](bool b) { return b; });
}

bool EventuallyPeriodicSet::IsEmpty() const {
  return IsFinite() && exceptions_.empty();
}

std::optional<std::uint64_t> EventuallyPeriodicSet::Min() const {
  if (!exceptions_.empty()) return exceptions_.front();
  for (std::uint64_t i = 0; i < period_; ++i) {
    if (Contains(threshold_ + i)) return threshold_ + i;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> EventuallyPeriodicSet::residues() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < period_; ++r) {
    if (pattern_[r]) out.push_back(r);
  }
  return out;
}

EventuallyPeriodicSet EventuallyPeriodicSet::Union(
    const EventuallyPeriodicSet& other) const {
  return FromMembership(std::max(threshold_, other.threshold_),
                        CheckedLcm(period_, other.period_),
                        [&](std::uint64_t n) {
                          return Contains(n) || other.Contains(n);
                        });
}

EventuallyPeriodicSet EventuallyPeriodicSet::Shift(std::uint64_t c) const {
  return FromMembership(threshold_ + c, period_, [&](std::uint64_t n) {
    return n >= c && Contains(n - c);
  });
}

EventuallyPeriodicSet EventuallyPeriodicSet::AddMultiplesUpTo(
    std::uint64_t c, std::uint64_t k) const {
  if (c == 0) return *this;
  EventuallyPeriodicSet acc = *this;
  for (std::uint64_t i = 1; i <= k; ++i) acc = acc.Union(Shift(i * c));
  return acc;
}

EventuallyPeriodicSet EventuallyPeriodicSet::AddAllMultiples(
    std::uint64_t c) const {
  if (c == 0) return *this;
  // From threshold + lcm(period, c) on, every residue class of candidate
  // summands m <= n with m == n (mod c) has been seen.
  const std::uint64_t l = CheckedLcm(period_, c);
  return FromMembership(threshold_ + l, l, [&](std::uint64_t n) {
    for (std::uint64_t m = n % c; m <= n; m += c) {
      if (Contains(m)) return true;
    }
    return false;
  });
}

bool EventuallyPeriodicSet::operator==(
    const EventuallyPeriodicSet& other) const {
  return threshold_ == other.threshold_ && period_ == other.period_ &&
         pattern_ == other.pattern_ && exceptions_ == other.exceptions_;
}

std::string EventuallyPeriodicSet::ToString() const {
  std::ostringstream out;
  if (IsEmpty()) return "{}";
  bool first = true;
  if (!exceptions_.empty()) {
    out << "{";
    for (std::size_t i = 0; i < exceptions_.size(); ++i) {
      out << (i ? ", " : "") << exceptions_[i];
    }
    out << "}";
    first = false;
  }
  if (!IsFinite()) {
    if (!first) out << " + ";
    out << "{n >= " << threshold_;
    if (period_ > 1) {
      out << " | n mod " << period_ << " in {";
      bool f = true;
      for (std::uint64_t r : residues()) {
        out << (f ? "" : ", ") << r;
        f = false;
      }
      out << "}";
    }
    out << "}";
  }
  return out.str();
}

}  // namespace adtred
