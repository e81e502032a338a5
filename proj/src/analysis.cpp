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

#include "adtred/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "adtred/error.hpp"

namespace adtred {
namespace {

using Vertex = DependencyGraph::Vertex;

Vertex SortVertex(SortId s) { return Vertex{true, s.value}; }
Vertex CtorVertex(CtorId c) { return Vertex{false, c.value}; }

// reach[a][b]: sort b is reachable from sort a along at least one
// constructor edge.
std::vector<std::vector<bool>> SortReachability(const Signature& sig) {
  const std::size_t k = sig.num_sorts();
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (const auto& c : sig.ctors()) {
    for (const auto& a : c.args) reach[c.sort.value][a.sort.value] = true;
  }
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!reach[i][m]) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (reach[m][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

std::vector<std::uint64_t> MinSizes(const Signature& sig) {
  constexpr std::uint64_t kInf = ~std::uint64_t{0};
  std::vector<std::uint64_t> min(sig.num_sorts(), kInf);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : sig.ctors()) {
      std::uint64_t total = 1;
      for (const auto& a : c.args) {
        if (min[a.sort.value] == kInf) {
          total = kInf;
          break;
        }
        total += min[a.sort.value];
      }
      if (total < min[c.sort.value]) {
        min[c.sort.value] = total;
        changed = true;
      }
    }
  }
  return min;
}

// Membership bits of constructor and sort size images on [0, window).
struct SizeBits {
  std::vector<std::vector<char>> sorts;
  std::vector<std::vector<char>> ctors;
};

SizeBits ComputeSizeBits(const Signature& sig, std::size_t window) {
  SizeBits bits;
  bits.sorts.assign(sig.num_sorts(), std::vector<char>(window, 0));
  bits.ctors.assign(sig.num_ctors_total(), std::vector<char>(window, 0));
  // partial[c][j][m]: the first j arguments of c can have total size m.
  std::vector<std::vector<std::vector<char>>> partial(sig.num_ctors_total());
  for (std::size_t c = 0; c < sig.num_ctors_total(); ++c) {
    const std::size_t arity = sig.ctors()[c].arity();
    partial[c].assign(arity + 1, std::vector<char>(window, 0));
    partial[c][0][0] = 1;
  }
  for (std::size_t n = 1; n < window; ++n) {
    // Sizes of arguments of a term of size n are below n, so every bit read
    // here is final.
    for (std::size_t c = 0; c < sig.num_ctors_total(); ++c) {
      const CtorDecl& decl = sig.ctors()[c];
      const std::size_t m = n - 1;
      for (std::size_t j = 1; j <= decl.arity(); ++j) {
        const auto& arg_bits = bits.sorts[decl.args[j - 1].sort.value];
        char v = 0;
        for (std::size_t s = 1; s <= m && !v; ++s) {
          v = arg_bits[s] && partial[c][j - 1][m - s];
        }
        partial[c][j][m] = v;
      }
      if (partial[c][decl.arity()][m]) {
        bits.ctors[c][n] = 1;
        bits.sorts[decl.sort.value][n] = 1;
      }
    }
  }
  return bits;
}

// Smallest (period, threshold) explaining bits[0, window/2 .. window) as
// eventually periodic, or nullopt if there is too little evidence.
std::optional<std::pair<std::size_t, std::size_t>> DetectPeriod(
    const std::vector<char>& bits, std::size_t window) {
  for (std::size_t p = 1; p <= window / 4; ++p) {
    // Largest n violating periodicity gives the least threshold.
    std::size_t threshold = 0;
    for (std::size_t n = window - p; n-- > 0;) {
      if (bits[n] != bits[n + p]) {
        threshold = n + 1;
        break;
      }
    }
    if (threshold <= window / 2) return std::make_pair(p, threshold);
  }
  return std::nullopt;
}

bool Extrapolates(const std::vector<char>& small, std::size_t period,
                  std::size_t threshold, const std::vector<char>& large) {
  for (std::size_t n = 0; n < large.size(); ++n) {
    const bool predicted =
        n < small.size()
            ? small[n] != 0
            : small[threshold + (n - threshold) % period] != 0;
    if (predicted != (large[n] != 0)) return false;
  }
  return true;
}

EventuallyPeriodicSet FromBits(const std::vector<char>& bits,
                               std::size_t period, std::size_t threshold) {
  return EventuallyPeriodicSet::FromMembership(
      threshold, period, [&](std::uint64_t n) {
        if (n < bits.size()) return bits[n] != 0;
        return bits[threshold + (n - threshold) % period] != 0;
      });
}

struct Images {
  std::vector<EventuallyPeriodicSet> sorts;
  std::vector<EventuallyPeriodicSet> ctors;
};

// Kleene iteration over a growing window; a window is accepted once the
// periodic description read off [0, W) predicts [0, 2W) exactly.
Images ComputeImages(const Signature& sig) {
  constexpr std::size_t kMaxWindow = std::size_t{1} << 13;
  for (std::size_t w = 64; w <= kMaxWindow; w *= 2) {
    const SizeBits small = ComputeSizeBits(sig, w);
    const SizeBits large = ComputeSizeBits(sig, 2 * w);
    Images out;
    bool ok = true;
    auto certify = [&](const std::vector<char>& s,
                       const std::vector<char>& l) {
      auto pt = DetectPeriod(s, w);
      if (!pt || !Extrapolates(s, pt->first, pt->second, l)) {
        ok = false;
        return EventuallyPeriodicSet();
      }
      return FromBits(s, pt->first, pt->second);
    };
    for (std::size_t i = 0; i < sig.num_sorts() && ok; ++i) {
      out.sorts.push_back(certify(small.sorts[i], large.sorts[i]));
    }
    for (std::size_t i = 0; i < sig.num_ctors_total() && ok; ++i) {
      out.ctors.push_back(certify(small.ctors[i], large.ctors[i]));
    }
    if (ok) return out;
  }
  throw ResourceError("size image: periodicity not certified");
}

// Term counts by exact size, per sort and per constructor.
class CountTable {
 public:
  CountTable(const Signature& sig, std::uint64_t max_size)
      : sig_(sig),
        sorts_(sig.num_sorts(), std::vector<mpz_class>(max_size + 1)),
        ctors_(sig.num_ctors_total(), std::vector<mpz_class>(max_size + 1)) {
    for (std::size_t c = 0; c < sig.num_ctors_total(); ++c) {
      const CtorDecl& decl = sig.ctors()[c];
      std::vector<std::vector<mpz_class>> partial(
          decl.arity() + 1, std::vector<mpz_class>(max_size + 1));
      partial_.push_back(std::move(partial));
      partial_.back()[0][0] = 1;
    }
    for (std::uint64_t n = 1; n <= max_size; ++n) {
      for (std::size_t c = 0; c < sig.num_ctors_total(); ++c) {
        const CtorDecl& decl = sig.ctors()[c];
        const std::uint64_t m = n - 1;
        auto& partial = partial_[c];
        for (std::size_t j = 1; j <= decl.arity(); ++j) {
          const auto& arg = sorts_[decl.args[j - 1].sort.value];
          mpz_class v = 0;
          for (std::uint64_t s = 1; s <= m; ++s) {
            if (arg[s] != 0 && partial[j - 1][m - s] != 0) {
              v += arg[s] * partial[j - 1][m - s];
            }
          }
          partial[j][m] = v;
        }
        ctors_[c][n] = partial[decl.arity()][m];
        sorts_[decl.sort.value][n] += ctors_[c][n];
      }
    }
  }

  const mpz_class& sort(SortId s, std::uint64_t n) const {
    return sorts_[s.value][n];
  }
  const mpz_class& ctor(CtorId c, std::uint64_t n) const {
    return ctors_[c.value][n];
  }

 private:
  const Signature& sig_;
  std::vector<std::vector<mpz_class>> sorts_;
  std::vector<std::vector<mpz_class>> ctors_;
  std::vector<std::vector<std::vector<mpz_class>>> partial_;
};

// Data shared by the expandingness checks: single-term sorts are dropped
// from constructor argument lists and their sizes folded into the
// constructor weight.
struct ReducedGraph {
  std::vector<bool> singleton;
  std::vector<std::uint64_t> weight;            // per constructor
  std::vector<std::vector<SortId>> live_args;   // per constructor
};

ReducedGraph Reduce(const Signature& sig) {
  ReducedGraph g;
  const auto min = MinSizes(sig);
  for (std::size_t s = 0; s < sig.num_sorts(); ++s) {
    const Cardinality card = ComputeCardinality(sig, SortId{std::uint32_t(s)});
    g.singleton.push_back(card.is_finite() && card.count() == 1);
  }
  for (const auto& c : sig.ctors()) {
    std::uint64_t w = 1;
    std::vector<SortId> live;
    for (const auto& a : c.args) {
      if (g.singleton[a.sort.value]) {
        w += min[a.sort.value];
      } else {
        live.push_back(a.sort);
      }
    }
    g.weight.push_back(w);
    g.live_args.push_back(std::move(live));
  }
  return g;
}

std::vector<std::vector<bool>> LiveReachability(const Signature& sig,
                                                const ReducedGraph& g) {
  const std::size_t k = sig.num_sorts();
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (std::size_t c = 0; c < sig.num_ctors_total(); ++c) {
    for (SortId a : g.live_args[c]) {
      reach[sig.ctors()[c].sort.value][a.value] = true;
    }
  }
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!reach[i][m]) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (reach[m][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

// R = union over the cycle of the relativized images shifted by the weight
// of the cycle prefix, and the total cycle weight.
std::pair<EventuallyPeriodicSet, std::uint64_t> CycleRemainder(
    const Signature& sig, const ReducedGraph& g,
    const std::vector<Vertex>& cycle) {
  EventuallyPeriodicSet r;
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i + 1 < cycle.size(); i += 2) {
    const SortId s{cycle[i].index};
    const CtorId f{cycle[i + 1].index};
    r = r.Union(RelativizedSizeImage(sig, s, f).Shift(offset));
    offset += g.weight[f.value];
  }
  return {r, offset};
}

}  // namespace

Cardinality ComputeCardinality(const Signature& sig, SortId s) {
  const auto reach = SortReachability(sig);
  for (std::size_t t = 0; t < sig.num_sorts(); ++t) {
    const bool reaches = t == s.value || reach[s.value][t];
    if (reaches && reach[t][t]) return Cardinality::Infinite();
  }
  std::map<std::uint32_t, mpz_class> memo;
  std::function<mpz_class(SortId)> count = [&](SortId x) -> mpz_class {
    auto it = memo.find(x.value);
    if (it != memo.end()) return it->second;
    mpz_class total = 0;
    for (CtorId c : sig.sort(x).ctors) {
      mpz_class prod = 1;
      for (const auto& a : sig.ctor(c).args) prod *= count(a.sort);
      total += prod;
    }
    memo[x.value] = total;
    return total;
  };
  return Cardinality::Finite(count(s));
}

DependencyGraph BuildDependencyGraph(const Signature& sig) {
  DependencyGraph g;
  for (std::size_t s = 0; s < sig.num_sorts(); ++s) {
    g.vertices.push_back(Vertex{true, std::uint32_t(s)});
  }
  for (std::size_t c = 0; c < sig.num_ctors_total(); ++c) {
    const CtorDecl& decl = sig.ctors()[c];
    g.vertices.push_back(Vertex{false, std::uint32_t(c)});
    g.edges.emplace_back(SortVertex(decl.sort),
                         CtorVertex(CtorId{std::uint32_t(c)}));
    for (const auto& a : decl.args) {
      g.edges.emplace_back(CtorVertex(CtorId{std::uint32_t(c)}),
                           SortVertex(a.sort));
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

std::vector<EventuallyPeriodicSet> SizeImages(const Signature& sig) {
  return ComputeImages(sig).sorts;
}

EventuallyPeriodicSet SizeImage(const Signature& sig, SortId s) {
  return ComputeImages(sig).sorts.at(s.value);
}

EventuallyPeriodicSet RelativizedSizeImage(const Signature& sig, SortId s,
                                           CtorId f) {
  if (sig.ctor(f).sort != s) {
    throw TypeError("constructor '" + sig.ctor(f).name +
                    "' does not construct sort '" + sig.sort(s).name + "'");
  }
  const Images images = ComputeImages(sig);
  EventuallyPeriodicSet out;
  for (CtorId g : sig.sort(s).ctors) {
    if (g != f) out = out.Union(images.ctors[g.value]);
  }
  return out;
}

mpz_class CountTermsOfSize(const Signature& sig, SortId s, std::uint64_t size,
                           std::uint64_t cap) {
  if (size > cap) {
    throw ResourceError("term count: size " + std::to_string(size) +
                        " exceeds cap " + std::to_string(cap));
  }
  return CountTable(sig, size).sort(s, size);
}

std::vector<TermPtr> EnumerateTerms(const Signature& sig, SortId s,
                                    std::size_t max_size, std::size_t cap) {
  // by_size[sort][n]: terms of exactly size n in enumeration order.
  std::vector<std::vector<std::vector<TermPtr>>> by_size(
      sig.num_sorts(), std::vector<std::vector<TermPtr>>(max_size + 1));
  std::size_t produced = 0;
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (std::size_t c = 0; c < sig.num_ctors_total(); ++c) {
      const CtorDecl& decl = sig.ctors()[c];
      auto& bucket = by_size[decl.sort.value][n];
      std::vector<TermPtr> args;
      std::function<void(std::size_t, std::size_t)> rec =
          [&](std::size_t j, std::size_t remaining) {
            if (j == decl.arity()) {
              if (remaining != 0) return;
              if (++produced > cap) {
                throw ResourceError("term enumeration exceeds cap");
              }
              bucket.push_back(
                  MakeCtor(sig, CtorId{std::uint32_t(c)}, args));
              return;
            }
            const auto& levels = by_size[decl.args[j].sort.value];
            for (std::size_t sz = 1; sz <= remaining; ++sz) {
              for (const auto& t : levels[sz]) {
                args.push_back(t);
                rec(j + 1, remaining - sz);
                args.pop_back();
              }
            }
          };
      rec(0, n - 1);
    }
  }
  std::vector<TermPtr> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    const auto& level = by_size[s.value][n];
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

TermPtr DefaultWitness(const Signature& sig, SortId s) {
  const auto min = MinSizes(sig);
  std::function<TermPtr(SortId)> build = [&](SortId x) -> TermPtr {
    for (CtorId c : sig.sort(x).ctors) {
      std::uint64_t total = 1;
      for (const auto& a : sig.ctor(c).args) total += min[a.sort.value];
      if (total != min[x.value]) continue;
      std::vector<TermPtr> args;
      for (const auto& a : sig.ctor(c).args) args.push_back(build(a.sort));
      return MakeCtor(sig, c, std::move(args));
    }
    throw InternalError("no minimal constructor for sort " + sig.sort(x).name);
  };
  return build(s);
}

bool EnumerationLess(const Signature& sig, const Term& a, const Term& b) {
  const std::size_t sa = a.Size(), sb = b.Size();
  if (sa != sb) return sa < sb;
  if (a.ctor != b.ctor) return sig.CtorIndex(a.ctor) < sig.CtorIndex(b.ctor);
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (EnumerationLess(sig, *a.args[i], *b.args[i])) return true;
    if (EnumerationLess(sig, *b.args[i], *a.args[i])) return false;
  }
  return false;
}

bool ExpandingReport::AllExpanding() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const ExpandingVerdict& v) { return v.expanding; });
}

std::string ExpandingReport::CycleToString(const Signature& sig,
                                           const ExpandingVerdict& v) const {
  std::string out;
  for (std::size_t i = 0; i < v.cycle.size(); ++i) {
    if (i) out += " -> ";
    out += v.cycle[i].is_sort ? sig.sort(SortId{v.cycle[i].index}).name
                              : sig.ctor(CtorId{v.cycle[i].index}).name;
  }
  return out;
}

std::string ExpandingReport::ToString(const Signature& sig) const {
  std::ostringstream out;
  for (const auto& v : verdicts) {
    out << sig.sort(v.sort).name << ": ";
    if (v.expanding) {
      out << "expanding\n";
    } else {
      out << "non-expanding (" << (v.via_reachable_cycle ? "reaches " : "")
          << "cycle: " << CycleToString(sig, v) << ")\n";
    }
  }
  return out.str();
}

ExpandingReport CheckExpanding(const Signature& sig) {
  const ReducedGraph g = Reduce(sig);
  const auto reach = LiveReachability(sig, g);
  const std::size_t k = sig.num_sorts();
  ExpandingReport report;
  for (std::size_t s = 0; s < k; ++s) {
    ExpandingVerdict v;
    v.sort = SortId{std::uint32_t(s)};
    report.verdicts.push_back(v);
  }

  auto in_scc = [&](std::size_t a, std::size_t b) {
    return a == b ? reach[a][a] : reach[a][b] && reach[b][a];
  };

  for (std::size_t s = 0; s < k; ++s) {
    if (!reach[s][s]) continue;  // not on any cycle
    // Conditions 1 and 2: inside the strongly connected component, every
    // sort has exactly one way forward, through a constructor with exactly
    // one non-trivial argument.
    std::vector<Vertex> cycle{Vertex{true, std::uint32_t(s)}};
    std::size_t cur = s;
    bool simple = true;
    do {
      std::optional<CtorId> next_ctor;
      std::optional<SortId> next_sort;
      std::size_t edges = 0;
      for (CtorId c : sig.sort(SortId{std::uint32_t(cur)}).ctors) {
        for (SortId a : g.live_args[c.value]) {
          if (in_scc(s, a.value)) {
            ++edges;
            next_ctor = c;
            next_sort = a;
          }
        }
      }
      if (edges != 1 || g.live_args[next_ctor->value].size() != 1) {
        simple = false;
        break;
      }
      cycle.push_back(CtorVertex(*next_ctor));
      cycle.push_back(SortVertex(*next_sort));
      cur = next_sort->value;
    } while (cur != s);
    if (!simple) continue;

    // Condition 3: A_k = {0..k}*n + R never stabilizes.
    const auto [r, n] = CycleRemainder(sig, g, cycle);
    const std::uint64_t bound =
        r.threshold() / n + r.period() + 3;
    EventuallyPeriodicSet acc = r;
    bool stabilized = false;
    for (std::uint64_t i = 1; i <= bound && !stabilized; ++i) {
      const EventuallyPeriodicSet next = acc.Union(r.Shift(i * n));
      stabilized = next == acc;
      acc = next;
    }
    if (!stabilized) {
      report.verdicts[s].expanding = false;
      report.verdicts[s].cycle = cycle;
    }
  }

  // A sort that reaches a non-expanding sort is reported through that
  // sort's cycle. This is exact for sorts off every cycle and conservative
  // otherwise.
  std::vector<ExpandingVerdict> direct = report.verdicts;
  for (std::size_t s = 0; s < k; ++s) {
    if (!direct[s].expanding) continue;
    for (std::size_t t = 0; t < k; ++t) {
      if (t != s && reach[s][t] && !direct[t].expanding) {
        report.verdicts[s].expanding = false;
        report.verdicts[s].cycle = direct[t].cycle;
        report.verdicts[s].via_reachable_cycle = true;
        break;
      }
    }
  }
  return report;
}

bool WitnessSatisfiesConditions(const Signature& sig,
                                const std::vector<Vertex>& c) {
  if (c.size() < 3 || c.size() % 2 == 0 || c.front() != c.back()) {
    return false;
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_sort != (i % 2 == 0)) return false;
  }
  const ReducedGraph g = Reduce(sig);

  // Condition 2: unary constructors whose argument is the next cycle sort.
  for (std::size_t i = 1; i < c.size(); i += 2) {
    const auto& live = g.live_args[c[i].index];
    if (sig.ctor(CtorId{c[i].index}).sort.value != c[i - 1].index) {
      return false;
    }
    if (live.size() != 1 || live[0].value != c[i + 1].index) return false;
  }

  // Condition 1: depth-first enumeration of simple paths from the first
  // sort back to itself finds exactly the given cycle.
  const std::uint32_t start = c.front().index;
  std::vector<std::vector<Vertex>> found;
  std::vector<Vertex> path{c.front()};
  std::vector<bool> on_path(sig.num_sorts(), false);
  on_path[start] = true;
  std::function<void(std::uint32_t)> dfs = [&](std::uint32_t sort) {
    if (found.size() > 1) return;
    for (CtorId f : sig.sort(SortId{sort}).ctors) {
      for (SortId a : g.live_args[f.value]) {
        path.push_back(CtorVertex(f));
        path.push_back(SortVertex(a));
        if (a.value == start) {
          found.push_back(path);
        } else if (!on_path[a.value]) {
          on_path[a.value] = true;
          dfs(a.value);
          on_path[a.value] = false;
        }
        path.pop_back();
        path.pop_back();
      }
    }
  };
  dfs(start);
  if (found.size() != 1 || found[0] != c) return false;

  // Condition 3: some r in R has no r + i*n in R for any i >= 1. Beyond the
  // threshold both membership and i*n modulo the period repeat, so finite
  // ranges of r and i suffice.
  const auto [r, n] = CycleRemainder(sig, g, c);
  const std::uint64_t r_limit = r.threshold() + r.period();
  const std::uint64_t i_limit = r.threshold() / n + r.period() + 1;
  for (std::uint64_t x = 0; x < r_limit; ++x) {
    if (!r.Contains(x)) continue;
    bool extends = false;
    for (std::uint64_t i = 1; i <= i_limit && !extends; ++i) {
      extends = r.Contains(x + i * n);
    }
    if (!extends) return true;
  }
  return false;
}

std::string CompletenessReport(const Signature& sig) {
  const ExpandingReport report = CheckExpanding(sig);
  if (report.AllExpanding()) {
    return "decision procedure complete: all sorts are expanding\n";
  }
  std::ostringstream out;
  out << "decision procedure incomplete: unfolding may answer unknown\n";
  for (const auto& v : report.verdicts) {
    if (v.expanding) continue;
    out << "  " << sig.sort(v.sort).name << ": non-expanding ("
        << (v.via_reachable_cycle ? "reaches " : "")
        << "cycle: " << report.CycleToString(sig, v) << ")\n";
  }
  return out.str();
}

}  // namespace adtred
