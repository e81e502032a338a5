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

#include "adtred/oracle.hpp"

#include <set>
#include <vector>

#include "adtred/analysis.hpp"
#include "adtred/error.hpp"

namespace adtred {

OracleResult BoundedSearch(const Signature& sig, const FormulaPtr& f,
                           const OracleLimits& limits) {
  const std::set<TypedVar> free = FreeVars(*f);
  const std::vector<TypedVar> vars(free.begin(), free.end());
  std::vector<std::vector<TermPtr>> domains;
  std::uint64_t total = 1;
  for (const auto& v : vars) {
    std::uint64_t n;
    if (v.sort) {
      domains.push_back(EnumerateTerms(sig, *v.sort, limits.max_term_size));
      n = domains.back().size();
    } else {
      domains.emplace_back();
      n = static_cast<std::uint64_t>(limits.int_hi - limits.int_lo + 1);
    }
    if (n == 0) return {};
    if (total > limits.max_assignments / n) {
      throw ResourceError("bounded search space too large");
    }
    total *= n;
  }

  OracleResult out;
  std::vector<std::size_t> idx(vars.size(), 0);
  AdtModel& m = out.model;
  auto set = [&](std::size_t i) {
    if (vars[i].sort) {
      m.adt[vars[i].name] = domains[i][idx[i]];
    } else {
      m.ints[vars[i].name] = limits.int_lo + static_cast<std::int64_t>(idx[i]);
    }
  };
  for (std::size_t i = 0; i < vars.size(); ++i) set(i);
  for (;;) {
    ++out.tried;
    if (Evaluate(sig, m, *f)) {
      out.found = true;
      return out;
    }
    // Odometer step, last variable fastest.
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      const std::size_t n =
          vars[i].sort ? domains[i].size()
                       : static_cast<std::size_t>(limits.int_hi -
                                                  limits.int_lo + 1);
      if (++idx[i] < n) {
        set(i);
        break;
      }
      idx[i] = 0;
      set(i);
      if (i == 0) {
        out.model = {};
        return out;
      }
    }
    if (vars.empty()) {
      out.model = {};
      return out;
    }
  }
}

}  // namespace adtred
