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

#ifndef ADTRED_ORACLE_HPP_
#define ADTRED_ORACLE_HPP_

#include <cstdint>

#include "adtred/ast.hpp"
#include "adtred/signature.hpp"

namespace adtred {

struct OracleLimits {
  std::size_t max_term_size = 6;
  std::int64_t int_lo = -4;  // range for Int variables
  std::int64_t int_hi = 4;
  std::uint64_t max_assignments = 20'000'000;
};

struct OracleResult {
  bool found = false;
  AdtModel model;  // when found
  std::uint64_t tried = 0;
};

// Exhaustive search for a model among assignments of terms of bounded size
// (and bounded Int values). Selectors on the wrong constructor read the
// default witness, so "not found" only says there is no such model within
// the bounds. Throws ResourceError past `max_assignments`.
OracleResult BoundedSearch(const Signature& sig, const FormulaPtr& f,
                           const OracleLimits& limits = {});

}  // namespace adtred

#endif  // ADTRED_ORACLE_HPP_
